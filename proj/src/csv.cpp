#include "sfmc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfmc/errors.hpp"

namespace sfmc {

namespace {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCategory::IoError, "cannot write: " + path);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    return fields;
}

} // namespace

void export_histogram_csv(const Histogram& hist, const std::string& path) {
    auto out = open_out(path);
    out << "bin_low,bin_high,count\n";
    for (int i = 0; i < hist.bins(); ++i)
        out << fmt_real(hist.bin_low(i)) << ',' << fmt_real(hist.bin_high(i))
            << ',' << hist.counts()[i] << '\n';
    if (!out)
        throw Error(ErrorCategory::IoError, "write failed: " + path);
}

Histogram import_histogram_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCategory::IoError, "cannot read: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "bin_low,bin_high,count")
        throw Error(ErrorCategory::ParseError,
                    "bad histogram header in " + path);
    std::vector<double> lows, highs;
    std::vector<std::uint64_t> counts;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = split_fields(line);
        if (fields.size() != 3)
            throw Error(ErrorCategory::ParseError,
                        "bad histogram row in " + path + ": " + line);
        lows.push_back(std::stod(fields[0]));
        highs.push_back(std::stod(fields[1]));
        counts.push_back(std::stoull(fields[2]));
    }
    if (lows.empty())
        return Histogram{};
    Histogram hist(lows.front(), highs.back(),
                   static_cast<int>(lows.size()));
    for (std::size_t i = 0; i < counts.size(); ++i)
        hist.add_count(static_cast<int>(i), counts[i]);
    return hist;
}

void export_scan_csv(const std::vector<ScanPoint>& points,
                     const std::string& path) {
    auto out = open_out(path);
    out << "g2,peak_energy_ev,i_eff\n";
    for (const auto& p : points)
        out << fmt_real(p.g2) << ',' << fmt_real(p.peak_energy_ev) << ','
            << fmt_real(p.i_eff) << '\n';
    if (!out)
        throw Error(ErrorCategory::IoError, "write failed: " + path);
}

void export_pmf_csv(const std::vector<double>& pmf, const std::string& path) {
    auto out = open_out(path);
    out << "k,probability\n";
    for (std::size_t k = 0; k < pmf.size(); ++k)
        out << k << ',' << fmt_real(pmf[k]) << '\n';
    if (!out)
        throw Error(ErrorCategory::IoError, "write failed: " + path);
}

void export_g2_table_csv(const std::vector<G2TableRow>& rows,
                         const std::string& path) {
    auto out = open_out(path);
    out << "nbar,modes,g2,per_mode_mean,g2_from_per_mode_exact,"
           "g2_from_per_mode_approx\n";
    for (const auto& r : rows)
        out << fmt_real(r.nbar) << ',' << fmt_real(r.modes) << ','
            << fmt_real(r.g2) << ',' << fmt_real(r.per_mode) << ','
            << fmt_real(r.g2_exact) << ',' << fmt_real(r.g2_approx) << '\n';
    if (!out)
        throw Error(ErrorCategory::IoError, "write failed: " + path);
}

} // namespace sfmc
