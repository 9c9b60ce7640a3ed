#pragma once

#include <string>
#include <vector>

#include "sfmc/analysis.hpp"
#include "sfmc/histogram.hpp"

namespace sfmc {

/// Histogram rows as `bin_low,bin_high,count`; reals with 17 significant
/// digits, '\n' newlines, locale-independent.
void export_histogram_csv(const Histogram& hist, const std::string& path);

/// Lossless inverse of export_histogram_csv.
Histogram import_histogram_csv(const std::string& path);

void export_scan_csv(const std::vector<ScanPoint>& points,
                     const std::string& path);

/// Rows `k,probability` for a count pmf.
void export_pmf_csv(const std::vector<double>& pmf, const std::string& path);

struct G2TableRow {
    double nbar;
    double modes;
    double g2;
    double per_mode;
    double g2_exact;
    double g2_approx;
};

void export_g2_table_csv(const std::vector<G2TableRow>& rows,
                         const std::string& path);

} // namespace sfmc
