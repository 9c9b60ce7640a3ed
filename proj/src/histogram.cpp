#include "sfmc/histogram.hpp"

#include <cmath>

#include "sfmc/errors.hpp"

namespace sfmc {

Histogram::Histogram(double min, double max, int bins)
    : min_(min), max_(max), counts_(bins > 0 ? bins : 0, 0) {
    if (bins <= 0)
        throw_invalid("histogram needs a positive bin count");
    if (!(max > min))
        throw_invalid("histogram needs max > min");
}

void Histogram::add(double value) {
    if (value < min_ || value >= max_)
        return;
    int bin = static_cast<int>((value - min_) / bin_width());
    if (bin >= bins())
        bin = bins() - 1;
    ++counts_[bin];
    ++total_;
}

void Histogram::add_count(int bin, std::uint64_t count) {
    if (bin < 0 || bin >= bins())
        throw_invalid("bin index out of range");
    counts_[bin] += count;
    total_ += count;
}

std::vector<double> Histogram::edges() const {
    std::vector<double> e(bins() + 1);
    for (int i = 0; i <= bins(); ++i)
        e[i] = min_ + i * bin_width();
    return e;
}

bool Histogram::same_binning(const Histogram& other) const {
    return min_ == other.min_ && max_ == other.max_ &&
           counts_.size() == other.counts_.size();
}

Histogram merge(const Histogram& a, const Histogram& b) {
    if (!a.same_binning(b))
        throw_invalid("cannot merge histograms with different edges");
    Histogram out = a;
    for (std::size_t i = 0; i < out.counts_.size(); ++i)
        out.counts_[i] += b.counts_[i];
    out.total_ += b.total_;
    return out;
}

} // namespace sfmc
