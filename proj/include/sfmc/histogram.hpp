#pragma once

#include <cstdint>
#include <vector>

namespace sfmc {

/// Uniform-bin histogram with integer counts.  Values outside the edge
/// range are discarded on accumulation.
class Histogram {
  public:
    Histogram() = default;
    Histogram(double min, double max, int bins);

    void add(double value);
    void add_count(int bin, std::uint64_t count);

    double min() const { return min_; }
    double max() const { return max_; }
    int bins() const { return static_cast<int>(counts_.size()); }
    double bin_width() const { return (max_ - min_) / bins(); }
    double bin_low(int i) const { return min_ + i * bin_width(); }
    double bin_high(int i) const { return min_ + (i + 1) * bin_width(); }
    double bin_center(int i) const { return min_ + (i + 0.5) * bin_width(); }
    std::vector<double> edges() const;

    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    bool same_binning(const Histogram& other) const;

    bool operator==(const Histogram& other) const {
        return same_binning(other) && counts_ == other.counts_;
    }

    /// Element-wise sum; throws InvalidInput on mismatched edges.
    friend Histogram merge(const Histogram& a, const Histogram& b);

  private:
    double min_ = 0.0;
    double max_ = 1.0;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

Histogram merge(const Histogram& a, const Histogram& b);

} // namespace sfmc
