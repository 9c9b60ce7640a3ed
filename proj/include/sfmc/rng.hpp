#pragma once

#include <cmath>
#include <cstdint>

#include "sfmc/constants.hpp"
#include "sfmc/errors.hpp"

namespace sfmc {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based random stream.  Output i of stream s under seed k is a pure
/// function of (k, s, i), so results are independent of how work is
/// partitioned across threads.  Mixing is the splitmix64 finalizer applied to
/// a Weyl sequence keyed on (seed, stream).
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(detail::mix64(detail::mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                             detail::mix64(stream * 0xd1342543de82ef95ULL + 1))),
          counter_(0) {}

    std::uint64_t next_u64() {
        return detail::mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    /// Standard normal deviate (Box-Muller).
    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * constants::pi * u2);
    }

    /// Gamma deviate with the given shape and unit scale
    /// (Marsaglia-Tsang; boosted for shape < 1).
    double gamma(double shape) {
        if (!(shape > 0.0))
            throw_invalid("gamma sampler requires shape > 0");
        if (shape < 1.0) {
            double u = uniform_pos();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0)
                continue;
            double v = t * t * t;
            double u = uniform_pos();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2)
                return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

    /// Poisson deviate by the multiplication method; suitable for the small
    /// means this engine operates at.
    std::uint64_t poisson(double mean) {
        if (mean < 0.0)
            throw_invalid("poisson sampler requires mean >= 0");
        if (mean == 0.0)
            return 0;
        if (mean > 600.0)
            throw Error(ErrorCategory::NumericFailure,
                        "poisson mean too large for multiplication method");
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = uniform();
        while (p > limit) {
            ++k;
            p *= uniform();
        }
        return k;
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace sfmc
