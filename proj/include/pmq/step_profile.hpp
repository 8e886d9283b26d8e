#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pmq {

/// Right-continuous integer step function on [lo, hi].
///
/// breakpoints b_0 = lo < b_1 < ... < b_k; value v_i holds on [b_i, b_{i+1})
/// and the last value on [b_k, hi]. Canonical: adjacent values differ.
class StepProfile {
public:
    StepProfile() = default;

    /// Builds the canonical form, merging equal adjacent values.
    StepProfile(std::vector<double> breakpoints, std::vector<std::int64_t> values, double hi = 1.0);

    /// Profile of a sum of indicator functions of [a, b) (right-closed when
    /// b == hi), one per interval.
    static StepProfile from_intervals(const std::vector<std::pair<double, double>>& intervals, double lo,
                                      double hi);

    std::int64_t eval(double s) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<std::int64_t>& values() const { return values_; }
    double upper() const { return hi_; }
    std::size_t segments() const { return values_.size(); }

    struct Maximum {
        std::int64_t value = 0;
        double from = 0.0;  ///< argmax interval [from, to)
        double to = 1.0;
    };
    /// Largest value and the first segment attaining it.
    Maximum maximum() const;

private:
    std::vector<double> breakpoints_;
    std::vector<std::int64_t> values_;
    double hi_ = 1.0;
};

}  // namespace pmq
