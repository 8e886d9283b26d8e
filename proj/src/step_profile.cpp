#include "pmq/step_profile.hpp"

#include <algorithm>

#include "pmq/errors.hpp"

namespace pmq {

StepProfile::StepProfile(std::vector<double> breakpoints, std::vector<std::int64_t> values, double hi) : hi_(hi)
{
    if (breakpoints.empty() || breakpoints.size() != values.size()) {
        throw DomainError("step profile: need matching, non-empty breakpoints and values");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1])) {
            throw DomainError("step profile: breakpoints must increase strictly");
        }
        if (i == 0 || values[i] != values_.back()) {
            breakpoints_.push_back(breakpoints[i]);
            values_.push_back(values[i]);
        }
    }
    if (breakpoints_.back() > hi_) {
        throw DomainError("step profile: breakpoint beyond the upper end");
    }
}

StepProfile StepProfile::from_intervals(const std::vector<std::pair<double, double>>& intervals, double lo,
                                        double hi)
{
    // +1 at a, -1 at b; intervals ending at hi never close.
    std::vector<std::pair<double, int>> events;
    events.reserve(2 * intervals.size() + 1);
    for (const auto& [a, b] : intervals) {
        events.emplace_back(a, +1);
        if (b < hi) events.emplace_back(b, -1);
    }
    std::sort(events.begin(), events.end());

    std::vector<double> bps{lo};
    std::vector<std::int64_t> vals{0};
    std::int64_t level = 0;
    std::size_t i = 0;
    while (i < events.size()) {
        const double at = events[i].first;
        while (i < events.size() && events[i].first == at) {
            level += events[i].second;
            ++i;
        }
        if (at == bps.back()) {
            vals.back() = level;
        } else {
            bps.push_back(at);
            vals.push_back(level);
        }
    }
    return StepProfile(std::move(bps), std::move(vals), hi);
}

std::int64_t StepProfile::eval(double s) const
{
    if (values_.empty()) return 0;
    if (s < breakpoints_.front() || s > hi_) {
        throw DomainError("step profile: argument outside the domain");
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

StepProfile::Maximum StepProfile::maximum() const
{
    Maximum best;
    if (values_.empty()) return best;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] > values_[arg]) arg = i;
    }
    best.value = values_[arg];
    best.from = breakpoints_[arg];
    best.to = arg + 1 < breakpoints_.size() ? breakpoints_[arg + 1] : hi_;
    return best;
}

}  // namespace pmq
