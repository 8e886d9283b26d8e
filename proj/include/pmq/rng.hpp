#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace pmq {

/// Philox4x32-10 counter-based block cipher (Salmon et al., Random123).
/// Pure function of (counter, key); no state.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter apply(Counter ctr, Key key);
};

inline constexpr std::string_view kGeneratorName = "philox4x32-10";

/// Maps 64 random bits to a double in the open interval (0, 1).
inline double to_unit_open(std::uint64_t bits)
{
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// One reproducible random stream, identified by (seed, streamIndex).
///
/// Block k of the stream is Philox(counter = {k_lo, k_hi, stream_lo, stream_hi},
/// key = {seed_lo, seed_hi}), so streams never share counters and any
/// (seed, stream) pair can be regenerated independently of every other one.
/// Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t streamIndex);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t streamIndex() const { return stream_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    /// Uniform double in (0, 1).
    double uniform() { return to_unit_open((*this)()); }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
};

}  // namespace pmq
