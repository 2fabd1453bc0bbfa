#pragma once

#include <cstdint>
#include <string>

namespace rrp {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter) through a splitmix64-style mix, so sequences are
/// reproducible across platforms and independent of call interleaving.
/// There is no global RNG anywhere in the library.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);
    CounterRng(std::uint64_t seed, const std::string& stream_name);

    /// Derives an independent generator for a named substream.
    CounterRng fork(const std::string& substream) const;
    CounterRng fork(std::uint64_t substream) const;

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double next_unit();
    /// Standard normal via the Box-Muller transform (two uniforms per draw).
    double next_gaussian();

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rrp
