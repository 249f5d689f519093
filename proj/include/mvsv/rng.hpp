#pragma once

#include <cstdint>
#include <random>

namespace mvsv {

/// Seedable 64-bit random stream (Mersenne Twister, mt19937_64).
///
/// Streams are reproducible within one build: equal seeds give equal
/// sequences. `split(i)` derives an independent child stream by hashing the
/// parent seed with the stream index through SplitMix64, which is how the
/// CLI seeds concurrent chains.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    RngStream split(std::uint64_t stream_index) const;

    /// Uniform draw on the open interval (0, 1).
    double uniform();
    double std_normal() { return normal_(engine_); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace mvsv
