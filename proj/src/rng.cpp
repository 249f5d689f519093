#include "mvsv/rng.hpp"

namespace mvsv {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::split(std::uint64_t stream_index) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(stream_index + 1)));
}

double RngStream::uniform() {
    // 53 random mantissa bits, shifted by half a step so 0 and 1 are excluded
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace mvsv
