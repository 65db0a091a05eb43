#pragma once

#include <cmath>
#include <cstdint>

namespace ich {

// Counter-based deterministic generator (SplitMix64 core). Every random
// quantity in the project is a pure function of (seed, stream, counter),
// so reruns and concurrent sweeps are reproducible bit-for-bit.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t next_u64() {
        std::uint64_t mixed = splitmix64(seed_ ^ splitmix64(stream_ * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
        return splitmix64(mixed + counter_++);
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [-1,1)
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    // standard normal via Box-Muller (always consumes two uniforms)
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_;
};

} // namespace ich
