#pragma once

#include <cstdint>
#include <cmath>
#include <utility>

namespace nsalpha {

// Stateless counter-based generator: every draw is a pure function of
// (master seed, counter tuple). Trajectories for different alpha levels can
// therefore consume bit-identical Wiener increments, and draws are
// independent of evaluation order.
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t word(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                       std::uint64_t d) const {
        std::uint64_t h = mix(seed_);
        h = mix(h ^ a);
        h = mix(h ^ b);
        h = mix(h ^ c);
        h = mix(h ^ d);
        return h;
    }

    // Uniform in (0,1].
    double uniform(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) const {
        return (static_cast<double>(word(a, b, c, d) >> 11) + 1.0) * 0x1.0p-53;
    }

    // Two independent standard normals via Box-Muller from counters
    // (a, b, c, 0) and (a, b, c, 1).
    std::pair<double, double> gaussian_pair(std::uint64_t a, std::uint64_t b,
                                            std::uint64_t c) const {
        const double u1 = uniform(a, b, c, 0);
        const double u2 = uniform(a, b, c, 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

   private:
    std::uint64_t seed_;
};

}  // namespace nsalpha
