#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace srrw {

// splitmix64 finalizer. Used to derive independent per-run seeds from a base
// seed and a run counter, so ensemble results do not depend on which worker
// executes which run.
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform integer in [0, bound). Rejection sampling on the top of the 64-bit
// range; avoids std::uniform_int_distribution, whose output differs between
// standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform point on the interior of the probability simplex (symmetric
// Dirichlet with unit concentration), via normalized exponentials.
inline std::vector<double> dirichlet_uniform(std::mt19937_64& rng, int n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& v : x) {
        double u;
        do {
            u = uniform_unit(rng);
        } while (u <= 0.0);
        v = -std::log(u);
        total += v;
    }
    for (auto& v : x) v /= total;
    return x;
}

} // namespace srrw
