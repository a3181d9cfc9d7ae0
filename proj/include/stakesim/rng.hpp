#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace stakesim {

// splitmix64 finalizer; also the child-seed mixing primitive.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic random stream: the mt19937_64 engine (seeding is fully
// specified by the standard), uniforms from the top 53 bits, and normals
// via the trigonometric Box-Muller transform, consuming exactly two
// uniforms per variate. Identical seeds give identical sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal(double mu, double sigma) {
        const double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Seed for ensemble member `index`: splitmix64(master ^ splitmix64(index)).
    static constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
        return splitmix64(master ^ splitmix64(index));
    }

    static constexpr const char* name() { return "mt19937_64+box-muller"; }

private:
    std::mt19937_64 engine_;
};

}  // namespace stakesim
