#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ntband {

// Deterministic per-path random streams.
//
// Path i of an ensemble draws from std::mt19937_64 seeded with
//   path_seed(base_seed, i) = splitmix64(splitmix64(base_seed) ^ splitmix64(~i))
// and converts raw 64-bit words to standard normals via Box-Muller. The
// derivation is fixed so ensembles are reproducible path by path and safe to
// farm out across any number of workers.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t path_seed(std::uint64_t base_seed, std::uint64_t path_index) {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(~path_index));
}

class NormalRng {
public:
    explicit NormalRng(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1)
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586477 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    void fill(std::span<double> out) {
        for (double& v : out) {
            v = next();
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace ntband
