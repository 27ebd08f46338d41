#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lanpower {

/// Deterministic Gaussian stream: mt19937_64 plus a hand-rolled Box-Muller
/// transform. std::normal_distribution is avoided because its draw sequence
/// is implementation-defined; this class pins the exact sequence to the code.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) { reseed(seed, 0, 0, 0); }

    /// Stream derived from a master seed and a path (e.g. n-index, a-index,
    /// replicate index), so concurrent replicates get independent streams.
    GaussianStream(std::uint64_t master, std::uint64_t k1, std::uint64_t k2,
                   std::uint64_t k3) {
        reseed(master, k1, k2, k3);
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; draws two uniforms per pair.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586477 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Sub-seed for a nested stream (e.g. the bootstrap inside a replicate).
    std::uint64_t draw_seed() { return eng_(); }

    std::uint64_t id() const { return id_; }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    void reseed(std::uint64_t master, std::uint64_t k1, std::uint64_t k2,
                std::uint64_t k3) {
        id_ = mix(mix(mix(mix(master) ^ k1) ^ k2) ^ k3);
        std::seed_seq seq{
            static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
            static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32),
            static_cast<std::uint32_t>(k2), static_cast<std::uint32_t>(k2 >> 32),
            static_cast<std::uint32_t>(k3), static_cast<std::uint32_t>(k3 >> 32)};
        eng_.seed(seq);
        has_spare_ = false;
        spare_ = 0.0;
    }

    std::mt19937_64 eng_;
    std::uint64_t id_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lanpower
