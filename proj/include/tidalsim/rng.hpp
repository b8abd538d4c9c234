#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace tidalsim {

/// Stateless 64-bit finalizer (splitmix64 output function).
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic splitmix64 generator with Box-Muller normals.
///
/// Implemented from explicit formulas rather than <random> distributions so
/// that streams are reproducible across standard libraries. Independent
/// streams are derived from a (seed, stream id) pair, which keeps batch
/// generation order-independent: unit i always sees the same draws no matter
/// how work is scheduled.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(mix64(mix64(seed + 0x9E3779B97F4A7C15ull) ^
                         (stream_id + 0x632BE59BD9B4E019ull)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    /// Standard normal deviate (Box-Muller, pairs cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // (0,1] for the log argument
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Stage-local seed derivation so one top-level seed drives every stage.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage) {
    return mix64(mix64(seed ^ 0xA0761D6478BD642Full) + stage);
}

}  // namespace tidalsim
