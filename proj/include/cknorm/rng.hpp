#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cknorm {

/// Deterministic random source for the property suites.
///
/// The core engine is std::mt19937_64, whose output sequence is pinned by
/// the C++ standard, and all derived draws below avoid std::*_distribution
/// (those are implementation-defined), so identical seeds give identical
/// case streams on every platform.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n) by rejection; n = 0 is an error in the caller.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        for (;;) {
            const std::uint64_t x = engine_();
            if (x < limit) return x % n;
        }
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

    bool chance(double p) { return real01() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(below(v.size()))];
    }

private:
    std::mt19937_64 engine_;
};

/// Stable per-case seed derivation (splitmix64 over a fold of the inputs).
std::uint64_t derive_seed(std::uint64_t master, const std::string& label, std::uint64_t index);

} // namespace cknorm
