#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace kdv2 {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

/// Japanese bracket <x> = sqrt(1+x^2).
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Deterministic RNG used by every stochastic harness. Draws are derived
/// from raw mt19937_64 output so streams are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double a, double b) {
        const double u = double(gen_() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

    double normal() {
        // Box-Muller; cache the second deviate.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(1e-300, 1.0);
        double u2 = uniform(0.0, 2.0 * pi);
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(u2);
        have_spare_ = true;
        return r * std::cos(u2);
    }

    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Thread budget: KDV2_THREADS env var, else hardware concurrency.
unsigned thread_budget();

/// Runs fn(begin, end) over [0,n) split across the thread budget.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

/// FNV-1a over a string; used for config provenance hashes.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace kdv2
