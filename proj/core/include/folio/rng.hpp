#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace folio {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic xoshiro256++ generator with explicit seeding.
///
/// All randomness in the toolkit flows through this class so that results are
/// reproducible bit-for-bit across platforms (std:: distributions are
/// implementation-defined and are deliberately avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). Requires n > 0.
    int uniform_int(int n);
    /// Standard normal via Box-Muller (cached spare value).
    double normal();
    /// Uniform draw from the probability simplex (flat Dirichlet).
    std::vector<double> simplex(int n);

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Derives a deterministic sub-stream from (seed, path). Streams with
/// different paths are independent; the same path always yields the same
/// stream, which makes parallel and resumed runs order-independent.
Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

} // namespace folio
