#include "folio/rng.hpp"

#include <cmath>
#include <numbers>

#include "folio/errors.hpp"

namespace folio {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    // Expand the seed through splitmix64 as recommended by the xoshiro authors.
    std::uint64_t s = seed;
    for (auto& w : state_) {
        s += 0x9e3779b97f4a7c15ull;
        w = mix64(s);
    }
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    // 53 high bits -> double in [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int Rng::uniform_int(int n) {
    if (n <= 0) throw ContractError("uniform_int requires n > 0");
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % bound);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::vector<double> Rng::simplex(int n) {
    if (n <= 0) throw ContractError("simplex requires n > 0");
    // -log(U) gives Exp(1) draws; normalizing yields a flat Dirichlet.
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& wi : w) {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        wi = -std::log(u);
        total += wi;
    }
    for (auto& wi : w) wi /= total;
    return w;
}

Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t p : path) h = mix64(h ^ mix64(p));
    return Rng(h);
}

} // namespace folio
