#ifndef FHD_UTIL_RNG_HPP
#define FHD_UTIL_RNG_HPP

#include <cstdint>
#include <random>

#include "fhd/types.hpp"

namespace fhd {

// splitmix64; used to derive independent stream seeds from (seed, tag, index)
// so parallel sampling stays deterministic for any thread count.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return mix64(mix64(seed ^ mix64(tag)) + index);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
        : eng_(stream_seed(seed, tag, index)) {}

    double uniform(double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(eng_);
    }
    double normal() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(eng_);
    }
    std::uint64_t next_u64() { return eng_(); }

    // uniform on the closed unit disc
    cplx unit_disc() {
        double r = std::sqrt(uniform(0.0, 1.0));
        double t = uniform(0.0, 2.0 * 3.14159265358979323846);
        return cplx(r * std::cos(t), r * std::sin(t));
    }
    cplx on_circle(double radius) {
        double t = uniform(0.0, 2.0 * 3.14159265358979323846);
        return cplx(radius * std::cos(t), radius * std::sin(t));
    }
    cplx gaussian() { return cplx(normal(), normal()); }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace fhd

#endif
