#ifndef FHD_BASE_SPACE_HPP
#define FHD_BASE_SPACE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "fhd/types.hpp"

namespace fhd {

// Compact parameter spaces. A small closed catalogue of parametric models
// instead of an abstract metric space: every example we run lives in one of
// these, and compactness becomes a checkable property.
enum class SpaceKind { closed_disc, circle, closed_interval, finite_set };

struct BaseSpace {
    SpaceKind kind = SpaceKind::finite_set;
    double radius = 0.0;                       // closed_disc, circle
    double lo = 0.0, hi = 0.0;                 // closed_interval (real segment)
    std::vector<cplx> points{cplx(0.0, 0.0)};  // finite_set

    bool contains(const cplx& lambda, double tol = 1e-9) const;
    double distance(const cplx& a, const cplx& b) const;

    // Deterministic dense sample of the space, boundary included. For the
    // finite set the full point list is returned regardless of n.
    std::vector<cplx> sample(std::size_t n) const;

    static BaseSpace disc(double rho);
    static BaseSpace circle_of(double rho);
    static BaseSpace interval(double lo, double hi);
    static BaseSpace finite(std::vector<cplx> pts);
};

enum class MapKind { identity, contraction, rotation, permutation };

struct BaseMap {
    MapKind kind = MapKind::identity;
    cplx c{1.0, 0.0};                // contraction factor, |c| <= 1
    double theta = 0.0;              // rotation angle
    std::vector<std::size_t> perm;   // permutation of finite-set indices

    cplx apply(const BaseSpace& space, const cplx& lambda) const;

    static BaseMap identity_map();
    static BaseMap contraction_by(cplx factor);
    static BaseMap rotation_by(double theta);
    static BaseMap permutation_of(std::vector<std::size_t> perm);
};

// True when every point of the space has a sigma-preimage. Strict
// contractions (|c| < 1) are the only catalogue members that fail this;
// the Holder continuity routine requires it.
bool is_surjective(const BaseMap& map);

// [lambda, sigma(lambda), ..., sigma^{n-1}(lambda)], length n.
// Throws domain_error when lambda lies outside the space.
std::vector<cplx> sigma_orbit(const BaseSpace& space, const BaseMap& map, const cplx& lambda,
                              std::size_t n);

// Sampled structural checks run at construction time: sigma maps the space
// into itself, and a contraction's orbits reach 0. Throws
// unsupported_configuration on failure.
void validate_base(const BaseSpace& space, const BaseMap& map);

std::string to_string(SpaceKind k);
std::string to_string(MapKind k);

}  // namespace fhd

#endif
