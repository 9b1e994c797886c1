#include "fhd/base_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fhd {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::size_t nearest_index(const std::vector<cplx>& pts, const cplx& lambda) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double d = std::abs(pts[i] - lambda);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}
}  // namespace

BaseSpace BaseSpace::disc(double rho) {
    BaseSpace s;
    s.kind = SpaceKind::closed_disc;
    s.radius = rho;
    s.points.clear();
    return s;
}

BaseSpace BaseSpace::circle_of(double rho) {
    BaseSpace s;
    s.kind = SpaceKind::circle;
    s.radius = rho;
    s.points.clear();
    return s;
}

BaseSpace BaseSpace::interval(double lo, double hi) {
    BaseSpace s;
    s.kind = SpaceKind::closed_interval;
    s.lo = lo;
    s.hi = hi;
    s.points.clear();
    return s;
}

BaseSpace BaseSpace::finite(std::vector<cplx> pts) {
    BaseSpace s;
    s.kind = SpaceKind::finite_set;
    s.points = std::move(pts);
    if (s.points.empty()) throw std::invalid_argument("finite base space needs at least one point");
    return s;
}

bool BaseSpace::contains(const cplx& lambda, double tol) const {
    switch (kind) {
        case SpaceKind::closed_disc:
            return std::abs(lambda) <= radius + tol;
        case SpaceKind::circle:
            return std::abs(std::abs(lambda) - radius) <= tol;
        case SpaceKind::closed_interval:
            return std::abs(lambda.imag()) <= tol && lambda.real() >= lo - tol &&
                   lambda.real() <= hi + tol;
        case SpaceKind::finite_set:
            for (const auto& p : points)
                if (std::abs(p - lambda) <= tol) return true;
            return false;
    }
    return false;
}

double BaseSpace::distance(const cplx& a, const cplx& b) const { return std::abs(a - b); }

std::vector<cplx> BaseSpace::sample(std::size_t n) const {
    std::vector<cplx> out;
    switch (kind) {
        case SpaceKind::closed_disc: {
            if (radius == 0.0) {
                out.emplace_back(0.0, 0.0);
                break;
            }
            // sunflower layout plus an explicit boundary ring; extremal
            // coefficients usually sit on |lambda| = radius
            const double golden = kPi * (3.0 - std::sqrt(5.0));
            std::size_t interior = std::max<std::size_t>(1, (3 * n) / 4);
            for (std::size_t i = 0; i < interior; ++i) {
                double r = radius * std::sqrt((i + 0.5) / interior);
                double t = golden * static_cast<double>(i);
                out.emplace_back(r * std::cos(t), r * std::sin(t));
            }
            std::size_t ring = std::max<std::size_t>(8, n - interior);
            for (std::size_t i = 0; i < ring; ++i) {
                double t = 2.0 * kPi * i / ring;
                out.emplace_back(radius * std::cos(t), radius * std::sin(t));
            }
            break;
        }
        case SpaceKind::circle: {
            std::size_t m = std::max<std::size_t>(8, n);
            for (std::size_t i = 0; i < m; ++i) {
                double t = 2.0 * kPi * i / m;
                out.emplace_back(radius * std::cos(t), radius * std::sin(t));
            }
            break;
        }
        case SpaceKind::closed_interval: {
            std::size_t m = std::max<std::size_t>(2, n);
            for (std::size_t i = 0; i < m; ++i) {
                double t = lo + (hi - lo) * static_cast<double>(i) / (m - 1);
                out.emplace_back(t, 0.0);
            }
            break;
        }
        case SpaceKind::finite_set:
            out = points;
            break;
    }
    return out;
}

BaseMap BaseMap::identity_map() { return BaseMap{}; }

BaseMap BaseMap::contraction_by(cplx factor) {
    if (std::abs(factor) > 1.0 + 1e-12)
        throw std::invalid_argument("contraction factor must satisfy |c| <= 1");
    BaseMap m;
    m.kind = MapKind::contraction;
    m.c = factor;
    return m;
}

BaseMap BaseMap::rotation_by(double theta) {
    BaseMap m;
    m.kind = MapKind::rotation;
    m.theta = theta;
    return m;
}

BaseMap BaseMap::permutation_of(std::vector<std::size_t> perm) {
    BaseMap m;
    m.kind = MapKind::permutation;
    m.perm = std::move(perm);
    std::vector<bool> seen(m.perm.size(), false);
    for (std::size_t i : m.perm) {
        if (i >= m.perm.size() || seen[i]) throw std::invalid_argument("not a permutation table");
        seen[i] = true;
    }
    return m;
}

cplx BaseMap::apply(const BaseSpace& space, const cplx& lambda) const {
    switch (kind) {
        case MapKind::identity:
            return lambda;
        case MapKind::contraction:
            return c * lambda;
        case MapKind::rotation:
            return lambda * cplx(std::cos(theta), std::sin(theta));
        case MapKind::permutation: {
            if (space.kind != SpaceKind::finite_set)
                throw unsupported_configuration("permutation base map needs a finite point set");
            std::size_t i = nearest_index(space.points, lambda);
            if (i >= perm.size()) throw domain_error("permutation table too short for base set");
            return space.points[perm[i]];
        }
    }
    return lambda;
}

bool is_surjective(const BaseMap& map) {
    switch (map.kind) {
        case MapKind::identity:
        case MapKind::rotation:
        case MapKind::permutation:
            return true;
        case MapKind::contraction:
            return std::abs(map.c) >= 1.0 - 1e-12;
    }
    return false;
}

std::vector<cplx> sigma_orbit(const BaseSpace& space, const BaseMap& map, const cplx& lambda,
                              std::size_t n) {
    if (!space.contains(lambda)) throw domain_error("base point outside the parameter space");
    std::vector<cplx> orbit;
    orbit.reserve(n);
    cplx cur = lambda;
    for (std::size_t i = 0; i < n; ++i) {
        orbit.push_back(cur);
        cur = map.apply(space, cur);
    }
    return orbit;
}

void validate_base(const BaseSpace& space, const BaseMap& map) {
    const auto pts = space.sample(64);
    for (const auto& p : pts) {
        cplx q = map.apply(space, p);
        if (!space.contains(q, 1e-9))
            throw unsupported_configuration("sigma does not map the base space into itself");
    }
    if (map.kind == MapKind::contraction && std::abs(map.c) < 1.0 - 1e-12) {
        for (const auto& p : pts) {
            cplx cur = p;
            bool reached = false;
            for (int k = 0; k < 4096; ++k) {
                if (std::abs(cur) < 1e-12 * (1.0 + std::abs(p))) {
                    reached = true;
                    break;
                }
                cur = map.apply(space, cur);
            }
            if (!reached)
                throw unsupported_configuration("contraction orbit failed to reach the fixed point");
        }
    }
}

std::string to_string(SpaceKind k) {
    switch (k) {
        case SpaceKind::closed_disc: return "closed-disc";
        case SpaceKind::circle: return "circle";
        case SpaceKind::closed_interval: return "closed-real-interval";
        case SpaceKind::finite_set: return "finite-point-set";
    }
    return "?";
}

std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::identity: return "identity";
        case MapKind::contraction: return "linear-contraction";
        case MapKind::rotation: return "rotation";
        case MapKind::permutation: return "finite-permutation";
    }
    return "?";
}

}  // namespace fhd
