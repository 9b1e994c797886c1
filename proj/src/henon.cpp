#include "fhd/henon.hpp"

#include <algorithm>
#include <cmath>

#include "fhd/orbit_engine.hpp"

namespace fhd {

cplx CoeffPoly::eval(const cplx& lambda) const {
    cplx s(0.0, 0.0);
    const cplx lc = std::conj(lambda);
    for (const auto& t : terms) {
        cplx v = t.coef;
        for (unsigned i = 0; i < t.pow_lambda; ++i) v *= lambda;
        for (unsigned i = 0; i < t.pow_conj; ++i) v *= lc;
        s += v;
    }
    return s;
}

CoeffPoly CoeffPoly::constant(cplx c) {
    CoeffPoly p;
    if (c != cplx(0.0, 0.0)) p.terms.push_back({0, 0, c});
    return p;
}

CoeffPoly CoeffPoly::linear(cplx c0, cplx c1) {
    CoeffPoly p;
    if (c0 != cplx(0.0, 0.0)) p.terms.push_back({0, 0, c0});
    if (c1 != cplx(0.0, 0.0)) p.terms.push_back({1, 0, c1});
    return p;
}

void SkewHenonSystem::validate() {
    validate_base(space, map);
    if (factors.empty()) throw std::invalid_argument("at least one Henon factor required");
    if (factors.size() > 8) throw std::invalid_argument("factor count cap m <= 8 exceeded");
    long deg = 1;
    for (const auto& f : factors) {
        if (f.degree < 2 || f.degree > 8)
            throw std::invalid_argument("factor degree must lie in [2, 8]");
        if (f.coeffs.size() != static_cast<std::size_t>(f.degree))
            throw std::invalid_argument("factor needs exactly degree coefficient functions");
        deg *= f.degree;
    }
    total_degree = static_cast<int>(deg);
    // a_j must stay away from zero on all of M
    const auto pts = space.sample(256);
    for (std::size_t j = 0; j < factors.size(); ++j) {
        double inf_a = std::numeric_limits<double>::infinity();
        for (const auto& lam : pts) inf_a = std::min(inf_a, std::abs(factors[j].a.eval(lam)));
        if (!(inf_a > 0.0))
            throw std::invalid_argument("a_j vanishes somewhere on the base space");
    }
}

FiberCoeffs eval_fiber_coeffs(const SkewHenonSystem& sys, const cplx& lambda) {
    FiberCoeffs fc;
    fc.factors.reserve(sys.factors.size());
    for (const auto& f : sys.factors) {
        FactorCoeffs c;
        c.degree = f.degree;
        c.c.resize(static_cast<std::size_t>(f.degree));
        for (int i = 0; i < f.degree; ++i) c.c[static_cast<std::size_t>(i)] = f.coeffs[static_cast<std::size_t>(i)].eval(lambda);
        c.a = f.a.eval(lambda);
        fc.factors.push_back(std::move(c));
    }
    return fc;
}

CoeffCache::CoeffCache(const SkewHenonSystem& sys, const cplx& lambda)
    : sys_(sys), constant_(sys.map.kind == MapKind::identity) {
    lambdas_.push_back(lambda);
    coeffs_.push_back(eval_fiber_coeffs(sys, lambda));
}

void CoeffCache::extend(std::size_t n) {
    while (lambdas_.size() <= n) {
        cplx next = sys_.map.apply(sys_.space, lambdas_.back());
        lambdas_.push_back(next);
        coeffs_.push_back(eval_fiber_coeffs(sys_, next));
    }
}

const FiberCoeffs& CoeffCache::at_step(std::size_t n) {
    if (constant_) return coeffs_[0];
    extend(n);
    return coeffs_[n];
}

const cplx& CoeffCache::lambda_at(std::size_t n) {
    if (constant_) return lambdas_[0];
    extend(n);
    return lambdas_[n];
}

cplx poly_eval(const FactorCoeffs& f, const cplx& y) {
    cplx acc(1.0, 0.0);  // monic leading coefficient
    for (int i = f.degree - 1; i >= 0; --i) acc = acc * y + f.c[static_cast<std::size_t>(i)];
    return acc;
}

C2 factor_apply(const FactorCoeffs& f, const C2& z) {
    return C2{z.y, poly_eval(f, z.y) - f.a * z.x};
}

C2 factor_inverse(const FactorCoeffs& f, const C2& z) {
    if (std::abs(f.a) < 1e-12)
        throw domain_error("factor inverse ill-conditioned: |a(lambda)| < 1e-12");
    return C2{(poly_eval(f, z.x) - z.y) / f.a, z.x};
}

C2 fiber_apply(const FiberCoeffs& fc, const C2& z, Side side) {
    C2 cur = z;
    if (side == Side::plus) {
        for (const auto& f : fc.factors) cur = factor_apply(f, cur);
    } else {
        for (auto it = fc.factors.rbegin(); it != fc.factors.rend(); ++it)
            cur = factor_inverse(*it, cur);
    }
    return cur;
}

namespace {

OrbitResult run_orbit(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                      std::size_t n, Side side, bool with_trace) {
    if (!is_finite(z)) throw domain_error("orbit start has non-finite components");
    OrbitResult r;
    r.z = z;
    if (with_trace) r.trace.push_back(z);
    CoeffCache cache(sys, lambda);
    OrbitWalker walker(z);
    const double log_cutoff = std::log(kEscapeCutoff);
    for (std::size_t k = 0; k < n; ++k) {
        if (walker.log_norm_value() > log_cutoff) {
            r.escaped_at = static_cast<int>(k);
            return r;
        }
        walker.step(cache.at_step(k), side);
        r.z = walker.as_c2();
        if (with_trace) r.trace.push_back(r.z);
        if (walker.log_norm_value() > log_cutoff) {
            r.escaped_at = static_cast<int>(k + 1);
            return r;
        }
    }
    return r;
}

}  // namespace

OrbitResult skew_forward(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                         std::size_t n, bool with_trace) {
    return run_orbit(sys, lambda, z, n, Side::plus, with_trace);
}

OrbitResult skew_backward(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                          std::size_t n, bool with_trace) {
    return run_orbit(sys, lambda, z, n, Side::minus, with_trace);
}

OrbitResult inverse_of_forward(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                               std::size_t n) {
    if (!is_finite(z)) throw domain_error("orbit start has non-finite components");
    OrbitResult r;
    r.z = z;
    if (n == 0) return r;
    const auto lams = sigma_orbit(sys.space, sys.map, lambda, n);
    OrbitWalker walker(z);
    const double log_cutoff = std::log(kEscapeCutoff);
    for (std::size_t k = 0; k < n; ++k) {
        if (walker.log_norm_value() > log_cutoff) {
            r.escaped_at = static_cast<int>(k);
            return r;
        }
        const FiberCoeffs fc = eval_fiber_coeffs(sys, lams[n - 1 - k]);
        walker.step(fc, Side::minus);
        r.z = walker.as_c2();
        if (walker.log_norm_value() > log_cutoff) {
            r.escaped_at = static_cast<int>(k + 1);
            return r;
        }
    }
    return r;
}

cplx jacobian_constant(const SkewHenonSystem& sys, const cplx& lambda) {
    if (!sys.space.contains(lambda)) throw domain_error("base point outside the parameter space");
    cplx prod(1.0, 0.0);
    for (const auto& f : sys.factors) prod *= f.a.eval(lambda);
    return prod;
}

}  // namespace fhd
