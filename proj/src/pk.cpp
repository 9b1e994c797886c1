#include "fhd/pk.hpp"

#include <algorithm>
#include <cmath>

#include "fhd/util/parallel.hpp"
#include "fhd/util/rng.hpp"

namespace fhd {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double vec_norm(const PkVec& x) {
    double s = 0.0;
    for (const auto& c : x) s += std::norm(c);
    return std::sqrt(s);
}

PkVec normalized(const PkVec& x, double n) {
    PkVec u = x;
    for (auto& c : u) c /= n;
    return u;
}

// deterministic unit-sphere sample set; axis-adjacent but never axis-exact,
// so measured extrema stay strictly inside the true range
std::vector<PkVec> sphere_samples_for(int k, std::size_t count, std::uint64_t seed) {
    std::vector<PkVec> out;
    out.reserve(count + 4096);
    if (k == 1) {
        // offset grid in (theta, phi1, phi2); theta never hits 0, pi/4, pi/2
        const std::size_t nt = 48, nph = 10;
        for (std::size_t it = 0; it < nt; ++it) {
            const double theta = (static_cast<double>(it) + 0.5) / nt * (kTwoPi / 4.0);
            for (std::size_t p1 = 0; p1 < nph; ++p1)
                for (std::size_t p2 = 0; p2 < nph; ++p2) {
                    const double a1 = kTwoPi * p1 / nph, a2 = kTwoPi * p2 / nph;
                    out.push_back(PkVec{std::cos(theta) * cplx(std::cos(a1), std::sin(a1)),
                                        std::sin(theta) * cplx(std::cos(a2), std::sin(a2))});
                }
        }
    }
    Rng rng(seed, 0x9c31, 0);
    while (out.size() < count) {
        PkVec v(static_cast<std::size_t>(k) + 1);
        double n = 0.0;
        for (auto& c : v) {
            c = rng.gaussian();
            n += std::norm(c);
        }
        n = std::sqrt(n);
        if (n < 1e-6) continue;
        for (auto& c : v) c /= n;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

void PkSkewSystem::validate() {
    validate_base(space, map);
    if (k < 1 || k > 3) throw std::invalid_argument("k must lie in [1, 3]");
    if (degree < 2 || degree > 8) throw std::invalid_argument("degree must lie in [2, 8]");
    if (components.size() != static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("need k+1 coordinate polynomials");
    for (const auto& comp : components) {
        for (const auto& t : comp.terms) {
            if (t.exps.size() != static_cast<std::size_t>(k) + 1)
                throw std::invalid_argument("term exponent list has wrong length");
            unsigned s = 0;
            for (unsigned e : t.exps) s += e;
            if (s != static_cast<unsigned>(degree))
                throw std::invalid_argument("term is not homogeneous of the map degree");
        }
    }
    // homogeneity on random samples (structural, exact up to rounding)
    Rng rng(0xf00d, 0x77, 0);
    const auto lambdas = space.sample(8);
    for (const auto& lam : lambdas) {
        const PkCoeffs fc = eval_pk_coeffs(*this, lam);
        for (int rep = 0; rep < 8; ++rep) {
            PkVec x(static_cast<std::size_t>(k) + 1);
            for (auto& c : x) c = rng.gaussian();
            const cplx scale = rng.gaussian();
            PkVec xs = x;
            for (auto& c : xs) c *= scale;
            const PkVec fx = pk_apply(fc, x);
            const PkVec fxs = pk_apply(fc, xs);
            cplx pow_scale(1.0, 0.0);
            for (int i = 0; i < degree; ++i) pow_scale *= scale;
            for (std::size_t i = 0; i < fx.size(); ++i) {
                const double err = std::abs(fxs[i] - pow_scale * fx[i]);
                const double mag = std::abs(pow_scale * fx[i]) + 1.0;
                if (err > 1e-9 * mag)
                    throw std::invalid_argument("homogeneity check failed for a component");
            }
        }
    }
    // nondegeneracy on sphere samples
    for (const auto& lam : lambdas) {
        const PkCoeffs fc = eval_pk_coeffs(*this, lam);
        for (const auto& u : sphere_samples_for(k, 2000, 0xbeef)) {
            if (vec_norm(pk_apply(fc, u)) < 1e-9)
                throw std::invalid_argument("possible degeneracy: ||F|| ~ 0 on the sphere");
        }
    }
}

PkCoeffs eval_pk_coeffs(const PkSkewSystem& sys, const cplx& lambda) {
    PkCoeffs fc;
    fc.k = sys.k;
    fc.degree = sys.degree;
    fc.comps.resize(sys.components.size());
    for (std::size_t c = 0; c < sys.components.size(); ++c) {
        for (const auto& t : sys.components[c].terms) {
            PkCoeffs::Term term;
            term.coef = t.coef.eval(lambda);
            for (std::size_t i = 0; i < t.exps.size(); ++i)
                term.exps[i] = static_cast<std::uint8_t>(t.exps[i]);
            fc.comps[c].push_back(term);
        }
    }
    return fc;
}

PkVec pk_apply(const PkCoeffs& fc, const PkVec& x) {
    PkVec out(fc.comps.size(), cplx(0.0, 0.0));
    for (std::size_t c = 0; c < fc.comps.size(); ++c) {
        cplx acc(0.0, 0.0);
        for (const auto& t : fc.comps[c]) {
            cplx v = t.coef;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::uint8_t e = 0; e < t.exps[i]; ++e) v *= x[i];
            acc += v;
        }
        out[c] = acc;
    }
    return out;
}

GrowthConstants estimate_growth(const PkSkewSystem& sys, std::size_t sphere_samples,
                                std::uint64_t seed) {
    const auto lambdas = sys.space.sample(32);
    const auto samples = sphere_samples_for(sys.k, sphere_samples, seed);

    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    for (const auto& lam : lambdas) {
        const PkCoeffs fc = eval_pk_coeffs(sys, lam);
        for (const auto& u : samples) {
            const double n = vec_norm(pk_apply(fc, u));
            mn = std::min(mn, n);
            mx = std::max(mx, n);
        }
    }
    if (mn < 1e-9)
        throw std::runtime_error("estimate_growth: sphere minimum ~ 0, degenerate lift suspected");

    GrowthConstants g;
    g.l = 0.95 * mn;  // outward safety margins
    g.L = 1.05 * mx;

    // per-step ratio constant: ||F(w)||/||w||^d is scale free, so the sphere
    // range already bounds it; fold in a measured orbit sweep anyway
    double step_max = std::max(g.L, 1.0 / g.l);
    Rng rng(seed, 0x9c32, 1);
    for (int rep = 0; rep < 64; ++rep) {
        const cplx lam = lambdas[static_cast<std::size_t>(rng.next_u64() % lambdas.size())];
        PkCoeffs fc = eval_pk_coeffs(sys, lam);
        PkVec u = samples[static_cast<std::size_t>(rng.next_u64() % samples.size())];
        cplx cur_lam = lam;
        for (int step = 0; step < 12; ++step) {
            const PkVec w = pk_apply(fc, u);
            const double n = vec_norm(w);
            step_max = std::max(step_max, std::max(n, 1.0 / n));
            u = normalized(w, n);
            cur_lam = sys.map.apply(sys.space, cur_lam);
            fc = eval_pk_coeffs(sys, cur_lam);
        }
    }
    g.C = step_max;
    const double ed = 1.0 / (sys.degree - 1.0);
    g.r = std::pow(2.0 * g.L, -ed);
    g.R = std::pow(2.0 * g.l, -ed);
    return g;
}

PkGreenValue green_pk(const PkSkewSystem& sys, const cplx& lambda, const PkVec& x, double tol,
                      const GrowthConstants& growth) {
    if (!(tol > 0.0)) throw std::invalid_argument("green_pk: tol must be positive");
    PkGreenValue out;
    const double n0 = vec_norm(x);
    if (n0 == 0.0) {
        out.value = -std::numeric_limits<double>::infinity();
        return out;
    }
    const double d = static_cast<double>(sys.degree);
    const double logC = std::log(std::max(growth.C, 1.0 + 1e-12));
    double s = std::log(n0);
    PkVec u = normalized(x, n0);
    cplx lam = lambda;
    long n = 0;
    // remaining tail after n steps: sum_{j>n} log C / d^j = log C d^{-n}/(d-1)
    while (logC * std::pow(d, -static_cast<double>(n)) / (d - 1.0) >= tol && n < 100000) {
        const PkCoeffs fc = eval_pk_coeffs(sys, lam);
        const PkVec w = pk_apply(fc, u);
        const double nw = vec_norm(w);
        if (nw < 1e-300) throw std::runtime_error("green_pk: orbit hit a degenerate value");
        s = d * s + std::log(nw);
        u = normalized(w, nw);
        lam = sys.map.apply(sys.space, lam);
        ++n;
    }
    out.value = s * std::pow(d, -static_cast<double>(n));
    out.n_used = static_cast<int>(n);
    out.error_bound = logC * std::pow(d, -static_cast<double>(n)) / (d - 1.0);
    return out;
}

BasinVerdict basin_membership(const PkSkewSystem& sys, const cplx& lambda, const PkVec& x,
                              double tol, const GrowthConstants& growth) {
    const double g = green_pk(sys, lambda, x, tol, growth).value;
    if (g < -tol) return BasinVerdict::inside;
    if (g > tol) return BasinVerdict::outside;
    return BasinVerdict::boundary_band;
}

BasinVerdict orbit_basin_verdict(const PkSkewSystem& sys, const cplx& lambda, const PkVec& x,
                                 const GrowthConstants& growth, int max_steps) {
    const double n0 = vec_norm(x);
    if (n0 == 0.0) return BasinVerdict::inside;
    double s = std::log(n0);
    PkVec u = normalized(x, n0);
    cplx lam = lambda;
    for (int step = 0; step < max_steps; ++step) {
        if (s < std::log(growth.r)) return BasinVerdict::inside;    // contraction regime
        if (s > std::log(growth.R) + 40.0) return BasinVerdict::outside;  // doubling regime
        const PkCoeffs fc = eval_pk_coeffs(sys, lam);
        const PkVec w = pk_apply(fc, u);
        const double nw = vec_norm(w);
        if (nw < 1e-300) return BasinVerdict::boundary_band;
        s = static_cast<double>(sys.degree) * s + std::log(nw);
        u = normalized(w, nw);
        lam = sys.map.apply(sys.space, lam);
    }
    return BasinVerdict::boundary_band;
}

namespace {

double chordal_distance(const PkVec& a, const PkVec& b) {
    cplx ip(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
    return std::sqrt(std::max(0.0, 1.0 - std::norm(ip)));
}

// per-step Fubini-Study derivative magnitude of the renormalized step map at
// unit vector u, by finite differences along a Hermitian-orthogonal tangent
double fs_step_derivative(const PkCoeffs& fc, const PkVec& u, const PkVec& fu_unit) {
    const double eps = 1e-7;
    PkVec t(u.size());
    if (u.size() == 2) {
        t[0] = -std::conj(u[1]);
        t[1] = std::conj(u[0]);
    } else {
        // any unit tangent orthogonal to u
        t.assign(u.size(), cplx(0.0, 0.0));
        std::size_t j = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (std::abs(u[i]) > best) {
                best = std::abs(u[i]);
                j = i;
            }
        const std::size_t o = (j + 1) % u.size();
        t[j] = -std::conj(u[o]);
        t[o] = std::conj(u[j]);
        double nt = vec_norm(t);
        if (nt < 1e-12) {
            t[o] = cplx(1.0, 0.0);
            nt = 1.0;
        }
        for (auto& c : t) c /= nt;
    }
    PkVec up(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) up[i] = u[i] + eps * t[i];
    const double nup = vec_norm(up);
    for (auto& c : up) c /= nup;
    const double din = chordal_distance(u, up);
    if (din < 1e-12) return 1.0;
    const PkVec fup = pk_apply(fc, up);
    const double nf = vec_norm(fup);
    if (nf < 1e-300) return 1.0;
    const double dout = chordal_distance(fu_unit, normalized(fup, nf));
    return dout / din;
}

}  // namespace

FatouResult fatou_detect(const PkSkewSystem& sys, const cplx& lambda, const FatouParams& params,
                         const GrowthConstants& growth, std::uint64_t seed) {
    if (sys.k != 1)
        throw unsupported_configuration("fatou_detect: chart grids are implemented for k = 1");
    const std::size_t res = params.res;
    const double h = 2.0 * params.halfwidth / static_cast<double>(res);
    const double hp = params.probe_step > 0.0 ? params.probe_step : 0.5 * h;

    FatouResult out;
    out.res = res;
    out.harmonic.assign(res * res, 0);
    out.normal.assign(res * res, 0);
    out.indeterminate.assign(res * res, 0);
    out.theta_growth = 0.25 * std::log(static_cast<double>(sys.degree));

    // threshold calibration on the model lift (x_i^d): its chart Green is
    // harmonic away from |z| = 1, so residuals there are pure pipeline noise
    {
        PkSkewSystem model;
        model.space = BaseSpace::finite({cplx(0.0, 0.0)});
        model.map = BaseMap::identity_map();
        model.k = sys.k;
        model.degree = sys.degree;
        model.components.resize(2);
        for (int c = 0; c < 2; ++c) {
            HomogPoly::Term t;
            t.exps = {0, 0};
            t.exps[static_cast<std::size_t>(c)] = static_cast<unsigned>(sys.degree);
            t.coef = CoeffPoly::constant(cplx(1.0, 0.0));
            model.components[static_cast<std::size_t>(c)].terms.push_back(t);
        }
        const GrowthConstants mg = estimate_growth(model, 4000, seed);
        double worst = 0.0;
        auto g_model = [&](const cplx& z) {
            return green_pk(model, cplx(0.0, 0.0), PkVec{cplx(1.0, 0.0), z}, params.green_tol, mg)
                .value;
        };
        for (double radius : {0.4, 1.8}) {
            for (int i = 0; i < 8; ++i) {
                const double a = kTwoPi * i / 8.0;
                const cplx z(radius * std::cos(a), radius * std::sin(a));
                const cplx e(std::cos(a * 0.7), std::sin(a * 0.7));
                const double r = std::abs(g_model(z + hp * e) + g_model(z - hp * e) +
                                          g_model(z + hp * e * cplx(0.0, 1.0)) +
                                          g_model(z - hp * e * cplx(0.0, 1.0)) - 4.0 * g_model(z));
                worst = std::max(worst, r);
            }
        }
        out.theta_harm = 10.0 * std::max(worst, 1e-14);
    }

    const PkCoeffs fc0 = eval_pk_coeffs(sys, lambda);
    parallel_for(res * res, [&](std::size_t idx) {
        const std::size_t i = idx % res;
        const std::size_t j = idx / res;
        const cplx z = params.center + cplx(-params.halfwidth + (i + 0.5) * h,
                                            -params.halfwidth + (j + 0.5) * h);
        auto g_at = [&](const cplx& w) {
            return green_pk(sys, lambda, PkVec{cplx(1.0, 0.0), w}, params.green_tol, growth).value;
        };

        // (a) pluriharmonicity along probe lines
        bool harmonic = true;
        Rng rng(seed, 0x5a5a, idx);
        const double gc = g_at(z);
        for (int p = 0; p < params.probes && harmonic; ++p) {
            const double a = rng.uniform(0.0, kTwoPi);
            const cplx e(std::cos(a), std::sin(a));
            const double resid = std::abs(g_at(z + hp * e) + g_at(z - hp * e) +
                                          g_at(z + hp * e * cplx(0.0, 1.0)) -
                                          4.0 * gc + g_at(z - hp * e * cplx(0.0, 1.0)));
            if (resid > out.theta_harm) harmonic = false;
        }
        out.harmonic[idx] = harmonic ? 1 : 0;

        // (b) normality proxy: subexponential derivative growth along the orbit
        PkVec u{cplx(1.0, 0.0), z};
        const double nu = vec_norm(u);
        for (auto& c : u) c /= nu;
        cplx lam = lambda;
        PkCoeffs fc = fc0;
        double log_growth = 0.0;
        bool bad = false;
        for (int step = 0; step < params.normality_steps; ++step) {
            const PkVec w = pk_apply(fc, u);
            const double nw = vec_norm(w);
            if (nw < 1e-12) {
                bad = true;
                break;
            }
            const PkVec wu = normalized(w, nw);
            const double rho = fs_step_derivative(fc, u, wu);
            log_growth += std::log(std::max(rho, 1e-300));
            u = wu;
            lam = sys.map.apply(sys.space, lam);
            if (sys.map.kind != MapKind::identity) fc = eval_pk_coeffs(sys, lam);
        }
        if (bad) {
            out.indeterminate[idx] = 1;
        } else {
            const double slope = log_growth / params.normality_steps;
            out.normal[idx] = slope < out.theta_growth ? 1 : 0;
        }
    });

    // agreement away from a 2-cell collar around the harmonic-test boundary
    std::vector<std::uint8_t> boundary(res * res, 0);
    for (std::size_t j = 0; j < res; ++j)
        for (std::size_t i = 0; i < res; ++i) {
            const std::uint8_t v = out.harmonic[j * res + i];
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const long ni = static_cast<long>(i) + di;
                    const long nj = static_cast<long>(j) + dj;
                    if (ni < 0 || nj < 0 || ni >= static_cast<long>(res) ||
                        nj >= static_cast<long>(res))
                        continue;
                    if (out.harmonic[static_cast<std::size_t>(nj) * res +
                                     static_cast<std::size_t>(ni)] != v)
                        boundary[j * res + i] = 1;
                }
        }
    std::vector<std::uint8_t> collar = boundary;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<std::uint8_t> next = collar;
        for (std::size_t j = 0; j < res; ++j)
            for (std::size_t i = 0; i < res; ++i) {
                if (!collar[j * res + i]) continue;
                for (int dj = -1; dj <= 1; ++dj)
                    for (int di = -1; di <= 1; ++di) {
                        const long ni = static_cast<long>(i) + di;
                        const long nj = static_cast<long>(j) + dj;
                        if (ni < 0 || nj < 0 || ni >= static_cast<long>(res) ||
                            nj >= static_cast<long>(res))
                            continue;
                        next[static_cast<std::size_t>(nj) * res + static_cast<std::size_t>(ni)] = 1;
                    }
            }
        collar.swap(next);
    }
    std::size_t agree = 0, total = 0;
    for (std::size_t idx = 0; idx < res * res; ++idx) {
        if (collar[idx] || out.indeterminate[idx]) continue;
        ++total;
        if (out.harmonic[idx] == out.normal[idx]) ++agree;
    }
    out.agreement_off_collar = total == 0 ? 1.0 : static_cast<double>(agree) / total;
    return out;
}

}  // namespace fhd
