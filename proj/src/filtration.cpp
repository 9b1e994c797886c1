#include "fhd/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "fhd/util/parallel.hpp"
#include "fhd/util/rng.hpp"

namespace fhd {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::vector<cplx> circle_points(double radius, std::size_t n) {
    std::vector<cplx> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        out.emplace_back(radius * std::cos(t), radius * std::sin(t));
    }
    return out;
}

// Radii probed for each candidate R: the near-boundary ladder from the
// invariant plus a radially outward sweep.
std::vector<double> probe_radii(double R) {
    std::vector<double> radii;
    for (int i = 0; i <= 6; ++i) radii.push_back(R * (1.0 + std::pow(2.0, -i)));
    for (double f : {1.0, 1.5, 2.0, 4.0, 8.0, 32.0, 1024.0}) radii.push_back(R * f);
    return radii;
}

bool dominance_holds(const std::vector<FiberCoeffs>& coeffs, double R, double a_sup) {
    const std::size_t n_angles = 64;
    for (const auto& fib : coeffs) {
        for (const auto& f : fib.factors) {
            if (std::pow(R, f.degree) <= 2.0 * R) return false;
            for (double r : probe_radii(R)) {
                for (const auto& y : circle_points(r, n_angles)) {
                    const double p = std::abs(poly_eval(f, y));
                    if (p < (2.0 + a_sup) * r) return false;
                    if (p < 0.5 * std::pow(r, f.degree)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

Region classify_region(const C2& z, double R) {
    const double ax = std::abs(z.x);
    const double ay = std::abs(z.y);
    if (ay > ax && ay > R) return Region::v_plus;
    if (ax > ay && ax > R) return Region::v_minus;
    return Region::central;
}

FiltrationData find_radius(const SkewHenonSystem& sys) {
    const auto lambdas = sys.space.sample(64);
    std::vector<FiberCoeffs> coeffs;
    coeffs.reserve(lambdas.size());
    for (const auto& lam : lambdas) coeffs.push_back(eval_fiber_coeffs(sys, lam));

    double a_sup = 0.0;
    for (const auto& fib : coeffs)
        for (const auto& f : fib.factors) a_sup = std::max(a_sup, std::abs(f.a));

    double R = 0.5;
    while (!dominance_holds(coeffs, R, a_sup)) {
        R *= 1.05;
        if (R > 1e6)
            throw std::runtime_error(
                "filtration radius search exhausted R <= 1e6: coefficients too wild");
    }
    FiltrationData filt;
    filt.a_sup = a_sup;
    filt.R = 2.0 * R;  // safety margin absorbing sampling gaps

    // Expansion factor and the per-factor growth calibration, measured on
    // the closed cone extremes |y| in [R, 4R], |x| <= |y|.
    double min_ratio = std::numeric_limits<double>::infinity();
    double eps_log = 0.0;
    std::vector<double> y_radii;
    for (int i = 0; i <= 6; ++i) y_radii.push_back(filt.R * (1.0 + std::pow(2.0, -i)));
    y_radii.push_back(filt.R);
    y_radii.push_back(2.0 * filt.R);
    y_radii.push_back(4.0 * filt.R);
    for (const auto& fib : coeffs) {
        for (double r : y_radii) {
            for (const auto& y0 : circle_points(r, 32)) {
                for (double xs : {0.0, 0.5, 1.0}) {
                    for (const auto& xdir : circle_points(1.0, 16)) {
                        C2 z{xs * std::abs(y0) * xdir, y0};
                        for (const auto& f : fib.factors) {
                            const C2 w = factor_apply(f, z);
                            const double ratio = std::abs(w.y) / std::abs(z.y);
                            min_ratio = std::min(min_ratio, ratio);
                            eps_log = std::max(
                                eps_log, std::abs(std::log(std::abs(w.y)) -
                                                  f.degree * std::log(std::abs(z.y))));
                            z = w;
                        }
                        // mirrored sweep for the backward cone
                        C2 zb{y0, xs * std::abs(y0) * xdir};
                        for (auto it = fib.factors.rbegin(); it != fib.factors.rend(); ++it) {
                            const C2 w = factor_inverse(*it, zb);
                            min_ratio = std::min(min_ratio, std::abs(w.x) / std::abs(zb.x));
                            eps_log = std::max(
                                eps_log, std::abs(std::log(std::abs(w.x)) -
                                                  it->degree * std::log(std::abs(zb.x))));
                            zb = w;
                        }
                    }
                }
            }
        }
    }
    // 0.5% shave absorbs the gap between the sampled minimum and the true
    // infimum on the closed cones.
    filt.rho = std::max(1.0 + 1e-9, 0.995 * min_ratio);
    filt.eps_log = eps_log;
    return filt;
}

EscapeRecord escape_classify(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                             std::size_t N, const FiltrationData& filt, Side side) {
    const Region target = side == Side::plus ? Region::v_plus : Region::v_minus;
    EscapeRecord rec;
    rec.final_point = z;
    CoeffCache cache(sys, lambda);
    C2 cur = z;
    for (std::size_t k = 0; k <= N; ++k) {
        if (classify_region(cur, filt.R) == target) {
            rec.status = side == Side::plus ? EscapeStatus::escaped_plus
                                            : EscapeStatus::escaped_minus;
            rec.step = static_cast<int>(k);
            rec.final_point = cur;
            return rec;
        }
        if (k == N) break;
        if (norm2_sq(cur) > kEscapeCutoff * kEscapeCutoff) {
            // arithmetic escape signal folded into the escaped verdict
            rec.status = side == Side::plus ? EscapeStatus::escaped_plus
                                            : EscapeStatus::escaped_minus;
            rec.step = static_cast<int>(k);
            rec.final_point = cur;
            return rec;
        }
        cur = fiber_apply(cache.at_step(k), cur, side);
    }
    rec.status = EscapeStatus::bounded_through;
    rec.step = static_cast<int>(N);
    rec.final_point = cur;
    return rec;
}

InvarianceReport verify_invariance(const SkewHenonSystem& sys, const FiltrationData& filt,
                                   std::size_t samples, std::uint64_t seed) {
    InvarianceReport rep;
    rep.samples = samples;
    rep.min_growth_margin = std::numeric_limits<double>::infinity();
    const std::size_t m = sys.num_factors();
    const double rho_m = std::pow(filt.rho, static_cast<double>(m));

    const std::size_t chunk = 256;
    const std::size_t nchunks = chunk_count(samples, chunk);
    struct Partial {
        std::size_t region = 0, growth = 0;
        double min_margin = std::numeric_limits<double>::infinity();
        std::vector<InvarianceWitness> witnesses;
    };
    std::vector<Partial> parts(nchunks);

    parallel_for_chunks(samples, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        Partial& part = parts[c];
        for (std::size_t i = b; i < e; ++i) {
            Rng rng(seed, /*tag=*/0x1f1f, i);
            cplx lam;
            switch (sys.space.kind) {
                case SpaceKind::closed_disc: lam = sys.space.radius * rng.unit_disc(); break;
                case SpaceKind::circle: lam = rng.on_circle(sys.space.radius); break;
                case SpaceKind::closed_interval:
                    lam = cplx(rng.uniform(sys.space.lo, sys.space.hi), 0.0);
                    break;
                case SpaceKind::finite_set:
                    lam = sys.space.points[rng.next_u64() % sys.space.points.size()];
                    break;
            }
            const FiberCoeffs fc = eval_fiber_coeffs(sys, lam);

            // strict interior of V_R^+: |y| > R, |x| < |y|
            const double mag = filt.R * (1.0 + std::exp(rng.uniform(std::log(1e-6), std::log(3.0))));
            const cplx y = rng.on_circle(mag);
            const cplx x = rng.uniform(0.0, 1.0 - 1e-9) * mag * rng.on_circle(1.0);
            const C2 z{x, y};
            const C2 w = fiber_apply(fc, z, Side::plus);
            if (classify_region(w, filt.R) != Region::v_plus) {
                part.region++;
                if (part.witnesses.size() < 4) part.witnesses.push_back({lam, z, "forward image left V_R^+"});
            }
            const double margin = std::abs(w.y) / (rho_m * mag);
            part.min_margin = std::min(part.min_margin, margin);
            if (!(std::abs(w.y) > rho_m * mag)) {
                part.growth++;
                if (part.witnesses.size() < 4) part.witnesses.push_back({lam, z, "forward growth below rho^m"});
            }

            // mirrored backward check on V_R^-
            const C2 zb{y, x};
            const C2 wb = fiber_apply(fc, zb, Side::minus);
            if (classify_region(wb, filt.R) != Region::v_minus) {
                part.region++;
                if (part.witnesses.size() < 4) part.witnesses.push_back({lam, zb, "backward image left V_R^-"});
            }
            const double margin_b = std::abs(wb.x) / (rho_m * mag);
            part.min_margin = std::min(part.min_margin, margin_b);
            if (!(std::abs(wb.x) > rho_m * mag)) {
                part.growth++;
                if (part.witnesses.size() < 4) part.witnesses.push_back({lam, zb, "backward growth below rho^m"});
            }
        }
    });

    for (const auto& part : parts) {
        rep.region_violations += part.region;
        rep.growth_violations += part.growth;
        rep.min_growth_margin = std::min(rep.min_growth_margin, part.min_margin);
        for (const auto& w : part.witnesses)
            if (rep.witnesses.size() < 8) rep.witnesses.push_back(w);
    }
    return rep;
}

}  // namespace fhd
