#include "fhd/green.hpp"

#include <algorithm>
#include <cmath>

#include "fhd/util/parallel.hpp"
#include "fhd/util/rng.hpp"

namespace fhd {

GreenEvaluator::GreenEvaluator(const SkewHenonSystem& sys, FiltrationData filt, int n_max)
    : sys_(&sys), filt_(filt), n_max_(n_max) {
    // Per-step difference bound: deviations of log|y| accumulate through the
    // factor chain with weight at most m*d, and the norm differs from |y| by
    // at most (1/2) log 2 on the closed cone.
    const double d = static_cast<double>(sys.total_degree);
    const double m = static_cast<double>(sys.num_factors());
    c_step_ = filt_.eps_log * m * d + (1.0 + d) * 0.5 * std::log(2.0);
}

double GreenEvaluator::green_n(const cplx& lambda, const C2& z, std::size_t n, Side side) const {
    CoeffCache cache(*sys_, lambda);
    OrbitWalker w(z);
    for (std::size_t k = 0; k < n; ++k) w.step(cache.at_step(k), side);
    const double ln = w.log_norm_value();
    const double lp = std::max(ln, 0.0);
    return lp * std::pow(static_cast<double>(sys_->total_degree), -static_cast<double>(n));
}

GreenValue GreenEvaluator::green(const cplx& lambda, const C2& z, Side side, double tol) const {
    if (!(tol > 0.0)) throw std::invalid_argument("green: tol must be positive");
    const double d = static_cast<double>(sys_->total_degree);
    CoeffCache cache(*sys_, lambda);
    OrbitWalker w(z);

    long n = 0;
    bool escaped = false;
    while (n <= n_max_) {
        if (w.in_cone(filt_.R, side)) {
            escaped = true;
            break;
        }
        if (n == n_max_) break;
        w.step(cache.at_step(static_cast<std::size_t>(n)), side);
        ++n;
    }
    if (!escaped) {
        GreenValue g;
        g.value = 0.0;
        g.n_used = static_cast<int>(n);
        g.error_bound = 0.0;
        g.side = side;
        g.cap_limited = true;
        return g;
    }

    auto tail = [&](long k) { return c_step_ * std::pow(d, -static_cast<double>(k)) / (d - 1.0); };
    const long hard_cap = n_max_ + 4000;
    while (tail(n) >= tol && n < hard_cap) {
        w.step(cache.at_step(static_cast<std::size_t>(n)), side);
        ++n;
    }
    GreenValue g;
    g.value = std::max(w.log_norm_value(), 0.0) * std::pow(d, -static_cast<double>(n));
    g.n_used = static_cast<int>(n);
    g.error_bound = tail(n);
    g.side = side;
    g.cap_limited = false;
    return g;
}

double GreenEvaluator::u_correction(const cplx& lambda, const C2& z, double tol) const {
    if (classify_region(z, filt_.R) != Region::v_plus)
        throw domain_error("u_correction: point not in V_R^+");
    return green(lambda, z, Side::plus, tol).value - std::log(std::abs(z.y));
}

double GreenEvaluator::pluricomplex_green(const cplx& lambda, const C2& z, double tol) const {
    return std::max(green(lambda, z, Side::plus, tol).value,
                    green(lambda, z, Side::minus, tol).value);
}

double InvarianceResiduals::max() const {
    return std::max(std::max(forward_plus, backward_minus),
                    std::max(shifted_plus, shifted_minus));
}

InvarianceResiduals check_invariance(const GreenEvaluator& green, const cplx& lambda,
                                     std::size_t samples, double tol, std::uint64_t seed) {
    const auto& sys = green.system();
    const double d = static_cast<double>(sys.total_degree);
    const double w = 1.2 * green.filtration().R;
    const cplx lam_next = sys.map.apply(sys.space, lambda);
    const FiberCoeffs fc = eval_fiber_coeffs(sys, lambda);

    const std::size_t chunk = 64;
    const std::size_t nchunks = chunk_count(samples, chunk);
    std::vector<InvarianceResiduals> parts(nchunks);

    parallel_for_chunks(samples, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        InvarianceResiduals& r = parts[c];
        for (std::size_t i = b; i < e; ++i) {
            Rng rng(seed, /*tag=*/0x2e2e, i);
            const C2 z{cplx(rng.uniform(-w, w), rng.uniform(-w, w)),
                       cplx(rng.uniform(-w, w), rng.uniform(-w, w))};
            const C2 fz = fiber_apply(fc, z, Side::plus);
            const C2 bz = fiber_apply(fc, z, Side::minus);

            const double gp = green.green(lambda, z, Side::plus, tol).value;
            const double gm = green.green(lambda, z, Side::minus, tol).value;
            const double gp_next_fz = green.green(lam_next, fz, Side::plus, tol).value;
            const double gm_next_bz = green.green(lam_next, bz, Side::minus, tol).value;
            const double gp_next_z = green.green(lam_next, z, Side::plus, tol).value;
            const double gm_next_z = green.green(lam_next, z, Side::minus, tol).value;
            const double gp_bz = green.green(lambda, bz, Side::plus, tol).value;
            const double gm_fz = green.green(lambda, fz, Side::minus, tol).value;

            r.forward_plus = std::max(r.forward_plus, std::abs(d * gp - gp_next_fz));
            r.backward_minus = std::max(r.backward_minus, std::abs(d * gm - gm_next_bz));
            r.shifted_plus = std::max(r.shifted_plus, std::abs(gp_next_z - d * gp_bz));
            r.shifted_minus = std::max(r.shifted_minus, std::abs(gm_next_z - d * gm_fz));
        }
    });

    InvarianceResiduals out;
    for (const auto& p : parts) {
        out.forward_plus = std::max(out.forward_plus, p.forward_plus);
        out.backward_minus = std::max(out.backward_minus, p.backward_minus);
        out.shifted_plus = std::max(out.shifted_plus, p.shifted_plus);
        out.shifted_minus = std::max(out.shifted_minus, p.shifted_minus);
    }
    return out;
}

double lambda_continuity(const GreenEvaluator& green, const cplx& lambda, const cplx& lambda2,
                         double box_halfwidth, std::size_t res_per_axis, double tol) {
    const auto& sp = green.system().space;
    if (!sp.contains(lambda) || !sp.contains(lambda2))
        throw domain_error("lambda_continuity: base points outside the parameter space");
    const std::size_t r = std::max<std::size_t>(2, res_per_axis);
    const double w = box_halfwidth;
    auto coord = [&](std::size_t i) { return -w + 2.0 * w * static_cast<double>(i) / (r - 1); };
    const std::size_t total = r * r * r * r;

    const std::size_t chunk = std::max<std::size_t>(1, r * r);
    const std::size_t nchunks = chunk_count(total, chunk);
    std::vector<double> sup(nchunks, 0.0);
    parallel_for_chunks(total, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t idx = b; idx < e; ++idx) {
            std::size_t t = idx;
            const std::size_t i0 = t % r; t /= r;
            const std::size_t i1 = t % r; t /= r;
            const std::size_t i2 = t % r; t /= r;
            const std::size_t i3 = t;
            const C2 z{cplx(coord(i0), coord(i1)), cplx(coord(i2), coord(i3))};
            const double a = green.green(lambda, z, Side::plus, tol).value;
            const double b2 = green.green(lambda2, z, Side::plus, tol).value;
            s = std::max(s, std::abs(a - b2));
        }
        sup[c] = s;
    });
    double out = 0.0;
    for (double s : sup) out = std::max(out, s);
    return out;
}

std::vector<ContinuityRow> lambda_continuity_table(const GreenEvaluator& green,
                                                   const cplx& lambda, const cplx& direction,
                                                   double delta0, int levels,
                                                   double box_halfwidth, std::size_t res_per_axis) {
    std::vector<ContinuityRow> rows;
    const cplx dir = direction / std::abs(direction);
    double delta = delta0;
    for (int k = 0; k < levels; ++k) {
        cplx lam2 = lambda + delta * dir;
        if (!green.system().space.contains(lam2)) lam2 = lambda - delta * dir;
        rows.push_back({delta, lambda_continuity(green, lambda, lam2, box_halfwidth, res_per_axis)});
        delta *= 0.5;
    }
    return rows;
}

namespace {

double operator_norm_2x2(const cplx j[2][2]) {
    // largest singular value via the eigenvalues of J^H J
    const double a = std::norm(j[0][0]) + std::norm(j[1][0]);
    const double d = std::norm(j[0][1]) + std::norm(j[1][1]);
    const cplx b = std::conj(j[0][0]) * j[0][1] + std::conj(j[1][0]) * j[1][1];
    const double tr = a + d;
    const double det = a * d - std::norm(b);
    const double disc = std::max(0.0, tr * tr - 4.0 * det);
    return std::sqrt(0.5 * (tr + std::sqrt(disc)));
}

double map_derivative_bound(const SkewHenonSystem& sys, double R) {
    // finite-difference Jacobians of H and H^{-1} sampled over V_R
    double A = 0.0;
    const auto lambdas = sys.space.sample(12);
    const int res = 6;
    const double h = 1e-6 * (1.0 + R);
    for (const auto& lam : lambdas) {
        const FiberCoeffs fc = eval_fiber_coeffs(sys, lam);
        for (int i0 = 0; i0 < res; ++i0)
            for (int i1 = 0; i1 < res; ++i1)
                for (int i2 = 0; i2 < res; ++i2)
                    for (int i3 = 0; i3 < res; ++i3) {
                        auto coord = [&](int i) { return -R + 2.0 * R * (i + 0.5) / res; };
                        const C2 z{cplx(coord(i0), coord(i1)), cplx(coord(i2), coord(i3))};
                        for (Side side : {Side::plus, Side::minus}) {
                            cplx j[2][2];
                            const C2 zxp = fiber_apply(fc, C2{z.x + h, z.y}, side);
                            const C2 zxm = fiber_apply(fc, C2{z.x - h, z.y}, side);
                            const C2 zyp = fiber_apply(fc, C2{z.x, z.y + h}, side);
                            const C2 zym = fiber_apply(fc, C2{z.x, z.y - h}, side);
                            j[0][0] = (zxp.x - zxm.x) / (2.0 * h);
                            j[1][0] = (zxp.y - zxm.y) / (2.0 * h);
                            j[0][1] = (zyp.x - zym.x) / (2.0 * h);
                            j[1][1] = (zyp.y - zym.y) / (2.0 * h);
                            A = std::max(A, operator_norm_2x2(j));
                        }
                    }
    }
    return A;
}

}  // namespace

HolderEstimate holder_estimate(const GreenEvaluator& green, const cplx& lambda,
                               double box_halfwidth, const std::vector<double>& scales,
                               std::size_t pairs_per_scale, std::uint64_t seed) {
    const auto& sys = green.system();
    if (!is_surjective(sys.map))
        throw unsupported_configuration(
            "holder_estimate requires a surjective base map");
    const double R = green.filtration().R;

    HolderEstimate est;
    est.derivative_bound = map_derivative_bound(sys, R);
    const double d = static_cast<double>(sys.total_degree);
    const double denom = std::log(2.0 * est.derivative_bound);
    est.theoretical_exponent = denom <= std::log(d) ? 1.0 : std::min(1.0, std::log(d) / denom);

    // pool of points on the escape-time boundary of K+, found by bisection
    const std::size_t pool_size = 256;
    std::vector<C2> pool;
    pool.reserve(pool_size);
    const int cap = green.cap();
    auto bounded = [&](const C2& z) {
        return escape_classify(sys, lambda, z, static_cast<std::size_t>(cap),
                               green.filtration(), Side::plus)
                   .status == EscapeStatus::bounded_through;
    };
    {
        Rng rng(seed, 0x7a01, 0);
        const double w = std::min(box_halfwidth, R / 2.0);
        std::size_t attempts = 0;
        while (pool.size() < pool_size && attempts < pool_size * 400) {
            ++attempts;
            C2 a{cplx(rng.uniform(-w, w), rng.uniform(-w, w)),
                 cplx(rng.uniform(-w, w), rng.uniform(-w, w))};
            if (!bounded(a)) continue;
            C2 b{a.x, a.y + cplx(0.0, 2.0 * R)};  // deep in V_R^+
            for (int it = 0; it < 60; ++it) {
                const C2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
                (bounded(mid) ? a : b) = mid;
            }
            pool.push_back(a);
        }
    }
    if (pool.empty())
        throw std::runtime_error("holder_estimate: no bounded seeds found in the box");

    // mean log|dG| per separation scale, then a least-squares line
    std::vector<double> xs, ys;
    for (std::size_t si = 0; si < scales.size(); ++si) {
        const double delta = scales[si];
        double acc = 0.0;
        std::size_t cnt = 0;
        const std::size_t chunk = 64;
        const std::size_t nchunks = chunk_count(pairs_per_scale, chunk);
        std::vector<double> acc_part(nchunks, 0.0);
        std::vector<std::size_t> cnt_part(nchunks, 0);
        parallel_for_chunks(pairs_per_scale, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                Rng rng(seed, 0x7a02 + si, i);
                const C2& center = pool[rng.next_u64() % pool.size()];
                double u[4];
                double nn = 0.0;
                for (double& v : u) {
                    v = rng.normal();
                    nn += v * v;
                }
                nn = std::sqrt(nn);
                const C2 p{center.x + delta * cplx(u[0], u[1]) / nn,
                           center.y + delta * cplx(u[2], u[3]) / nn};
                const C2 q{center.x - delta * cplx(u[0], u[1]) / nn,
                           center.y - delta * cplx(u[2], u[3]) / nn};
                const double gp = green.green(lambda, p, Side::plus, 1e-10).value;
                const double gq = green.green(lambda, q, Side::plus, 1e-10).value;
                const double dg = std::abs(gp - gq);
                if (dg > 1e-13) {
                    acc_part[c] += std::log(dg);
                    cnt_part[c] += 1;
                }
            }
        });
        for (std::size_t c = 0; c < nchunks; ++c) {
            acc += acc_part[c];
            cnt += cnt_part[c];
        }
        if (cnt > 0) {
            xs.push_back(std::log(delta));
            ys.push_back(acc / static_cast<double>(cnt));
        }
    }
    if (xs.size() < 2) throw std::runtime_error("holder_estimate: not enough usable scales");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    est.empirical_exponent = num / den;
    return est;
}

DecayFit decay_ratio_experiment(const GreenEvaluator& green, const cplx& lambda, int n_lo,
                                int n_hi, std::uint64_t seed) {
    const auto& sys = green.system();
    const auto& filt = green.filtration();
    const std::size_t cap = static_cast<std::size_t>(green.cap());

    auto escape_step = [&](const C2& z) {
        const auto rec = escape_classify(sys, lambda, z, cap, filt, Side::plus);
        return rec.status == EscapeStatus::bounded_through ? static_cast<int>(cap) + 1 : rec.step;
    };

    // bounded anchors inside the central block
    std::vector<C2> anchors;
    {
        Rng rng(seed, 0x6d01, 0);
        const double w = std::min(2.0, filt.R / 2.0);
        std::size_t attempts = 0;
        while (anchors.size() < 8 && attempts < 4000) {
            ++attempts;
            C2 z{cplx(rng.uniform(-w, w), rng.uniform(-w, w)),
                 cplx(rng.uniform(-w, w), rng.uniform(-w, w))};
            if (escape_step(z) > static_cast<int>(cap)) anchors.push_back(z);
        }
    }
    if (anchors.empty())
        throw std::runtime_error("decay_ratio_experiment: no bounded anchor found");

    // escape-time ladder: for each target step, bisect between a bounded
    // anchor and a point of V_R^+ on the predicate "escapes within k steps"
    std::vector<C2> pts;
    Rng rng(seed, 0x6d02, 1);
    for (int k = 1; k <= n_hi + 2; ++k) {
        for (int rep = 0; rep < 3; ++rep) {
            C2 a = anchors[static_cast<std::size_t>(rng.next_u64() % anchors.size())];
            C2 b{a.x, a.y + cplx(0.0, filt.R + 1.0)};
            if (escape_step(b) > k) continue;
            for (int it = 0; it < 50; ++it) {
                const C2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
                if (escape_step(mid) <= k)
                    b = mid;
                else
                    a = mid;
            }
            pts.push_back(b);  // escapes within k steps, barely
        }
    }

    DecayFit fit;
    fit.n_lo = n_lo;
    fit.n_hi = n_hi;
    std::vector<double> xs, ys;
    for (int n = n_lo; n <= n_hi; ++n) {
        double sup = 0.0;
        for (const auto& z : pts) {
            const double a = green.green_n(lambda, z, static_cast<std::size_t>(n), Side::plus);
            const double b = green.green_n(lambda, z, static_cast<std::size_t>(n) + 1, Side::plus);
            sup = std::max(sup, std::abs(b - a));
        }
        fit.sup_diffs.push_back(sup);
        if (sup > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(sup));
        }
    }
    if (xs.size() < 2) throw std::runtime_error("decay_ratio_experiment: empty difference table");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.ratio = std::exp(num / den);
    return fit;
}

}  // namespace fhd
