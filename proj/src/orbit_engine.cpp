#include "fhd/orbit_engine.hpp"

#include <algorithm>

namespace fhd {

namespace {

// Sum of terms given in log-polar form, returned in log-polar form.
LogC log_sum(const LogC* terms, std::size_t n) {
    double s = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, terms[i].lm);
    if (!std::isfinite(s)) return LogC{};
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(terms[i].lm)) continue;
        acc += std::exp(cplx(terms[i].lm - s, terms[i].ph));
    }
    const double m = std::abs(acc);
    if (m == 0.0) return LogC{};
    return LogC{s + std::log(m), std::arg(acc)};
}

LogC pow_log(const LogC& w, int k) {
    if (k == 0) return LogC{0.0, 0.0};
    if (!std::isfinite(w.lm)) return LogC{};
    return LogC{k * w.lm, k * w.ph};
}

LogC mul_log(const LogC& a, const LogC& b) {
    if (!std::isfinite(a.lm) || !std::isfinite(b.lm)) return LogC{};
    return LogC{a.lm + b.lm, a.ph + b.ph};
}

LogC neg_log(const LogC& a) {
    if (!std::isfinite(a.lm)) return a;
    return LogC{a.lm, a.ph + 3.14159265358979323846};
}

}  // namespace

LogC2 factor_apply_log(const FactorCoeffs& f, const LogC2& z) {
    // terms of p(y): y^d plus c_i y^i, then -a x
    LogC terms[10 + 2];
    std::size_t n = 0;
    terms[n++] = pow_log(z.y, f.degree);
    for (int i = 0; i < f.degree; ++i) {
        const cplx ci = f.c[static_cast<std::size_t>(i)];
        if (ci == cplx(0.0, 0.0)) continue;
        terms[n++] = mul_log(to_log(ci), pow_log(z.y, i));
    }
    terms[n++] = neg_log(mul_log(to_log(f.a), z.x));
    return LogC2{z.y, log_sum(terms, n)};
}

LogC2 factor_inverse_log(const FactorCoeffs& f, const LogC2& z) {
    if (std::abs(f.a) < 1e-12)
        throw domain_error("factor inverse ill-conditioned: |a(lambda)| < 1e-12");
    LogC terms[10 + 2];
    std::size_t n = 0;
    terms[n++] = pow_log(z.x, f.degree);
    for (int i = 0; i < f.degree; ++i) {
        const cplx ci = f.c[static_cast<std::size_t>(i)];
        if (ci == cplx(0.0, 0.0)) continue;
        terms[n++] = mul_log(to_log(ci), pow_log(z.x, i));
    }
    terms[n++] = neg_log(z.y);
    LogC num = log_sum(terms, n);
    const LogC inv_a{-std::log(std::abs(f.a)), -std::arg(f.a)};
    return LogC2{mul_log(num, inv_a), z.x};
}

LogC2 fiber_apply_log(const FiberCoeffs& fc, const LogC2& z, Side side) {
    LogC2 cur = z;
    if (side == Side::plus) {
        for (const auto& f : fc.factors) cur = factor_apply_log(f, cur);
    } else {
        for (auto it = fc.factors.rbegin(); it != fc.factors.rend(); ++it)
            cur = factor_inverse_log(*it, cur);
    }
    return cur;
}

}  // namespace fhd
