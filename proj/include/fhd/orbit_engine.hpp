#ifndef FHD_ORBIT_ENGINE_HPP
#define FHD_ORBIT_ENGINE_HPP

#include <cmath>
#include <limits>

#include "fhd/henon.hpp"

namespace fhd {

// Log-polar representation w = exp(lm + i*ph); lm = -inf encodes 0.
// Orbit coordinates grow like d^n in the exponent, so past ~1e8 the orbit is
// carried in this form; the factor maps act exactly on it up to rounding.
struct LogC {
    double lm = -std::numeric_limits<double>::infinity();
    double ph = 0.0;
};

inline LogC to_log(const cplx& w) {
    if (w == cplx(0.0, 0.0)) return LogC{};
    return LogC{std::log(std::abs(w)), std::arg(w)};
}

struct LogC2 {
    LogC x, y;
};

inline LogC2 to_log(const C2& z) { return LogC2{to_log(z.x), to_log(z.y)}; }

// log-magnitude of the Euclidean norm of (x, y)
inline double log_norm(const LogC2& z) {
    const double s = std::max(z.x.lm, z.y.lm);
    if (!std::isfinite(s)) return s;
    const double ex = std::exp(2.0 * (z.x.lm - s));
    const double ey = std::exp(2.0 * (z.y.lm - s));
    return s + 0.5 * std::log(ex + ey);
}

// log|w - c| for log-polar w and a plain complex c
inline double log_abs_minus(const LogC& w, const cplx& c) {
    if (!std::isfinite(w.lm)) return std::log(std::abs(-c));
    const double lc = c == cplx(0.0, 0.0) ? -std::numeric_limits<double>::infinity()
                                          : std::log(std::abs(c));
    const double s = std::max(w.lm, lc);
    const cplx a = std::exp(cplx(w.lm - s, w.ph));
    const cplx b = std::isfinite(lc) ? std::exp(cplx(lc - s, std::arg(c))) : cplx(0.0, 0.0);
    const double m = std::abs(a - b);
    return m == 0.0 ? -std::numeric_limits<double>::infinity() : s + std::log(m);
}

// p(y) - a x evaluated in log-polar form: every monomial is rescaled by the
// largest term before summation, so no intermediate can overflow.
LogC2 factor_apply_log(const FactorCoeffs& f, const LogC2& z);

// ((p(x) - y)/a, x) in log-polar form
LogC2 factor_inverse_log(const FactorCoeffs& f, const LogC2& z);

LogC2 fiber_apply_log(const FiberCoeffs& fc, const LogC2& z, Side side);

// Region test on log magnitudes (same tie-breaking as classify_region).
inline bool in_cone_log(const LogC2& z, double R, Side side) {
    if (side == Side::plus) return z.y.lm > z.x.lm && z.y.lm > std::log(R);
    return z.x.lm > z.y.lm && z.x.lm > std::log(R);
}

inline cplx from_log(const LogC& w) {
    if (!std::isfinite(w.lm)) return cplx(0.0, 0.0);
    const double m = std::exp(w.lm);
    return cplx(m * std::cos(w.ph), m * std::sin(w.ph));
}

inline C2 from_log(const LogC2& z) { return C2{from_log(z.x), from_log(z.y)}; }

// Magnitude at which orbit arithmetic hops from complex doubles to the
// log-polar representation.
constexpr double kLogSwitch = 1e8;

// Orbit state that walks in complex doubles and hops to log-polar once a
// coordinate passes kLogSwitch; the factor maps then act on exponents, so
// the d^n coordinate growth never overflows.
class OrbitWalker {
  public:
    explicit OrbitWalker(const C2& z) : plain_(z) {
        if (needs_log(z)) {
            logrep_ = to_log(z);
            in_log_ = true;
        }
    }

    void step(const FiberCoeffs& fc, Side side) {
        if (!in_log_ && needs_log(plain_)) {
            logrep_ = to_log(plain_);
            in_log_ = true;
        }
        if (in_log_)
            logrep_ = fiber_apply_log(fc, logrep_, side);
        else
            plain_ = fiber_apply(fc, plain_, side);
    }

    bool in_cone(double R, Side side) const {
        if (in_log_) return in_cone_log(logrep_, R, side);
        const double ax = std::abs(plain_.x), ay = std::abs(plain_.y);
        if (side == Side::plus) return ay > ax && ay > R;
        return ax > ay && ax > R;
    }

    // log of the Euclidean norm; -inf at the origin
    double log_norm_value() const {
        if (in_log_) return log_norm(logrep_);
        const double ax = std::abs(plain_.x), ay = std::abs(plain_.y);
        const double n = std::hypot(ax, ay);
        return n == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(n);
    }

    bool in_log_form() const { return in_log_; }
    const C2& plain() const { return plain_; }
    C2 as_c2() const { return in_log_ ? from_log(logrep_) : plain_; }
    const LogC2& log_point() const { return logrep_; }

  private:
    static bool needs_log(const C2& z) {
        return std::abs(z.x) > kLogSwitch || std::abs(z.y) > kLogSwitch || !is_finite(z);
    }

    C2 plain_;
    LogC2 logrep_;
    bool in_log_ = false;
};

}  // namespace fhd

#endif
