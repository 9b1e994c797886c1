#ifndef FHD_HENON_HPP
#define FHD_HENON_HPP

#include <cstddef>
#include <vector>

#include "fhd/base_space.hpp"
#include "fhd/types.hpp"

namespace fhd {

// Polynomial in lambda and conj(lambda) with bounded coefficients; the only
// coefficient-function class the catalogue admits over a compact base.
struct CoeffPoly {
    struct Term {
        unsigned pow_lambda = 0;
        unsigned pow_conj = 0;
        cplx coef{0.0, 0.0};
    };
    std::vector<Term> terms;

    cplx eval(const cplx& lambda) const;
    static CoeffPoly constant(cplx c);
    static CoeffPoly linear(cplx c0, cplx c1);  // c0 + c1*lambda
};

// One generalized Henon factor (x, y) -> (y, p(y) - a(lambda) x) with p monic
// of degree >= 2. coeffs[i] is the coefficient function of y^i, i < degree.
struct HenonFactor {
    int degree = 2;
    std::vector<CoeffPoly> coeffs;
    CoeffPoly a = CoeffPoly::constant(cplx(1.0, 0.0));
};

struct SkewHenonSystem {
    BaseSpace space;
    BaseMap map;
    std::vector<HenonFactor> factors;

    int total_degree = 0;  // product of factor degrees, set by validate()

    // Structural checks: m >= 1, 2 <= d_j <= 8, m <= 8, monic by
    // construction, inf_M |a_j| > 0 on samples. Fills total_degree.
    void validate();

    std::size_t num_factors() const { return factors.size(); }
};

// Coefficients of one factor evaluated at a fixed base point.
struct FactorCoeffs {
    int degree = 2;
    std::vector<cplx> c;  // c[i] multiplies y^i; the leading 1 is implicit
    cplx a{1.0, 0.0};
};

// All m factors at one base point; the unit of work for the inner loops.
struct FiberCoeffs {
    std::vector<FactorCoeffs> factors;
};

FiberCoeffs eval_fiber_coeffs(const SkewHenonSystem& sys, const cplx& lambda);

// Per-orbit cache of fiber coefficients along the sigma orbit of one base
// point. Lazily extended; each thread owns its own instance.
class CoeffCache {
  public:
    CoeffCache(const SkewHenonSystem& sys, const cplx& lambda);
    const FiberCoeffs& at_step(std::size_t n);
    const cplx& lambda_at(std::size_t n);

  private:
    const SkewHenonSystem& sys_;
    std::vector<cplx> lambdas_;
    std::vector<FiberCoeffs> coeffs_;
    bool constant_;  // identity base map: one entry serves every step
    void extend(std::size_t n);
};

// p(y) by Horner, then the factor map. Inputs must be finite.
cplx poly_eval(const FactorCoeffs& f, const cplx& y);
C2 factor_apply(const FactorCoeffs& f, const C2& z);

// ((p(x) - y)/a, x); throws domain_error when |a| is below the
// ill-conditioning threshold 1e-12.
C2 factor_inverse(const FactorCoeffs& f, const C2& z);

C2 fiber_apply(const FiberCoeffs& fc, const C2& z, Side side);

// Escape cutoff for plain double-precision orbits.
constexpr double kEscapeCutoff = 1e100;

struct OrbitResult {
    C2 z;                  // last computed point
    int escaped_at = -1;   // fiber step at which the cutoff tripped, -1 if none
    std::vector<C2> trace; // z_0 .. z_k when requested

    bool escaped() const { return escaped_at >= 0; }
};

// H_lambda^{+n}: fiber maps applied at lambda, sigma(lambda), ...
OrbitResult skew_forward(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                         std::size_t n, bool with_trace = false);

// H_lambda^{-n}: fiber inverses applied at lambda, sigma(lambda), ...
OrbitResult skew_backward(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                          std::size_t n, bool with_trace = false);

// (H_lambda^{+n})^{-1}: fiber inverses applied along the reversed sigma
// orbit, sigma^{n-1}(lambda) first. Not equal to skew_backward for n >= 2
// unless sigma is the identity.
OrbitResult inverse_of_forward(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                               std::size_t n);

// Product of the a_j at lambda: the constant Jacobian determinant of the
// fiber map.
cplx jacobian_constant(const SkewHenonSystem& sys, const cplx& lambda);

}  // namespace fhd

#endif
