#ifndef FHD_GREEN_HPP
#define FHD_GREEN_HPP

#include <cstdint>
#include <vector>

#include "fhd/filtration.hpp"
#include "fhd/henon.hpp"
#include "fhd/orbit_engine.hpp"

namespace fhd {

struct GreenValue {
    double value = 0.0;
    int n_used = 0;
    double error_bound = 0.0;
    Side side = Side::plus;
    bool cap_limited = false;  // bounded through the cap; value pinned to 0
};

struct HolderEstimate {
    double theoretical_exponent = 0.0;  // log d / log 2A, clamped to (0, 1]
    double empirical_exponent = 0.0;    // fitted slope on straddling pairs
    double derivative_bound = 0.0;      // A
};

// Green function evaluator bound to one system and its filtration. All
// evaluations are pure; instances may be shared across threads.
class GreenEvaluator {
  public:
    GreenEvaluator(const SkewHenonSystem& sys, FiltrationData filt, int n_max = 200);

    const SkewHenonSystem& system() const { return *sys_; }
    const FiltrationData& filtration() const { return filt_; }
    int cap() const { return n_max_; }

    // d^{-n} log+ ||H^{+-n}(z)||, the exact finite-stage formula.
    double green_n(const cplx& lambda, const C2& z, std::size_t n, Side side) const;

    // Iterates until the telescoping tail bound drops below tol once the
    // orbit is in the escape cone, or returns 0 (cap-limited) when the orbit
    // stays bounded through the cap.
    GreenValue green(const cplx& lambda, const C2& z, Side side, double tol) const;

    // green(z) - log|y| on V_R^+; domain_error outside the cone.
    double u_correction(const cplx& lambda, const C2& z, double tol = 1e-9) const;

    // convenience: max(G+, G-)
    double pluricomplex_green(const cplx& lambda, const C2& z, double tol = 1e-9) const;

    // per-step difference bound constant: |G_{n+1} - G_n| <= c_step * d^{-n-1}
    double step_constant() const { return c_step_; }

  private:
    const SkewHenonSystem* sys_;
    FiltrationData filt_;
    int n_max_;
    double c_step_;
};

struct InvarianceResiduals {
    double forward_plus = 0.0;    // |d G+_l(z) - G+_{sl}(H_l z)|
    double backward_minus = 0.0;  // |d G-_l(z) - G-_{sl}(H_l^{-1} z)|
    double shifted_plus = 0.0;    // |G+_{sl}(z) - d G+_l(H_l^{-1} z)|
    double shifted_minus = 0.0;   // |G-_{sl}(z) - d G-_l(H_l z)|

    double max() const;
};

// Max residual of the four Green invariance identities over random samples
// from a box meeting V_R and both cones.
InvarianceResiduals check_invariance(const GreenEvaluator& green, const cplx& lambda,
                                     std::size_t samples, double tol, std::uint64_t seed);

// sup over a polydisc grid of |G+_lambda - G+_lambda2|
double lambda_continuity(const GreenEvaluator& green, const cplx& lambda, const cplx& lambda2,
                         double box_halfwidth, std::size_t res_per_axis, double tol = 1e-8);

struct ContinuityRow {
    double delta = 0.0;
    double sup_diff = 0.0;
};

// Dyadic refinement table: sup diff for |lambda - lambda2| = delta0 * 2^{-k}.
std::vector<ContinuityRow> lambda_continuity_table(const GreenEvaluator& green,
                                                   const cplx& lambda, const cplx& direction,
                                                   double delta0, int levels,
                                                   double box_halfwidth, std::size_t res_per_axis);

// Holder exponent estimate on a compact box (sigma must be surjective).
// Pairs straddle J+ at the given separation scales; empirical exponent is a
// least-squares slope of log|dG| against log separation.
HolderEstimate holder_estimate(const GreenEvaluator& green, const cplx& lambda,
                               double box_halfwidth, const std::vector<double>& scales,
                               std::size_t pairs_per_scale, std::uint64_t seed);

struct DecayFit {
    double ratio = 0.0;                 // exp of the fitted slope of log sup_z |G_{n+1}-G_n|
    std::vector<double> sup_diffs;      // indexed by n - n_lo
    int n_lo = 0, n_hi = 0;
};

// Successive-difference decay of G_n past escape. Sample points are built on
// an escape-time ladder (bisection against the escape predicate), so each n
// in the fit window has a freshly escaping witness; the envelope then decays
// like d^{-n}.
DecayFit decay_ratio_experiment(const GreenEvaluator& green, const cplx& lambda, int n_lo,
                                int n_hi, std::uint64_t seed);

}  // namespace fhd

#endif
