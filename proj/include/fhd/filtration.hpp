#ifndef FHD_FILTRATION_HPP
#define FHD_FILTRATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fhd/henon.hpp"

namespace fhd {

// Uniform filtration data valid for every lambda in M.
//   R:      filtration radius (certified by sampling, then doubled)
//   rho:    uniform per-factor expansion on the closed escape cones
//   a_sup:  sup over lambda, j of |a_j(lambda)|
//   eps_log: sup of |log(|pi_2 H^(j)| / |y|^{d_j})| on the closed forward
//            cone, the calibration constant behind Green tail bounds
struct FiltrationData {
    double R = 0.0;
    double rho = 1.0;
    double a_sup = 0.0;
    double eps_log = 0.0;
};

enum class Region { v_plus, v_minus, central };

// V_R^+ = {|y| > |x|, |y| > R}, V_R^- mirrored, everything else (ties
// included) goes to the closed central block.
Region classify_region(const C2& z, double R);

// Smallest radius on a 1.05-geometric grid for which the sampled dominance
// inequalities hold for all factors and all sampled lambda, doubled once as
// safety margin. Throws std::runtime_error when the search exhausts R <= 1e6.
FiltrationData find_radius(const SkewHenonSystem& sys);

enum class EscapeStatus { escaped_plus, escaped_minus, bounded_through };

struct EscapeRecord {
    EscapeStatus status = EscapeStatus::bounded_through;
    int step = 0;  // escape step, or the horizon N for bounded verdicts
    C2 final_point;
};

// Iterates the skew orbit and reports the first entry into the escape cone
// for the requested direction; bounded-through(N) otherwise. Arithmetic
// overflow of the orbit is folded into an escaped verdict.
EscapeRecord escape_classify(const SkewHenonSystem& sys, const cplx& lambda, const C2& z,
                             std::size_t N, const FiltrationData& filt,
                             Side side = Side::plus);

struct InvarianceWitness {
    cplx lambda;
    C2 z;
    std::string what;
};

struct InvarianceReport {
    std::size_t samples = 0;
    std::size_t region_violations = 0;
    std::size_t growth_violations = 0;
    double min_growth_margin = 0.0;  // min of |pi_2 H| / (rho^m |y|) over samples
    std::vector<InvarianceWitness> witnesses;

    bool ok() const { return region_violations == 0 && growth_violations == 0; }
};

// Samples z in the open cones and checks forward/backward invariance plus
// the rho^m growth bound; counts must come back zero.
InvarianceReport verify_invariance(const SkewHenonSystem& sys, const FiltrationData& filt,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace fhd

#endif
