#ifndef FHD_PK_HPP
#define FHD_PK_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "fhd/base_space.hpp"
#include "fhd/henon.hpp"  // CoeffPoly

namespace fhd {

// One homogeneous coordinate polynomial of degree d on C^{k+1}; coefficients
// are functions of the base point.
struct HomogPoly {
    struct Term {
        std::vector<unsigned> exps;  // size k+1, sums to the map degree
        CoeffPoly coef;
    };
    std::vector<Term> terms;
};

struct PkSkewSystem {
    BaseSpace space;
    BaseMap map;
    int k = 1;       // ambient C^{k+1}
    int degree = 2;  // common degree d >= 2
    std::vector<HomogPoly> components;  // k+1 of them

    // Structural checks: term exponents sum to d, homogeneity F(cx) = c^d F(x)
    // on random samples, and min ||F_lambda|| on sphere samples stays positive.
    void validate();
};

using PkVec = std::vector<cplx>;  // k+1 coordinates

// Component coefficients evaluated at a fixed base point.
struct PkCoeffs {
    int k = 1;
    int degree = 2;
    struct Term {
        cplx coef;
        std::array<std::uint8_t, 8> exps{};
    };
    std::vector<std::vector<Term>> comps;
};

PkCoeffs eval_pk_coeffs(const PkSkewSystem& sys, const cplx& lambda);
PkVec pk_apply(const PkCoeffs& fc, const PkVec& x);

struct GrowthConstants {
    double l = 0.0;      // lower bound in l||x||^d <= ||F(x)||
    double L = 0.0;      // upper bound
    double C = 1.0;      // per-step constant in |G_{n+1} - G_n| <= log C / d^{n+1}
    double r = 0.0;      // (2L)^{-1/(d-1)}: ||F|| <= ||x||/2 inside B_r
    double R = 0.0;      // (2l)^{-1/(d-1)}: ||F|| >= 2||x|| outside B_R
};

// Sphere-sampled growth constants with 5% outward safety margins.
// Throws std::runtime_error when the sphere minimum drops below 1e-9
// (degenerate lift suspected).
GrowthConstants estimate_growth(const PkSkewSystem& sys, std::size_t sphere_samples = 20000,
                                std::uint64_t seed = 1);

struct PkGreenValue {
    double value = 0.0;  // -inf at the origin
    int n_used = 0;
    double error_bound = 0.0;
};

// Renormalized Green iteration: the orbit lives on the unit sphere with an
// accumulated log scale, so G(cx) = log|c| + G(x) holds exactly.
PkGreenValue green_pk(const PkSkewSystem& sys, const cplx& lambda, const PkVec& x, double tol,
                      const GrowthConstants& growth);

enum class BasinVerdict { inside, outside, boundary_band };

BasinVerdict basin_membership(const PkSkewSystem& sys, const cplx& lambda, const PkVec& x,
                              double tol, const GrowthConstants& growth);

// Direct orbit verdict: inside once the scale drops under the contraction
// radius, outside once it exceeds the doubling radius.
BasinVerdict orbit_basin_verdict(const PkSkewSystem& sys, const cplx& lambda, const PkVec& x,
                                 const GrowthConstants& growth, int max_steps = 400);

struct FatouParams {
    cplx center{0.0, 0.0};
    double halfwidth = 2.0;
    std::size_t res = 256;
    int probes = 4;            // probe lines per cell for the harmonicity test
    double probe_step = 0.0;   // 0: half a cell
    int normality_steps = 40;  // orbit length for the derivative-growth proxy
    double green_tol = 1e-10;
};

struct FatouResult {
    std::size_t res = 0;
    std::vector<std::uint8_t> harmonic;       // 1 = Fatou by pluriharmonicity
    std::vector<std::uint8_t> normal;         // 1 = Fatou by the normality proxy
    std::vector<std::uint8_t> indeterminate;  // excluded from the agreement score
    double agreement_off_collar = 0.0;
    double theta_harm = 0.0;     // calibrated Laplacian threshold
    double theta_growth = 0.0;   // subexponential slope threshold
};

// Chart grid classification in the chart x_0 = 1 (k = 1 charts; the grid
// varies the single affine coordinate). Both classifications and their
// agreement off a 2-cell boundary collar are returned.
FatouResult fatou_detect(const PkSkewSystem& sys, const cplx& lambda, const FatouParams& params,
                         const GrowthConstants& growth, std::uint64_t seed = 1);

}  // namespace fhd

#endif
