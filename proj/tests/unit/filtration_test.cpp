#include "doctest.h"

#include <cmath>

#include "fhd/examples.hpp"
#include "fhd/filtration.hpp"
#include "fhd/util/rng.hpp"

using namespace fhd;

namespace {

SkewHenonSystem pure_power_system(int degree) {
    SkewHenonSystem sys;
    sys.space = BaseSpace::finite({cplx(0.0, 0.0)});
    sys.map = BaseMap::identity_map();
    HenonFactor f;
    f.degree = degree;
    f.coeffs.assign(static_cast<std::size_t>(degree), CoeffPoly::constant(cplx(0, 0)));
    f.a = CoeffPoly::constant(cplx(1.0, 0.0));
    sys.factors.push_back(f);
    sys.validate();
    return sys;
}

}  // namespace

TEST_CASE("find_radius against analytic roots") {
    // |y|^2 >= 3|y| has root 3; the returned radius is the doubled grid hit
    auto classical = make_henon_example("classical");
    const auto filt = find_radius(classical);
    CHECK(filt.R >= 3.0);
    CHECK(filt.R <= 6.3);
    CHECK(filt.rho > 1.0);
    CHECK(filt.a_sup == doctest::Approx(1.0));

    // |y|^2 - 0.25 >= 3|y|: root (3 + sqrt(10))/2
    auto disc = make_henon_example("disc-contraction");
    const double root = (3.0 + std::sqrt(10.0)) / 2.0;
    const auto filt_disc = find_radius(disc);
    CHECK(filt_disc.R >= root);
    CHECK(filt_disc.R <= 2.0 * root * 1.05 + 1e-9);

    // |y|^3 >= 3|y|: root sqrt(3)
    auto cubic = pure_power_system(3);
    const auto filt_cubic = find_radius(cubic);
    CHECK(filt_cubic.R >= std::sqrt(3.0));
    CHECK(filt_cubic.R <= 3.64);
}

TEST_CASE("classify_region with ties to the central block") {
    const double R = 3.0;
    CHECK(classify_region(C2{cplx(0, 0), cplx(5, 0)}, R) == Region::v_plus);
    CHECK(classify_region(C2{cplx(5, 0), cplx(0, 0)}, R) == Region::v_minus);
    CHECK(classify_region(C2{cplx(3, 0), cplx(3, 0)}, R) == Region::central);
    CHECK(classify_region(C2{cplx(5, 0), cplx(5, 0)}, R) == Region::central);  // |x| = |y|
    CHECK(classify_region(C2{cplx(0, 0), cplx(3, 0)}, R) == Region::central);  // |y| = R
    CHECK(classify_region(C2{cplx(1, 0), cplx(2, 0)}, R) == Region::central);
}

TEST_CASE("escape_classify examples") {
    auto classical = make_henon_example("classical");
    const auto filt = find_radius(classical);

    const auto fixed = escape_classify(classical, cplx(0, 0), C2{cplx(2, 0), cplx(2, 0)}, 100, filt);
    CHECK(fixed.status == EscapeStatus::bounded_through);
    CHECK(fixed.step == 100);

    const auto plus = escape_classify(classical, cplx(0, 0), C2{cplx(0, 0), cplx(10, 0)}, 100, filt);
    CHECK(plus.status == EscapeStatus::escaped_plus);
    CHECK(plus.step == 0);

    const auto vminus_start =
        escape_classify(classical, cplx(0, 0), C2{cplx(10, 0), cplx(0, 0)}, 100, filt);
    CHECK(vminus_start.status == EscapeStatus::escaped_plus);
    CHECK(vminus_start.step <= 2);  // (10,0) -> (0,-10) enters V_R^+

    const auto backward =
        escape_classify(classical, cplx(0, 0), C2{cplx(10, 0), cplx(0, 0)}, 100, filt, Side::minus);
    CHECK(backward.status == EscapeStatus::escaped_minus);
    CHECK(backward.step == 0);
}

TEST_CASE("escape verdicts never downgrade with a longer horizon") {
    auto classical = make_henon_example("classical");
    const auto filt = find_radius(classical);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const C2 z{cplx(rng.uniform(-4, 4), rng.uniform(-4, 4)),
                   cplx(rng.uniform(-4, 4), rng.uniform(-4, 4))};
        const auto a = escape_classify(classical, cplx(0, 0), z, 50, filt);
        const auto b = escape_classify(classical, cplx(0, 0), z, 100, filt);
        if (a.status == EscapeStatus::escaped_plus) {
            CHECK(b.status == EscapeStatus::escaped_plus);
            CHECK(b.step == a.step);
        }
    }
}

TEST_CASE("forward invariance of the closed cone on samples") {
    auto disc = make_henon_example("disc-contraction");
    const auto filt = find_radius(disc);
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        // closed cone sample: |y| >= R, |x| <= |y|
        const double mag = filt.R * (1.0 + rng.uniform(0.0, 2.0));
        const C2 z{rng.uniform(0.0, 1.0) * mag * rng.on_circle(1.0), rng.on_circle(mag)};
        const cplx lam = 0.25 * rng.unit_disc();
        C2 cur = z;
        bool entered = false;
        for (int n = 0; n < 6; ++n) {
            cur = fiber_apply(eval_fiber_coeffs(disc, lam), cur, Side::plus);
            if (std::abs(cur.y) > kEscapeCutoff) break;
            const bool in_closed = std::abs(cur.y) >= std::abs(cur.x) && std::abs(cur.y) >= filt.R;
            if (entered) CHECK(in_closed);
            if (in_closed) entered = true;
        }
        CHECK(entered);
    }
}

TEST_CASE("verify_invariance reports zero violations") {
    auto classical = make_henon_example("classical");
    const auto filt = find_radius(classical);
    const auto rep = verify_invariance(classical, filt, 10000, 123);
    CHECK(rep.ok());
    CHECK(rep.region_violations == 0);
    CHECK(rep.growth_violations == 0);
    CHECK(rep.min_growth_margin > 1.0);

    auto disc = make_henon_example("disc-contraction");
    const auto filt_disc = find_radius(disc);
    const auto rep_disc = verify_invariance(disc, filt_disc, 10000, 123);
    CHECK(rep_disc.ok());
}

TEST_CASE("hand growth check at (0, 10)") {
    auto classical = make_henon_example("classical");
    const FiberCoeffs fc = eval_fiber_coeffs(classical, cplx(0, 0));
    const C2 w = fiber_apply(fc, C2{cplx(0, 0), cplx(10, 0)}, Side::plus);
    CHECK(std::abs(w.y) == doctest::Approx(100.0));
    const auto filt = find_radius(classical);
    CHECK(std::abs(w.y) > filt.rho * 10.0);
}
