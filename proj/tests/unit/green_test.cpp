#include "doctest.h"

#include <cmath>

#include "fhd/examples.hpp"
#include "fhd/green.hpp"
#include "fhd/util/rng.hpp"

using namespace fhd;

namespace {

// Independent single-Henon Green implementation used as the sigma = id
// oracle: plain iteration, no filtration logic, no log-space continuation.
// Stops once the orbit norm passes 1e90, where the remaining telescoping
// corrections are far below double precision.
double plain_henon_green_plus(const C2& z0, int cap = 400) {
    cplx x = z0.x, y = z0.y;
    for (int n = 0; n < cap; ++n) {
        const double nn = std::hypot(std::abs(x), std::abs(y));
        if (nn > 1e90) return std::log(nn) * std::pow(2.0, -n);
        const cplx ny = y * y - x;
        x = y;
        y = ny;
    }
    const double nn = std::hypot(std::abs(x), std::abs(y));
    return nn > 1e90 ? std::log(nn) * std::pow(2.0, -cap) : 0.0;
}

struct Fixture {
    SkewHenonSystem sys = make_henon_example("classical");
    FiltrationData filt = find_radius(sys);
    GreenEvaluator green{sys, filt};
};

}  // namespace

TEST_CASE("green_n exact finite-stage values") {
    Fixture fx;
    CHECK(fx.green.green_n(cplx(0, 0), C2{cplx(0.2, 0.1), cplx(-0.4, 0.3)}, 0, Side::plus) == 0.0);
    // H(0,10) = (10, 100); G_1 = (1/2) log sqrt(10100)
    CHECK(fx.green.green_n(cplx(0, 0), C2{cplx(0, 0), cplx(10, 0)}, 1, Side::plus) ==
          doctest::Approx(0.25 * std::log(10100.0)).epsilon(1e-12));
    for (std::size_t n : {1u, 3u, 6u}) {
        CHECK(fx.green.green_n(cplx(0, 0), C2{cplx(2, 0), cplx(2, 0)}, n, Side::plus) ==
              doctest::Approx(std::pow(2.0, -double(n)) * std::log(std::sqrt(8.0))));
    }
}

TEST_CASE("green certified evaluation") {
    Fixture fx;
    const auto fixed = fx.green.green(cplx(0, 0), C2{cplx(2, 0), cplx(2, 0)}, Side::plus, 1e-8);
    CHECK(fixed.value == 0.0);
    CHECK(fixed.cap_limited);
    CHECK(fixed.error_bound == 0.0);

    const auto big = fx.green.green(cplx(0, 0), C2{cplx(0, 0), cplx(1e6, 0)}, Side::plus, 1e-6);
    CHECK_FALSE(big.cap_limited);
    CHECK(big.error_bound < 1e-6);
    CHECK(std::abs(big.value - std::log(1e6)) < 1e-3);

    const auto origin = fx.green.green(cplx(0, 0), C2{cplx(0, 0), cplx(0, 0)}, Side::plus, 1e-8);
    CHECK(origin.value == 0.0);

    CHECK_THROWS_AS(fx.green.green(cplx(0, 0), C2{}, Side::plus, 0.0), std::invalid_argument);
}

TEST_CASE("deep escape asymptotics: G(0, 1e8) vs log|y|") {
    Fixture fx;
    const auto g = fx.green.green(cplx(0, 0), C2{cplx(0, 0), cplx(1e8, 0)}, Side::plus, 1e-9);
    CHECK(std::abs(g.value - std::log(1e8)) < 1e-6);
}

TEST_CASE("u correction shrinks with |y|") {
    Fixture fx;
    CHECK(std::abs(fx.green.u_correction(cplx(0, 0), C2{cplx(0, 0), cplx(1e8, 0)})) < 1e-6);

    const double eps_bound = fx.filt.eps_log / (fx.sys.total_degree - 1.0);
    CHECK(std::abs(fx.green.u_correction(cplx(0, 0), C2{cplx(0, 0), cplx(10, 0)})) < eps_bound);

    // x-independence in the limit
    const double u1 = fx.green.u_correction(cplx(0, 0), C2{cplx(5, 0), cplx(0, 1e6)});
    const double u2 = fx.green.u_correction(cplx(0, 0), C2{cplx(0, -3), cplx(0, 1e6)});
    CHECK(std::abs(u1 - u2) < 1e-4);

    CHECK_THROWS_AS(fx.green.u_correction(cplx(0, 0), C2{cplx(0, 0), cplx(1, 0)}), domain_error);
}

TEST_CASE("monotone error bound past escape") {
    Fixture fx;
    Rng rng(3);
    const double d = fx.sys.total_degree;
    for (int i = 0; i < 50; ++i) {
        const C2 z{cplx(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                   cplx(rng.uniform(-3, 3), rng.uniform(-3, 3))};
        const auto rec = escape_classify(fx.sys, cplx(0, 0), z, 40, fx.filt);
        if (rec.status != EscapeStatus::escaped_plus) continue;
        for (int n = rec.step; n < rec.step + 8; ++n) {
            const double a = fx.green.green_n(cplx(0, 0), z, std::size_t(n), Side::plus);
            const double b = fx.green.green_n(cplx(0, 0), z, std::size_t(n) + 1, Side::plus);
            CHECK(std::abs(b - a) <= fx.green.step_constant() * std::pow(d, -double(n) - 1.0));
        }
    }
}

TEST_CASE("invariance identities on samples") {
    Fixture fx;
    const auto res = check_invariance(fx.green, cplx(0, 0), 300, 1e-8, 17);
    CHECK(res.max() < 1e-6);

    auto disc = make_henon_example("disc-contraction");
    GreenEvaluator gdisc(disc, find_radius(disc));
    const auto res2 = check_invariance(gdisc, cplx(0.2, 0.05), 300, 1e-8, 18);
    CHECK(res2.max() < 1e-6);
}

TEST_CASE("sigma = id matches an independent plain-Henon implementation") {
    Fixture fx;
    Rng rng(21);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const C2 z{cplx(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5)),
                   cplx(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))};
        const double a = fx.green.green(cplx(0, 0), z, Side::plus, 1e-10).value;
        const double b = plain_henon_green_plus(z);
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("positivity off K and zero on bounded verdicts") {
    Fixture fx;
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const C2 z{cplx(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                   cplx(rng.uniform(-3, 3), rng.uniform(-3, 3))};
        const auto g = fx.green.green(cplx(0, 0), z, Side::plus, 1e-9);
        if (g.cap_limited) {
            CHECK(g.value == 0.0);
        } else {
            CHECK(g.value > 0.0);
        }
    }
}

TEST_CASE("lambda continuity") {
    auto disc = make_henon_example("disc-contraction");
    GreenEvaluator green(disc, find_radius(disc));
    CHECK(lambda_continuity(green, cplx(0.1, 0.0), cplx(0.1, 0.0), 3.0, 6) == 0.0);

    const auto rows = lambda_continuity_table(green, cplx(0.1, 0.0), cplx(1.0, 0.0), 8e-3, 4, 3.0, 6);
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        CHECK(rows[k + 1].sup_diff <= 0.6 * rows[k].sup_diff + 1e-9);
    }
}

TEST_CASE("holder estimate on the classical system") {
    Fixture fx;
    std::vector<double> scales;
    for (int k = 0; k < 8; ++k) scales.push_back(std::pow(10.0, -(1.0 + 2.5 * k / 7.0)));
    const auto est = holder_estimate(fx.green, cplx(0, 0), 2.5, scales, 400, 99);
    CHECK(est.theoretical_exponent > 0.0);
    CHECK(est.theoretical_exponent <= 1.0);
    CHECK(est.empirical_exponent >= est.theoretical_exponent - 0.05);

    auto disc = make_henon_example("disc-contraction");
    GreenEvaluator gdisc(disc, find_radius(disc));
    CHECK_THROWS_AS(holder_estimate(gdisc, cplx(0.1, 0.0), 2.5, scales, 50, 1),
                    unsupported_configuration);
}

TEST_CASE("successive-difference decay ratio near 1/d") {
    auto disc = make_henon_example("disc-contraction");
    GreenEvaluator green(disc, find_radius(disc));
    const auto fit = decay_ratio_experiment(green, cplx(0.1, 0.05), 2, 12, 7);
    CHECK(fit.ratio > 0.45);
    CHECK(fit.ratio < 0.55);
}
