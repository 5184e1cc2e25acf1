#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "echkit/capacity.hpp"
#include "echkit/ctd.hpp"
#include "echkit/rkp.hpp"
#include "echkit/tree.hpp"

using namespace echkit;
using rkp::Energy;

namespace {

double cubic_r1_residual(double x, double c) {
    return -16.0 * x * x * x + 8.0 * c * x * x + 1.0;
}

double cubic_r2_residual(double x, double c) {
    return 16.0 * x * x * x + 8.0 * c * x * x + 1.0;
}

} // namespace

TEST_CASE("energy domain guard") {
    CHECK_THROWS_AS(Energy(-1.0), domain_error);
    CHECK_THROWS_AS(Energy(0.0), domain_error);
    CHECK_NOTHROW(Energy(-1.5));
    CHECK_NOTHROW(Energy(-50.0));
}

TEST_CASE("curve_mu2 anchors the corner points at the critical energy") {
    const Energy c(-1.5);
    CHECK(rkp::curve_mu2(0.25, c) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(rkp::curve_mu2(0.5, c) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK_THROWS_AS(rkp::curve_mu2(0.0, c), domain_error);

    // Finite differences of the curve reproduce the slope -1/(8 mu^3).
    for (double mu : {0.3, 0.4, 0.5}) {
        const double h = 1e-6;
        const double fd = (rkp::curve_mu2(mu + h, c) - rkp::curve_mu2(mu - h, c)) / (2 * h);
        CHECK(fd == doctest::Approx(-1.0 / (8.0 * mu * mu * mu)).epsilon(1e-6));
    }
}

TEST_CASE("roots at the critical energy") {
    const rkp::Roots r = rkp::roots(Energy(-1.5));
    CHECK(r.r1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.r2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.r3 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("root residuals stay below 1e-10 across the energy range") {
    for (int i = 0; i < 200; ++i) {
        const double c = -1.5 - 48.5 * i / 199.0;
        const rkp::Roots r = rkp::roots(Energy(c));
        CHECK(r.r1 > 0.0);
        CHECK(r.r1 <= 0.25);
        CHECK(r.r1 <= r.r2);
        CHECK(std::abs(cubic_r1_residual(r.r1, c)) < 1e-10);
        CHECK(std::abs(cubic_r2_residual(r.r2, c)) < 1e-10);
    }
}

TEST_CASE("energy_from_r1 inverts the first root") {
    CHECK(rkp::energy_from_r1(0.25) == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(rkp::energy_from_r1(0.1) == doctest::Approx(-12.3).epsilon(1e-12));
    CHECK_THROWS_AS(rkp::energy_from_r1(0.3), domain_error);
    CHECK_THROWS_AS(rkp::energy_from_r1(0.0), domain_error);

    for (double x : {0.05, 0.1, 0.2, 0.25}) {
        const double c = rkp::energy_from_r1(x);
        CHECK(rkp::roots(Energy(c)).r1 == doctest::Approx(x).epsilon(1e-9));
    }
    for (double c : {-1.5, -2.0, -3.0, -7.5, -20.0}) {
        const double r1 = rkp::roots(Energy(c)).r1;
        CHECK(rkp::energy_from_r1(r1) == doctest::Approx(c).epsilon(1e-9));
    }
}

TEST_CASE("weights reproduce the published critical-energy values") {
    const Energy c(-1.5);
    CHECK(rkp::weight_w1(c).value == doctest::Approx(0.353554).epsilon(1e-4));
    CHECK(rkp::weight_w2(c).value == doctest::Approx(0.219247).epsilon(1e-4));
    CHECK(rkp::weight_w3(c).value == doctest::Approx(0.0502325).epsilon(1e-3));
    CHECK(rkp::weight_w4(c).value == doctest::Approx(0.223766).epsilon(1e-4));
    CHECK(rkp::weight_w5(c).value == doctest::Approx(0.0514663).epsilon(1e-3));

    CHECK(rkp::weight_w2(c).branch == rkp::WeightBranch::tangent);
    CHECK(rkp::weight_w3(c).branch == rkp::WeightBranch::tangent);
    CHECK(rkp::weight_w4(c).branch == rkp::WeightBranch::tangent);
    CHECK(rkp::weight_w5(c).branch == rkp::WeightBranch::tangent);
}

TEST_CASE("w1 shrinks monotonically toward deep energies") {
    double prev = rkp::weight_w1(Energy(-1.5)).value;
    for (double c : {-2.0, -5.0, -20.0}) {
        const double w = rkp::weight_w1(Energy(c)).value;
        CHECK(w < prev);
        CHECK(w > 0.0);
        prev = w;
    }
}

TEST_CASE("w1 is smooth in the energy") {
    for (double c : {-1.8, -2.5, -4.0}) {
        const double d1 = (rkp::weight_w1(Energy(c + 1e-3)).value -
                           rkp::weight_w1(Energy(c - 1e-3)).value) / 2e-3;
        const double d2 = (rkp::weight_w1(Energy(c + 1e-4)).value -
                           rkp::weight_w1(Energy(c - 1e-4)).value) / 2e-4;
        CHECK(std::isfinite(d1));
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-3));
    }
}

TEST_CASE("weight branches select by entry energy") {
    const double t3 = tree::entry_energy(-3.0);
    const double t2 = tree::entry_energy(-2.0);
    const double t5 = tree::entry_energy(-5.0);
    const double t7 = tree::entry_energy(-7.0);

    CHECK(rkp::weight_w2(Energy(-5.0)).branch == rkp::WeightBranch::corner);
    {
        const rkp::Roots r = rkp::roots(Energy(-5.0));
        CHECK(rkp::weight_w2(Energy(-5.0)).value ==
              doctest::Approx(std::numbers::sqrt2 * (r.r2 - r.r1)).epsilon(1e-12));
    }

    CHECK(rkp::weight_w3(Energy(t3 - 0.01)).value == 0.0);
    CHECK(rkp::weight_w3(Energy((t3 + t2) / 2)).branch == rkp::WeightBranch::corner);
    CHECK(rkp::weight_w4(Energy(t5 - 0.01)).value == 0.0);
    CHECK(rkp::weight_w4(Energy(-2.1)).value == 0.0);
    CHECK(rkp::weight_w5(Energy(t7 - 0.01)).value == 0.0);
    CHECK(rkp::weight_w5(Energy(-2.0)).value > 0.0);

    // Existence condition for the slope -5 tangency at the critical energy.
    CHECK(rkp::roots(Energy(-1.5)).r1 < tree::tangency_mu1(-5.0));
}

TEST_CASE("w2 and w3 are continuous across their branch thresholds") {
    const Energy t3(tree::entry_energy(-3.0));
    CHECK(std::abs(rkp::w2_corner(t3) - rkp::w2_tangent(t3)) < 1e-9);
    CHECK(std::abs(rkp::w3_corner(t3)) < 1e-9);  // corner branch vanishes at entry

    const Energy t2(tree::entry_energy(-2.0));
    CHECK(std::abs(rkp::w3_corner(t2) - rkp::w3_tangent(t2)) < 1e-9);

    CHECK(rkp::threshold_jump(2) < 1e-4);
    CHECK(rkp::threshold_jump(3) < 1e-4);

    // The published formulas leave w4/w5 discontinuous at their thresholds;
    // measured and reported, not asserted.
    MESSAGE("w4 branch jump at entry_energy(-5): ", rkp::threshold_jump(4));
    MESSAGE("w5 branch jump at entry_energy(-7): ", rkp::threshold_jump(5));
}

TEST_CASE("x3 decomposition at the critical energy") {
    const Energy c(-1.5);
    const double mu = tree::tangency_mu1(-2.0);
    const double x3 = 2.0 * mu + rkp::curve_mu2(mu, c);
    CHECK(x3 == doctest::Approx(0.44055).epsilon(1e-4));
    const double w3 = std::numbers::sqrt2 * x3 -
                      (rkp::weight_w2(c).value + rkp::weight_w1(c).value);
    CHECK(w3 == doctest::Approx(rkp::weight_w3(c).value).epsilon(1e-12));
}

TEST_CASE("weights_all orders the published list") {
    const auto ow = rkp::weights_all(Energy(-1.5));
    const auto& e = ow.list.entries();
    REQUIRE(e.size() == 5);
    CHECK(e[0] == doctest::Approx(ow.raw.w1.value));
    CHECK(e[1] == doctest::Approx(ow.raw.w4.value));
    CHECK(e[2] == doctest::Approx(ow.raw.w2.value));
    CHECK(e[3] == doctest::Approx(ow.raw.w5.value));
    CHECK(e[4] == doctest::Approx(ow.raw.w3.value));

    const auto deep = rkp::weights_all(Energy(-5.0));
    for (double w : deep.list.entries())
        CHECK(w > 0.0);
    CHECK(std::is_sorted(deep.list.entries().rbegin(), deep.list.entries().rend()));

    // First weight dominates at every tested energy.
    for (double c : {-1.5, -1.7, -2.0, -2.5, -4.0, -10.0}) {
        const auto w = rkp::weights_all(Energy(c));
        CHECK(w.list.entries().front() == doctest::Approx(w.raw.w1.value));
    }
}

TEST_CASE("areas at the critical energy") {
    CHECK(rkp::area_omega1(0.25) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(rkp::area_omega1(1.0) == 1.0);
    CHECK_THROWS_AS(rkp::area_omega1(0.0), domain_error);

    CHECK(rkp::area_rest(0.25) == doctest::Approx(1.0 / 32.0).epsilon(1e-12));

    // Shoelace of (0,0),(r1,r1),(r1,-r1) equals r1^2.
    const double r1 = 0.18;
    const double shoelace = 0.5 * std::abs(r1 * (-r1) - r1 * r1);
    CHECK(rkp::area_omega1(r1) == doctest::Approx(shoelace).epsilon(1e-14));
}

TEST_CASE("closed-form rest area agrees with quadrature") {
    for (double r1 : {0.05, 0.1, 0.2, 0.25})
        CHECK(rkp::area_rest(r1) == doctest::Approx(rkp::area_rest_quadrature(r1)).epsilon(1e-9));
    CHECK(rkp::area_rest(1e-3) < 1e-5);
    CHECK(rkp::area_rest(1e-3) > 0.0);
}

TEST_CASE("ratio_F is bounded by one half and increasing") {
    CHECK(std::abs(rkp::ratio_F(0.25) - 0.5) < 1e-12);
    CHECK(rkp::ratio_F(0.1) < 0.5);
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double r1 = 0.25 * i / 100.0;
        const double f = rkp::ratio_F(r1);
        CHECK(f <= 0.5 + 1e-9);
        CHECK(f > prev);
        prev = f;
    }
}

TEST_CASE("sctd_to_ctd produces the rotated polygon") {
    const Energy c(-1.5);
    const rkp::Roots r = rkp::roots(c);
    const auto d = rkp::sctd_to_ctd(c, 64);
    const double sqrt2 = std::numbers::sqrt2;

    CHECK(d.vertices().front().x == 0);
    CHECK(d.vertices().front().y.convert_to<double>() ==
          doctest::Approx(sqrt2 * r.r1).epsilon(1e-5));
    CHECK(d.vertices().back().y == 0);
    CHECK(d.vertices().back().x.convert_to<double>() ==
          doctest::Approx(sqrt2 * r.r2).epsilon(1e-5));

    CHECK(first_triangle(d).a.convert_to<double>() ==
          doctest::Approx(sqrt2 * r.r1).epsilon(1e-5));

    const double exact = rkp::area_omega1(r.r1) + rkp::area_rest(r.r1);
    const double err64 = std::abs(domain_area(d).convert_to<double>() - exact);
    const auto d256 = rkp::sctd_to_ctd(c, 256);
    const double err256 = std::abs(domain_area(d256).convert_to<double>() - exact);
    CHECK(err256 < 1e-4);
    CHECK(err256 < err64);

    CHECK_THROWS_AS(rkp::sctd_to_ctd(c, 1), usage_error);
}

TEST_CASE("rkp_capacities against the published anchors and the composition oracle") {
    const Energy c(-1.5);
    const auto seq = rkp::rkp_capacities(c, 3);
    CHECK(seq.values[1] == doctest::Approx(0.353554).epsilon(1e-4));
    CHECK(seq.values[2] == doctest::Approx(0.57732).epsilon(1e-4));

    const auto bf = cap::brute_force_union(rkp::weights_all(c).list, 3);
    CHECK(seq.values[3] == doctest::Approx(bf.values[3]).epsilon(1e-12));
    // The stored reference lists 2*W1 here; the disjoint-union maximization
    // over the same five weights exceeds it, which the table layer flags.
    CHECK(seq.values[3] > 0.707108 + 1e-4);
    MESSAGE("c_3 recomputed = ", seq.values[3], " vs reference 0.707108");
}

TEST_CASE("polygonal oracle confirms the leading weights") {
    // The polygon's first carve is the corner triangle and its second carve
    // (portion index "10") is the applicable w2 branch; both are asserted at
    // every energy. The closed-form second-LARGEST weight is only backed by
    // the carve geometry at the critical energy; elsewhere the gap is model
    // error in the closed forms, measured and reported.
    for (double cv : {-1.5, -2.0, -3.0}) {
        const Energy c(cv);
        const int n = 512;
        const auto domain = rkp::sctd_to_ctd(c, n, 100'000'000);
        const auto expansion = ctd::weight_expansion(domain);
        double carve1 = -1.0, carve2_poly = -1.0;
        std::vector<double> oracle;
        for (const auto& pw : expansion) {
            oracle.push_back(pw.value.convert_to<double>());
            if (pw.index.bits() == "1")
                carve1 = oracle.back();
            if (pw.index.bits() == "10")
                carve2_poly = oracle.back();
        }
        oracle = ctd::order_weights(oracle);
        REQUIRE(oracle.size() >= 2);

        const auto closed = rkp::weights_all(c).list.entries();
        const double tol = 10.0 / n;
        REQUIRE(carve1 > 0.0);
        REQUIRE(carve2_poly > 0.0);
        CHECK(std::abs(closed[0] - oracle[0]) < tol);
        CHECK(std::abs(closed[0] - carve1) < tol);

        const rkp::Roots r = rkp::roots(c);
        const double carve2 = (cv >= tree::entry_energy(-3.0))
                                  ? rkp::w2_tangent(c)
                                  : std::numbers::sqrt2 * (r.r2 - r.r1);
        CHECK(std::abs(carve2 - carve2_poly) < tol);

        if (cv == -1.5)
            CHECK(std::abs(closed[1] - oracle[1]) < tol);
        else
            MESSAGE("closed-form second weight at c = ", cv, ": ", closed[1],
                    " vs polygonal second-largest ", oracle[1]);
    }
}

TEST_CASE("rkp capacity sequences satisfy the axioms") {
    const auto seq = rkp::rkp_capacities(Energy(-2.0), 40);
    CHECK(seq.values[0] == 0.0);
    CHECK(std::is_sorted(seq.values.begin(), seq.values.end()));

    const auto base = rkp::weights_all(Energy(-2.0)).list.entries();
    std::vector<double> doubled = base;
    for (double& w : doubled)
        w *= 2.0;
    const auto scaled = cap::union_capacities(cap::WeightList(doubled), 40);
    for (std::size_t k = 0; k <= 40; ++k)
        CHECK(scaled.values[k] == doctest::Approx(2.0 * seq.values[k]).epsilon(1e-12));
}

TEST_CASE("torus_critical_point flags tangency presence") {
    const Energy c(-1.5);
    const auto hek = rkp::torus_critical_point(-3.0, c);
    CHECK(hek.mu1 == doctest::Approx(0.346681).epsilon(1e-5));
    CHECK(hek.mu2 == doctest::Approx(-0.229979).epsilon(1e-5));
    CHECK(hek.present);

    CHECK_FALSE(rkp::torus_critical_point(-5.0, Energy(-2.1)).present);

    const auto boundary = rkp::torus_critical_point(-1.0, c);
    CHECK(boundary.mu1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(boundary.present);

    CHECK_THROWS_AS(rkp::torus_critical_point(1.0, c), domain_error);
}

TEST_CASE("area diagnostic exposes the closed-form excess") {
    const auto diag = rkp::area_diagnostic(Energy(-1.5));
    CHECK(diag.total_area == doctest::Approx(3.0 / 32.0).epsilon(1e-9));
    CHECK(diag.sum_half_squares == doctest::Approx(0.1141).epsilon(1e-2));
    CHECK(diag.excess > 0.0);
    MESSAGE("closed-form sum w^2/2 = ", diag.sum_half_squares, ", domain area = ",
            diag.total_area);
}
