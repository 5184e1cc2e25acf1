#include "echkit/rkp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "echkit/tree.hpp"

namespace echkit::rkp {

namespace {

constexpr double kRootResidualTol = 1e-10;

double cube(double x) { return x * x * x; }

// Entry thresholds of the four portion slopes used by the closed forms.
double entry(double slope) { return tree::entry_energy(slope); }

// y-value at abscissa x of the tangent line of the given slope.
double tangent_line_y_at(double slope, Energy c, double x) {
    const double mu = tree::tangency_mu1(slope);
    return curve_mu2(mu, c) + (-slope) * (mu - x);
}

// Abscissa where the tangent line of the given slope meets y = -x.
double antidiagonal_hit(double slope, Energy c) {
    const double mu = tree::tangency_mu1(slope);
    const double s = -slope;
    return (s * mu + curve_mu2(mu, c)) / (s - 1.0);
}

double clamp_weight(double v, const char* who) {
    if (v < 0.0) {
        if (v < -1e-9)
            throw consistency_error(std::string(who) + ": negative weight " + std::to_string(v));
        return 0.0;
    }
    return v;
}

} // namespace

double curve_mu2(double mu1, Energy c) {
    if (!(mu1 > 0.0))
        throw domain_error("curve_mu2: mu1 must be positive");
    return 1.0 / (16.0 * mu1 * mu1) + c.value() / 2.0;
}

Roots roots(Energy c) {
    const double cv = c.value();
    // Trigonometric root of -16x^3 + 8cx^2 + 1 = 0. The arccos argument
    // reaches -1 at the critical energy and loses precision there, so polish
    // with one Newton step (the root stays simple: p'(r1) != 0).
    double arg = 1.0 + 27.0 / (4.0 * cube(cv));
    arg = std::clamp(arg, -1.0, 1.0);
    double r1 = (cv / 3.0) * std::cos(std::acos(arg) / 3.0 + 2.0 * std::numbers::pi / 3.0) +
                cv / 6.0;
    const double f = -16.0 * cube(r1) + 8.0 * cv * r1 * r1 + 1.0;
    const double df = -48.0 * r1 * r1 + 16.0 * cv * r1;
    r1 -= f / df;

    if (!(r1 > 0.0) || r1 > 0.25 + 1e-9)
        throw consistency_error("roots: r1 out of (0, 1/4]");
    r1 = std::min(r1, 0.25);

    double disc = 1.0 - 64.0 * cube(r1);
    if (disc < 0.0) {
        if (disc < -1e-12)
            throw consistency_error("roots: negative discriminant");
        disc = 0.0;
    }
    const double s = std::sqrt(disc);
    const double r2 = (1.0 - s) / (32.0 * r1 * r1);
    const double r3 = (1.0 + s) / (32.0 * r1 * r1);

    const double res1 = -16.0 * cube(r1) + 8.0 * cv * r1 * r1 + 1.0;
    const double res2 = 16.0 * cube(r2) + 8.0 * cv * r2 * r2 + 1.0;
    if (std::abs(res1) > kRootResidualTol || std::abs(res2) > kRootResidualTol)
        throw consistency_error("roots: residual check failed");
    return Roots{r1, r2, r3};
}

double energy_from_r1(double r1) {
    if (!(r1 > 0.0) || r1 > 0.25)
        throw domain_error("energy_from_r1: r1 must lie in (0, 1/4]");
    return (16.0 * cube(r1) - 1.0) / (8.0 * r1 * r1);
}

WeightValue weight_w1(Energy c) {
    return WeightValue{std::numbers::sqrt2 * roots(c).r1, WeightBranch::smooth};
}

double w2_corner(Energy c) {
    const Roots r = roots(c);
    return std::numbers::sqrt2 * (r.r2 - r.r1);
}

double w2_tangent(Energy c) {
    return std::numbers::sqrt2 * (antidiagonal_hit(-3.0, c) - roots(c).r1);
}

WeightValue weight_w2(Energy c) {
    if (c.value() >= entry(-3.0))
        return WeightValue{clamp_weight(w2_tangent(c), "weight_w2"), WeightBranch::tangent};
    return WeightValue{clamp_weight(w2_corner(c), "weight_w2"), WeightBranch::corner};
}

double w3_corner(Energy c) {
    const Roots r = roots(c);
    return std::numbers::sqrt2 * r.r2 - weight_w2(c).value - weight_w1(c).value;
}

double w3_tangent(Energy c) {
    return std::numbers::sqrt2 * antidiagonal_hit(-2.0, c) - weight_w2(c).value -
           weight_w1(c).value;
}

WeightValue weight_w3(Energy c) {
    if (c.value() >= entry(-2.0))
        return WeightValue{clamp_weight(w3_tangent(c), "weight_w3"), WeightBranch::tangent};
    if (c.value() >= entry(-3.0))
        return WeightValue{clamp_weight(w3_corner(c), "weight_w3"), WeightBranch::corner};
    return WeightValue{0.0, WeightBranch::zero};
}

double w4_formula(Energy c) {
    const Roots r = roots(c);
    const double y4 = tangent_line_y_at(-5.0, c, r.r1);
    return (r.r1 + y4) - weight_w2(c).value;
}

WeightValue weight_w4(Energy c) {
    if (c.value() >= entry(-5.0)) {
        const Roots r = roots(c);
        const double mu = tree::tangency_mu1(-5.0);
        if (r.r1 <= mu && mu <= r.r2 + 1e-12)
            return WeightValue{clamp_weight(w4_formula(c), "weight_w4"), WeightBranch::tangent};
    }
    return WeightValue{0.0, WeightBranch::zero};
}

double w5_formula(Energy c) {
    const Roots r = roots(c);
    const double y5 = tangent_line_y_at(-7.0, c, r.r1);
    return (r.r1 + y5) - (weight_w2(c).value + weight_w4(c).value);
}

WeightValue weight_w5(Energy c) {
    if (c.value() >= entry(-7.0))
        return WeightValue{clamp_weight(w5_formula(c), "weight_w5"), WeightBranch::tangent};
    return WeightValue{0.0, WeightBranch::zero};
}

std::vector<double> RkpWeights::as_vector() const {
    return {w1.value, w2.value, w3.value, w4.value, w5.value};
}

RkpWeights weights(Energy c) {
    return RkpWeights{weight_w1(c), weight_w2(c), weight_w3(c), weight_w4(c), weight_w5(c)};
}

OrderedWeights weights_all(Energy c) {
    const RkpWeights raw = weights(c);
    const std::vector<double> ordered = ctd::order_weights(raw.as_vector());
    return OrderedWeights{raw, cap::WeightList(ordered)};
}

double threshold_jump(int weight_number, double offset) {
    if (offset <= 0.0)
        throw usage_error("threshold_jump: offset must be positive");
    double t;
    switch (weight_number) {
    case 2: t = entry(-3.0); break;
    case 3: t = entry(-3.0); break;
    case 4: t = entry(-5.0); break;
    case 5: t = entry(-7.0); break;
    default:
        throw usage_error("threshold_jump: weight_number must be 2..5");
    }
    auto eval = [&](Energy c) {
        switch (weight_number) {
        case 2: return weight_w2(c).value;
        case 3: return weight_w3(c).value;
        case 4: return weight_w4(c).value;
        default: return weight_w5(c).value;
        }
    };
    return std::abs(eval(Energy(t + offset)) - eval(Energy(t - offset)));
}

double area_omega1(double r1) {
    if (!(r1 > 0.0))
        throw domain_error("area_omega1: r1 must be positive");
    return r1 * r1;
}

namespace {

double area_antiderivative(double mu, double c) {
    return -1.0 / (16.0 * mu) + c * mu / 2.0 + mu * mu / 2.0;
}

double r2_from_r1(double r1) {
    const double disc = std::max(0.0, 1.0 - 64.0 * cube(r1));
    return (1.0 - std::sqrt(disc)) / (32.0 * r1 * r1);
}

} // namespace

double area_rest(double r1) {
    const double c = energy_from_r1(r1);
    const double r2 = r2_from_r1(r1);
    return area_antiderivative(r2, c) - area_antiderivative(r1, c);
}

double area_rest_quadrature(double r1) {
    const double c = energy_from_r1(r1);
    const double r2 = r2_from_r1(r1);
    auto integrand = [c](double mu) { return 1.0 / (16.0 * mu * mu) + c / 2.0 + mu; };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, r1, r2, 12, 1e-12);
}

double ratio_F(double r1) {
    return area_rest(r1) / area_omega1(r1);
}

ctd::ConcaveDomain sctd_to_ctd(Energy c, int samples, std::int64_t denom_bound) {
    if (samples < 2)
        throw usage_error("sctd_to_ctd: need at least two samples");
    if (denom_bound < 1)
        throw usage_error("sctd_to_ctd: denominator bound must be positive");
    const Roots r = roots(c);
    using boost::multiprecision::cpp_int;
    auto snap = [&](double x) {
        return ctd::Rational(cpp_int(std::llround(x * static_cast<double>(denom_bound))),
                             cpp_int(denom_bound));
    };
    std::vector<ctd::Point> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < samples; ++i) {
        const double mu1 = r.r1 + (r.r2 - r.r1) * static_cast<double>(i) /
                                      static_cast<double>(samples - 1);
        const double mu2 = curve_mu2(mu1, c);
        double u = (mu1 - mu2) * inv_sqrt2;
        double v = (mu1 + mu2) * inv_sqrt2;
        if (i == 0)
            u = 0.0;  // image of the diagonal corner sits on the v-axis
        if (i == samples - 1)
            v = 0.0;  // image of the antidiagonal corner sits on the u-axis
        ctd::Point q{snap(u), snap(v)};
        if (!pts.empty() && q.x <= pts.back().x)
            continue;
        pts.push_back(std::move(q));
    }
    try {
        return ctd::ConcaveDomain(std::move(pts));
    } catch (const domain_error& e) {
        throw discretization_error(
            std::string("sctd_to_ctd: rounded boundary chain rejected (") + e.what() +
            "); increase samples or the denominator bound");
    }
}

cap::CapacitySequence rkp_capacities(Energy c, std::size_t kmax) {
    cap::CapacitySequence seq = cap::union_capacities(weights_all(c).list, kmax);
    seq.provenance = cap::Provenance::domain;
    return seq;
}

TorusPoint torus_critical_point(double slope, Energy c) {
    const double mu = tree::tangency_mu1(slope);
    const double mu2 = curve_mu2(mu, c);
    const Roots r = roots(c);
    const bool present = (mu >= r.r1 - 1e-12) && (mu <= r.r2 + 1e-12);
    return TorusPoint{mu, mu2, present};
}

AreaDiagnostic area_diagnostic(Energy c) {
    const OrderedWeights ow = weights_all(c);
    double half_sq = 0.0;
    for (double w : ow.list.entries())
        half_sq += w * w / 2.0;
    const Roots r = roots(c);
    const double total = area_omega1(r.r1) + area_rest(r.r1);
    return AreaDiagnostic{half_sq, total, half_sq - total};
}

} // namespace echkit::rkp
