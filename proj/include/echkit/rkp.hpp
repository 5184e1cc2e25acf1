// rkp.hpp - the rotating Kepler problem's concave domain: boundary curve,
// cubic roots, closed-form weights with their piecewise branches, areas, and
// a discretization bridge to the exact engine for cross-validation.
#pragma once

#include <cstdint>
#include <vector>

#include "echkit/capacity.hpp"
#include "echkit/ctd.hpp"
#include "echkit/errors.hpp"

namespace echkit::rkp {

inline constexpr double kCriticalEnergy = -1.5;

// Energy parameter, admissible only at or below the critical value.
class Energy {
public:
    explicit Energy(double c) : c_(c) {
        if (!(c <= kCriticalEnergy))
            throw domain_error("Energy: c must be <= -3/2");
    }
    double value() const { return c_; }

private:
    double c_;
};

// Boundary curve mu2 = 1/(16 mu1^2) + c/2.
double curve_mu2(double mu1, Energy c);

// r1: corner of the domain on the diagonal, root of -16x^3 + 8cx^2 + 1 = 0
// (trigonometric branch, Newton-polished). r2, r3: closed forms in r1; r2 is
// the corner on the antidiagonal and satisfies 16x^3 + 8cx^2 + 1 = 0.
struct Roots {
    double r1;
    double r2;
    double r3;
};
Roots roots(Energy c);

// Inverse of r1(c): c = (16 r1^3 - 1)/(8 r1^2) on (0, 1/4].
double energy_from_r1(double r1);

enum class WeightBranch { zero, corner, tangent, smooth };

struct WeightValue {
    double value = 0.0;
    WeightBranch branch = WeightBranch::zero;
};

// The five closed-form weights. Branch selection always compares the energy
// against entry_energy of the portion's slope: the tangency-based formula
// applies once the torus is present (c >= threshold), the corner/zero form
// below it.
WeightValue weight_w1(Energy c);
WeightValue weight_w2(Energy c);
WeightValue weight_w3(Energy c);
WeightValue weight_w4(Energy c);
WeightValue weight_w5(Energy c);

// Individual branch evaluators, exposed for threshold diagnostics.
double w2_corner(Energy c);
double w2_tangent(Energy c);
double w3_corner(Energy c);
double w3_tangent(Energy c);
double w4_formula(Energy c);
double w5_formula(Energy c);

struct RkpWeights {
    WeightValue w1, w2, w3, w4, w5;
    std::vector<double> as_vector() const;  // w1..w5 in portion order
};

struct OrderedWeights {
    RkpWeights raw;
    cap::WeightList list;  // nonzero weights, nonincreasing
};

RkpWeights weights(Energy c);
OrderedWeights weights_all(Energy c);

// Measured two-sided branch gap of weight_wN at its lowest branch threshold;
// near zero for w2/w3, reported (not asserted) for w4/w5.
double threshold_jump(int weight_number, double offset = 1e-5);

// Triangle piece over the diagonal corner: r1^2.
double area_omega1(double r1);

// Area between the antidiagonal and the curve, closed antiderivative
// -1/(16 mu) + c mu/2 + mu^2/2 evaluated between r1 and r2.
double area_rest(double r1);

// Same integral by adaptive quadrature; independent cross-check.
double area_rest_quadrature(double r1);

// Ratio area_rest/area_omega1; bounded by 1/2 on (0, 1/4], with equality at 1/4.
double ratio_F(double r1);

// Inscribed-vertex polygonal model of the domain: n curve samples rotated to
// concave-domain position, coordinates rounded to multiples of 1/denom_bound.
ctd::ConcaveDomain sctd_to_ctd(Energy c, int samples,
                               std::int64_t denom_bound = 1'000'000);

// Capacities from the ordered closed-form weights.
cap::CapacitySequence rkp_capacities(Energy c, std::size_t kmax);

// Tangency point of the given negative slope on the curve, flagged present
// when it lies between the two corners.
struct TorusPoint {
    double mu1;
    double mu2;
    bool present;
};
TorusPoint torus_critical_point(double slope, Energy c);

// Diagnostic for the closed-form weight list: sum of w^2/2 versus the exact
// total area r1^2 + area_rest. A genuine ball decomposition would match.
struct AreaDiagnostic {
    double sum_half_squares;
    double total_area;
    double excess;  // sum_half_squares - total_area
};
AreaDiagnostic area_diagnostic(Energy c);

} // namespace echkit::rkp
