// ctd.hpp - exact weight expansion of rational concave toric domains:
// carve the largest corner triangle, normalize the two leftover portions by
// unimodular shears, recurse. Exact rational arithmetic throughout.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "echkit/capacity.hpp"
#include "echkit/errors.hpp"
#include "echkit/tree.hpp"

namespace echkit::ctd {

using Rational = boost::multiprecision::cpp_rational;

struct Point {
    Rational x;
    Rational y;

    bool operator==(const Point&) const = default;
};

// Region under a piecewise-linear convex nonincreasing boundary f on [0,a]
// with f(0) = b > 0 and f(a) = 0, stored as the vertex chain of the graph.
// Validated on construction: x strictly increasing, all coordinates >= 0,
// every segment slope negative, slopes nondecreasing along x.
class ConcaveDomain {
public:
    explicit ConcaveDomain(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    const Rational& width() const { return vertices_.back().x; }   // a
    const Rational& height() const { return vertices_.front().y; } // b

    ConcaveDomain scaled(const Rational& r) const;

private:
    std::vector<Point> vertices_;
};

// Exact area under the boundary (trapezoid sum).
Rational domain_area(const ConcaveDomain& d);

// Largest a such that the triangle with legs a on the axes fits under the
// boundary: the minimum of x + f(x), attained at a vertex. Ties broken
// toward the smallest x.
struct FirstTriangle {
    Rational a;
    Point tangent_vertex;
};
FirstTriangle first_triangle(const ConcaveDomain& d);

// The two leftover portions after removing the corner triangle, renormalized
// to concave-domain shape. upper is the part left of the tangent vertex
// mapped by (x,y) -> (x, x+y-a) and transposed; lower is the part right of it
// mapped by (x,y) -> (x+y-a, y). Zero-area portions come back empty.
struct SplitResult {
    std::optional<ConcaveDomain> upper;
    std::optional<ConcaveDomain> lower;
};
SplitResult split_portions(const ConcaveDomain& d, const Rational& a, const Point& t);

struct PortionWeight {
    tree::TreeIndex index;
    Rational value;
};

inline constexpr int kDefaultExpansionDepthCap = 64;

// Full recursive weight expansion. Emits (index, a) per carved triangle,
// root index "1", upper child index+"1", lower child index+"0". Terminates
// for rational input; the cap guards against runaway recursion.
std::vector<PortionWeight> weight_expansion(const ConcaveDomain& d,
                                            int depth_cap = kDefaultExpansionDepthCap);

// Nonincreasing order, multiplicities kept, zero entries dropped.
std::vector<Rational> order_weights(std::vector<Rational> w);
std::vector<double> order_weights(std::vector<double> w);

// Capacities of the domain via its weight expansion and the disjoint-union
// maximization.
cap::CapacitySequence ctd_capacities(const ConcaveDomain& d, std::size_t kmax,
                                     int depth_cap = kDefaultExpansionDepthCap);

// Exact parse of "p/q", integer, or decimal literals ("1/3", "2", "0.25").
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

} // namespace echkit::ctd
