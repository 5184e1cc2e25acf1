// tree.hpp - Stern-Brocot navigation, the slope tree attached to it, and the
// per-slope energy thresholds that tie tree nodes to boundary-curve geometry.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "echkit/errors.hpp"

namespace echkit::tree {

// Binary address of a tree node. The first bit is always 1 (the root), so
// "1" is the root, "10"/"11" its children, and so on. Equality is bitwise.
class TreeIndex {
public:
    explicit TreeIndex(std::string bits);
    explicit TreeIndex(std::string_view bits) : TreeIndex(std::string(bits)) {}
    explicit TreeIndex(const char* bits) : TreeIndex(std::string(bits)) {}

    const std::string& bits() const { return bits_; }
    std::size_t depth() const { return bits_.size(); }
    TreeIndex child(char bit) const;

    bool operator==(const TreeIndex&) const = default;

private:
    std::string bits_;
};

// Nonnegative rational in lowest terms. den == 0 encodes the single
// distinguished infinity value (the slope-tree root); num and den are
// never both zero.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool is_infinite() const { return den == 0; }
    double to_double() const;
    std::string str() const;

    bool operator==(const Fraction&) const = default;
};

Fraction make_fraction(std::int64_t num, std::int64_t den);

// Extended rational slope: finite nonzero rational, or the root's infinity
// (den == 0). Stored reduced with den > 0 when finite; the sign rides on num.
struct SlopeValue {
    std::int64_t num = 1;
    std::int64_t den = 0;

    bool is_infinite() const { return den == 0; }
    double to_double() const;
    std::string str() const;

    bool operator==(const SlopeValue&) const = default;
};

// Value of the Stern-Brocot node at `index`: the root is 1/1, a right child
// takes the mediant with the right ancestor bound, a left child with the left.
Fraction sb_value(const TreeIndex& index);

// Slope attached to the node: with k/l = sb_value(index), S = (k+l)/(l-k),
// infinite at the root where k = l.
SlopeValue new_tree_slope(const TreeIndex& index);

// Energy at which the (k,l) resonance torus first appears:
// c = -(1/2 + l/k) (k/l)^(2/3).
double critical_energy(std::int64_t k, std::int64_t l);

// Abscissa of the point where the boundary curve has the given negative
// slope: mu1 = (-1/(8 S))^(1/3).
double tangency_mu1(double slope);

// Energy at which the tangency point of the given slope first enters the
// domain, i.e. where it coincides with the corner on the line y = -x:
// c = -(16 mu^3 + 1)/(8 mu^2) with mu = tangency_mu1(slope).
double entry_energy(double slope);

struct TreeNode {
    TreeIndex index;
    Fraction sb;
    SlopeValue slope;
};

inline constexpr int kDefaultDepthCap = 16;

// All nodes with depth <= depth, breadth-first, '0' child before '1' child.
// Enumeration past the cap is refused.
std::vector<TreeNode> enumerate_tree(int depth, int depth_cap = kDefaultDepthCap);

} // namespace echkit::tree
