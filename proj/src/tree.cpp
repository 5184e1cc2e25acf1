#include "echkit/tree.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace echkit::tree {

namespace {

// Index length cap keeps the mediant arithmetic comfortably inside int64
// (node values grow at most like Fibonacci numbers in the depth).
constexpr std::size_t kMaxIndexBits = 64;

void validate_bits(const std::string& bits) {
    if (bits.empty())
        throw usage_error("TreeIndex: index must be nonempty");
    if (bits.front() != '1')
        throw usage_error("TreeIndex: index must begin with 1, got \"" + bits + "\"");
    if (bits.size() > kMaxIndexBits)
        throw usage_error("TreeIndex: index longer than " + std::to_string(kMaxIndexBits) + " bits");
    for (char c : bits)
        if (c != '0' && c != '1')
            throw usage_error("TreeIndex: invalid character in \"" + bits + "\"");
}

} // namespace

TreeIndex::TreeIndex(std::string bits) : bits_(std::move(bits)) {
    validate_bits(bits_);
}

TreeIndex TreeIndex::child(char bit) const {
    if (bit != '0' && bit != '1')
        throw usage_error("TreeIndex::child: bit must be 0 or 1");
    return TreeIndex(bits_ + bit);
}

Fraction make_fraction(std::int64_t num, std::int64_t den) {
    if (num == 0 && den == 0)
        throw usage_error("Fraction: 0/0 is not a value");
    if (num < 0 || den < 0)
        throw usage_error("Fraction: components must be nonnegative");
    if (den == 0)
        return Fraction{1, 0};
    const std::int64_t g = std::gcd(num, den);
    return Fraction{num / g, den / g};
}

double Fraction::to_double() const {
    if (is_infinite())
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Fraction::str() const {
    if (is_infinite())
        return "inf";
    return std::to_string(num) + "/" + std::to_string(den);
}

double SlopeValue::to_double() const {
    if (is_infinite())
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string SlopeValue::str() const {
    if (is_infinite())
        return "inf";
    return std::to_string(num) + "/" + std::to_string(den);
}

Fraction sb_value(const TreeIndex& index) {
    // Walk from the root keeping the enclosing bounds (left, right); the
    // current node is always their mediant.
    std::int64_t ln = 0, ld = 1;  // left bound, starts at 0/1
    std::int64_t rn = 1, rd = 0;  // right bound, starts at 1/0
    std::int64_t mn = 1, md = 1;  // mediant = current node
    const std::string& bits = index.bits();
    for (std::size_t i = 1; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            ln = mn;
            ld = md;
        } else {
            rn = mn;
            rd = md;
        }
        mn = ln + rn;
        md = ld + rd;
    }
    return make_fraction(mn, md);
}

SlopeValue new_tree_slope(const TreeIndex& index) {
    const Fraction f = sb_value(index);
    const std::int64_t k = f.num, l = f.den;
    if (k == l)
        return SlopeValue{1, 0};
    std::int64_t num = k + l;
    std::int64_t den = l - k;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return SlopeValue{num / g, den / g};
}

double critical_energy(std::int64_t k, std::int64_t l) {
    if (k <= 0 || l <= 0)
        throw domain_error("critical_energy: k and l must be positive");
    const double q = static_cast<double>(k) / static_cast<double>(l);
    return -(0.5 + 1.0 / q) * std::cbrt(q * q);
}

double tangency_mu1(double slope) {
    if (!(slope < 0.0))
        throw domain_error("tangency_mu1: slope must be negative");
    return std::cbrt(-1.0 / (8.0 * slope));
}

double entry_energy(double slope) {
    const double mu = tangency_mu1(slope);
    return -(16.0 * mu * mu * mu + 1.0) / (8.0 * mu * mu);
}

std::vector<TreeNode> enumerate_tree(int depth, int depth_cap) {
    if (depth < 1)
        throw usage_error("enumerate_tree: depth must be >= 1");
    if (depth > depth_cap)
        throw usage_error("enumerate_tree: depth " + std::to_string(depth) +
                          " exceeds cap " + std::to_string(depth_cap));
    std::vector<TreeNode> nodes;
    nodes.reserve((std::size_t{1} << depth) - 1);
    std::vector<TreeIndex> level{TreeIndex("1")};
    for (int d = 1; d <= depth; ++d) {
        std::vector<TreeIndex> next;
        next.reserve(level.size() * 2);
        for (const TreeIndex& idx : level) {
            nodes.push_back(TreeNode{idx, sb_value(idx), new_tree_slope(idx)});
            if (d < depth) {
                next.push_back(idx.child('0'));
                next.push_back(idx.child('1'));
            }
        }
        level = std::move(next);
    }
    return nodes;
}

} // namespace echkit::tree
