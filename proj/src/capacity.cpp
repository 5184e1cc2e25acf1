#include "echkit/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace echkit::cap {

namespace {

// d(k): unique nonnegative integer with d^2 + d <= 2k <= d^2 + 3d.
// d^2 + 3d = d(d+3) is always even, so the intervals tile the integers.
std::size_t ball_degree(std::size_t k) {
    const double x = (std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0;
    auto d = static_cast<std::size_t>(x);
    while (d > 0 && d * d + d > 2 * k)
        --d;
    while ((d + 1) * (d + 1) + (d + 1) <= 2 * k)
        ++d;
    return d;
}

void check_positive(double a, const char* who) {
    if (!(a > 0.0))
        throw domain_error(std::string(who) + ": value must be positive");
}

} // namespace

WeightList::WeightList(std::vector<double> entries) : entries_(std::move(entries)) {
    for (double w : entries_)
        if (!(w > 0.0))
            throw domain_error("WeightList: entries must be positive");
}

std::vector<double> WeightList::sorted() const {
    std::vector<double> out = entries_;
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double ball_capacity(double a, std::size_t k) {
    check_positive(a, "ball_capacity");
    return a * static_cast<double>(ball_degree(k));
}

CapacitySequence ball_sequence(double a, std::size_t kmax) {
    check_positive(a, "ball_sequence");
    CapacitySequence seq;
    seq.provenance = Provenance::ball;
    seq.values.resize(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k)
        seq.values[k] = a * static_cast<double>(ball_degree(k));
    return seq;
}

CapacitySequence ellipsoid_sequence(double a, double b, std::size_t kmax) {
    check_positive(a, "ellipsoid_sequence");
    check_positive(b, "ellipsoid_sequence");
    // Collect every m*a + n*b up to a ceiling V, growing V geometrically
    // until at least kmax+1 values are in range.
    std::vector<double> vals;
    double v = std::sqrt(2.0 * a * b * static_cast<double>(kmax + 1)) + std::max(a, b);
    for (;;) {
        vals.clear();
        for (std::size_t m = 0; static_cast<double>(m) * a <= v; ++m) {
            const double base = static_cast<double>(m) * a;
            for (std::size_t n = 0; base + static_cast<double>(n) * b <= v; ++n)
                vals.push_back(base + static_cast<double>(n) * b);
        }
        if (vals.size() > kmax)
            break;
        v *= 2.0;
    }
    std::sort(vals.begin(), vals.end());
    vals.resize(kmax + 1);
    CapacitySequence seq;
    seq.provenance = Provenance::ellipsoid;
    seq.values = std::move(vals);
    return seq;
}

CapacitySequence union_capacities(const WeightList& weights, std::size_t kmax) {
    if (weights.empty())
        throw domain_error("union_capacities: weight list must be nonempty");
    const auto& ws = weights.entries();
    std::vector<double> acc = ball_sequence(ws[0], kmax).values;
    for (std::size_t i = 1; i < ws.size(); ++i) {
        std::vector<double> next(kmax + 1, 0.0);
        for (std::size_t k = 0; k <= kmax; ++k) {
            double best = 0.0;
            for (std::size_t j = 0; j <= k; ++j)
                best = std::max(best, acc[j] + ball_capacity(ws[i], k - j));
            next[k] = best;
        }
        acc = std::move(next);
    }
    CapacitySequence seq;
    seq.provenance = Provenance::disjoint_union;
    seq.values = std::move(acc);
    return seq;
}

namespace {

double best_composition(const std::vector<double>& ws, std::size_t i, std::size_t k) {
    if (i + 1 == ws.size())
        return ball_capacity(ws[i], k);
    double best = 0.0;
    for (std::size_t ki = 0; ki <= k; ++ki)
        best = std::max(best, ball_capacity(ws[i], ki) + best_composition(ws, i + 1, k - ki));
    return best;
}

} // namespace

CapacitySequence brute_force_union(const WeightList& weights, std::size_t kmax) {
    if (weights.empty())
        throw domain_error("brute_force_union: weight list must be nonempty");
    if (weights.size() > 6 || kmax > 15)
        throw resource_error("brute_force_union: guarded to <= 6 weights and kmax <= 15");
    CapacitySequence seq;
    seq.provenance = Provenance::disjoint_union;
    seq.values.resize(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k)
        seq.values[k] = best_composition(weights.entries(), 0, k);
    return seq;
}

Verdict embed_ellipsoid_check(double a, double b, double a2, double b2, std::size_t kmax) {
    check_positive(a, "embed_ellipsoid_check");
    check_positive(b, "embed_ellipsoid_check");
    check_positive(a2, "embed_ellipsoid_check");
    check_positive(b2, "embed_ellipsoid_check");
    return sequence_dominates(ellipsoid_sequence(a, b, kmax), ellipsoid_sequence(a2, b2, kmax));
}

Verdict sequence_dominates(const CapacitySequence& A, const CapacitySequence& B) {
    if (A.values.size() != B.values.size())
        throw usage_error("sequence_dominates: sequences must have equal length");
    Verdict v;
    v.checked_kmax = A.kmax();
    for (std::size_t k = 0; k < A.values.size(); ++k) {
        if (A.values[k] > B.values[k] + kCompareTol) {
            v.ok = false;
            v.first_violation = k;
            return v;
        }
    }
    return v;
}

} // namespace echkit::cap
