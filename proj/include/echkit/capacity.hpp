// capacity.hpp - capacity sequences of balls, ellipsoids and disjoint unions,
// plus the entrywise comparisons used as embedding-obstruction reports.
#pragma once

#include <cstddef>
#include <vector>

#include "echkit/errors.hpp"

namespace echkit::cap {

enum class Provenance { ball, ellipsoid, disjoint_union, domain };

// Nondecreasing sequence c_0 <= c_1 <= ... with c_0 = 0, indexed from zero.
struct CapacitySequence {
    std::vector<double> values;
    Provenance provenance = Provenance::ball;

    std::size_t kmax() const { return values.empty() ? 0 : values.size() - 1; }
};

// Finite multiset of positive ball sizes.
class WeightList {
public:
    WeightList() = default;
    explicit WeightList(std::vector<double> entries);

    const std::vector<double>& entries() const { return entries_; }
    std::vector<double> sorted() const;  // nonincreasing view
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<double> entries_;
};

// Entries closer than this count as equal in verdicts; the sequences here are
// built from cube and square roots, so strict comparison would manufacture
// false obstructions.
inline constexpr double kCompareTol = 1e-9;

// c_k(B(a)) = a*d with d the unique nonnegative integer satisfying
// d^2 + d <= 2k <= d^2 + 3d.
double ball_capacity(double a, std::size_t k);

CapacitySequence ball_sequence(double a, std::size_t kmax);

// First kmax+1 entries of N(a,b): every m*a + n*b (m,n >= 0) sorted
// nondecreasing with multiplicity.
CapacitySequence ellipsoid_sequence(double a, double b, std::size_t kmax);

// Disjoint-union maximization via iterated max-plus convolution over the
// ball sequences of the weights.
CapacitySequence union_capacities(const WeightList& weights, std::size_t kmax);

// Independent oracle: explicit enumeration of all compositions
// k_1 + ... + k_n = k. Guarded to |weights| <= 6 and kmax <= 15.
CapacitySequence brute_force_union(const WeightList& weights, std::size_t kmax);

// Entrywise comparison outcome. ok means no violation up to checked_kmax;
// otherwise first_violation is the smallest offending index.
struct Verdict {
    bool ok = true;
    std::size_t first_violation = 0;
    std::size_t checked_kmax = 0;
};

// Obstruction check for int E(a,b) -> E(a2,b2): N(a,b)_k <= N(a2,b2)_k for
// all k <= kmax. Necessary and sufficient only in the limit kmax -> infinity.
Verdict embed_ellipsoid_check(double a, double b, double a2, double b2, std::size_t kmax);

// Whether A_k <= B_k for all k (equal lengths required).
Verdict sequence_dominates(const CapacitySequence& A, const CapacitySequence& B);

} // namespace echkit::cap
