#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dartflip/onedart.hpp"

namespace dartflip {

/// Two concave chains facing each other inside a convex 4-gon, with
/// neither chain's hull crossing a diagonal of the 4-gon. p1 is the upper
/// chain and p2 the lower one, both listed left to right.
struct DoubleChain {
    std::shared_ptr<const PointSet> ps;
    std::vector<int> p1;  // a + 2 indices
    std::vector<int> p2;  // b + 2 indices

    int a() const { return static_cast<int>(p1.size()) - 2; }
    int b() const { return static_cast<int>(p2.size()) - 2; }
};

/// How many darts have their tail on each chain. Tails are interior, so
/// 0 <= k1 <= a and 0 <= k2 <= b.
struct Designation {
    int k1 = 0;
    int k2 = 0;

    int k() const { return k1 + k2; }
    friend bool operator==(const Designation&, const Designation&) = default;
    friend auto operator<=>(const Designation&, const Designation&) = default;
};

/// Deterministic double chain on parabolic arcs spanning a common width.
/// Throws std::invalid_argument when the coordinates would leave the
/// permitted range.
DoubleChain generate(int a, int b);

/// Empty iff (ps, p1, p2) satisfies every double-chain invariant.
std::vector<std::string> double_chain_violations(const PointSet& ps, const std::vector<int>& p1,
                                                 const std::vector<int>& p2);
bool is_double_chain(const PointSet& ps, const std::vector<int>& p1, const std::vector<int>& p2);

enum class DartClass { Aligned, Crossing };

/// Aligned: tip and tail adjacent on one chain. Crossing: tip and tail on
/// opposite chains. Any other dart shape throws std::logic_error, since it
/// cannot occur on a double chain.
DartClass classify_dart_dc(const DoubleChain& dc, const DartInfo& dart);

Designation designation(const DoubleChain& dc, const KDPT& t);

/// The canonical k-DPT of a designation: all darts aligned and packed into
/// the leftmost interior chain positions; P1-dart wings sit at the leftmost
/// P2 point and the rightmost P1 point; P2-dart wings sit at the rightmost
/// P1-dart tail (leftmost P1 point when k1 = 0) and the rightmost P2 point;
/// the white regions are triangulated by a deterministic fan rule.
KDPT canonical_kdpt(const DoubleChain& dc, const Designation& d);

/// Flip path from t to canonical_kdpt(dc, designation(dc, t)), staged after
/// the canonicalization procedure: P1-darts first (opposite vertex leftward,
/// spine leftward via the crossing form, chain-hull retriangulation), then
/// P2-darts, then the middle region. Falls back to breadth-first search
/// (flagged) when a stage rejects a case.
FlipPath canonicalize(const DoubleChain& dc, const KDPT& t, int cap = kDefaultEnumerationCap);

/// Number of flip-graph components of k-DPTs on a double chain:
/// min{a, b, k, a+b-k} + 1.
int component_count_formula(int a, int b, int k);

}  // namespace dartflip
