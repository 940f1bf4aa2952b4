#pragma once

#include <optional>
#include <vector>

#include "dartflip/ptcore.hpp"

namespace dartflip {

struct Flip {
    Edge removed;
    Edge inserted;

    Flip reversed() const { return Flip{inserted, removed}; }
    friend bool operator==(const Flip&, const Flip&) = default;
    friend auto operator<=>(const Flip&, const Flip&) = default;
};

/// Walk of the region obtained by deleting interior edge e; repeats the
/// shared vertex when the two incident faces shared two edges.
MergedFace merged_face(const KDPT& t, const Edge& e);

/// All chords of mf that split it into two faces each classifying as a
/// triangle or a dart. Always contains the removed edge; at most two
/// candidates exist when mf came from a valid k-DPT.
std::vector<Edge> candidate_chords(const MergedFace& mf, const KDPT& t, const Edge& removed);

/// Exchange e for the other geodesic diagonal of its pseudo-quadrilateral.
/// nullopt when the merged face is a pseudo-triangle (not flippable).
/// Throws std::logic_error if more than two chords are found (would
/// contradict the two-diagonal property).
std::optional<KDPT> flip(const KDPT& t, const Edge& e);

/// All successful flips, sorted by removed edge.
std::vector<Flip> flippable_edges(const KDPT& t);

/// Result of the flip (t, f.removed); asserts the inserted edge matches.
KDPT apply_flip(const KDPT& t, const Flip& f);

}  // namespace dartflip
