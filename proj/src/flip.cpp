#include "dartflip/flip.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dartflip {

MergedFace merged_face(const KDPT& t, const Edge& e) {
    if (!t.has_edge(e)) throw std::invalid_argument("merged_face: edge not in k-DPT");
    if (t.is_hull_edge(e)) throw std::invalid_argument("merged_face: hull edge");
    std::vector<std::vector<int>> adjacent;
    for (const auto& w : face_walks(t)) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (Edge(w[i], w[(i + 1) % w.size()]) == e) {
                // rotate so the walk starts right after the removed edge
                std::vector<int> rot;
                for (std::size_t j = 0; j < w.size(); ++j)
                    rot.push_back(w[(i + 1 + j) % w.size()]);
                adjacent.push_back(std::move(rot));
                break;
            }
        }
    }
    if (adjacent.size() != 2) throw std::logic_error("merged_face: interior edge without two faces");
    // adjacent[0] starts at one endpoint of e and ends at the other; same
    // for adjacent[1] with endpoints swapped. Concatenating all but the
    // last vertex of each walk yields the merged cycle; a vertex repeats
    // exactly when the faces shared a second edge (slit).
    std::vector<int> merged;
    merged.insert(merged.end(), adjacent[0].begin(), adjacent[0].end() - 1);
    merged.insert(merged.end(), adjacent[1].begin(), adjacent[1].end() - 1);
    return MergedFace{std::move(merged)};
}

namespace {

bool subwalk_classifies(const std::vector<int>& walk, const PointSet& ps) {
    return classify_walk(walk, ps) != FaceKind::Invalid;
}

}  // namespace

std::vector<Edge> candidate_chords(const MergedFace& mf, const KDPT& t, const Edge& removed) {
    const PointSet& ps = t.ps();
    const auto& w = mf.walk;
    const std::size_t m = w.size();
    std::set<Edge> found;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i + 1 || (i == 0 && j == m - 1)) continue;  // boundary edge
            if (w[i] == w[j]) continue;                          // slit vertex pair
            Edge chord(w[i], w[j]);
            if (found.count(chord)) continue;
            if (chord != removed && t.has_edge(chord)) continue;

            const Point& cu = ps.at(chord.a);
            const Point& cv = ps.at(chord.b);
            bool ok = true;
            for (const Edge& e : t.edges()) {
                if (e == removed) continue;
                if (segments_properly_intersect(cu, cv, ps.at(e.a), ps.at(e.b))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (int v = 0; ok && v < ps.n(); ++v)
                if (segment_strictly_contains_point(cu, cv, ps.at(v))) ok = false;
            if (!ok) continue;

            std::vector<int> sub1(w.begin() + static_cast<std::ptrdiff_t>(i),
                                  w.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            std::vector<int> sub2;
            for (std::size_t p = j; p != i; p = (p + 1) % m) sub2.push_back(w[p]);
            sub2.push_back(w[i]);
            if (!subwalk_classifies(sub1, ps) || !subwalk_classifies(sub2, ps)) continue;
            found.insert(chord);
        }
    }
    return {found.begin(), found.end()};
}

std::optional<KDPT> flip(const KDPT& t, const Edge& e) {
    MergedFace mf = merged_face(t, e);
    std::vector<Edge> chords = candidate_chords(mf, t, e);
    if (std::find(chords.begin(), chords.end(), e) == chords.end())
        throw std::logic_error("flip: removed edge is not a chord of its own merged face");
    if (chords.size() > 2) {
        std::ostringstream os;
        os << "flip: pseudo-quadrilateral with " << chords.size() << " diagonals at edge " << e.a
           << "-" << e.b;
        throw std::logic_error(os.str());
    }
    if (chords.size() == 1) return std::nullopt;
    const Edge& other = (chords[0] == e) ? chords[1] : chords[0];
    return t.with_edge_exchanged(e, other);
}

std::vector<Flip> flippable_edges(const KDPT& t) {
    std::vector<Flip> out;
    for (const Edge& e : t.edges()) {
        if (t.is_hull_edge(e)) continue;
        MergedFace mf = merged_face(t, e);
        std::vector<Edge> chords = candidate_chords(mf, t, e);
        if (chords.size() == 2) {
            const Edge& other = (chords[0] == e) ? chords[1] : chords[0];
            out.push_back(Flip{e, other});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

KDPT apply_flip(const KDPT& t, const Flip& f) {
    std::optional<KDPT> r = flip(t, f.removed);
    if (!r) throw std::invalid_argument("apply_flip: edge not flippable");
    if (!r->has_edge(f.inserted)) throw std::invalid_argument("apply_flip: inserted edge mismatch");
    return *r;
}

}  // namespace dartflip
