#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "dartflip/doublechain.hpp"
#include "dartflip/flipgraph.hpp"

namespace dartflip {

/// Malformed input file or JSON document.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// {"points": [[x,y],...], "chains": {"p1": [...], "p2": [...]}?}
struct PointSetFile {
    std::shared_ptr<const PointSet> ps;
    std::optional<DoubleChain> chains;
};

PointSetFile parse_point_set(const std::string& json_text);
std::string emit_point_set(const PointSet& ps, const DoubleChain* dc = nullptr);

/// {"points": [[x,y],...], "edges": [[i,j],...], "k": n}
KDPT parse_kdpt(const std::string& json_text);
std::string emit_kdpt(const KDPT& t);

std::string emit_flip_path(const FlipPath& path);

std::string graph_to_dot(const FlipGraph& fg);
std::string graph_to_json(const FlipGraph& fg);

/// SVG rendering: darts shaded, missing spines dashed.
std::string render_svg(const KDPT& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Random general-position point set via rejection sampling; deterministic
/// for a given (n, seed).
PointSet random_point_set(int n, std::uint64_t seed);

/// n points in convex position (integer parabola).
PointSet convex_point_set(int n);

}  // namespace dartflip
