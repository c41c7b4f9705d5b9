#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace nlsg {

// An edge of a metric graph. Finite edges are identified with the interval
// (0, length); half-lines have length = +infinity and run from their single
// graph vertex (stored as `left`) out to infinity, so `right` is kNoVertex.
struct Edge {
  int left = 0;
  int right = 0;
  double length = 0.0;

  bool is_halfline() const { return !std::isfinite(length); }
};

inline constexpr int kNoVertex = -1;
inline constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

// Combinatorial + metric graph: dense integer vertex ids, edges with lengths
// in (0, +inf]. Self-loops and parallel edges are allowed. Immutable after
// construction.
class MetricGraph {
public:
  MetricGraph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int j) const { return edges_[static_cast<size_t>(j)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Half-line counts once, self-loop counts twice.
  int degree(int v) const;
  int num_halflines() const;
  std::vector<int> halfline_ids() const;
  int num_finite_edges() const { return num_edges() - num_halflines(); }

private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
};

// Named families. Finite edges come first in edge order, half-lines last.
MetricGraph make_line();                 // R split at the origin: one vertex, two half-lines
MetricGraph make_halfline();             // R+: one vertex, one half-line
MetricGraph make_star(int n);            // n >= 2 half-lines from one vertex
MetricGraph make_bridge(int n, const std::vector<double>& lengths);  // B_n
MetricGraph make_star_2plus1(double l);  // two half-lines + pendant edge of length l
// Ladder of two equal-length parallel pairs ending in a self-loop, with two
// half-lines at the base vertex. lengths = {pair v0-v1, pair v1-v2, loop at v2}.
MetricGraph make_exceptional_e3(const std::vector<double>& lengths);

// Text format: one line per edge, `edge <v_left> <v_right> <length|inf>`.
// Half-lines use `inf` as length and `-` in the <v_right> slot. Blank lines
// and lines starting with `#` are ignored. Vertex count is implied by the
// largest id mentioned.
MetricGraph parse_graph_spec(std::istream& in);
MetricGraph parse_graph_spec_string(const std::string& text);
std::string format_graph_spec(const MetricGraph& g);

// One traversal step of an Euler path; `reversed` means the edge is walked
// from its right endpoint to its left one (for half-lines: in from infinity).
struct EulerStep {
  int edge = 0;
  bool reversed = false;
};
using EulerPath = std::vector<EulerStep>;

// True iff the graph has exactly two half-lines and its finite core admits an
// Euler path between their attachment vertices (so an unfolding onto the line
// exists, with the half-lines as the two ends).
bool euler_unfoldable(const MetricGraph& g);

// Hierholzer search over the finite core with the half-line attachment
// vertices forced as endpoints. First entry is the lower-id half-line walked
// in from infinity, last entry the other half-line walked out. Throws if
// euler_unfoldable(g) is false.
EulerPath find_euler_path(const MetricGraph& g);

// Checks the EulerPath invariants (each edge once, consecutive steps chained,
// half-lines at the two ends). Returns an empty string on success, otherwise
// a description of the first violation.
std::string check_euler_path(const MetricGraph& g, const EulerPath& path);

}  // namespace nlsg
