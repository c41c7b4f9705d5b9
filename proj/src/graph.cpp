#include "nlsg/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nlsg {

MetricGraph::MetricGraph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 1) throw std::invalid_argument("graph needs at least one vertex");
  if (edges_.empty()) throw std::invalid_argument("graph needs at least one edge");
  for (size_t j = 0; j < edges_.size(); ++j) {
    const Edge& e = edges_[j];
    if (!(e.length > 0.0)) throw std::invalid_argument("edge " + std::to_string(j) + ": nonpositive length");
    if (e.left < 0 || e.left >= num_vertices_)
      throw std::invalid_argument("edge " + std::to_string(j) + ": bad left vertex");
    if (e.is_halfline()) {
      if (e.right != kNoVertex)
        throw std::invalid_argument("edge " + std::to_string(j) + ": half-line must have no right vertex");
    } else if (e.right < 0 || e.right >= num_vertices_) {
      throw std::invalid_argument("edge " + std::to_string(j) + ": bad right vertex");
    }
  }
}

int MetricGraph::degree(int v) const {
  int d = 0;
  for (const Edge& e : edges_) {
    if (e.left == v) ++d;
    if (e.right == v) ++d;
  }
  return d;
}

int MetricGraph::num_halflines() const {
  int n = 0;
  for (const Edge& e : edges_)
    if (e.is_halfline()) ++n;
  return n;
}

std::vector<int> MetricGraph::halfline_ids() const {
  std::vector<int> ids;
  for (int j = 0; j < num_edges(); ++j)
    if (edge(j).is_halfline()) ids.push_back(j);
  return ids;
}

MetricGraph make_line() {
  return MetricGraph(1, {{0, kNoVertex, kInfiniteLength}, {0, kNoVertex, kInfiniteLength}});
}

MetricGraph make_halfline() {
  return MetricGraph(1, {{0, kNoVertex, kInfiniteLength}});
}

MetricGraph make_star(int n) {
  if (n < 2) throw std::invalid_argument("make_star: n must be >= 2");
  std::vector<Edge> edges(static_cast<size_t>(n), Edge{0, kNoVertex, kInfiniteLength});
  return MetricGraph(1, std::move(edges));
}

MetricGraph make_bridge(int n, const std::vector<double>& lengths) {
  if (n < 1) throw std::invalid_argument("make_bridge: n must be >= 1");
  if (static_cast<int>(lengths.size()) != n)
    throw std::invalid_argument("make_bridge: need one length per bridge");
  std::vector<Edge> edges;
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("make_bridge: nonpositive length");
    edges.push_back({0, 1, l});
  }
  edges.push_back({0, kNoVertex, kInfiniteLength});
  edges.push_back({1, kNoVertex, kInfiniteLength});
  return MetricGraph(2, std::move(edges));
}

MetricGraph make_star_2plus1(double l) {
  if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("make_star_2plus1: nonpositive length");
  return MetricGraph(2, {{0, 1, l},
                         {0, kNoVertex, kInfiniteLength},
                         {0, kNoVertex, kInfiniteLength}});
}

MetricGraph make_exceptional_e3(const std::vector<double>& lengths) {
  if (lengths.size() != 3) throw std::invalid_argument("make_exceptional_e3: need three lengths");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("make_exceptional_e3: nonpositive length");
  return MetricGraph(3, {{0, 1, lengths[0]},
                         {0, 1, lengths[0]},
                         {1, 2, lengths[1]},
                         {1, 2, lengths[1]},
                         {2, 2, lengths[2]},
                         {0, kNoVertex, kInfiniteLength},
                         {0, kNoVertex, kInfiniteLength}});
}

MetricGraph parse_graph_spec(std::istream& in) {
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok != "edge")
      throw std::invalid_argument("graph spec line " + std::to_string(lineno) + ": expected `edge`");
    std::string a, b, len;
    if (!(ls >> a >> b >> len))
      throw std::invalid_argument("graph spec line " + std::to_string(lineno) + ": expected `edge <l> <r> <length|inf>`");
    Edge e;
    e.left = std::stoi(a);
    if (len == "inf") {
      if (b != "-")
        throw std::invalid_argument("graph spec line " + std::to_string(lineno) + ": half-line right slot must be `-`");
      e.right = kNoVertex;
      e.length = kInfiniteLength;
    } else {
      e.right = std::stoi(b);
      e.length = std::stod(len);
      if (!(e.length > 0.0) || !std::isfinite(e.length))
        throw std::invalid_argument("graph spec line " + std::to_string(lineno) + ": nonpositive length");
      max_vertex = std::max(max_vertex, e.right);
    }
    if (e.left < 0 || (e.right != kNoVertex && e.right < 0))
      throw std::invalid_argument("graph spec line " + std::to_string(lineno) + ": negative vertex id");
    max_vertex = std::max(max_vertex, e.left);
    edges.push_back(e);
  }
  if (edges.empty()) throw std::invalid_argument("graph spec: no edges");
  return MetricGraph(max_vertex + 1, std::move(edges));
}

MetricGraph parse_graph_spec_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_spec(in);
}

std::string format_graph_spec(const MetricGraph& g) {
  std::ostringstream out;
  out.precision(17);
  for (const Edge& e : g.edges()) {
    if (e.is_halfline())
      out << "edge " << e.left << " - inf\n";
    else
      out << "edge " << e.left << " " << e.right << " " << e.length << "\n";
  }
  return out.str();
}

namespace {

// Attachment vertices of the two half-lines, lower edge id first.
struct Ends {
  int hl_first, hl_second;  // edge ids
  int start, finish;        // vertices
};

bool unfold_ends(const MetricGraph& g, Ends* ends) {
  std::vector<int> hl = g.halfline_ids();
  if (hl.size() != 2) return false;
  ends->hl_first = hl[0];
  ends->hl_second = hl[1];
  ends->start = g.edge(hl[0]).left;
  ends->finish = g.edge(hl[1]).left;
  return true;
}

// Finite core connectivity: every finite edge reachable from `start` walking
// finite edges, and `finish` in the same component.
bool core_connected(const MetricGraph& g, int start, int finish) {
  std::vector<std::vector<int>> incident(static_cast<size_t>(g.num_vertices()));
  int finite_edges = 0;
  for (int j = 0; j < g.num_edges(); ++j) {
    const Edge& e = g.edge(j);
    if (e.is_halfline()) continue;
    ++finite_edges;
    incident[static_cast<size_t>(e.left)].push_back(j);
    if (e.right != e.left) incident[static_cast<size_t>(e.right)].push_back(j);
  }
  if (finite_edges == 0) return start == finish;

  std::vector<bool> seen_v(static_cast<size_t>(g.num_vertices()), false);
  std::vector<bool> seen_e(static_cast<size_t>(g.num_edges()), false);
  std::vector<int> stack = {start};
  seen_v[static_cast<size_t>(start)] = true;
  int reached = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int j : incident[static_cast<size_t>(v)]) {
      if (seen_e[static_cast<size_t>(j)]) continue;
      seen_e[static_cast<size_t>(j)] = true;
      ++reached;
      const Edge& e = g.edge(j);
      for (int w : {e.left, e.right}) {
        if (!seen_v[static_cast<size_t>(w)]) {
          seen_v[static_cast<size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return reached == finite_edges && seen_v[static_cast<size_t>(finish)];
}

std::vector<int> core_degrees(const MetricGraph& g) {
  std::vector<int> deg(static_cast<size_t>(g.num_vertices()), 0);
  for (const Edge& e : g.edges()) {
    if (e.is_halfline()) continue;
    ++deg[static_cast<size_t>(e.left)];
    ++deg[static_cast<size_t>(e.right)];
  }
  return deg;
}

}  // namespace

bool euler_unfoldable(const MetricGraph& g) {
  Ends ends;
  if (!unfold_ends(g, &ends)) return false;
  if (!core_connected(g, ends.start, ends.finish)) return false;
  std::vector<int> deg = core_degrees(g);
  for (int v = 0; v < g.num_vertices(); ++v) {
    bool odd = deg[static_cast<size_t>(v)] % 2 != 0;
    bool must_be_odd = (ends.start != ends.finish) && (v == ends.start || v == ends.finish);
    if (odd != must_be_odd) return false;
  }
  return true;
}

EulerPath find_euler_path(const MetricGraph& g) {
  if (!euler_unfoldable(g)) throw std::invalid_argument("find_euler_path: graph is not unfoldable");
  Ends ends;
  unfold_ends(g, &ends);

  // Hierholzer over the finite core, edge ids visited in increasing order.
  std::vector<std::vector<int>> incident(static_cast<size_t>(g.num_vertices()));
  for (int j = 0; j < g.num_edges(); ++j) {
    const Edge& e = g.edge(j);
    if (e.is_halfline()) continue;
    incident[static_cast<size_t>(e.left)].push_back(j);
    if (e.right != e.left) incident[static_cast<size_t>(e.right)].push_back(j);
  }
  std::vector<size_t> next(static_cast<size_t>(g.num_vertices()), 0);
  std::vector<bool> used(static_cast<size_t>(g.num_edges()), false);

  struct Frame {
    int vertex;
    int via_edge;  // edge taken to arrive here, -1 at the start
    bool via_reversed;
  };
  std::vector<Frame> stack = {{ends.start, -1, false}};
  std::vector<EulerStep> core;  // collected in reverse
  while (!stack.empty()) {
    Frame& f = stack.back();
    size_t& cursor = next[static_cast<size_t>(f.vertex)];
    const std::vector<int>& inc = incident[static_cast<size_t>(f.vertex)];
    while (cursor < inc.size() && used[static_cast<size_t>(inc[cursor])]) ++cursor;
    if (cursor < inc.size()) {
      int j = inc[cursor];
      used[static_cast<size_t>(j)] = true;
      const Edge& e = g.edge(j);
      bool reversed = e.left != f.vertex;
      int to = reversed ? e.left : e.right;
      stack.push_back({to, j, reversed});
    } else {
      if (f.via_edge >= 0) core.push_back({f.via_edge, f.via_reversed});
      stack.pop_back();
    }
  }
  std::reverse(core.begin(), core.end());

  EulerPath path;
  path.reserve(core.size() + 2);
  path.push_back({ends.hl_first, true});  // in from infinity
  path.insert(path.end(), core.begin(), core.end());
  path.push_back({ends.hl_second, false});  // out to infinity
  return path;
}

std::string check_euler_path(const MetricGraph& g, const EulerPath& path) {
  if (path.size() != static_cast<size_t>(g.num_edges())) return "path does not cover every edge exactly once";
  std::vector<bool> used(static_cast<size_t>(g.num_edges()), false);
  for (const EulerStep& s : path) {
    if (s.edge < 0 || s.edge >= g.num_edges()) return "path references a nonexistent edge";
    if (used[static_cast<size_t>(s.edge)]) return "edge repeated in path";
    used[static_cast<size_t>(s.edge)] = true;
  }
  auto step_start = [&](const EulerStep& s) { return s.reversed ? g.edge(s.edge).right : g.edge(s.edge).left; };
  auto step_end = [&](const EulerStep& s) { return s.reversed ? g.edge(s.edge).left : g.edge(s.edge).right; };
  if (!g.edge(path.front().edge).is_halfline() || !path.front().reversed)
    return "path must begin with a half-line walked in from infinity";
  if (!g.edge(path.back().edge).is_halfline() || path.back().reversed)
    return "path must end with a half-line walked out to infinity";
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    if (step_end(path[k]) != step_start(path[k + 1])) return "consecutive steps do not share a vertex";
  }
  for (size_t k = 1; k + 1 < path.size(); ++k) {
    if (g.edge(path[k].edge).is_halfline()) return "half-line in the interior of the path";
  }
  return {};
}

}  // namespace nlsg
