#ifndef AMALGAM_GRAPH_HPP_
#define AMALGAM_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "word.hpp"

namespace amalgam {

// Pointed graph with involutive edges labelled by X+-. Only positive edges
// are stored; an inverse edge is the reverse view of its partner. Labels are
// global indices, those below n1 belong to factor 1.
struct LabelledGraph {
  struct Edge {
    int src;
    int dst;
    int label;
    bool alive = true;
  };

  int n1 = 0;
  int n_labels = 0;
  int basepoint = 0;
  std::vector<Edge> edges;
  std::vector<char> vertex_alive;
  std::vector<std::vector<int>> out;  // edge ids with src == v
  std::vector<std::vector<int>> in;   // edge ids with dst == v

  static LabelledGraph empty(int n1, int n_labels) {
    LabelledGraph g;
    g.n1 = n1;
    g.n_labels = n_labels;
    g.basepoint = g.add_vertex();
    return g;
  }

  int add_vertex() {
    vertex_alive.push_back(1);
    out.emplace_back();
    in.emplace_back();
    return static_cast<int>(vertex_alive.size()) - 1;
  }

  int add_edge(int src, int dst, int label) {
    int id = static_cast<int>(edges.size());
    edges.push_back(Edge{src, dst, label});
    out[src].push_back(id);
    in[dst].push_back(id);
    return id;
  }

  int n_vertices() const {
    return static_cast<int>(
        std::count(vertex_alive.begin(), vertex_alive.end(), 1));
  }
  int n_edges() const {
    int k = 0;
    for (auto const& e : edges) {
      k += e.alive;
    }
    return k;
  }

  int colour(int label) const { return label < n1 ? 1 : 2; }

  // Unique continuation along `label` with `sign` from v; -1 if absent.
  // Requires the graph to be well-labelled.
  int next(int v, int label, int sign) const {
    if (sign > 0) {
      for (int e : out[v]) {
        if (edges[e].alive && edges[e].label == label) {
          return edges[e].dst;
        }
      }
    } else {
      for (int e : in[v]) {
        if (edges[e].alive && edges[e].label == label) {
          return edges[e].src;
        }
      }
    }
    return -1;
  }

  int degree(int v) const {
    int d = 0;
    for (int e : out[v]) {
      d += edges[e].alive;
    }
    for (int e : in[v]) {
      d += edges[e].alive;
    }
    return d;
  }

  bool has_colour(int v, int c) const {
    for (int e : out[v]) {
      if (edges[e].alive && colour(edges[e].label) == c) {
        return true;
      }
    }
    for (int e : in[v]) {
      if (edges[e].alive && colour(edges[e].label) == c) {
        return true;
      }
    }
    return false;
  }

  bool saturated_at(int v, int label) const {
    return next(v, label, +1) >= 0 && next(v, label, -1) >= 0;
  }

  // Drop dead vertices and edges, renumbering densely. Returns the vertex
  // map old -> new (-1 for removed).
  std::vector<int> compact() {
    std::vector<int> vmap(vertex_alive.size(), -1);
    int nv = 0;
    for (size_t v = 0; v < vertex_alive.size(); ++v) {
      if (vertex_alive[v]) {
        vmap[v] = nv++;
      }
    }
    std::vector<Edge> new_edges;
    for (auto const& e : edges) {
      if (e.alive) {
        new_edges.push_back(Edge{vmap[e.src], vmap[e.dst], e.label});
      }
    }
    edges = std::move(new_edges);
    vertex_alive.assign(nv, 1);
    out.assign(nv, {});
    in.assign(nv, {});
    for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
      out[edges[id].src].push_back(id);
      in[edges[id].dst].push_back(id);
    }
    basepoint = vmap[basepoint];
    return vmap;
  }
};

struct ReadResult {
  bool ok;
  int vertex;         // endpoint when ok
  size_t failed_pos;  // 1-based position of the first unreadable letter
};

inline ReadResult read_path(LabelledGraph const& g, int start, Word const& w) {
  int v = start;
  for (size_t i = 0; i < w.size(); ++i) {
    v = g.next(v, w[i].gen, w[i].sign);
    if (v < 0) {
      return ReadResult{false, -1, i + 1};
    }
  }
  return ReadResult{true, v, 0};
}

namespace detail {

class Folder {
 public:
  explicit Folder(LabelledGraph& g) : g_(g), parent_(g.vertex_alive.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
    queued_.assign(g_.vertex_alive.size(), 0);
  }

  int find(int v) {
    int r = v;
    while (parent_[r] != r) {
      r = parent_[r];
    }
    while (parent_[v] != r) {
      int nxt = parent_[v];
      parent_[v] = r;
      v = nxt;
    }
    return r;
  }

  // Merge classes of a and b; the representative keeps the larger adjacency,
  // ties to the smaller id. Returns the representative.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return a;
    }
    size_t da = g_.out[a].size() + g_.in[a].size();
    size_t db = g_.out[b].size() + g_.in[b].size();
    if (da < db || (da == db && b < a)) {
      std::swap(a, b);
    }
    parent_[b] = a;
    g_.vertex_alive[b] = 0;
    g_.out[a].insert(g_.out[a].end(), g_.out[b].begin(), g_.out[b].end());
    g_.in[a].insert(g_.in[a].end(), g_.in[b].begin(), g_.in[b].end());
    g_.out[b].clear();
    g_.in[b].clear();
    enqueue(a);
    return a;
  }

  void enqueue(int v) {
    v = find(v);
    if (!queued_[v]) {
      queued_[v] = 1;
      work_.push_back(v);
    }
  }

  // Folds to a well-labelled graph. Optional seed randomizes the processing
  // order (the result is unique up to isomorphism either way).
  void run(std::optional<uint64_t> seed) {
    std::vector<int> order;
    for (size_t v = 0; v < g_.vertex_alive.size(); ++v) {
      if (g_.vertex_alive[v]) {
        order.push_back(static_cast<int>(v));
      }
    }
    if (seed) {
      std::mt19937_64 rng(*seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    for (int v : order) {
      enqueue(v);
    }
    while (!work_.empty()) {
      int v = work_.front();
      work_.pop_front();
      queued_[v] = 0;
      if (find(v) != v || !g_.vertex_alive[v]) {
        continue;
      }
      fold_at(v);
    }
  }

  std::vector<int> vertex_map() {
    std::vector<int> m(parent_.size());
    for (size_t v = 0; v < parent_.size(); ++v) {
      m[v] = find(static_cast<int>(v));
    }
    return m;
  }

 private:
  // Perform folds at v until no duplicate (label, direction) pair remains.
  void fold_at(int v) {
    bool again = true;
    while (again) {
      again = false;
      v = find(v);
      // signed slot -> (edge, far endpoint class)
      for (int pass = 0; pass < 2 && !again; ++pass) {
        auto& lst = pass == 0 ? g_.out[v] : g_.in[v];
        prune(lst, v, pass == 0);
        for (size_t i = 0; i < lst.size() && !again; ++i) {
          auto const& ei = g_.edges[lst[i]];
          if (!ei.alive) {
            continue;
          }
          for (size_t j = i + 1; j < lst.size(); ++j) {
            auto const& ej = g_.edges[lst[j]];
            if (!ej.alive || ej.label != ei.label) {
              continue;
            }
            // two equally labelled edges leaving (or entering) v: identify
            int far_i = pass == 0 ? find(ei.dst) : find(ei.src);
            int far_j = pass == 0 ? find(ej.dst) : find(ej.src);
            g_.edges[lst[j]].alive = false;
            if (far_i != far_j) {
              int w = unite(far_i, far_j);
              enqueue(w);
            }
            enqueue(v);
            again = true;
            break;
          }
        }
      }
    }
  }

  // Drop dead edge ids and ids that migrated away from v's class.
  void prune(std::vector<int>& lst, int v, bool is_out) {
    size_t k = 0;
    for (int id : lst) {
      auto const& e = g_.edges[id];
      if (!e.alive) {
        continue;
      }
      int end = is_out ? find(e.src) : find(e.dst);
      if (end == v) {
        lst[k++] = id;
      }
    }
    lst.resize(k);
  }

  LabelledGraph& g_;
  std::vector<int> parent_;
  std::vector<char> queued_;
  std::deque<int> work_;
};

}  // namespace detail

// Iterated Stallings foldings; afterwards the graph is well-labelled and
// compact. Returns the vertex map old -> new.
inline std::vector<int> fold_all(LabelledGraph& g,
                                 std::optional<uint64_t> seed = std::nullopt) {
  detail::Folder f(g);
  f.run(seed);
  std::vector<int> classes = f.vertex_map();
  // Rewrite edge endpoints to class representatives before compaction.
  for (auto& e : g.edges) {
    if (e.alive) {
      e.src = classes[e.src];
      e.dst = classes[e.dst];
    }
  }
  // The adjacency lists were merged during folding; rebuild cleanly.
  for (auto& l : g.out) {
    l.clear();
  }
  for (auto& l : g.in) {
    l.clear();
  }
  for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
    if (g.edges[id].alive) {
      g.out[g.edges[id].src].push_back(id);
      g.in[g.edges[id].dst].push_back(id);
    }
  }
  g.basepoint = classes[g.basepoint];
  std::vector<int> cmap = g.compact();
  std::vector<int> full(classes.size());
  for (size_t v = 0; v < classes.size(); ++v) {
    full[v] = cmap[classes[v]];
  }
  return full;
}

// Identify the prescribed vertex pairs, then fold. Returns the vertex map.
inline std::vector<int> merge_and_fold(
    LabelledGraph& g, std::vector<std::pair<int, int>> const& pairs,
    std::optional<uint64_t> seed = std::nullopt) {
  detail::Folder f(g);
  for (auto const& [a, b] : pairs) {
    f.unite(f.find(a), f.find(b));
  }
  f.run(seed);
  std::vector<int> classes = f.vertex_map();
  for (auto& e : g.edges) {
    if (e.alive) {
      e.src = classes[e.src];
      e.dst = classes[e.dst];
    }
  }
  for (auto& l : g.out) {
    l.clear();
  }
  for (auto& l : g.in) {
    l.clear();
  }
  for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
    if (g.edges[id].alive) {
      g.out[g.edges[id].src].push_back(id);
      g.in[g.edges[id].dst].push_back(id);
    }
  }
  g.basepoint = classes[g.basepoint];
  std::vector<int> cmap = g.compact();
  std::vector<int> full(classes.size());
  for (size_t v = 0; v < classes.size(); ++v) {
    full[v] = cmap[classes[v]];
  }
  return full;
}

// Remove hairs: edges with a degree-1 endpoint. The basepoint is never
// removed even when it is the degree-1 end. Returns the vertex map.
inline std::vector<int> cut_hairs(LabelledGraph& g) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t v = 0; v < g.vertex_alive.size(); ++v) {
      if (!g.vertex_alive[v] || static_cast<int>(v) == g.basepoint) {
        continue;
      }
      if (g.degree(static_cast<int>(v)) == 1) {
        for (int e : g.out[v]) {
          g.edges[e].alive = false;
        }
        for (int e : g.in[v]) {
          g.edges[e].alive = false;
        }
        g.vertex_alive[v] = 0;
        changed = true;
      }
    }
  }
  return g.compact();
}

// Keep only the connected component of the basepoint (Lab only sees it).
inline void restrict_to_basepoint_component(LabelledGraph& g) {
  std::vector<char> keep(g.vertex_alive.size(), 0);
  std::vector<int> stack{g.basepoint};
  keep[g.basepoint] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int pass = 0; pass < 2; ++pass) {
      for (int e : (pass == 0 ? g.out[v] : g.in[v])) {
        if (!g.edges[e].alive) {
          continue;
        }
        int w = pass == 0 ? g.edges[e].dst : g.edges[e].src;
        if (!keep[w]) {
          keep[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  for (size_t v = 0; v < g.vertex_alive.size(); ++v) {
    if (!keep[v]) {
      g.vertex_alive[v] = 0;
      for (int e : g.out[v]) {
        g.edges[e].alive = false;
      }
      for (int e : g.in[v]) {
        g.edges[e].alive = false;
      }
    }
  }
  g.compact();
}

// Disjoint union: append a copy of src to dst; returns the vertex offset.
inline int append_copy(LabelledGraph& dst, LabelledGraph const& src) {
  int off = static_cast<int>(dst.vertex_alive.size());
  for (size_t v = 0; v < src.vertex_alive.size(); ++v) {
    dst.add_vertex();
    dst.vertex_alive[off + v] = src.vertex_alive[v];
  }
  for (auto const& e : src.edges) {
    if (e.alive) {
      dst.add_edge(off + e.src, off + e.dst, e.label);
    }
  }
  return off;
}

struct PushoutResult {
  LabelledGraph graph;
  std::vector<int> map1;
  std::vector<int> map2;
};

// Amalgam of two labelled graphs: disjoint union, prescribed vertex
// identifications (pairs are (vertex of g1, vertex of g2)), then foldings.
inline PushoutResult pushout(LabelledGraph const& g1, LabelledGraph const& g2,
                             std::vector<std::pair<int, int>> const& ids,
                             std::optional<uint64_t> seed = std::nullopt) {
  PushoutResult r;
  r.graph = g1;
  int off = append_copy(r.graph, g2);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(ids.size());
  for (auto const& [a, b] : ids) {
    pairs.push_back({a, off + b});
  }
  std::vector<int> m = merge_and_fold(r.graph, pairs, seed);
  r.map1.assign(m.begin(), m.begin() + g1.vertex_alive.size());
  r.map2.assign(m.begin() + off, m.begin() + off + g2.vertex_alive.size());
  return r;
}

// Chromatic structure of a graph over the two-coloured alphabet.
struct ChromaticComponent {
  int factor;
  std::vector<int> vertices;
  std::vector<int> edges;
};

struct ChromaticReport {
  std::vector<int> vm1, vm2, vb;  // monochromatic / bichromatic vertices
  std::vector<ChromaticComponent> components;
  std::vector<int> component_of_1;  // vertex -> factor-1 component id or -1
  std::vector<int> component_of_2;
};

inline ChromaticReport classify_chromatic(LabelledGraph const& g) {
  ChromaticReport r;
  int nv = static_cast<int>(g.vertex_alive.size());
  r.component_of_1.assign(nv, -1);
  r.component_of_2.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (!g.vertex_alive[v]) {
      continue;
    }
    bool c1 = g.has_colour(v, 1);
    bool c2 = g.has_colour(v, 2);
    if (c1 && c2) {
      r.vb.push_back(v);
    } else if (c1) {
      r.vm1.push_back(v);
    } else if (c2) {
      r.vm2.push_back(v);
    }
  }
  for (int factor : {1, 2}) {
    auto& comp_of = factor == 1 ? r.component_of_1 : r.component_of_2;
    for (int v = 0; v < nv; ++v) {
      if (!g.vertex_alive[v] || comp_of[v] >= 0 || !g.has_colour(v, factor)) {
        continue;
      }
      ChromaticComponent c;
      c.factor = factor;
      std::deque<int> q{v};
      comp_of[v] = static_cast<int>(r.components.size());
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        c.vertices.push_back(u);
        for (int pass = 0; pass < 2; ++pass) {
          for (int e : (pass == 0 ? g.out[u] : g.in[u])) {
            auto const& ed = g.edges[e];
            if (!ed.alive || g.colour(ed.label) != factor) {
              continue;
            }
            if (pass == 0) {
              c.edges.push_back(e);
            }
            int w = pass == 0 ? ed.dst : ed.src;
            if (comp_of[w] < 0) {
              comp_of[w] = static_cast<int>(r.components.size());
              q.push_back(w);
            }
          }
        }
      }
      std::sort(c.vertices.begin(), c.vertices.end());
      std::sort(c.edges.begin(), c.edges.end());
      c.edges.erase(std::unique(c.edges.begin(), c.edges.end()), c.edges.end());
      r.components.push_back(std::move(c));
    }
  }
  return r;
}

// Basepoint-preserving label isomorphism of pointed well-labelled graphs,
// found by simultaneous traversal; unique when it exists. Returns the vertex
// map g1 -> g2 or nullopt.
inline std::optional<std::vector<int>> isomorphic(LabelledGraph const& g1,
                                                  LabelledGraph const& g2) {
  if (g1.n_vertices() != g2.n_vertices() || g1.n_edges() != g2.n_edges()
      || g1.n_labels != g2.n_labels) {
    return std::nullopt;
  }
  std::vector<int> map(g1.vertex_alive.size(), -1);
  std::vector<char> hit(g2.vertex_alive.size(), 0);
  std::deque<int> q;
  map[g1.basepoint] = g2.basepoint;
  hit[g2.basepoint] = 1;
  q.push_back(g1.basepoint);
  int matched = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int label = 0; label < g1.n_labels; ++label) {
      for (int sign : {+1, -1}) {
        int a = g1.next(v, label, sign);
        int b = g2.next(map[v], label, sign);
        if ((a < 0) != (b < 0)) {
          return std::nullopt;
        }
        if (a < 0) {
          continue;
        }
        if (map[a] >= 0) {
          if (map[a] != b) {
            return std::nullopt;
          }
        } else {
          if (hit[b]) {
            return std::nullopt;
          }
          map[a] = b;
          hit[b] = 1;
          ++matched;
          q.push_back(a);
        }
      }
    }
  }
  if (matched != g1.n_vertices()) {
    return std::nullopt;  // disconnected parts unmatched
  }
  return map;
}

// Canonical copy: vertices renumbered by BFS from the basepoint in label
// order, edges sorted. Two isomorphic pointed graphs canonicalize to the
// same byte representation.
inline LabelledGraph canonical(LabelledGraph const& g_in) {
  LabelledGraph g = g_in;
  g.compact();
  int nv = static_cast<int>(g.vertex_alive.size());
  std::vector<int> order(nv, -1);
  int next_id = 0;
  std::deque<int> q;
  order[g.basepoint] = next_id++;
  q.push_back(g.basepoint);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int label = 0; label < g.n_labels; ++label) {
      for (int sign : {+1, -1}) {
        int w = g.next(v, label, sign);
        if (w >= 0 && order[w] < 0) {
          order[w] = next_id++;
          q.push_back(w);
        }
      }
    }
  }
  // unreachable vertices (disconnected graphs) keep relative order
  for (int v = 0; v < nv; ++v) {
    if (order[v] < 0) {
      order[v] = next_id++;
    }
  }
  LabelledGraph c;
  c.n1 = g.n1;
  c.n_labels = g.n_labels;
  for (int v = 0; v < nv; ++v) {
    c.add_vertex();
  }
  c.basepoint = order[g.basepoint];
  std::vector<std::tuple<int, int, int>> es;
  for (auto const& e : g.edges) {
    es.emplace_back(order[e.src], e.label, order[e.dst]);
  }
  std::sort(es.begin(), es.end());
  for (auto const& [s, l, d] : es) {
    c.add_edge(s, d, l);
  }
  return c;
}

// Plain-text graph format (bit-exact golden format).
inline std::string to_plain(LabelledGraph const& g_in,
                            std::vector<std::string> const& names) {
  LabelledGraph g = canonical(g_in);
  std::ostringstream os;
  os << "vertices " << g.n_vertices() << "\n";
  os << "basepoint " << g.basepoint << "\n";
  os << "edges " << g.n_edges() << "\n";
  for (auto const& e : g.edges) {
    os << e.src << " " << e.dst << " " << names[e.label] << "\n";
  }
  return os.str();
}

// DOT export: one arrow per positive edge, basepoint doublecircled,
// factor-1 edges solid, factor-2 dashed.
inline std::string to_dot(LabelledGraph const& g_in,
                          std::vector<std::string> const& names) {
  LabelledGraph g = canonical(g_in);
  std::ostringstream os;
  os << "digraph subgroup_graph {\n";
  os << "  node [shape=circle];\n";
  os << "  v" << g.basepoint << " [shape=doublecircle];\n";
  for (auto const& e : g.edges) {
    os << "  v" << e.src << " -> v" << e.dst << " [label=\"" << names[e.label]
       << "\"";
    if (g.colour(e.label) == 2) {
      os << ", style=dashed";
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace amalgam

#endif  // AMALGAM_GRAPH_HPP_
