#ifndef AMALGAM_PIPELINE_HPP_
#define AMALGAM_PIPELINE_HPP_

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "context.hpp"
#include "graph.hpp"
#include "normal_form.hpp"
#include "word.hpp"

namespace amalgam {

struct BuildOptions {
  bool trace = false;
  std::optional<uint64_t> seed;  // randomizes fold/worklist orders
};

struct SubgroupGraph {
  LabelledGraph graph;  // carries the basepoint
  std::vector<Word> generators;
  std::vector<std::pair<std::string, LabelledGraph>> trace;
};

// The relative Cayley graph of a factor as a labelled graph over the global
// alphabet; vertex c is coset c of the table, basepoint is row 0.
inline LabelledGraph graph_of_table(Amalgam const& ctx, int factor,
                                    CosetTable const& t) {
  LabelledGraph g;
  g.n1 = ctx.n1();
  g.n_labels = ctx.n_labels();
  for (int c = 0; c < t.n_cosets; ++c) {
    g.add_vertex();
  }
  g.basepoint = 0;
  int off = ctx.offset(factor);
  for (int c = 0; c < t.n_cosets; ++c) {
    for (int x = 0; x < t.n_gens; ++x) {
      g.add_edge(c, t.at(c, x, +1), off + x);
    }
  }
  return g;
}

inline LabelledGraph cayley_graph(Amalgam const& ctx, int factor) {
  return graph_of_table(ctx, factor, ctx.model(factor).table);
}

// Cayley(G_factor, S) for S a subgroup of A given by pair indices.
inline LabelledGraph relative_cayley_graph(Amalgam const& ctx, int factor,
                                           std::vector<int> const& a_subgroup) {
  std::vector<Word> words;
  words.reserve(a_subgroup.size());
  for (int a : a_subgroup) {
    words.push_back(ctx.model(factor).repwords[ctx.A.elem(a, factor)]);
  }
  return graph_of_table(ctx, factor,
                        relative_cayley(ctx.model(factor), words).table);
}

// Step 1: a based set of subdivided loops at v0, one per generator word.
inline LabelledGraph build_bouquet(Amalgam const& ctx,
                                   std::vector<Word> const& generators) {
  LabelledGraph g = LabelledGraph::empty(ctx.n1(), ctx.n_labels());
  for (Word const& w : generators) {
    if (w.empty()) {
      continue;
    }
    int prev = g.basepoint;
    for (size_t i = 0; i < w.size(); ++i) {
      int nxt = i + 1 == w.size() ? g.basepoint : g.add_vertex();
      if (w[i].sign > 0) {
        g.add_edge(prev, nxt, w[i].gen);
      } else {
        g.add_edge(nxt, prev, w[i].gen);
      }
      prev = nxt;
    }
  }
  return g;
}

// Step 2: fold and cut hairs; the classical Stallings graph of the input.
inline void step2_fold_and_trim(LabelledGraph& g, BuildOptions const& opts = {}) {
  fold_all(g, opts.seed);
  cut_hairs(g);
}

namespace detail {

inline bool component_saturated(LabelledGraph const& g,
                                ChromaticComponent const& c, Amalgam const& ctx) {
  int off = ctx.offset(c.factor);
  int n = c.factor == 1 ? ctx.n1() : ctx.n2();
  for (int v : c.vertices) {
    for (int x = 0; x < n; ++x) {
      if (!g.saturated_at(v, off + x)) {
        return false;
      }
    }
  }
  return true;
}

// A component is a cover of its factor iff it is saturated and every
// defining relator closes at every vertex. Saturation alone is not enough:
// folding a bouquet can close a cycle of the wrong length.
inline bool component_is_cover(LabelledGraph const& g,
                               ChromaticComponent const& c, Amalgam const& ctx) {
  if (!component_saturated(g, c, ctx)) {
    return false;
  }
  for (int v : c.vertices) {
    for (auto const& r : ctx.spec.factor(c.factor).relators) {
      ReadResult rr = read_path(g, v, ctx.to_global(c.factor, r));
      if (!rr.ok || rr.vertex != v) {
        return false;
      }
    }
  }
  return true;
}

inline std::optional<uint64_t> next_seed(std::optional<uint64_t>& seed) {
  if (!seed) {
    return std::nullopt;
  }
  std::mt19937_64 rng(*seed);
  *seed = rng();
  return *seed;
}

}  // namespace detail

// Step 3: glue a copy of Cayley(G_i) along an edge of every monochromatic
// component that is not yet a cover of its factor, folding after each
// gluing.
inline void step3_glue_cayley(Amalgam const& ctx, LabelledGraph& g,
                              BuildOptions const& opts = {}) {
  std::optional<uint64_t> seed = opts.seed;
  while (true) {
    ChromaticReport rep = classify_chromatic(g);
    std::vector<int> order(rep.components.size());
    std::iota(order.begin(), order.end(), 0);
    if (seed) {
      std::mt19937_64 rng(*seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    int pick = -1;
    for (int i : order) {
      if (!detail::component_is_cover(g, rep.components[i], ctx)) {
        pick = i;
        break;
      }
    }
    if (pick < 0) {
      return;
    }
    ChromaticComponent const& c = rep.components[pick];
    int e = *std::min_element(c.edges.begin(), c.edges.end());
    int src = g.edges[e].src;
    int dst = g.edges[e].dst;
    int label = g.edges[e].label;
    LabelledGraph cay = cayley_graph(ctx, c.factor);
    int off = append_copy(g, cay);
    // identity onto iota(e), and the label-target onto tau(e)
    int target = cay.next(cay.basepoint, label, +1);
    merge_and_fold(g, {{src, off + cay.basepoint}, {dst, off + target}},
                   detail::next_seed(seed));
  }
}

// Step 4: at every bichromatic vertex the two readings of each a in A must
// agree; identify divergent endpoints and refold, to a fixpoint.
inline void step4_compatibility(Amalgam const& ctx, LabelledGraph& g,
                                BuildOptions const& opts = {}) {
  std::optional<uint64_t> seed = opts.seed;
  bool changed = true;
  while (changed) {
    changed = false;
    ChromaticReport rep = classify_chromatic(g);
    std::vector<int> scan = rep.vb;
    if (seed) {
      std::mt19937_64 rng(*seed);
      std::shuffle(scan.begin(), scan.end(), rng);
    }
    for (int v : scan) {
      for (int a = 1; a < ctx.A.order() && !changed; ++a) {
        ReadResult r1 = read_path(g, v, ctx.a_word(a, 1));
        ReadResult r2 = read_path(g, v, ctx.a_word(a, 2));
        if (r1.ok && r2.ok && r1.vertex != r2.vertex) {
          merge_and_fold(g, {{r1.vertex, r2.vertex}}, detail::next_seed(seed));
          changed = true;
        }
      }
      if (changed) {
        break;
      }
    }
  }
}

namespace detail {

// Extract a chromatic component as a standalone pointed graph.
inline LabelledGraph component_graph(LabelledGraph const& g,
                                     ChromaticComponent const& c, int base) {
  LabelledGraph out;
  out.n1 = g.n1;
  out.n_labels = g.n_labels;
  std::vector<int> id(g.vertex_alive.size(), -1);
  for (int v : c.vertices) {
    id[v] = out.add_vertex();
  }
  out.basepoint = id[base];
  for (int e : c.edges) {
    out.add_edge(id[g.edges[e].src], id[g.edges[e].dst], g.edges[e].label);
  }
  return out;
}

// Bichromatic vertices of a component, as vertices of the ambient graph.
inline std::vector<int> component_vb(LabelledGraph const& g,
                                     ChromaticComponent const& c) {
  std::vector<int> vb;
  int other = c.factor == 1 ? 2 : 1;
  for (int v : c.vertices) {
    if (g.has_colour(v, other)) {
      vb.push_back(v);
    }
  }
  return vb;
}

}  // namespace detail

// Step 5: iteratively remove redundant monochromatic components, then
// collapse a bare full Cayley graph to the single-vertex graph.
inline void step5_remove_redundant(Amalgam const& ctx, LabelledGraph& g) {
  auto subgroups = ctx.A.all_subgroups();
  bool removed = true;
  while (removed) {
    removed = false;
    ChromaticReport rep = classify_chromatic(g);
    for (auto const& c : rep.components) {
      std::vector<int> vb = detail::component_vb(g, c);
      if (vb.empty()) {
        continue;
      }
      bool v0_in_component =
          std::binary_search(c.vertices.begin(), c.vertices.end(), g.basepoint);
      bool matched = false;
      for (auto const& k : subgroups) {
        if (ctx.A.order() % static_cast<int>(k.size()) != 0
            || static_cast<int>(vb.size())
                   != ctx.A.order() / static_cast<int>(k.size())) {
          continue;
        }
        if (k.size() == 1) {
          // K trivial: v0 must not be a monochromatic vertex of C
          if (v0_in_component && !g.has_colour(g.basepoint, c.factor == 1 ? 2 : 1)) {
            continue;
          }
        } else {
          if (v0_in_component) {
            continue;
          }
        }
        LabelledGraph target = relative_cayley_graph(ctx, c.factor, k);
        for (int theta : vb) {
          LabelledGraph comp = detail::component_graph(g, c, theta);
          if (isomorphic(comp, target)) {
            matched = true;
            break;
          }
        }
        if (matched) {
          break;
        }
      }
      if (matched) {
        for (int e : c.edges) {
          g.edges[e].alive = false;
        }
        for (int v : c.vertices) {
          if (g.degree(v) == 0 && v != g.basepoint) {
            g.vertex_alive[v] = 0;
          }
        }
        g.compact();
        removed = true;
        break;
      }
    }
  }
  // final whole-graph reduction
  ChromaticReport rep = classify_chromatic(g);
  if (rep.vb.empty() && g.n_edges() > 0) {
    for (int factor : {1, 2}) {
      LabelledGraph cay = cayley_graph(ctx, factor);
      cay.basepoint = 0;
      LabelledGraph mine = g;
      if (isomorphic(mine, cay)) {
        g = LabelledGraph::empty(ctx.n1(), ctx.n_labels());
        return;
      }
    }
  }
}

// Step 6: when v0 is monochromatic and its component is Cayley(G_i, K) with
// L = K n A nontrivial, glue Cayley(G_j, L) at the basepoint so that every
// normal word of the subgroup becomes readable.
inline void step6_basepoint_completion(Amalgam const& ctx, LabelledGraph& g) {
  if (g.n_edges() == 0) {
    return;
  }
  ChromaticReport rep = classify_chromatic(g);
  int v0 = g.basepoint;
  int factor;
  if (std::find(rep.vm1.begin(), rep.vm1.end(), v0) != rep.vm1.end()) {
    factor = 1;
  } else if (std::find(rep.vm2.begin(), rep.vm2.end(), v0) != rep.vm2.end()) {
    factor = 2;
  } else {
    return;
  }
  // L = stabilizer of v0 within its component, intersected with A
  std::vector<int> L;
  for (int a = 0; a < ctx.A.order(); ++a) {
    ReadResult r = read_path(g, v0, ctx.a_word(a, factor));
    if (r.ok && r.vertex == v0) {
      L.push_back(a);
    }
  }
  if (L.size() <= 1) {
    return;
  }
  int other = factor == 1 ? 2 : 1;
  LabelledGraph d = relative_cayley_graph(ctx, other, L);
  int off = append_copy(g, d);
  std::vector<std::pair<int, int>> ids{{v0, off + d.basepoint}};
  for (int a = 0; a < ctx.A.order(); ++a) {
    if (std::binary_search(L.begin(), L.end(), a)) {
      continue;
    }
    ReadResult rc = read_path(g, v0, ctx.a_word(a, factor));
    ReadResult rd = read_path(d, d.basepoint, ctx.a_word(a, other));
    if (rc.ok && rd.ok) {
      ids.push_back({rc.vertex, off + rd.vertex});
    }
  }
  merge_and_fold(g, ids);
}

// The generalized folding algorithm, Steps 1-6.
inline SubgroupGraph build_subgroup_graph(Amalgam const& ctx,
                                          std::vector<Word> const& generators,
                                          BuildOptions const& opts = {}) {
  SubgroupGraph sg;
  sg.generators = generators;
  auto snap = [&](char const* name, LabelledGraph const& g) {
    if (opts.trace) {
      sg.trace.push_back({name, g});
    }
  };
  LabelledGraph g = build_bouquet(ctx, generators);
  snap("step1-bouquet", g);
  step2_fold_and_trim(g, opts);
  snap("step2-folded", g);
  step3_glue_cayley(ctx, g, opts);
  snap("step3-saturated-components", g);
  step4_compatibility(ctx, g, opts);
  snap("step4-compatible", g);
  step5_remove_redundant(ctx, g);
  snap("step5-reduced", g);
  step6_basepoint_completion(ctx, g);
  snap("step6-final", g);
  sg.graph = std::move(g);
  return sg;
}

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
};

// Checks the precover characterization: every monochromatic component is a
// cover of its factor (saturated, relators close everywhere) and the graph
// is compatible at every bichromatic vertex.
inline VerifyReport verify_precover(Amalgam const& ctx, LabelledGraph const& g) {
  VerifyReport rep;
  // well-labelledness
  for (size_t v = 0; v < g.vertex_alive.size(); ++v) {
    if (!g.vertex_alive[v]) {
      continue;
    }
    for (int pass = 0; pass < 2; ++pass) {
      auto const& lst = pass == 0 ? g.out[v] : g.in[v];
      std::vector<int> labels;
      for (int e : lst) {
        if (g.edges[e].alive) {
          labels.push_back(g.edges[e].label);
        }
      }
      std::sort(labels.begin(), labels.end());
      if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        rep.fail("vertex " + std::to_string(v) + " is not well-labelled");
      }
    }
  }
  // connectivity (precovers here are connected by convention)
  {
    std::vector<char> seen(g.vertex_alive.size(), 0);
    std::vector<int> stack{g.basepoint};
    seen[g.basepoint] = 1;
    int count = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++count;
      for (int pass = 0; pass < 2; ++pass) {
        for (int e : (pass == 0 ? g.out[v] : g.in[v])) {
          if (!g.edges[e].alive) {
            continue;
          }
          int w = pass == 0 ? g.edges[e].dst : g.edges[e].src;
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
    }
    if (count != g.n_vertices()) {
      rep.fail("graph is not connected");
    }
  }
  ChromaticReport ch = classify_chromatic(g);
  for (auto const& c : ch.components) {
    if (!detail::component_saturated(g, c, ctx)) {
      rep.fail("a factor-" + std::to_string(c.factor)
               + " component is not saturated (not a cover)");
      continue;
    }
    auto const& pres = ctx.spec.factor(c.factor);
    for (int v : c.vertices) {
      for (auto const& r : pres.relators) {
        ReadResult rr = read_path(g, v, ctx.to_global(c.factor, r));
        if (!rr.ok || rr.vertex != v) {
          rep.fail("relator open at vertex " + std::to_string(v)
                   + " in a factor-" + std::to_string(c.factor) + " component");
        }
      }
    }
  }
  for (int v : ch.vb) {
    for (int a = 1; a < ctx.A.order(); ++a) {
      ReadResult r1 = read_path(g, v, ctx.a_word(a, 1));
      ReadResult r2 = read_path(g, v, ctx.a_word(a, 2));
      if (!r1.ok || !r2.ok || r1.vertex != r2.vertex) {
        rep.fail("incompatible at bichromatic vertex " + std::to_string(v));
      }
    }
  }
  return rep;
}

// Membership: normalize the query, read the normal word from the
// basepoint, accept iff the path closes there.
inline bool is_member(Amalgam const& ctx, SubgroupGraph const& sg,
                      Word const& w) {
  NormalWord nf = normal_form(ctx, w);
  if (nf.is_identity()) {
    return true;
  }
  Word rw = reading_word(ctx, nf);
  ReadResult r = read_path(sg.graph, sg.graph.basepoint, rw);
  return r.ok && r.vertex == sg.graph.basepoint;
}

}  // namespace amalgam

#endif  // AMALGAM_PIPELINE_HPP_
