#ifndef AMALGAM_SUBGROUP_PRESENTATION_HPP_
#define AMALGAM_SUBGROUP_PRESENTATION_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "context.hpp"
#include "graph.hpp"
#include "pipeline.hpp"
#include "word.hpp"

namespace amalgam {

// A path as a sequence of (positive edge id, direction).
using EdgePath = std::vector<std::pair<int, int>>;

struct SpanningTree {
  std::vector<char> is_tree_edge;   // per positive edge
  std::vector<Word> approach_word;  // lab(t_v) per vertex, global letters
  std::vector<int> bfs_order;
};

namespace detail {

inline std::pair<int, int> next_edge(LabelledGraph const& g, int v, int label,
                                     int sign) {
  if (sign > 0) {
    for (int e : g.out[v]) {
      if (g.edges[e].alive && g.edges[e].label == label) {
        return {e, g.edges[e].dst};
      }
    }
  } else {
    for (int e : g.in[v]) {
      if (g.edges[e].alive && g.edges[e].label == label) {
        return {e, g.edges[e].src};
      }
    }
  }
  return {-1, -1};
}

// Trace a word from v, returning the edge path when it is fully readable.
inline std::optional<EdgePath> trace(LabelledGraph const& g, int v,
                                     Word const& w) {
  EdgePath p;
  for (Letter const& l : w) {
    auto [e, nxt] = next_edge(g, v, l.gen, l.sign);
    if (e < 0) {
      return std::nullopt;
    }
    p.push_back({e, l.sign});
    v = nxt;
  }
  return p;
}

}  // namespace detail

// BFS spanning tree from the basepoint with a fixed edge ordering (labels
// ascending, positive direction first).
inline SpanningTree spanning_tree(LabelledGraph const& g) {
  SpanningTree t;
  t.is_tree_edge.assign(g.edges.size(), 0);
  t.approach_word.assign(g.vertex_alive.size(), {});
  std::vector<char> seen(g.vertex_alive.size(), 0);
  std::vector<int> queue{g.basepoint};
  seen[g.basepoint] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    t.bfs_order.push_back(v);
    for (int label = 0; label < g.n_labels; ++label) {
      for (int sign : {+1, -1}) {
        auto [e, w] = detail::next_edge(g, v, label, sign);
        if (e < 0 || seen[w]) {
          continue;
        }
        seen[w] = 1;
        t.is_tree_edge[e] = 1;
        t.approach_word[w] = t.approach_word[v];
        t.approach_word[w].push_back(Letter{label, sign});
        queue.push_back(w);
      }
    }
  }
  return t;
}

// The free generators X_H: one per positive non-tree edge, named in BFS
// discovery order, with defining word lab(t_iota(e)) lab(e) lab(t_tau(e))^-1.
struct SubgroupGenerators {
  std::vector<int> edge_of;            // generator -> positive edge id
  std::vector<int> gen_of_edge;        // edge id -> generator or -1
  std::vector<std::string> names;      // h1, h2, ...
  std::vector<Word> defining;          // words over X (global)
};

inline SubgroupGenerators compute_xh(LabelledGraph const& g,
                                     SpanningTree const& t) {
  SubgroupGenerators xs;
  xs.gen_of_edge.assign(g.edges.size(), -1);
  for (int v : t.bfs_order) {
    for (int label = 0; label < g.n_labels; ++label) {
      for (int sign : {+1, -1}) {
        auto [e, w] = detail::next_edge(g, v, label, sign);
        if (e < 0 || t.is_tree_edge[e] || xs.gen_of_edge[e] >= 0) {
          continue;
        }
        int id = static_cast<int>(xs.edge_of.size());
        xs.gen_of_edge[e] = id;
        xs.edge_of.push_back(e);
        xs.names.push_back("h" + std::to_string(id + 1));
        Word def = t.approach_word[g.edges[e].src];
        def.push_back(Letter{g.edges[e].label, +1});
        Word back = t.approach_word[g.edges[e].dst];
        def = concat(def, inverse(back));
        xs.defining.push_back(free_reduce(def));
      }
    }
  }
  return xs;
}

// Q_v: for every vertex and every defining relator of G (both factors plus
// the amalgamation relators), the closed r-labelled path at v if it exists.
struct RelatorInstance {
  int vertex;
  EdgePath path;
};

inline std::vector<RelatorInstance> compute_qv(Amalgam const& ctx,
                                               LabelledGraph const& g) {
  std::vector<Word> rels;
  for (auto const& r : ctx.spec.factor1.relators) {
    rels.push_back(ctx.to_global(1, r));
  }
  for (auto const& r : ctx.spec.factor2.relators) {
    rels.push_back(ctx.to_global(2, r));
  }
  for (size_t y = 0; y < ctx.spec.edge_generators.size(); ++y) {
    rels.push_back(concat(ctx.to_global(1, ctx.spec.phi1[y]),
                          inverse(ctx.to_global(2, ctx.spec.phi2[y]))));
  }
  std::vector<RelatorInstance> out;
  for (size_t v = 0; v < g.vertex_alive.size(); ++v) {
    if (!g.vertex_alive[v]) {
      continue;
    }
    for (auto const& r : rels) {
      auto p = detail::trace(g, static_cast<int>(v), r);
      if (!p) {
        continue;
      }
      ReadResult rr = read_path(g, static_cast<int>(v), r);
      if (rr.ok && rr.vertex == static_cast<int>(v)) {
        out.push_back({static_cast<int>(v), *p});
      }
    }
  }
  return out;
}

// The rewriting function phi: tree edges vanish, every non-tree edge
// contributes its generator (inverted when traversed backwards).
inline Word rewrite_phi(SpanningTree const& t, SubgroupGenerators const& xs,
                        EdgePath const& path) {
  Word w;
  for (auto const& [e, dir] : path) {
    if (t.is_tree_edge[e]) {
      continue;
    }
    w.push_back(Letter{xs.gen_of_edge[e], dir});
  }
  return free_reduce(w);
}

struct SubgroupPresentation {
  std::vector<std::string> gen_names;
  std::vector<Word> gen_defs;   // over X (global letters)
  std::vector<Word> relators;   // over the subgroup generators
};

namespace detail {

// Canonical key of a relator up to cyclic rotation and inversion.
inline Word relator_key(Word w) {
  w = cyclic_reduce(w);
  if (w.empty()) {
    return w;
  }
  Word best;
  for (Word cand : {w, inverse(w)}) {
    for (size_t r = 0; r < cand.size(); ++r) {
      Word rot(cand.begin() + r, cand.end());
      rot.insert(rot.end(), cand.begin(), cand.begin() + r);
      if (best.empty() || std::lexicographical_compare(
                              rot.begin(), rot.end(), best.begin(), best.end())) {
        best = rot;
      }
    }
  }
  return best;
}

inline std::vector<Word> dedupe_relators(std::vector<Word> const& rels) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (auto const& r : rels) {
    Word key = relator_key(r);
    if (key.empty()) {
      continue;
    }
    if (seen.insert(key).second) {
      out.push_back(cyclic_reduce(r));
    }
  }
  return out;
}

}  // namespace detail

// The restricted Reidemeister-Schreier presentation of Lab(graph, v0).
inline SubgroupPresentation compute_presentation(Amalgam const& ctx,
                                                 LabelledGraph const& g) {
  SpanningTree t = spanning_tree(g);
  SubgroupGenerators xs = compute_xh(g, t);
  SubgroupPresentation p;
  p.gen_names = xs.names;
  p.gen_defs = xs.defining;
  std::vector<Word> rels;
  for (auto const& inst : compute_qv(ctx, g)) {
    rels.push_back(rewrite_phi(t, xs, inst.path));
  }
  p.relators = detail::dedupe_relators(rels);
  return p;
}

inline SubgroupPresentation compute_presentation(Amalgam const& ctx,
                                                 SubgroupGraph const& sg) {
  return compute_presentation(ctx, sg.graph);
}

// Conservative Tietze simplification: repeatedly eliminate a generator that
// occurs exactly once in some relator, substituting through; drop duplicate
// and trivial relators; free and cyclic reduce.
inline SubgroupPresentation tietze_simplify(SubgroupPresentation p) {
  p.relators = detail::dedupe_relators(p.relators);
  bool eliminated = true;
  while (eliminated) {
    eliminated = false;
    for (size_t ri = 0; ri < p.relators.size() && !eliminated; ++ri) {
      Word const& r = p.relators[ri];
      for (size_t pos = 0; pos < r.size(); ++pos) {
        int h = r[pos].gen;
        int count = 0;
        for (auto const& l : r) {
          count += l.gen == h;
        }
        if (count != 1) {
          continue;
        }
        // rotate so the occurrence is last: r ~ u h^eps, hence h^eps = u^-1
        Word u(r.begin() + pos + 1, r.end());
        u.insert(u.end(), r.begin(), r.begin() + pos);
        Word repl = inverse(u);  // h^eps
        if (r[pos].sign < 0) {
          repl = inverse(repl);  // h = (h^-1)^-1
        }
        std::vector<Word> next;
        for (size_t rj = 0; rj < p.relators.size(); ++rj) {
          if (rj == ri) {
            continue;
          }
          Word s;
          for (auto const& l : p.relators[rj]) {
            if (l.gen == h) {
              Word piece = l.sign > 0 ? repl : inverse(repl);
              s.insert(s.end(), piece.begin(), piece.end());
            } else {
              s.push_back(l);
            }
          }
          next.push_back(cyclic_reduce(s));
        }
        // drop generator h, shifting indices above it
        p.gen_names.erase(p.gen_names.begin() + h);
        p.gen_defs.erase(p.gen_defs.begin() + h);
        for (auto& s : next) {
          for (auto& l : s) {
            if (l.gen > h) {
              --l.gen;
            }
          }
        }
        p.relators = detail::dedupe_relators(next);
        eliminated = true;
        break;
      }
    }
  }
  return p;
}

inline std::string presentation_str(SubgroupPresentation const& p) {
  std::string s = "gp< ";
  for (size_t i = 0; i < p.gen_names.size(); ++i) {
    if (i) {
      s += ", ";
    }
    s += p.gen_names[i];
  }
  s += " | ";
  for (size_t i = 0; i < p.relators.size(); ++i) {
    if (i) {
      s += ", ";
    }
    s += word_str(p.relators[i], p.gen_names);
  }
  s += " >";
  return s;
}

// View the presentation as a GroupPresentation (e.g. to re-enumerate it).
inline GroupPresentation as_group_presentation(SubgroupPresentation const& p) {
  GroupPresentation gp;
  gp.generators = p.gen_names;
  gp.relators = p.relators;
  return gp;
}

}  // namespace amalgam

#endif  // AMALGAM_SUBGROUP_PRESENTATION_HPP_
