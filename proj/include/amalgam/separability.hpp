#ifndef AMALGAM_SEPARABILITY_HPP_
#define AMALGAM_SEPARABILITY_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "context.hpp"
#include "graph.hpp"
#include "normal_form.hpp"
#include "pipeline.hpp"

namespace amalgam {

struct separate_error : std::runtime_error {
  enum Kind { member, unsupported } kind;
  separate_error(Kind k, std::string const& msg)
      : std::runtime_error(msg), kind(k) {}
};

// An A-orbit of monochromatic vertices. The representative is chosen with
// the lexicographically least stabilizer (stabilizers within an orbit are
// A-conjugate); orbits match across graphs iff their canonical stabilizers
// are equal, and rep-aligned identification then needs no foldings.
struct Orbit {
  int rep;
  std::vector<int> vertices;    // sorted
  std::vector<int> stabilizer;  // of rep; sorted pair indices
};

struct OrbitData {
  int colour;
  std::vector<Orbit> orbits;
};

namespace detail {

inline int act(Amalgam const& ctx, LabelledGraph const& g, int v, int a,
               int colour) {
  ReadResult r = read_path(g, v, ctx.a_word(a, colour));
  if (!r.ok) {
    throw std::logic_error("A-action undefined at a monochromatic vertex of a"
                           " non-cover component");
  }
  return r.vertex;
}

inline std::vector<int> stabilizer_of(Amalgam const& ctx,
                                      LabelledGraph const& g, int v,
                                      int colour) {
  std::vector<int> s;
  for (int a = 0; a < ctx.A.order(); ++a) {
    if (act(ctx, g, v, a, colour) == v) {
      s.push_back(a);
    }
  }
  return s;
}

}  // namespace detail

inline OrbitData orbit_analysis(Amalgam const& ctx, LabelledGraph const& g,
                                int colour) {
  OrbitData od;
  od.colour = colour;
  ChromaticReport rep = classify_chromatic(g);
  std::vector<int> const& vm = colour == 1 ? rep.vm1 : rep.vm2;
  std::vector<char> seen(g.vertex_alive.size(), 0);
  for (int v : vm) {
    if (seen[v]) {
      continue;
    }
    Orbit o;
    for (int a = 0; a < ctx.A.order(); ++a) {
      int u = detail::act(ctx, g, v, a, colour);
      o.vertices.push_back(u);
      seen[u] = 1;
    }
    std::sort(o.vertices.begin(), o.vertices.end());
    o.vertices.erase(std::unique(o.vertices.begin(), o.vertices.end()),
                     o.vertices.end());
    // canonical representative: least stabilizer, then least vertex id
    o.rep = -1;
    for (int u : o.vertices) {
      std::vector<int> s = detail::stabilizer_of(ctx, g, u, colour);
      if (o.rep < 0 || s < o.stabilizer) {
        o.rep = u;
        o.stabilizer = s;
      }
    }
    if (static_cast<int>(o.vertices.size() * o.stabilizer.size())
        != ctx.A.order()) {
      throw std::logic_error("orbit-stabilizer count violated");
    }
    od.orbits.push_back(std::move(o));
  }
  return od;
}

namespace detail {

// One pushout round: disjoint unions first, then every matched orbit pair
// is identified along the whole A-action in a single merge/fold pass.
// Matching orbits with equal stabilizers never triggers further foldings;
// vertex counting asserts that.
class Round {
 public:
  explicit Round(Amalgam const& ctx, LabelledGraph seed)
      : ctx_(ctx), big_(std::move(seed)) {}

  int append(LabelledGraph const& g) { return append_copy(big_, g); }

  // identify w.a with u.a for every a in A; w, u vertices of the current
  // union, monochromatic of the given colours, with equal stabilizers
  void match(int w, int wcol, int u, int ucol) {
    for (int a = 0; a < ctx_.A.order(); ++a) {
      ids_.push_back({act(ctx_, big_, w, a, wcol), act(ctx_, big_, u, a, ucol)});
    }
  }

  LabelledGraph finish() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    long expected = big_.n_vertices() - static_cast<long>(ids_.size());
    merge_and_fold(big_, ids_);
    if (big_.n_vertices() != expected) {
      throw std::logic_error("unexpected foldings while gluing matched orbits");
    }
    return std::move(big_);
  }

  LabelledGraph const& graph() const { return big_; }

 private:
  Amalgam const& ctx_;
  LabelledGraph big_;
  std::vector<std::pair<int, int>> ids_;
};

inline LabelledGraph n_copies(LabelledGraph const& g, long n,
                              std::vector<int>& offsets) {
  LabelledGraph big;
  big.n1 = g.n1;
  big.n_labels = g.n_labels;
  offsets.clear();
  for (long i = 0; i < n; ++i) {
    offsets.push_back(append_copy(big, g));
  }
  big.basepoint = offsets.empty() ? 0 : offsets[0] + g.basepoint;
  return big;
}

struct OrbitClass {
  std::vector<int> stab;
  std::vector<Orbit> orbits;
};

inline std::vector<OrbitClass> group_by_stabilizer(std::vector<Orbit> const& os) {
  std::map<std::vector<int>, std::vector<Orbit>> m;
  for (auto const& o : os) {
    m[o.stabilizer].push_back(o);
  }
  std::vector<OrbitClass> out;
  for (auto& [k, v] : m) {
    out.push_back({k, std::move(v)});
  }
  return out;
}

}  // namespace detail

struct SaturateResult {
  LabelledGraph graph;
};

// Embed a finite precover into an X_beta-saturated one: repeatedly take an
// off-colour monochromatic vertex v with stabilizer S and push out with
// Cayley(G_beta, S) along the orbit of v. Terminates because each round
// turns a whole off-colour orbit bichromatic.
inline SaturateResult saturate(Amalgam const& ctx, LabelledGraph const& g_in,
                               int beta) {
  SaturateResult r;
  r.graph = g_in;
  int off_colour = beta == 1 ? 2 : 1;
  while (true) {
    ChromaticReport rep = classify_chromatic(r.graph);
    std::vector<int> const& vm = off_colour == 1 ? rep.vm1 : rep.vm2;
    if (vm.empty()) {
      return r;
    }
    int v = vm.front();
    std::vector<int> s = detail::stabilizer_of(ctx, r.graph, v, off_colour);
    detail::Round round(ctx, std::move(r.graph));
    LabelledGraph cay = relative_cayley_graph(ctx, beta, s);
    int off = round.append(cay);
    round.match(v, off_colour, off + cay.basepoint, beta);
    r.graph = round.finish();
  }
}

// A <= Z(G_alpha): embed an X_beta-saturated precover into a finite cover,
// one orbit-length class per round.
inline LabelledGraph embed_in_cover_central(Amalgam const& ctx,
                                            LabelledGraph const& g_in,
                                            int alpha) {
  int beta = alpha == 1 ? 2 : 1;
  LabelledGraph g = g_in;
  for (int guard = 0;; ++guard) {
    if (guard > 64) {
      throw std::logic_error("central embedding did not terminate");
    }
    OrbitData od = orbit_analysis(ctx, g, beta);
    if (od.orbits.empty()) {
      return g;
    }
    size_t n = od.orbits.front().vertices.size();
    std::vector<Orbit> in_class;
    for (auto const& o : od.orbits) {
      if (o.vertices.size() == n) {
        in_class.push_back(o);
      }
    }
    auto classes = detail::group_by_stabilizer(in_class);
    long t = ctx.model(alpha).order() / ctx.A.order();

    std::vector<int> g_offsets;
    detail::Round round(ctx, detail::n_copies(g, t, g_offsets));
    for (auto const& cls : classes) {
      LabelledGraph cay = relative_cayley_graph(ctx, alpha, cls.stab);
      OrbitData cay_od = orbit_analysis(ctx, cay, alpha);
      if (static_cast<long>(cay_od.orbits.size()) != t) {
        throw std::logic_error("unexpected orbit count in central embedding");
      }
      for (auto const& co : cay_od.orbits) {
        if (co.stabilizer != cls.stab || co.vertices.size() != n) {
          throw std::logic_error(
              "relative Cayley orbit structure contradicts centrality");
        }
      }
      std::vector<int> side1;  // class-orbit reps across the g copies
      for (int off : g_offsets) {
        for (auto const& o : cls.orbits) {
          side1.push_back(off + o.rep);
        }
      }
      size_t bi = 0;
      for (size_t k = 0; k < cls.orbits.size(); ++k) {
        int off = round.append(cay);
        for (auto const& co : cay_od.orbits) {
          round.match(side1[bi++], beta, off + co.rep, alpha);
        }
      }
      if (bi != side1.size()) {
        throw std::logic_error("orbit matching mismatch in central embedding");
      }
    }
    g = round.finish();
    restrict_to_basepoint_component(g);
  }
}

// A malnormal in G_alpha: embed an X_beta-saturated precover into a cover.
// Every non-basepoint orbit of Cayley(G_alpha, S_j) has trivial stabilizer;
// those glue onto fresh copies of Cayley(G_beta).
inline LabelledGraph embed_in_cover_malnormal(Amalgam const& ctx,
                                              LabelledGraph const& g_in,
                                              int alpha) {
  int beta = alpha == 1 ? 2 : 1;
  LabelledGraph g = g_in;
  for (int guard = 0;; ++guard) {
    if (guard > 64) {
      throw std::logic_error("malnormal embedding did not terminate");
    }
    OrbitData od = orbit_analysis(ctx, g, beta);
    if (od.orbits.empty()) {
      return g;
    }
    size_t n = od.orbits.front().vertices.size();
    std::vector<Orbit> in_class;
    for (auto const& o : od.orbits) {
      if (o.vertices.size() == n) {
        in_class.push_back(o);
      }
    }
    auto classes = detail::group_by_stabilizer(in_class);
    long d = ctx.model(beta).order() / ctx.A.order();

    struct Side2 {
      LabelledGraph cay;
      Orbit base_orbit;
      std::vector<Orbit> extra;  // trivial stabilizer, length |A|
      long copies;
    };
    std::vector<Side2> side2;
    long total_extra_orbits = 0;
    for (auto const& cls : classes) {
      Side2 s;
      s.cay = relative_cayley_graph(ctx, alpha, cls.stab);
      OrbitData cay_od = orbit_analysis(ctx, s.cay, alpha);
      bool found_base = false;
      for (auto const& co : cay_od.orbits) {
        if (!found_base
            && std::binary_search(co.vertices.begin(), co.vertices.end(),
                                  s.cay.basepoint)) {
          s.base_orbit = co;
          found_base = true;
        } else {
          if (co.stabilizer.size() != 1) {
            throw std::logic_error(
                "nontrivial stabilizer off the basepoint orbit contradicts"
                " malnormality");
          }
          s.extra.push_back(co);
        }
      }
      if (!found_base || s.base_orbit.vertices.size() != n
          || s.base_orbit.stabilizer != cls.stab) {
        throw std::logic_error("basepoint orbit mismatch in malnormal"
                               " embedding");
      }
      s.copies = static_cast<long>(cls.orbits.size()) * d;
      total_extra_orbits += static_cast<long>(s.extra.size()) * s.copies;
      side2.push_back(std::move(s));
    }
    if (total_extra_orbits % d != 0) {
      throw std::logic_error("extra orbit count not divisible in malnormal"
                             " embedding");
    }
    long n_cayley_beta = total_extra_orbits / d;

    std::vector<int> g_offsets;
    detail::Round round(ctx, detail::n_copies(g, d, g_offsets));
    LabelledGraph cay_beta = cayley_graph(ctx, beta);
    OrbitData beta_od = orbit_analysis(ctx, cay_beta, beta);
    std::vector<int> free_side;  // trivial-stabilizer orbit reps
    for (long i = 0; i < n_cayley_beta; ++i) {
      int off = round.append(cay_beta);
      for (auto const& o : beta_od.orbits) {
        free_side.push_back(off + o.rep);
      }
    }
    size_t fi = 0;
    size_t ci = 0;
    for (auto const& cls : classes) {
      auto const& s = side2[ci++];
      std::vector<int> class_side;
      for (int off : g_offsets) {
        for (auto const& o : cls.orbits) {
          class_side.push_back(off + o.rep);
        }
      }
      size_t bi = 0;
      for (long k = 0; k < s.copies; ++k) {
        int off = round.append(s.cay);
        round.match(class_side[bi++], beta, off + s.base_orbit.rep, alpha);
        for (auto const& eo : s.extra) {
          round.match(free_side[fi++], beta, off + eo.rep, alpha);
        }
      }
      if (bi != class_side.size()) {
        throw std::logic_error("class orbit mismatch in malnormal embedding");
      }
    }
    if (fi != free_side.size()) {
      throw std::logic_error("free orbit mismatch in malnormal embedding");
    }
    g = round.finish();
    restrict_to_basepoint_component(g);
  }
}

namespace detail {

struct ClaimCover {
  LabelledGraph graph;
  std::vector<Orbit> class_orbits;  // stabilizer S, colour gamma
};

// Inner claim of the cyclic case: embed Cayley(G_gamma, S) into a finite
// X_gamma-saturated precover whose gamma-monochromatic vertices all carry
// stabilizer S. Induction on the number of prime factors of |S|, factors
// alternating; the base is the relative Cayley graph itself.
inline ClaimCover claim_cover(Amalgam const& ctx, int gamma,
                              std::vector<int> const& S) {
  ClaimCover res;
  res.graph = relative_cayley_graph(ctx, gamma, S);
  OrbitData od = orbit_analysis(ctx, res.graph, gamma);
  std::map<std::vector<int>, std::vector<Orbit>> partial;
  for (auto const& o : od.orbits) {
    if (o.stabilizer.size() == S.size()) {
      res.class_orbits.push_back(o);
    } else {
      partial[o.stabilizer].push_back(o);
    }
  }
  if (partial.empty()) {
    return res;
  }
  int other = gamma == 1 ? 2 : 1;
  struct Part {
    std::vector<Orbit> orbits;  // t_i orbits in the base graph
    ClaimCover cover;           // k_i class orbits each
  };
  std::vector<Part> parts;
  long l = 1;
  for (auto& [stab, orbits] : partial) {
    Part p;
    p.orbits = orbits;
    p.cover = claim_cover(ctx, other, stab);
    l = std::lcm(l, static_cast<long>(p.cover.class_orbits.size()));
    parts.push_back(std::move(p));
  }
  std::vector<int> base_offsets;
  Round round(ctx, n_copies(res.graph, l, base_offsets));
  for (auto const& p : parts) {
    long k = static_cast<long>(p.cover.class_orbits.size());
    long copies = static_cast<long>(p.orbits.size()) * (l / k);
    std::vector<int> base_side;
    for (int off : base_offsets) {
      for (auto const& o : p.orbits) {
        base_side.push_back(off + o.rep);
      }
    }
    size_t bi = 0;
    for (long c = 0; c < copies; ++c) {
      int off = round.append(p.cover.graph);
      for (auto const& co : p.cover.class_orbits) {
        round.match(base_side[bi++], gamma, off + co.rep, other);
      }
    }
    if (bi != base_side.size()) {
      throw std::logic_error("claim cover orbit mismatch");
    }
  }
  res.graph = round.finish();
  res.class_orbits = orbit_analysis(ctx, res.graph, gamma).orbits;
  for (auto const& o : res.class_orbits) {
    if (o.stabilizer.size() != S.size()) {
      throw std::logic_error("claim cover left a foreign orbit class");
    }
  }
  return res;
}

}  // namespace detail

// A cyclic: embed an X_beta-saturated precover into a cover. All orbits of
// one length share their stabilizer (cyclic groups have one subgroup per
// order), and the inner claim supplies the matching saturated cover.
inline LabelledGraph embed_in_cover_cyclic(Amalgam const& ctx,
                                           LabelledGraph const& g_in,
                                           int beta) {
  int alpha = beta == 1 ? 2 : 1;
  LabelledGraph g = g_in;
  for (int guard = 0;; ++guard) {
    if (guard > 64) {
      throw std::logic_error("cyclic embedding did not terminate");
    }
    OrbitData od = orbit_analysis(ctx, g, beta);
    if (od.orbits.empty()) {
      return g;
    }
    size_t n = od.orbits.front().vertices.size();
    std::vector<Orbit> in_class;
    std::vector<int> stab;
    for (auto const& o : od.orbits) {
      if (o.vertices.size() == n) {
        if (!in_class.empty() && o.stabilizer != stab) {
          throw std::logic_error(
              "same-length orbits with distinct stabilizers under cyclic A");
        }
        stab = o.stabilizer;
        in_class.push_back(o);
      }
    }
    detail::ClaimCover cc = detail::claim_cover(ctx, alpha, stab);
    long N = static_cast<long>(cc.class_orbits.size());
    long m = static_cast<long>(in_class.size());

    std::vector<int> g_offsets;
    detail::Round round(ctx, detail::n_copies(g, N, g_offsets));
    std::vector<int> g_side;
    for (int off : g_offsets) {
      for (auto const& o : in_class) {
        g_side.push_back(off + o.rep);
      }
    }
    size_t bi = 0;
    for (long c = 0; c < m; ++c) {
      int off = round.append(cc.graph);
      for (auto const& co : cc.class_orbits) {
        round.match(g_side[bi++], beta, off + co.rep, alpha);
      }
    }
    if (bi != g_side.size()) {
      throw std::logic_error("cyclic embedding orbit mismatch");
    }
    g = round.finish();
    restrict_to_basepoint_component(g);
  }
}

struct StemResult {
  LabelledGraph graph;
  int endpoint;
};

// Make the excluded word readable: walk its normal form syllable by
// syllable from the basepoint; whenever the next syllable's colour is
// missing, push out with the relative Cayley graph of that factor over the
// stabilizer of the stuck vertex. Each gluing keeps the graph a precover.
inline StemResult glue_stem(Amalgam const& ctx, SubgroupGraph const& sg,
                            Word const& g_word) {
  StemResult res;
  res.graph = sg.graph;
  NormalWord nf = normal_form(ctx, g_word);
  std::vector<std::pair<int, int>> sylls;  // (factor, element)
  if (nf.syllables.empty()) {
    if (nf.prefix != 0) {
      sylls.push_back({1, ctx.A.elem(nf.prefix, 1)});
    }
  } else {
    for (size_t i = 0; i < nf.syllables.size(); ++i) {
      auto const& [factor, rep] = nf.syllables[i];
      int e = ctx.model(factor).eval(ctx.to_local(factor, rep));
      if (i == 0 && nf.prefix != 0) {
        e = ctx.model(factor).mul(ctx.A.elem(nf.prefix, factor), e);
      }
      sylls.push_back({factor, e});
    }
  }
  int cur = res.graph.basepoint;
  for (auto const& [factor, elem] : sylls) {
    Word w = ctx.to_global(factor, ctx.model(factor).repwords[elem]);
    ReadResult r = read_path(res.graph, cur, w);
    if (r.ok) {
      cur = r.vertex;
      continue;
    }
    // cur lacks this colour entirely (all components are covers)
    LabelledGraph cay;
    std::vector<std::pair<int, int>> ids;
    long expected;
    int off;
    if (res.graph.degree(cur) == 0) {
      cay = relative_cayley_graph(ctx, factor, {0});
      off = static_cast<int>(res.graph.vertex_alive.size());
      append_copy(res.graph, cay);
      ids.push_back({cur, off + cay.basepoint});
      expected = res.graph.n_vertices() - 1;
    } else {
      int ccol = res.graph.has_colour(cur, 1) ? 1 : 2;
      std::vector<int> s = detail::stabilizer_of(ctx, res.graph, cur, ccol);
      cay = relative_cayley_graph(ctx, factor, s);
      off = static_cast<int>(res.graph.vertex_alive.size());
      append_copy(res.graph, cay);
      for (int a = 0; a < ctx.A.order(); ++a) {
        ids.push_back(
            {detail::act(ctx, res.graph, cur, a, ccol),
             detail::act(ctx, res.graph, off + cay.basepoint, a, factor)});
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      expected = res.graph.n_vertices() - static_cast<long>(ids.size());
    }
    int cur_old = cur;
    std::vector<int> map = merge_and_fold(res.graph, ids);
    cur = map[cur_old];
    if (res.graph.n_vertices() != expected) {
      throw std::logic_error("unexpected foldings while gluing a stem");
    }
    ReadResult r2 = read_path(res.graph, cur, w);
    if (!r2.ok) {
      throw std::logic_error("stem syllable still unreadable after gluing");
    }
    cur = r2.vertex;
  }
  res.endpoint = cur;
  return res;
}

struct SeparatingSubgroup {
  LabelledGraph cover;  // X-saturated precover, basepoint included
  long index = 0;
  std::vector<int> embedding;  // vertex map subgroup graph -> cover
};

namespace detail {

// The unique basepoint-preserving morphism into a well-labelled graph,
// checked to be total and injective: the embedding certificate.
inline std::vector<int> embedding_map(LabelledGraph const& src,
                                      LabelledGraph const& dst) {
  std::vector<int> map(src.vertex_alive.size(), -1);
  map[src.basepoint] = dst.basepoint;
  std::vector<int> q{src.basepoint};
  for (size_t qi = 0; qi < q.size(); ++qi) {
    int v = q[qi];
    for (int label = 0; label < src.n_labels; ++label) {
      for (int sign : {+1, -1}) {
        int w = src.next(v, label, sign);
        if (w < 0) {
          continue;
        }
        int x = dst.next(map[v], label, sign);
        if (x < 0) {
          throw std::logic_error("subgroup graph does not embed in the cover");
        }
        if (map[w] < 0) {
          map[w] = x;
          q.push_back(w);
        } else if (map[w] != x) {
          throw std::logic_error("subgroup graph maps non-functionally");
        }
      }
    }
  }
  std::vector<int> hit(dst.vertex_alive.size(), 0);
  for (size_t v = 0; v < map.size(); ++v) {
    if (!src.vertex_alive[v]) {
      continue;
    }
    if (map[v] < 0) {
      throw std::logic_error("subgroup graph not fully mapped");
    }
    if (hit[map[v]]++) {
      throw std::logic_error("subgroup graph does not embed injectively");
    }
  }
  return map;
}

}  // namespace detail

// Case dispatch: construct the separating subgroup K for H and a
// non-member g. Case priority: cyclic, then central, then malnormal. All
// postconditions are re-verified before returning.
inline SeparatingSubgroup separate(Amalgam const& ctx, SubgroupGraph const& sg,
                                   Word const& g_word) {
  if (is_member(ctx, sg, g_word)) {
    throw separate_error(separate_error::member,
                         "the excluded word is a member of the subgroup");
  }
  int mode;  // 0 cyclic, 1 central, 2 malnormal
  int alpha = 0;
  int beta;
  if (ctx.tags.cyclic) {
    mode = 0;
    beta = 1;
  } else if (ctx.tags.central_in[1]) {
    mode = 1;
    alpha = 1;
    beta = 2;
  } else if (ctx.tags.central_in[2]) {
    mode = 1;
    alpha = 2;
    beta = 1;
  } else if (ctx.tags.malnormal_in[1]) {
    mode = 2;
    alpha = 1;
    beta = 2;
  } else if (ctx.tags.malnormal_in[2]) {
    mode = 2;
    alpha = 2;
    beta = 1;
  } else {
    std::string tags;
    for (auto const& t : ctx.tags.tags()) {
      tags += tags.empty() ? t : ", " + t;
    }
    throw separate_error(separate_error::unsupported,
                         "the edge subgroup is neither cyclic nor central nor"
                         " malnormal in a factor (classification: "
                             + tags + "); the construction does not apply");
  }

  StemResult stem = glue_stem(ctx, sg, g_word);
  SaturateResult sat = saturate(ctx, stem.graph, beta);
  LabelledGraph cover;
  switch (mode) {
    case 0:
      cover = embed_in_cover_cyclic(ctx, sat.graph, beta);
      break;
    case 1:
      cover = embed_in_cover_central(ctx, sat.graph, alpha);
      break;
    default:
      cover = embed_in_cover_malnormal(ctx, sat.graph, alpha);
      break;
  }

  SeparatingSubgroup out;
  out.cover = std::move(cover);
  out.index = out.cover.n_vertices();

  for (size_t v = 0; v < out.cover.vertex_alive.size(); ++v) {
    if (!out.cover.vertex_alive[v]) {
      continue;
    }
    for (int label = 0; label < out.cover.n_labels; ++label) {
      if (!out.cover.saturated_at(static_cast<int>(v), label)) {
        throw std::logic_error("separating cover is not saturated");
      }
    }
  }
  VerifyReport vr = verify_precover(ctx, out.cover);
  if (!vr.ok) {
    throw std::logic_error("separating cover is not a precover: "
                           + vr.issues.front());
  }
  for (Word const& h : sg.generators) {
    ReadResult r = read_path(out.cover, out.cover.basepoint, h);
    if (!r.ok || r.vertex != out.cover.basepoint) {
      throw std::logic_error("a subgroup generator escapes the cover");
    }
  }
  Word rw = reading_word(ctx, normal_form(ctx, g_word));
  ReadResult r = read_path(out.cover, out.cover.basepoint, rw);
  if (!r.ok || r.vertex == out.cover.basepoint) {
    throw std::logic_error("the excluded word was not separated");
  }
  out.embedding = detail::embedding_map(sg.graph, out.cover);
  return out;
}

}  // namespace amalgam

#endif  // AMALGAM_SEPARABILITY_HPP_
