#ifndef AMALGAM_CONTEXT_HPP_
#define AMALGAM_CONTEXT_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coset_enum.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace amalgam {

// The edge subgroup A enumerated inside both factors. Element i is the pair
// (image in G1, image in G2); index 0 is the identity. The pairing is the
// isomorphism phi2 . phi1^-1 between the two monomorphic images.
struct EdgeSubgroup {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> a_of_e1;  // G1 element -> pair index, -1 outside the image
  std::vector<int> a_of_e2;
  std::vector<int> mult;  // |A| x |A| table of pair indices
  std::vector<int> invs;

  int order() const { return static_cast<int>(pairs.size()); }
  int mul(int a, int b) const { return mult[a * order() + b]; }
  int inv(int a) const { return invs[a]; }
  int elem(int a, int factor) const {
    return factor == 1 ? pairs[a].first : pairs[a].second;
  }
  bool contains_elem(int factor, int e) const {
    return (factor == 1 ? a_of_e1[e] : a_of_e2[e]) >= 0;
  }
  int pair_of(int factor, int e) const {
    return factor == 1 ? a_of_e1[e] : a_of_e2[e];
  }

  // All subgroups, each a sorted vector of pair indices. Grown by closing
  // each known subgroup with one extra element; fine at the sizes A takes.
  std::vector<std::vector<int>> all_subgroups() const {
    std::set<std::vector<int>> found;
    std::vector<int> triv{0};
    found.insert(triv);
    bool grew = true;
    while (grew) {
      grew = false;
      auto snapshot = found;
      for (auto const& k : snapshot) {
        for (int a = 0; a < order(); ++a) {
          if (std::binary_search(k.begin(), k.end(), a)) {
            continue;
          }
          std::vector<int> gens = k;
          gens.push_back(a);
          if (found.insert(closure(gens)).second) {
            grew = true;
          }
        }
      }
    }
    return {found.begin(), found.end()};
  }

  std::vector<int> closure(std::vector<int> const& gens) const {
    std::vector<bool> in(order(), false);
    in[0] = true;
    std::vector<int> stack{0};
    for (int g : gens) {
      if (!in[g]) {
        in[g] = true;
        stack.push_back(g);
      }
    }
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      for (int g : gens) {
        for (int f : {mul(e, g), mul(e, inv(g))}) {
          if (!in[f]) {
            in[f] = true;
            stack.push_back(f);
          }
        }
      }
    }
    std::vector<int> out;
    for (int a = 0; a < order(); ++a) {
      if (in[a]) {
        out.push_back(a);
      }
    }
    return out;
  }

  bool is_cyclic() const {
    for (int a = 0; a < order(); ++a) {
      if (static_cast<int>(closure({a}).size()) == order()) {
        return true;
      }
    }
    return false;
  }
};

struct Classification {
  bool cyclic = false;
  bool central_in[3] = {false, false, false};    // indexed 1, 2
  bool malnormal_in[3] = {false, false, false};  // indexed 1, 2

  bool any() const {
    return cyclic || central_in[1] || central_in[2] || malnormal_in[1]
           || malnormal_in[2];
  }
  std::vector<std::string> tags() const {
    std::vector<std::string> t;
    if (cyclic) t.push_back("cyclic");
    if (central_in[1]) t.push_back("central_in_1");
    if (central_in[2]) t.push_back("central_in_2");
    if (malnormal_in[1]) t.push_back("malnormal_in_1");
    if (malnormal_in[2]) t.push_back("malnormal_in_2");
    if (t.empty()) t.push_back("none");
    return t;
  }
};

// Per-factor coset data for the subgroup phi_i(A): transversal and
// coset lookup, backing the canonical normal form.
struct FactorCosets {
  std::vector<int> coset_of;   // factor element -> coset index
  std::vector<Word> rep;       // coset index -> representative word (local letters)
  std::vector<int> rep_elem;   // coset index -> element of the representative
};

// A validated amalgam: both factors enumerated, the edge subgroup realized in
// each, phi1/phi2 checked to induce an isomorphism between the images, and A
// proper in both factors. Immutable after construction.
struct Amalgam {
  AmalgamSpec spec;
  CayleyModel g1, g2;
  EdgeSubgroup A;
  Classification tags;
  FactorCosets cosets1, cosets2;

  CayleyModel const& model(int factor) const { return factor == 1 ? g1 : g2; }
  FactorCosets const& cosets(int factor) const {
    return factor == 1 ? cosets1 : cosets2;
  }

  // Global label space: factor-1 generators first, then factor-2.
  int n1() const { return g1.pres.n_gens(); }
  int n2() const { return g2.pres.n_gens(); }
  int n_labels() const { return n1() + n2(); }
  int colour(int label) const { return label < n1() ? 1 : 2; }
  int offset(int factor) const { return factor == 1 ? 0 : n1(); }

  std::vector<std::string> global_names() const {
    std::vector<std::string> names = spec.factor1.generators;
    names.insert(names.end(), spec.factor2.generators.begin(),
                 spec.factor2.generators.end());
    return names;
  }

  Word to_global(int factor, Word w) const {
    int off = offset(factor);
    for (Letter& l : w) {
      l.gen += off;
    }
    return w;
  }
  Word to_local(int factor, Word w) const {
    int off = offset(factor);
    for (Letter& l : w) {
      l.gen -= off;
    }
    return w;
  }

  // phi_factor(a) as a word in global letters.
  Word a_word(int a, int factor) const {
    return to_global(factor, model(factor).repwords[A.elem(a, factor)]);
  }

  // The full presentation (1.c): X1 u X2 with R1, R2 and the amalgamation
  // relators phi1(y) phi2(y)^-1 for each edge generator.
  GroupPresentation full_presentation() const {
    GroupPresentation p;
    p.generators = global_names();
    for (auto const& r : spec.factor1.relators) {
      p.relators.push_back(to_global(1, r));
    }
    for (auto const& r : spec.factor2.relators) {
      p.relators.push_back(to_global(2, r));
    }
    for (size_t i = 0; i < spec.edge_generators.size(); ++i) {
      p.relators.push_back(concat(to_global(1, spec.phi1[i]),
                                  inverse(to_global(2, spec.phi2[i]))));
    }
    return p;
  }

  // Split a global word into maximal single-factor runs.
  std::vector<std::pair<int, Word>> split_syllables(Word const& w) const {
    std::vector<std::pair<int, Word>> runs;
    for (Letter const& l : w) {
      int f = colour(l.gen);
      if (runs.empty() || runs.back().first != f) {
        runs.push_back({f, {}});
      }
      runs.back().second.push_back(l);
    }
    return runs;
  }
};

namespace detail {

inline EdgeSubgroup enumerate_edge_subgroup(AmalgamSpec const& spec,
                                            CayleyModel const& g1,
                                            CayleyModel const& g2,
                                            std::vector<std::string>& issues) {
  EdgeSubgroup A;
  std::map<std::pair<int, int>, int> index;
  auto add = [&](std::pair<int, int> p) {
    auto it = index.find(p);
    if (it != index.end()) {
      return it->second;
    }
    int id = static_cast<int>(A.pairs.size());
    index[p] = id;
    A.pairs.push_back(p);
    return id;
  };
  add({g1.identity(), g2.identity()});
  std::vector<std::pair<int, int>> gen_pairs;
  for (size_t y = 0; y < spec.edge_generators.size(); ++y) {
    gen_pairs.push_back({g1.eval(spec.phi1[y]), g2.eval(spec.phi2[y])});
  }
  for (size_t i = 0; i < A.pairs.size(); ++i) {
    auto [e1, e2] = A.pairs[i];
    for (auto const& [f1, f2] : gen_pairs) {
      add({g1.mul(e1, f1), g2.mul(e2, f2)});
      add({g1.mul(e1, g1.inv(f1)), g2.mul(e2, g2.inv(f2))});
    }
  }
  // The pair set is a function in each coordinate iff phi1, phi2 induce an
  // isomorphism between the images.
  std::set<int> proj1, proj2;
  for (auto const& [e1, e2] : A.pairs) {
    proj1.insert(e1);
    proj2.insert(e2);
  }
  if (proj1.size() != A.pairs.size() || proj2.size() != A.pairs.size()) {
    issues.push_back(
        "phi1 and phi2 do not induce an isomorphism between the edge images"
        " (images of A are incompatible; orders "
        + std::to_string(proj1.size()) + " vs " + std::to_string(proj2.size())
        + " from " + std::to_string(A.pairs.size()) + " generator products)");
    return A;
  }
  A.a_of_e1.assign(g1.order(), -1);
  A.a_of_e2.assign(g2.order(), -1);
  for (int a = 0; a < A.order(); ++a) {
    A.a_of_e1[A.pairs[a].first] = a;
    A.a_of_e2[A.pairs[a].second] = a;
  }
  A.mult.resize(A.order() * A.order());
  A.invs.resize(A.order());
  for (int a = 0; a < A.order(); ++a) {
    for (int b = 0; b < A.order(); ++b) {
      int e = g1.mul(A.pairs[a].first, A.pairs[b].first);
      A.mult[a * A.order() + b] = A.a_of_e1[e];
    }
    A.invs[a] = A.a_of_e1[g1.inv(A.pairs[a].first)];
  }
  return A;
}

inline Classification classify(CayleyModel const& g1, CayleyModel const& g2,
                               EdgeSubgroup const& A) {
  Classification c;
  c.cyclic = A.is_cyclic();
  for (int factor : {1, 2}) {
    CayleyModel const& m = factor == 1 ? g1 : g2;
    bool central = true;
    for (int a = 0; a < A.order() && central; ++a) {
      int ea = A.elem(a, factor);
      for (int g = 0; g < m.order(); ++g) {
        if (m.mul(ea, g) != m.mul(g, ea)) {
          central = false;
          break;
        }
      }
    }
    c.central_in[factor] = central;
    bool malnormal = true;
    for (int g = 0; g < m.order() && malnormal; ++g) {
      if (A.contains_elem(factor, g)) {
        continue;
      }
      for (int a = 1; a < A.order(); ++a) {
        int t = m.conj(g, A.elem(a, factor));
        if (t != m.identity() && A.contains_elem(factor, t)) {
          malnormal = false;
          break;
        }
      }
    }
    c.malnormal_in[factor] = malnormal;
  }
  return c;
}

inline FactorCosets factor_cosets(CayleyModel const& m,
                                  EdgeSubgroup const& A, int factor) {
  std::vector<int> sub;
  for (int a = 0; a < A.order(); ++a) {
    sub.push_back(A.elem(a, factor));
  }
  std::sort(sub.begin(), sub.end());
  std::vector<Word> words;
  for (int e : sub) {
    words.push_back(m.repwords[e]);
  }
  RelativeCayley rc = relative_cayley(m, words);
  FactorCosets fc;
  fc.coset_of = rc.coset_of_element;
  fc.rep = transversal_words(rc.table);
  fc.rep_elem.resize(fc.rep.size());
  for (size_t c = 0; c < fc.rep.size(); ++c) {
    fc.rep_elem[c] = m.eval(fc.rep[c]);
  }
  return fc;
}

}  // namespace detail

// The monomorphic image of A inside one factor, with evaluation of words
// over the edge generators Y.
struct EdgeImage {
  int factor;
  std::vector<int> elements;  // subgroup of the factor, sorted
};

inline std::pair<EdgeImage, EdgeImage> edge_image(Amalgam const& ctx) {
  EdgeImage e1{1, {}};
  EdgeImage e2{2, {}};
  for (auto const& [a, b] : ctx.A.pairs) {
    e1.elements.push_back(a);
    e2.elements.push_back(b);
  }
  std::sort(e1.elements.begin(), e1.elements.end());
  std::sort(e2.elements.begin(), e2.elements.end());
  return {e1, e2};
}

// Evaluate a word over the edge generators Y inside the requested factor.
inline int eval_edge_word(Amalgam const& ctx, int factor, Word const& y_word) {
  auto const& images = factor == 1 ? ctx.spec.phi1 : ctx.spec.phi2;
  Word expanded;
  for (Letter const& l : y_word) {
    Word piece = images[l.gen];
    if (l.sign < 0) {
      piece = inverse(piece);
    }
    expanded = concat(expanded, piece);
  }
  return ctx.model(factor).eval(expanded);
}

// Full validation of the setup: disjoint alphabets, finite factors, phi1/phi2
// inducing an isomorphism of the edge images, and A proper in both factors.
// Throws validation_error listing every problem found.
inline Amalgam validate_amalgam(AmalgamSpec const& spec, long cap = 1000000) {
  std::vector<std::string> issues;
  for (auto const& i : spec.factor1.check()) {
    issues.push_back("factor1: " + i);
  }
  for (auto const& i : spec.factor2.check()) {
    issues.push_back("factor2: " + i);
  }
  for (auto const& n : spec.factor1.generators) {
    for (auto const& m : spec.factor2.generators) {
      if (n == m) {
        issues.push_back("generator '" + n + "' appears in both factors");
      }
    }
  }
  if (spec.phi1.size() != spec.edge_generators.size()
      || spec.phi2.size() != spec.edge_generators.size()) {
    issues.push_back("phi1/phi2 must map every edge generator");
  }
  if (!issues.empty()) {
    std::string msg = "invalid amalgam:";
    for (auto const& i : issues) {
      msg += "\n  - " + i;
    }
    throw validation_error(msg);
  }

  Amalgam ctx;
  ctx.spec = spec;
  ctx.g1 = enumerate(spec.factor1, cap);
  ctx.g2 = enumerate(spec.factor2, cap);
  ctx.A = detail::enumerate_edge_subgroup(spec, ctx.g1, ctx.g2, issues);
  if (issues.empty()) {
    if (ctx.A.order() >= ctx.g1.order()) {
      issues.push_back("edge subgroup A is not a proper subgroup of factor 1");
    }
    if (ctx.A.order() >= ctx.g2.order()) {
      issues.push_back("edge subgroup A is not a proper subgroup of factor 2");
    }
  }
  if (!issues.empty()) {
    std::string msg = "invalid amalgam:";
    for (auto const& i : issues) {
      msg += "\n  - " + i;
    }
    throw validation_error(msg);
  }
  ctx.tags = detail::classify(ctx.g1, ctx.g2, ctx.A);
  ctx.cosets1 = detail::factor_cosets(ctx.g1, ctx.A, 1);
  ctx.cosets2 = detail::factor_cosets(ctx.g2, ctx.A, 2);
  return ctx;
}

}  // namespace amalgam

#endif  // AMALGAM_CONTEXT_HPP_
