#ifndef AMALGAM_COSET_ENUM_HPP_
#define AMALGAM_COSET_ENUM_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "presentation.hpp"
#include "word.hpp"

namespace amalgam {

constexpr int UNDEF = -1;

// A complete coset table: one row per coset, one column per signed generator
// (2*g for g, 2*g+1 for g^-1). Row 0 is the coset of the subgroup itself.
struct CosetTable {
  int n_gens = 0;
  int n_cosets = 0;
  std::vector<int> tab;  // n_cosets * 2 * n_gens

  int at(int c, int gen, int sign) const {
    return tab[static_cast<size_t>(c) * 2 * n_gens + 2 * gen + (sign < 0)];
  }
  int step(int c, Letter l) const { return at(c, l.gen, l.sign); }
  int walk(int c, Word const& w) const {
    for (Letter const& l : w) {
      c = step(c, l);
    }
    return c;
  }
};

namespace detail {

// HLT-style Todd-Coxeter with coincidence handling, after Holt's Handbook.
class ToddCoxeter {
 public:
  ToddCoxeter(int n_gens, std::vector<Word> const& relators,
              std::vector<Word> const& subgroup, long cap)
      : ng_(n_gens), cap_(cap) {
    for (auto const& r : relators) {
      rels_.push_back(signed_form(free_reduce(r)));
    }
    for (auto const& w : subgroup) {
      subs_.push_back(signed_form(free_reduce(w)));
    }
    new_coset();
  }

  CosetTable run() {
    for (auto const& w : subs_) {
      if (!w.empty()) {
        scan_and_fill(rep(0), w);
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < n_total_; ++a) {
        if (!alive(a)) {
          continue;
        }
        for (auto const& r : rels_) {
          if (!alive(a)) {
            break;
          }
          if (r.empty()) {
            continue;
          }
          long before = n_total_ + merges_;
          scan_and_fill(a, r);
          if (n_total_ + merges_ != before) {
            changed = true;
          }
        }
        if (!alive(a)) {
          continue;
        }
        for (int x = 0; x < 2 * ng_; ++x) {
          if (entry(a, x) == UNDEF) {
            define(a, x);
            changed = true;
          }
        }
      }
    }
    return compact();
  }

 private:
  std::vector<int> signed_form(Word const& w) const {
    std::vector<int> s;
    s.reserve(w.size());
    for (Letter const& l : w) {
      s.push_back(2 * l.gen + (l.sign < 0));
    }
    return s;
  }
  static int inv(int x) { return x ^ 1; }

  int& entry(int c, int x) { return tab_[static_cast<size_t>(c) * 2 * ng_ + x]; }
  int entry(int c, int x) const {
    return tab_[static_cast<size_t>(c) * 2 * ng_ + x];
  }

  bool alive(int c) { return rep(c) == c; }

  int rep(int c) {
    int r = c;
    while (p_[r] != r) {
      r = p_[r];
    }
    while (p_[c] != r) {
      int nxt = p_[c];
      p_[c] = r;
      c = nxt;
    }
    return r;
  }

  int new_coset() {
    if (n_total_ >= cap_) {
      throw enumeration_error("coset cap exceeded ("
                              + std::to_string(cap_)
                              + "); group too large or of infinite index");
    }
    tab_.resize(tab_.size() + 2 * ng_, UNDEF);
    p_.push_back(n_total_);
    return n_total_++;
  }

  int define(int a, int x) {
    int b = new_coset();
    entry(a, x) = b;
    entry(b, inv(x)) = a;
    return b;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) {
      return;
    }
    if (a > b) {
      std::swap(a, b);
    }
    p_[b] = a;
    ++merges_;
    dead_.push_back(b);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!dead_.empty()) {
      int y = dead_.front();
      dead_.pop_front();
      for (int x = 0; x < 2 * ng_; ++x) {
        int d = entry(y, x);
        if (d == UNDEF) {
          continue;
        }
        entry(d, inv(x)) = UNDEF;
        int mu = rep(y);
        int nu = rep(d);
        if (entry(mu, x) != UNDEF) {
          merge(nu, entry(mu, x));
        } else if (entry(nu, inv(x)) != UNDEF) {
          merge(mu, entry(nu, inv(x)));
        } else {
          entry(mu, x) = nu;
          entry(nu, inv(x)) = mu;
        }
      }
    }
  }

  void scan_and_fill(int a, std::vector<int> const& w) {
    a = rep(a);
    int f = a;
    int b = a;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && entry(f, w[i]) != UNDEF) {
        f = entry(f, w[i]);
        ++i;
      }
      if (i > j) {
        if (f != b) {
          coincidence(f, b);
        }
        return;
      }
      while (j >= i && entry(b, inv(w[j])) != UNDEF) {
        b = entry(b, inv(w[j]));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        entry(f, w[i]) = b;
        entry(b, inv(w[i])) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  CosetTable compact() {
    std::vector<int> id(n_total_, -1);
    int k = 0;
    for (int c = 0; c < n_total_; ++c) {
      if (rep(c) == c) {
        id[c] = k++;
      }
    }
    CosetTable t;
    t.n_gens = ng_;
    t.n_cosets = k;
    t.tab.assign(static_cast<size_t>(k) * 2 * ng_, UNDEF);
    for (int c = 0; c < n_total_; ++c) {
      if (rep(c) != c) {
        continue;
      }
      for (int x = 0; x < 2 * ng_; ++x) {
        int d = entry(c, x);
        if (d == UNDEF) {
          throw enumeration_error("coset table failed to close");
        }
        t.tab[static_cast<size_t>(id[c]) * 2 * ng_ + x] = id[rep(d)];
      }
    }
    return t;
  }

  int ng_;
  long cap_;
  std::vector<std::vector<int>> rels_;
  std::vector<std::vector<int>> subs_;
  std::vector<int> tab_;
  std::vector<int> p_;
  std::deque<int> dead_;
  int n_total_ = 0;
  long merges_ = 0;
};

}  // namespace detail

inline CosetTable todd_coxeter(int n_gens, std::vector<Word> const& relators,
                               std::vector<Word> const& subgroup_words,
                               long cap = 1000000) {
  return detail::ToddCoxeter(n_gens, relators, subgroup_words, cap).run();
}

// A finite factor realized concretely: the complete coset table over the
// trivial subgroup, i.e. the Cayley graph. Elements are row indices,
// 0 is the identity.
struct CayleyModel {
  GroupPresentation pres;
  CosetTable table;
  std::vector<Word> repwords;  // shortest positive-letter word per element
  std::vector<int> inverses;

  int order() const { return table.n_cosets; }
  int identity() const { return 0; }

  int eval_from(int e, Word const& w) const { return table.walk(e, w); }
  int eval(Word const& w) const { return eval_from(0, w); }
  int mul(int a, int b) const { return eval_from(a, repwords[b]); }
  int inv(int e) const { return inverses[e]; }
  int conj(int g, int a) const { return mul(mul(inv(g), a), g); }
};

namespace detail {

// BFS over positive letters only, in declared generator order. Finite groups
// are reachable by positive letters alone, and this matches the fixed
// transversal convention used for normal forms.
inline std::vector<Word> bfs_repwords(CosetTable const& t) {
  std::vector<Word> rep(t.n_cosets);
  std::vector<bool> seen(t.n_cosets, false);
  std::deque<int> q;
  seen[0] = true;
  q.push_back(0);
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int g = 0; g < t.n_gens; ++g) {
      int d = t.at(c, g, +1);
      if (d != UNDEF && !seen[d]) {
        seen[d] = true;
        rep[d] = rep[c];
        rep[d].push_back(Letter{g, +1});
        q.push_back(d);
      }
    }
  }
  for (int c = 0; c < t.n_cosets; ++c) {
    if (!seen[c]) {
      throw enumeration_error("coset table not transitive under positive letters");
    }
  }
  return rep;
}

}  // namespace detail

inline CayleyModel enumerate(GroupPresentation const& pres,
                             long cap = 1000000) {
  CayleyModel m;
  m.pres = pres;
  m.table = todd_coxeter(pres.n_gens(), pres.relators, {}, cap);
  m.repwords = detail::bfs_repwords(m.table);
  m.inverses.resize(m.order());
  for (int e = 0; e < m.order(); ++e) {
    m.inverses[e] = m.table.walk(0, inverse(m.repwords[e]));
  }
  return m;
}

// Closure of a set of elements under product and inverse; sorted.
inline std::vector<int> subgroup_closure(CayleyModel const& m,
                                         std::vector<int> const& gens) {
  std::vector<bool> in(m.order(), false);
  in[m.identity()] = true;
  std::deque<int> q;
  q.push_back(m.identity());
  for (int g : gens) {
    if (!in[g]) {
      in[g] = true;
      q.push_back(g);
    }
  }
  while (!q.empty()) {
    int e = q.front();
    q.pop_front();
    for (int g : gens) {
      for (int f : {m.mul(e, g), m.mul(e, m.inv(g))}) {
        if (!in[f]) {
          in[f] = true;
          q.push_back(f);
        }
      }
    }
  }
  std::vector<int> out;
  for (int e = 0; e < m.order(); ++e) {
    if (in[e]) {
      out.push_back(e);
    }
  }
  return out;
}

// Coset table of G relative to <subgroup_words>, derived from the already
// enumerated Cayley model (the factor is finite, so no second enumeration is
// needed). Coset 0 is S*1; numbering is BFS from it.
struct RelativeCayley {
  CosetTable table;
  std::vector<int> coset_of_element;   // size |G|
  std::vector<int> subgroup_elements;  // sorted
};

inline RelativeCayley relative_cayley(CayleyModel const& m,
                                      std::vector<Word> const& subgroup_words) {
  std::vector<int> gens;
  gens.reserve(subgroup_words.size());
  for (auto const& w : subgroup_words) {
    gens.push_back(m.eval(w));
  }
  RelativeCayley rc;
  rc.subgroup_elements = subgroup_closure(m, gens);
  // right cosets S*g = {s*g}, numbered by BFS from S*1
  std::vector<int> coset(m.order(), -1);
  int n = 0;
  std::deque<int> q;
  auto mark = [&](int g) {
    if (coset[g] >= 0) {
      return;
    }
    for (int s : rc.subgroup_elements) {
      coset[m.mul(s, g)] = n;
    }
    ++n;
    q.push_back(g);
  };
  mark(m.identity());
  while (!q.empty()) {
    int g = q.front();
    q.pop_front();
    for (int x = 0; x < m.pres.n_gens(); ++x) {
      for (int sign : {+1, -1}) {
        mark(m.table.at(g, x, sign));
      }
    }
  }
  CosetTable t;
  t.n_gens = m.pres.n_gens();
  t.n_cosets = n;
  t.tab.assign(static_cast<size_t>(n) * 2 * t.n_gens, UNDEF);
  for (int g = 0; g < m.order(); ++g) {
    for (int x = 0; x < t.n_gens; ++x) {
      for (int sign : {+1, -1}) {
        t.tab[static_cast<size_t>(coset[g]) * 2 * t.n_gens + 2 * x
              + (sign < 0)] = coset[m.table.at(g, x, sign)];
      }
    }
  }
  rc.table = t;
  rc.coset_of_element = coset;
  return rc;
}

// BFS-shortest representative word per row of a complete coset table, over
// positive letters in declared generator order (ties resolved by the BFS
// visit order, which is lexicographic). Row 0 gets the empty word.
inline std::vector<Word> transversal_words(CosetTable const& t) {
  std::vector<Word> rep(t.n_cosets);
  std::vector<bool> seen(t.n_cosets, false);
  std::deque<int> q;
  seen[0] = true;
  q.push_back(0);
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int g = 0; g < t.n_gens; ++g) {
      int d = t.at(c, g, +1);
      if (d != UNDEF && !seen[d]) {
        seen[d] = true;
        rep[d] = rep[c];
        rep[d].push_back(Letter{g, +1});
        q.push_back(d);
      }
    }
  }
  return rep;
}

// One representative word per right coset of <subgroup_elements>.
inline std::vector<Word> coset_transversal(CayleyModel const& m,
                                           std::vector<int> const& subgroup_elements) {
  std::vector<Word> words;
  words.reserve(subgroup_elements.size());
  for (int e : subgroup_elements) {
    words.push_back(m.repwords[e]);
  }
  return transversal_words(relative_cayley(m, words).table);
}

// Plain-text coset table: one row per coset, one column per generator.
inline std::string coset_table_str(CosetTable const& t,
                                   std::vector<std::string> const& names) {
  std::string s = "coset";
  for (int g = 0; g < t.n_gens; ++g) {
    s += "\t" + names[g] + "\t" + names[g] + "^-1";
  }
  s += "\n";
  for (int c = 0; c < t.n_cosets; ++c) {
    s += std::to_string(c);
    for (int g = 0; g < t.n_gens; ++g) {
      s += "\t" + std::to_string(t.at(c, g, +1)) + "\t"
           + std::to_string(t.at(c, g, -1));
    }
    s += "\n";
  }
  return s;
}

// DOT view of a coset table: one arrow per positive generator.
inline std::string coset_table_dot(CosetTable const& t,
                                   std::vector<std::string> const& names) {
  std::string s = "digraph coset_table {\n  node [shape=circle];\n"
                  "  c0 [shape=doublecircle];\n";
  for (int c = 0; c < t.n_cosets; ++c) {
    for (int g = 0; g < t.n_gens; ++g) {
      s += "  c" + std::to_string(c) + " -> c" + std::to_string(t.at(c, g, +1))
           + " [label=\"" + names[g] + "\"];\n";
    }
  }
  s += "}\n";
  return s;
}

}  // namespace amalgam

#endif  // AMALGAM_COSET_ENUM_HPP_
