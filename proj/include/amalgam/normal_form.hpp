#ifndef AMALGAM_NORMAL_FORM_HPP_
#define AMALGAM_NORMAL_FORM_HPP_

#include <string>
#include <utility>
#include <vector>

#include "context.hpp"
#include "word.hpp"

namespace amalgam {

// Canonical form of an element of G = G1 *_A G2: an A-part anchored on the
// left (stored as an edge-subgroup pair index) followed by alternating coset
// representatives, each a fixed transversal word outside A. Two words are
// equal in G iff their NormalWord values are identical.
struct NormalWord {
  int prefix = 0;  // pair index into Amalgam::A; 0 is the identity
  std::vector<std::pair<int, Word>> syllables;  // (factor, rep word, global letters)

  bool is_identity() const { return prefix == 0 && syllables.empty(); }

  friend bool operator==(NormalWord const& a, NormalWord const& b) {
    return a.prefix == b.prefix && a.syllables == b.syllables;
  }
  friend bool operator!=(NormalWord const& a, NormalWord const& b) {
    return !(a == b);
  }
};

namespace detail {

struct Syllable {
  int factor;
  int elem;
};

// Collapse a syllable list until it alternates factors with every interior
// element outside the A-image. Single syllables may remain inside A.
inline std::vector<Syllable> reduce_syllables(Amalgam const& ctx,
                                              std::vector<Syllable> s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i].elem == ctx.model(s[i].factor).identity()) {
        s.erase(s.begin() + i);
        changed = true;
        break;
      }
      if (i + 1 < s.size() && s[i].factor == s[i + 1].factor) {
        s[i].elem = ctx.model(s[i].factor).mul(s[i].elem, s[i + 1].elem);
        s.erase(s.begin() + i + 1);
        changed = true;
        break;
      }
      if (s.size() > 1 && ctx.A.contains_elem(s[i].factor, s[i].elem)) {
        // convert through the edge identification and merge with a neighbour
        int a = ctx.A.pair_of(s[i].factor, s[i].elem);
        if (i > 0) {
          int f = s[i - 1].factor;
          s[i - 1].elem = ctx.model(f).mul(s[i - 1].elem, ctx.A.elem(a, f));
          s.erase(s.begin() + i);
        } else {
          int f = s[i + 1].factor;
          s[i + 1].elem = ctx.model(f).mul(ctx.A.elem(a, f), s[i + 1].elem);
          s.erase(s.begin() + i);
        }
        changed = true;
        break;
      }
    }
  }
  return s;
}

}  // namespace detail

// Canonical normal form; see NormalWord. The A-part of each syllable is
// split off on the left via the fixed transversal and pushed leftwards, so
// the whole prefix accumulates in front.
inline NormalWord normal_form(Amalgam const& ctx, Word const& w) {
  std::vector<detail::Syllable> syl;
  for (auto const& [factor, run] : ctx.split_syllables(w)) {
    syl.push_back(
        {factor, ctx.model(factor).eval(ctx.to_local(factor, run))});
  }
  syl = detail::reduce_syllables(ctx, syl);

  NormalWord nf;
  if (syl.size() == 1 && ctx.A.contains_elem(syl[0].factor, syl[0].elem)) {
    nf.prefix = ctx.A.pair_of(syl[0].factor, syl[0].elem);
    return nf;
  }
  int carry = 0;  // A pair accumulated from the right
  std::vector<std::pair<int, Word>> rev;
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
    auto const& m = ctx.model(it->factor);
    auto const& fc = ctx.cosets(it->factor);
    int e = m.mul(it->elem, ctx.A.elem(carry, it->factor));
    int c = fc.coset_of[e];
    rev.push_back({it->factor, ctx.to_global(it->factor, fc.rep[c])});
    int a_elem = m.mul(e, m.inv(fc.rep_elem[c]));
    carry = ctx.A.pair_of(it->factor, a_elem);
  }
  nf.prefix = carry;
  nf.syllables.assign(rev.rbegin(), rev.rend());
  return nf;
}

inline bool equal_in_g(Amalgam const& ctx, Word const& w1, Word const& w2) {
  return normal_form(ctx, concat(w1, inverse(w2))).is_identity();
}

// l(g): 0 for the identity, 1 for nontrivial single-factor elements,
// otherwise the number of alternating syllables.
inline int syllable_length(Amalgam const& ctx, Word const& w) {
  NormalWord nf = normal_form(ctx, w);
  if (!nf.syllables.empty()) {
    return static_cast<int>(nf.syllables.size());
  }
  return nf.prefix == 0 ? 0 : 1;
}

// A normal word over X representing the same element, with the A-part
// absorbed into the first syllable. This is the word read against subgroup
// graphs; membership reading is only sound on normal words.
inline Word reading_word(Amalgam const& ctx, NormalWord const& nf) {
  if (nf.syllables.empty()) {
    if (nf.prefix == 0) {
      return {};
    }
    return ctx.a_word(nf.prefix, 1);
  }
  Word out;
  for (size_t i = 0; i < nf.syllables.size(); ++i) {
    auto const& [factor, rep] = nf.syllables[i];
    if (i == 0 && nf.prefix != 0) {
      auto const& m = ctx.model(factor);
      int e = m.mul(ctx.A.elem(nf.prefix, factor),
                    m.eval(ctx.to_local(factor, rep)));
      out = ctx.to_global(factor, m.repwords[e]);
    } else {
      out.insert(out.end(), rep.begin(), rep.end());
    }
  }
  return out;
}

// Serialization `[A: <word>] (<factor>:<rep-word>)*` used by the CLI.
inline std::string normal_word_str(Amalgam const& ctx, NormalWord const& nf) {
  auto names = ctx.global_names();
  std::string s = "[A: " + word_str(ctx.a_word(nf.prefix, 1), names) + "]";
  for (auto const& [factor, rep] : nf.syllables) {
    s += " (" + std::to_string(factor) + ":" + word_str(rep, names) + ")";
  }
  return s;
}

}  // namespace amalgam

#endif  // AMALGAM_NORMAL_FORM_HPP_
