#ifndef AMALGAM_TESTS_HELPERS_HPP_
#define AMALGAM_TESTS_HELPERS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amalgam/context.hpp"
#include "amalgam/presentation.hpp"
#include "amalgam/word.hpp"

namespace testutil {

using namespace amalgam;

inline GroupPresentation presentation(std::vector<std::string> gens,
                                      std::vector<std::string> rels) {
  GroupPresentation p;
  p.generators = std::move(gens);
  for (auto const& r : rels) {
    p.relators.push_back(parse_word(r, p.generators));
  }
  return p;
}

// Z4 *_{Z2} Z6, the running SL(2,Z) amalgam.
inline AmalgamSpec sl2z_spec() {
  AmalgamSpec s;
  s.factor1 = presentation({"x"}, {"x^4"});
  s.factor2 = presentation({"y"}, {"y^6"});
  s.edge_generators = {"a"};
  s.phi1 = {parse_word("x^2", s.factor1.generators)};
  s.phi2 = {parse_word("y^3", s.factor2.generators)};
  return s;
}

// S3 *_{Z2} Z4 with A = <s> malnormal in S3 and central in Z4.
inline AmalgamSpec s3z4_spec() {
  AmalgamSpec s;
  s.factor1 = presentation({"s", "t"}, {"s^2", "t^3", "s t s t"});
  s.factor2 = presentation({"z"}, {"z^4"});
  s.edge_generators = {"a"};
  s.phi1 = {parse_word("s", s.factor1.generators)};
  s.phi2 = {parse_word("z^2", s.factor2.generators)};
  return s;
}

// Dic3 *_{Z4} Z8: A = Z4 cyclic, not normal in the dicyclic factor, so the
// inner claim of the cyclic embedding recurses through a proper subgroup.
inline AmalgamSpec dic3z8_spec() {
  AmalgamSpec s;
  s.factor1 = presentation({"p", "q"}, {"p^6", "q^2 p^-3", "q^-1 p q p"});
  s.factor2 = presentation({"c"}, {"c^8"});
  s.edge_generators = {"a"};
  s.phi1 = {parse_word("q", s.factor1.generators)};
  s.phi2 = {parse_word("c^2", s.factor2.generators)};
  return s;
}

// D4 *_{V4} D4: A is Klein four, neither cyclic nor central nor malnormal
// in either factor; separation is unsupported here.
inline AmalgamSpec d4d4_spec() {
  AmalgamSpec s;
  s.factor1 = presentation({"r", "s"}, {"r^4", "s^2", "r s r s"});
  s.factor2 = presentation({"u", "v"}, {"u^4", "v^2", "u v u v"});
  s.edge_generators = {"a", "b"};
  s.phi1 = {parse_word("r^2", s.factor1.generators),
            parse_word("s", s.factor1.generators)};
  s.phi2 = {parse_word("u^2", s.factor2.generators),
            parse_word("v", s.factor2.generators)};
  return s;
}

// Z4 * Z6 free product (trivial edge subgroup).
inline AmalgamSpec free_product_spec() {
  AmalgamSpec s;
  s.factor1 = presentation({"x"}, {"x^4"});
  s.factor2 = presentation({"y"}, {"y^6"});
  return s;
}

inline Amalgam const& sl2z() {
  static Amalgam ctx = validate_amalgam(sl2z_spec());
  return ctx;
}
inline Amalgam const& s3z4() {
  static Amalgam ctx = validate_amalgam(s3z4_spec());
  return ctx;
}
inline Amalgam const& dic3z8() {
  static Amalgam ctx = validate_amalgam(dic3z8_spec());
  return ctx;
}
inline Amalgam const& d4d4() {
  static Amalgam ctx = validate_amalgam(d4d4_spec());
  return ctx;
}
inline Amalgam const& free_product() {
  static Amalgam ctx = validate_amalgam(free_product_spec());
  return ctx;
}

inline Word gw(Amalgam const& ctx, std::string const& text) {
  return parse_word(text, ctx.global_names());
}

inline Word random_word(Amalgam const& ctx, std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> gen(0, ctx.n_labels() - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) {
    w.push_back(Letter{gen(rng), sgn(rng) ? +1 : -1});
  }
  return w;
}

// 2x2 integer matrices: the isomorphism of the running amalgam with
// SL(2,Z), an implementation-independent ground truth.
struct Mat2 {
  long long a, b, c, d;

  friend Mat2 operator*(Mat2 const& m, Mat2 const& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  Mat2 inv() const { return {d, -b, -c, a}; }  // det == 1
  friend bool operator==(Mat2 const& m, Mat2 const& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
  static Mat2 id() { return {1, 0, 0, 1}; }
};

// x -> [[0,1],[-1,0]], y -> [[0,-1],[1,1]]; word letters are the global
// letters of the sl2z context (0 = x, 1 = y).
inline Mat2 sl2z_matrix(Word const& w) {
  Mat2 const X{0, 1, -1, 0};
  Mat2 const Y{0, -1, 1, 1};
  Mat2 m = Mat2::id();
  for (Letter const& l : w) {
    Mat2 g = l.gen == 0 ? X : Y;
    if (l.sign < 0) {
      g = g.inv();
    }
    m = m * g;
  }
  return m;
}

}  // namespace testutil

#endif  // AMALGAM_TESTS_HELPERS_HPP_
