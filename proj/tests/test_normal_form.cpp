#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "amalgam/normal_form.hpp"
#include "helpers.hpp"

using namespace amalgam;
using namespace testutil;

TEST_CASE("normal form of amalgamation relations") {
  Amalgam const& ctx = sl2z();
  REQUIRE(normal_form(ctx, gw(ctx, "x^2 y^-3")).is_identity());
  REQUIRE(normal_form(ctx, {}).is_identity());

  NormalWord nf = normal_form(ctx, gw(ctx, "x y"));
  REQUIRE(nf.syllables.size() == 2);
  REQUIRE(!nf.is_identity());
}

TEST_CASE("equality in G") {
  Amalgam const& ctx = sl2z();
  REQUIRE(equal_in_g(ctx, gw(ctx, "x^2"), gw(ctx, "y^3")));
  REQUIRE(equal_in_g(ctx, gw(ctx, "x"), gw(ctx, "x^-3")));
  REQUIRE(!equal_in_g(ctx, gw(ctx, "x y"), gw(ctx, "y x")));
  // cross-check the last pair against the matrix model
  REQUIRE(!(sl2z_matrix(gw(ctx, "x y")) == sl2z_matrix(gw(ctx, "y x"))));
}

TEST_CASE("syllable length") {
  Amalgam const& ctx = sl2z();
  REQUIRE(syllable_length(ctx, gw(ctx, "x^2")) == 1);
  REQUIRE(syllable_length(ctx, {}) == 0);
  REQUIRE(syllable_length(ctx, gw(ctx, "x y x y")) == 4);
  REQUIRE(syllable_length(ctx, gw(ctx, "x^4")) == 0);
  REQUIRE(syllable_length(ctx, gw(ctx, "y")) == 1);
}

TEST_CASE("canonicity against the matrix model") {
  Amalgam const& ctx = sl2z();
  std::mt19937_64 rng(41);
  int checked_equal = 0;
  for (int trial = 0; trial < 600; ++trial) {
    Word w1 = random_word(ctx, rng, 1 + static_cast<int>(rng() % 12));
    Word w2 = random_word(ctx, rng, 1 + static_cast<int>(rng() % 12));
    bool eq_matrix = sl2z_matrix(w1) == sl2z_matrix(w2);
    bool eq_nf = normal_form(ctx, w1) == normal_form(ctx, w2);
    bool eq_g = equal_in_g(ctx, w1, w2);
    REQUIRE(eq_nf == eq_matrix);
    REQUIRE(eq_g == eq_matrix);
    checked_equal += eq_matrix;
  }
  // the sample must exercise both outcomes
  REQUIRE(checked_equal > 0);
}

TEST_CASE("normal words of two or more syllables are nontrivial") {
  Amalgam const& ctx = sl2z();
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(ctx, rng, 1 + static_cast<int>(rng() % 12));
    NormalWord nf = normal_form(ctx, w);
    if (nf.syllables.size() >= 2) {
      REQUIRE(!(sl2z_matrix(w) == Mat2::id()));
    }
  }
}

TEST_CASE("inserting a relator anywhere does not change the normal form") {
  std::mt19937_64 rng(47);
  for (Amalgam const* pctx : {&sl2z(), &s3z4(), &dic3z8(), &d4d4()}) {
    Amalgam const& ctx = *pctx;
    // defining relators of the whole amalgam, including the edge relations
    std::vector<Word> relators;
    for (auto const& r : ctx.full_presentation().relators) {
      relators.push_back(r);
      relators.push_back(inverse(r));
    }
    for (int trial = 0; trial < 120; ++trial) {
      Word w = random_word(ctx, rng, static_cast<int>(rng() % 10));
      Word const& r = relators[rng() % relators.size()];
      size_t pos = w.empty() ? 0 : rng() % (w.size() + 1);
      Word spliced(w.begin(), w.begin() + pos);
      spliced = concat(spliced, r);
      spliced.insert(spliced.end(), w.begin() + pos, w.end());
      REQUIRE(normal_form(ctx, spliced) == normal_form(ctx, w));
    }
  }
}

TEST_CASE("conjugation-invariance of triviality of the normal form") {
  // w u w^-1 is trivial exactly when u is
  std::mt19937_64 rng(51);
  for (Amalgam const* pctx : {&sl2z(), &s3z4(), &dic3z8()}) {
    Amalgam const& ctx = *pctx;
    for (int trial = 0; trial < 100; ++trial) {
      Word u = random_word(ctx, rng, static_cast<int>(rng() % 8));
      Word w = random_word(ctx, rng, static_cast<int>(rng() % 8));
      Word conj = concat(concat(w, u), inverse(w));
      REQUIRE(normal_form(ctx, conj).is_identity()
              == normal_form(ctx, u).is_identity());
    }
  }
}

TEST_CASE("the reading word is a normal word for the same element") {
  Amalgam const& ctx = sl2z();
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_word(ctx, rng, static_cast<int>(rng() % 12));
    NormalWord nf = normal_form(ctx, w);
    Word rw = reading_word(ctx, nf);
    REQUIRE(sl2z_matrix(rw) == sl2z_matrix(w));
    REQUIRE(normal_form(ctx, rw) == nf);
  }
}

TEST_CASE("normal form serialization") {
  Amalgam const& ctx = sl2z();
  NormalWord nf = normal_form(ctx, gw(ctx, "x^2 y"));
  std::string s = normal_word_str(ctx, nf);
  REQUIRE(s.find("[A:") == 0);
  REQUIRE(s.find("(2:") != std::string::npos);
}

TEST_CASE("normal forms in the dicyclic amalgam") {
  Amalgam const& ctx = dic3z8();
  // q = c^2 is the amalgamation relation
  REQUIRE(equal_in_g(ctx, gw(ctx, "q"), gw(ctx, "c^2")));
  REQUIRE(equal_in_g(ctx, gw(ctx, "q^2"), gw(ctx, "p^3")));
  REQUIRE(equal_in_g(ctx, gw(ctx, "q^2"), gw(ctx, "c^4")));
  REQUIRE(!equal_in_g(ctx, gw(ctx, "p"), gw(ctx, "c")));
  REQUIRE(syllable_length(ctx, gw(ctx, "p c p c")) == 4);
}
