#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "amalgam/context.hpp"
#include "amalgam/coset_enum.hpp"
#include "helpers.hpp"

using namespace amalgam;
using namespace testutil;

TEST_CASE("enumerating small cyclic groups") {
  CayleyModel z4 = enumerate(presentation({"x"}, {"x^4"}));
  REQUIRE(z4.order() == 4);
  CayleyModel z6 = enumerate(presentation({"y"}, {"y^6"}));
  REQUIRE(z6.order() == 6);
}

TEST_CASE("enumeration cap trips on infinite groups") {
  GroupPresentation zfree;
  zfree.generators = {"x"};
  REQUIRE_THROWS_AS(enumerate(zfree, 1000), enumeration_error);
}

TEST_CASE("enumerating nonabelian factors") {
  CayleyModel s3 = enumerate(presentation({"s", "t"}, {"s^2", "t^3", "s t s t"}));
  REQUIRE(s3.order() == 6);
  CayleyModel dic3 =
      enumerate(presentation({"p", "q"}, {"p^6", "q^2 p^-3", "q^-1 p q p"}));
  REQUIRE(dic3.order() == 12);
  CayleyModel d4 = enumerate(presentation({"r", "s"}, {"r^4", "s^2", "r s r s"}));
  REQUIRE(d4.order() == 8);
}

TEST_CASE("word evaluation in a model") {
  CayleyModel z4 = enumerate(presentation({"x"}, {"x^4"}));
  REQUIRE(z4.eval(parse_word("x^4", {"x"})) == z4.identity());
  REQUIRE(z4.eval({}) == z4.identity());
  CayleyModel z6 = enumerate(presentation({"y"}, {"y^6"}));
  REQUIRE(z6.eval(parse_word("y^3 y^3", {"y"})) == z6.identity());
}

TEST_CASE("relators close at every element of every model") {
  for (auto const& pres :
       {presentation({"x"}, {"x^4"}),
        presentation({"s", "t"}, {"s^2", "t^3", "s t s t"}),
        presentation({"p", "q"}, {"p^6", "q^2 p^-3", "q^-1 p q p"})}) {
    CayleyModel m = enumerate(pres);
    for (int e = 0; e < m.order(); ++e) {
      for (auto const& r : pres.relators) {
        REQUIRE(m.eval_from(e, r) == e);
      }
    }
  }
}

TEST_CASE("relative Cayley graphs") {
  CayleyModel z4 = enumerate(presentation({"x"}, {"x^4"}));
  RelativeCayley rc = relative_cayley(z4, {parse_word("x^2", {"x"})});
  REQUIRE(rc.table.n_cosets == 2);

  CayleyModel z6 = enumerate(presentation({"y"}, {"y^6"}));
  REQUIRE(relative_cayley(z6, {parse_word("y^3", {"y"})}).table.n_cosets == 3);

  // trivial subgroup: the coset graph is the Cayley graph itself
  RelativeCayley full = relative_cayley(z4, {});
  REQUIRE(full.table.n_cosets == 4);
  for (auto const& w :
       {std::string(""), std::string("x"), std::string("x^2 x"),
        std::string("x^-1"), std::string("x^3 x^2")}) {
    Word word = parse_word(w, {"x"});
    REQUIRE((full.table.walk(0, word) == 0) == (z4.eval(word) == 0));
  }

  // |cosets| * |subgroup| = |G|
  for (auto const& w : {std::string("x"), std::string("x^2")}) {
    RelativeCayley r = relative_cayley(z4, {parse_word(w, {"x"})});
    REQUIRE(r.table.n_cosets
                * static_cast<int>(r.subgroup_elements.size())
            == z4.order());
  }
}

TEST_CASE("coset transversals are BFS-shortest, positive letters") {
  CayleyModel z4 = enumerate(presentation({"x"}, {"x^4"}));
  std::vector<int> sub{z4.identity(), z4.eval(parse_word("x^2", {"x"}))};
  std::sort(sub.begin(), sub.end());
  auto reps = coset_transversal(z4, sub);
  REQUIRE(reps.size() == 2);
  REQUIRE(word_str(reps[0], {"x"}) == "");
  REQUIRE(word_str(reps[1], {"x"}) == "x");

  CayleyModel z6 = enumerate(presentation({"y"}, {"y^6"}));
  std::vector<int> sub6{z6.identity(), z6.eval(parse_word("y^3", {"y"}))};
  std::sort(sub6.begin(), sub6.end());
  auto reps6 = coset_transversal(z6, sub6);
  REQUIRE(reps6.size() == 3);
  REQUIRE(word_str(reps6[0], {"y"}) == "");
  REQUIRE(word_str(reps6[1], {"y"}) == "y");
  REQUIRE(word_str(reps6[2], {"y"}) == "y^2");

  std::vector<int> whole;
  for (int e = 0; e < z4.order(); ++e) {
    whole.push_back(e);
  }
  REQUIRE(coset_transversal(z4, whole).size() == 1);

  // representatives land in pairwise distinct cosets
  std::set<int> seen;
  for (auto const& r : reps6) {
    int e = z6.eval(r);
    // coset of e under sub6: the minimal element of {s*e}
    int mn = z6.order();
    for (int s : sub6) {
      mn = std::min(mn, z6.mul(s, e));
    }
    REQUIRE(seen.insert(mn).second);
  }
}

TEST_CASE("edge subgroup enumeration on the running amalgam") {
  Amalgam const& ctx = sl2z();
  REQUIRE(ctx.A.order() == 2);
  REQUIRE(ctx.A.pairs[0].first == ctx.g1.identity());
  REQUIRE(ctx.A.pairs[1].first == ctx.g1.eval(parse_word("x^2", {"x"})));
  REQUIRE(ctx.A.pairs[1].second == ctx.g2.eval(parse_word("y^3", {"y"})));

  auto [e1, e2] = edge_image(ctx);
  REQUIRE(e1.elements.size() == e2.elements.size());
  REQUIRE(e1.elements
          == std::vector<int>({ctx.g1.identity(),
                               ctx.g1.eval(parse_word("x^2", {"x"}))}));
  // evaluating Y-words lands inside the image
  Word aa = {Letter{0, +1}, Letter{0, +1}};
  REQUIRE(eval_edge_word(ctx, 1, aa) == ctx.g1.identity());
  REQUIRE(eval_edge_word(ctx, 2, {Letter{0, +1}})
          == ctx.g2.eval(parse_word("y^3", {"y"})));
}

TEST_CASE("coset table exports") {
  CayleyModel z4 = enumerate(presentation({"x"}, {"x^4"}));
  std::string s = coset_table_str(z4.table, {"x"});
  REQUIRE(s.find("coset\tx\tx^-1") == 0);
  // four rows follow the header
  REQUIRE(std::count(s.begin(), s.end(), '\n') == 5);
  std::string d = coset_table_dot(z4.table, {"x"});
  REQUIRE(d.find("digraph coset_table") == 0);
  REQUIRE(d.find("label=\"x\"") != std::string::npos);
}

TEST_CASE("free products have a trivial edge subgroup") {
  Amalgam const& ctx = free_product();
  REQUIRE(ctx.A.order() == 1);
  REQUIRE(ctx.tags.cyclic);
  REQUIRE(ctx.tags.central_in[1]);
  REQUIRE(ctx.tags.central_in[2]);
  REQUIRE(ctx.tags.malnormal_in[1]);
  REQUIRE(ctx.tags.malnormal_in[2]);
}

TEST_CASE("validation rejects incompatible edge images") {
  AmalgamSpec bad = sl2z_spec();
  bad.phi1 = {parse_word("x", bad.factor1.generators)};  // order 4 vs order 2
  REQUIRE_THROWS_AS(validate_amalgam(bad), validation_error);
}

TEST_CASE("validation rejects alphabet clashes") {
  AmalgamSpec bad = sl2z_spec();
  bad.factor2 = presentation({"x"}, {"x^6"});
  bad.phi2 = {parse_word("x^3", bad.factor2.generators)};
  REQUIRE_THROWS_AS(validate_amalgam(bad), validation_error);
}

TEST_CASE("validation rejects a non-proper edge subgroup") {
  AmalgamSpec bad = sl2z_spec();
  bad.phi1 = {parse_word("x", bad.factor1.generators)};
  bad.factor2 = presentation({"y"}, {"y^4"});
  bad.phi2 = {parse_word("y", bad.factor2.generators)};
  // both images are the whole factor
  REQUIRE_THROWS_AS(validate_amalgam(bad), validation_error);
}

TEST_CASE("classification of the edge subgroup") {
  REQUIRE(sl2z().tags.cyclic);
  REQUIRE(sl2z().tags.central_in[1]);
  REQUIRE(sl2z().tags.central_in[2]);
  REQUIRE(sl2z().tags.malnormal_in[1] == false);
  REQUIRE(sl2z().tags.malnormal_in[2] == false);

  REQUIRE(s3z4().tags.cyclic);
  REQUIRE(s3z4().tags.malnormal_in[1]);
  REQUIRE(s3z4().tags.central_in[1] == false);
  REQUIRE(s3z4().tags.central_in[2]);

  REQUIRE(dic3z8().tags.cyclic);
  REQUIRE(dic3z8().tags.central_in[1] == false);
  REQUIRE(dic3z8().tags.malnormal_in[1] == false);
  REQUIRE(dic3z8().tags.central_in[2]);

  REQUIRE(d4d4().tags.cyclic == false);
  REQUIRE(d4d4().tags.central_in[1] == false);
  REQUIRE(d4d4().tags.central_in[2] == false);
  REQUIRE(d4d4().tags.malnormal_in[1] == false);
  REQUIRE(d4d4().tags.malnormal_in[2] == false);
  REQUIRE(d4d4().tags.any() == false);
}

TEST_CASE("subgroup lattice of the edge subgroup") {
  auto subs = dic3z8().A.all_subgroups();
  // Z4 has exactly three subgroups
  REQUIRE(subs.size() == 3);
  auto v4 = d4d4().A.all_subgroups();
  // Klein four group: trivial, three Z2, whole
  REQUIRE(v4.size() == 5);
}

TEST_CASE("full amalgam presentation enumerates known finite quotients") {
  // index of <x y^2 x, y x y x> in the running amalgam is 2 (oracle data
  // exercised further in the decisions tests)
  Amalgam const& ctx = sl2z();
  GroupPresentation full = ctx.full_presentation();
  auto names = ctx.global_names();
  CosetTable t = todd_coxeter(
      full.n_gens(), full.relators,
      {parse_word("x y^2 x", names), parse_word("y x y x", names)});
  REQUIRE(t.n_cosets == 2);
}
