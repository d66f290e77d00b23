#include <gtest/gtest.h>

#include <array>
#include <numeric>
#include <set>

#include "pact/error.hpp"
#include "pact/group.hpp"
#include "support.hpp"

namespace pact {
namespace {

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no pact::Error thrown";
  return Errc::InternalInconsistency;
}

Subgroup generated(const GroupPtr& g, std::vector<std::string> labels) {
  std::vector<Element> gens;
  for (const auto& l : labels) gens.push_back(g->at(l));
  return subgroup_closure(g, gens);
}

std::vector<std::string> labels_of(const FiniteGroup& g, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (Element x : xs) out.push_back(g.name(x));
  return out;
}

TEST(MakeGroup, TrivialTable) {
  auto g = make_group({{0}});
  EXPECT_EQ(g->order(), 1u);
  EXPECT_EQ(g->identity(), 0u);
}

TEST(MakeGroup, CyclicOfOrderTwo) {
  auto g = make_group({{0, 1}, {1, 0}}, {"1", "s"});
  EXPECT_EQ(g->order(), 2u);
  EXPECT_EQ(g->inv(1), 1u);
  EXPECT_EQ(g->at("s"), 1u);
}

TEST(MakeGroup, RejectsNonAssociativeLoop) {
  // Latin square with identity 0 where every element squares to 0; no group of
  // order 5 looks like that.
  const std::vector<std::vector<Element>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_EQ(error_of([&] { make_group(loop); }), Errc::NotAGroup);
}

TEST(MakeGroup, RejectsBrokenTables) {
  EXPECT_EQ(error_of([] { make_group({}); }), Errc::NotAGroup);
  EXPECT_EQ(error_of([] { make_group({{0, 1}, {1}}); }), Errc::NotAGroup);
  EXPECT_EQ(error_of([] { make_group({{0, 2}, {1, 0}}); }), Errc::NotAGroup);
  EXPECT_EQ(error_of([] { make_group({{0, 0}, {1, 1}}); }), Errc::NotAGroup);
  EXPECT_EQ(error_of([] { make_group({{1, 0}, {0, 0}}); }), Errc::NotAGroup);
  EXPECT_EQ(error_of([] { make_group({{0, 1}, {1, 0}}, {"x", "x"}); }), Errc::NotAGroup);
}

TEST(MakeGroup, OrderCap) {
  std::vector<std::vector<Element>> big(65, std::vector<Element>(65));
  for (std::size_t a = 0; a < 65; ++a)
    for (std::size_t b = 0; b < 65; ++b) big[a][b] = (a + b) % 65;
  EXPECT_EQ(error_of([&] { make_group(big); }), Errc::SizeLimit);
}

TEST(SymmetricGroup, S3Labels) {
  auto g = symmetric_group(3);
  EXPECT_EQ(g->names(), (std::vector<std::string>{"1", "(12)", "(13)", "(23)", "(123)", "(132)"}));
}

TEST(SymmetricGroup, TrivialCase) { EXPECT_EQ(symmetric_group(1)->order(), 1u); }

TEST(SymmetricGroup, SizeLimit) { EXPECT_EQ(error_of([] { symmetric_group(7); }), Errc::SizeLimit); }

TEST(SymmetricGroup, RightToLeftComposition) {
  auto g = symmetric_group(3);
  // (23)(13): 1 -> 3 -> 2, 2 -> 2 -> 3, 3 -> 1 -> 1.
  EXPECT_EQ(g->name(g->mul(g->at("(23)"), g->at("(13)"))), "(123)");
  EXPECT_EQ(g->name(g->mul(g->at("(13)"), g->at("(23)"))), "(132)");
}

TEST(SymmetricGroup, MatchesArrayComposition) {
  // Recompose every pair of S_4 from explicit image arrays.
  auto g = symmetric_group(4);
  std::vector<std::array<std::size_t, 4>> perms;
  std::array<std::size_t, 4> p{0, 1, 2, 3};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::string, std::array<std::size_t, 4>> by_label;
  for (const auto& q : perms) by_label[cycle_notation(q)] = q;
  ASSERT_EQ(by_label.size(), 24u);
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b) {
      const auto& pa = by_label.at(g->name(a));
      const auto& pb = by_label.at(g->name(b));
      std::array<std::size_t, 4> ab{};
      for (std::size_t x = 0; x < 4; ++x) ab[x] = pa[pb[x]];
      EXPECT_EQ(g->name(g->mul(a, b)), cycle_notation(ab));
    }
}

TEST(SymmetricGroup, OrdersAreFactorials) {
  std::size_t f = 1;
  for (std::size_t n = 1; n <= 4; ++n) {
    f *= n;
    EXPECT_EQ(symmetric_group(n)->order(), f);
  }
  EXPECT_THROW(symmetric_group(5), Error);
}

TEST(CyclicGroup, Additive) {
  auto z6 = cyclic_group(6);
  EXPECT_EQ(z6->name(z6->mul(z6->at("4"), z6->at("5"))), "3");
  EXPECT_TRUE(z6->is_abelian());
  EXPECT_FALSE(symmetric_group(3)->is_abelian());
}

TEST(DirectProduct, KleinGroup) {
  auto v = test::klein();
  EXPECT_EQ(v->order(), 4u);
  for (Element a = 0; a < 4; ++a) EXPECT_EQ(v->mul(a, a), v->identity());
}

TEST(SubgroupClosure, Examples) {
  auto s3 = symmetric_group(3);
  EXPECT_EQ(labels_of(*s3, generated(s3, {"(12)"}).members()), (std::vector<std::string>{"1", "(12)"}));
  EXPECT_EQ(labels_of(*s3, subgroup_closure(s3, std::vector<Element>{}).members()),
            (std::vector<std::string>{"1"}));
  EXPECT_EQ(labels_of(*s3, generated(s3, {"(123)"}).members()),
            (std::vector<std::string>{"1", "(123)", "(132)"}));
  EXPECT_EQ(generated(s3, {"(12)", "(13)"}).size(), 6u);
}

TEST(Subgroup, RejectsNonSubgroups) {
  auto s3 = symmetric_group(3);
  EXPECT_EQ(error_of([&] { Subgroup(s3, {s3->at("(12)")}); }), Errc::NotASubgroup);
  EXPECT_EQ(error_of([&] { Subgroup(s3, {0, s3->at("(12)"), s3->at("(13)")}); }), Errc::NotASubgroup);
}

TEST(AllSubgroups, CountsMatchKnownLattices) {
  EXPECT_EQ(all_subgroups(symmetric_group(3)).size(), 6u);
  EXPECT_EQ(all_subgroups(cyclic_group(6)).size(), 4u);
  EXPECT_EQ(all_subgroups(test::klein()).size(), 5u);
  EXPECT_EQ(all_subgroups(symmetric_group(4)).size(), 30u);
}

TEST(Homomorphisms, CountsMatchBruteForce) {
  for (const auto& from : test::small_groups())
    for (const auto& to : {cyclic_group(2), symmetric_group(3), cyclic_group(3)}) {
      std::size_t brute = 0;
      std::vector<Element> img(from->order(), 0);
      for (;;) {
        if (is_homomorphism(*from, *to, img)) ++brute;
        std::size_t k = 0;
        while (k < img.size() && ++img[k] == to->order()) img[k++] = 0;
        if (k == img.size()) break;
      }
      EXPECT_EQ(homomorphisms(*from, *to).size(), brute) << from->order() << "->" << to->order();
    }
}

TEST(LeftTransversal, S3ModTransposition) {
  auto s3 = symmetric_group(3);
  const auto t = left_transversal(generated(s3, {"(12)"}));
  const auto reps = labels_of(*s3, t.reps());
  EXPECT_EQ(std::set<std::string>(reps.begin(), reps.end()), (std::set<std::string>{"1", "(23)", "(13)"}));
  EXPECT_EQ(reps.front(), "1");
}

TEST(LeftTransversal, WholeGroup) {
  auto s3 = symmetric_group(3);
  const auto t = left_transversal(Subgroup(s3, {0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(t.reps(), std::vector<Element>{s3->identity()});
}

TEST(LeftTransversal, Z4ModTwo) {
  auto z4 = cyclic_group(4);
  const auto t = left_transversal(generated(z4, {"2"}));
  EXPECT_EQ(labels_of(*z4, t.reps()), (std::vector<std::string>{"0", "1"}));
}

TEST(LeftTransversal, NonzeroIdentityIndex) {
  // Cayley table whose identity is element 2.
  auto g = make_group({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
  ASSERT_EQ(g->identity(), 2u);
  const auto t = left_transversal(subgroup_closure(g, std::vector<Element>{}));
  EXPECT_EQ(t.reps(), (std::vector<Element>{2, 0, 1}));
}

TEST(CosetFactorize, S3Rows) {
  auto s3 = symmetric_group(3);
  const auto cf = coset_factorize(left_transversal(generated(s3, {"(12)"})));
  const auto& t = cf.transversal();
  auto row = [&](const char* g, const char* gi) {
    const std::size_t i = *t.rep_index(s3->at(gi));
    return std::make_pair(s3->name(cf.j(s3->at(g), i)), s3->name(cf.h(s3->at(g), i)));
  };
  EXPECT_EQ(row("(23)", "(13)"), std::make_pair(std::string("(13)"), std::string("(12)")));
  EXPECT_EQ(row("(12)", "(13)"), std::make_pair(std::string("(23)"), std::string("(12)")));
  for (const char* gi : {"1", "(13)", "(23)"})
    EXPECT_EQ(row("1", gi), std::make_pair(std::string(gi), std::string("1")));
}

// Brute-force oracle: the unique (t, h) in T x H with t*h = g*g_i.
void expect_factorization_matches_search(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const auto cf = coset_factorize(left_transversal(h));
  const auto& reps = cf.transversal().reps();
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::size_t hits = 0;
      for (std::size_t k = 0; k < reps.size(); ++k)
        for (Element m : h.members())
          if (g.mul(reps[k], m) == g.mul(a, reps[i])) {
            ++hits;
            EXPECT_EQ(cf.j_index(a, i), k);
            EXPECT_EQ(cf.h(a, i), m);
          }
      EXPECT_EQ(hits, 1u);
    }
}

TEST(CosetFactorize, AgreesWithSearchOnEverySubgroup) {
  for (const auto& g : test::small_groups())
    for (const auto& h : all_subgroups(g)) expect_factorization_matches_search(h);
  for (const auto& h : all_subgroups(symmetric_group(4))) expect_factorization_matches_search(h);
}

TEST(CrossValidate, PublishedRowsAndCorrections) {
  auto s3 = symmetric_group(3);
  const auto cf = coset_factorize(left_transversal(generated(s3, {"(12)"})));
  const std::vector<ClaimedRow> rows = {
      {"(123)", "(23)", "1", "(12)"}, {"(23)", "1", "(23)", "(23)"}, {"(12)", "1", "(13)", "(12)"}};
  const auto r = cross_validate_table(cf, rows);
  ASSERT_GE(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].status, RowStatus::Match);
  EXPECT_EQ(r.rows[1].status, RowStatus::Mismatch);
  EXPECT_EQ(s3->name(r.rows[1].j), "(23)");
  EXPECT_EQ(s3->name(r.rows[1].h), "1");
  EXPECT_EQ(r.rows[2].status, RowStatus::Mismatch);
  EXPECT_EQ(s3->name(r.rows[2].j), "1");
  EXPECT_EQ(s3->name(r.rows[2].h), "(12)");
  EXPECT_EQ(r.matches, 1u);
  EXPECT_EQ(r.mismatches, 2u);
  EXPECT_EQ(r.missing, 15u);
  EXPECT_EQ(r.rows.size(), 18u);
}

TEST(CrossValidate, UnknownLabels) {
  auto s3 = symmetric_group(3);
  const auto cf = coset_factorize(left_transversal(generated(s3, {"(12)"})));
  const std::vector<ClaimedRow> bad_g = {{"(1234)", "1", "1", "1"}};
  const std::vector<ClaimedRow> bad_gi = {{"1", "(12)", "1", "1"}};
  EXPECT_EQ(error_of([&] { cross_validate_table(cf, bad_g); }), Errc::UnknownElement);
  EXPECT_EQ(error_of([&] { cross_validate_table(cf, bad_gi); }), Errc::UnknownElement);
}

// --- properties over random (G, H) -------------------------------------------

TEST(GroupProperties, RandomSubgroupsFactorLawfully) {
  test::Rng rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    const GroupPtr g = test::random_group(rng);
    const Subgroup h = test::random_subgroup(rng, g);
    const auto cf = coset_factorize(left_transversal(h));
    const auto& reps = cf.transversal().reps();
    ASSERT_EQ(reps.front(), g->identity());
    ASSERT_EQ(reps.size() * h.size(), g->order());
    for (Element a = 0; a < g->order(); ++a) {
      std::vector<std::size_t> images;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        images.push_back(cf.j_index(a, i));
        ASSERT_EQ(g->mul(a, reps[i]), g->mul(cf.j(a, i), cf.h(a, i)));
        ASSERT_TRUE(h.contains(cf.h(a, i)));
      }
      std::sort(images.begin(), images.end());
      for (std::size_t i = 0; i < images.size(); ++i) ASSERT_EQ(images[i], i);
    }
    for (Element a = 0; a < g->order(); ++a)
      for (Element t = 0; t < g->order(); ++t)
        for (std::size_t i = 0; i < reps.size(); ++i) {
          const std::size_t ti = cf.j_index(t, i);
          ASSERT_EQ(cf.j_index(g->mul(a, t), i), cf.j_index(a, ti));
          ASSERT_EQ(cf.h(g->mul(a, t), i), g->mul(cf.h(a, ti), cf.h(t, i)));
        }
  }
}

TEST(GroupProperties, TransversalIsDeterministic) {
  test::Rng rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    const GroupPtr g = test::random_group(rng);
    const Subgroup h = test::random_subgroup(rng, g);
    EXPECT_EQ(left_transversal(h).reps(), left_transversal(Subgroup(g, h.members())).reps());
  }
}

TEST(GroupProperties, WholeGroupHasOneCoset) {
  for (const auto& g : test::small_groups()) {
    std::vector<Element> all(g->order());
    std::iota(all.begin(), all.end(), Element{0});
    const auto cf = coset_factorize(left_transversal(Subgroup(g, all)));
    ASSERT_EQ(cf.transversal().size(), 1u);
    for (Element a = 0; a < g->order(); ++a) EXPECT_EQ(cf.h(a, 0), a);
  }
}

}  // namespace
}  // namespace pact
