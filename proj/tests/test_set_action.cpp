#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "pact/error.hpp"
#include "pact/set_action.hpp"
#include "support.hpp"

namespace pact {
namespace {

GlobalSetAction left_translation(const GroupPtr& g) {
  GlobalSetAction out{g, g->names(), std::vector<std::vector<Point>>(g->order())};
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b) out.perms[a].push_back(g->mul(a, b));
  return out;
}

SetPartialAction make_action(const GroupPtr& g, std::size_t n,
                             const std::vector<std::pair<std::string, std::vector<std::pair<Point, Point>>>>& maps) {
  SetPartialAction a{g, default_labels(n), std::vector<PointSet>(g->order()),
                     std::vector<PartialMap>(g->order(), PartialMap(n))};
  a.maps[g->identity()] = PartialMap::identity(n);
  for (const auto& [label, pairs] : maps) {
    PartialMap m(n);
    for (auto [x, y] : pairs) m.set(x, y);
    a.maps[g->at(label)] = m;
  }
  for (Element e = 0; e < g->order(); ++e) a.domains[e] = a.maps[e].image();
  return a;
}

TEST(VerifyPartialAction, GlobalActionPasses) {
  const auto r = verify_partial_action(left_translation(symmetric_group(3)).as_partial());
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.items().size(), 6u);
}

TEST(VerifyPartialAction, ShrunkIdentityDomainFailsAxiomOne) {
  auto a = make_action(cyclic_group(2), 2, {});
  a.domains[0] = {0};
  a.maps[0] = PartialMap::identity_on(2, {0});
  const auto r = verify_partial_action(a);
  EXPECT_FALSE(r.passed("(i) identity"));
  EXPECT_FALSE(r.item("(i) identity").witness.empty());
}

TEST(VerifyPartialAction, Z4RotationAloneIsNotAPartialAction) {
  // D_e = D_r = X, every other domain empty, alpha_r a swap.
  auto z4 = cyclic_group(4);
  auto a = make_action(z4, 2, {{"1", {{0, 1}, {1, 0}}}});
  const auto r = verify_partial_action(a);
  EXPECT_FALSE(r.all_pass());
  EXPECT_FALSE(r.passed("derived: image identity"));
  EXPECT_FALSE(test::naive_is_partial_action(a)) << "oracle disagrees";
}

TEST(VerifyPartialAction, NonInjectiveMapIsMalformed) {
  auto a = make_action(cyclic_group(2), 2, {{"1", {{0, 0}, {1, 0}}}});
  a.domains[1] = {0};
  EXPECT_THROW(verify_partial_action(a), Error);
  try {
    verify_partial_action(a);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedInput);
  }
}

TEST(VerifyPartialAction, MapNotOntoDomainIsMalformed) {
  auto a = make_action(cyclic_group(2), 2, {{"1", {{0, 0}}}});
  a.domains[1] = {0, 1};
  EXPECT_THROW(verify_partial_action(a), Error);
}

TEST(RestrictGlobal, FullSubsetIsTheAction) {
  const auto g = left_translation(cyclic_group(3));
  EXPECT_TRUE(same_partial_action(restrict_global(g, {0, 1, 2}), g.as_partial()));
}

TEST(RestrictGlobal, TranslationToIdentity) {
  auto s3 = symmetric_group(3);
  const auto r = restrict_global(left_translation(s3), {s3->identity()});
  for (Element a = 0; a < 6; ++a)
    EXPECT_EQ(r.domains[a].size(), a == s3->identity() ? 1u : 0u);
  EXPECT_TRUE(verify_partial_action(r).all_pass());
}

TEST(RestrictGlobal, DoubleSwapOnTwoPoints) {
  // sigma = (a b)(c d); {a,c} meets its image {b,d} nowhere.
  GlobalSetAction g{cyclic_group(2), default_labels(4), {{0, 1, 2, 3}, {1, 0, 3, 2}}};
  const auto r = restrict_global(g, {0, 2});
  EXPECT_TRUE(r.domains[1].empty());
  EXPECT_EQ(r.carrier, (std::vector<std::string>{"a", "c"}));
}

TEST(ExtendByZero, WholeGroupIsIdentity) {
  auto z3 = cyclic_group(3);
  const auto a = restrict_global(left_translation(z3), {0, 1});
  const Subgroup all(z3, {0, 1, 2});
  EXPECT_TRUE(same_partial_action(extend_by_zero(a, all.as_group(), std::vector<Element>{0, 1, 2}), a));
}

TEST(ExtendByZero, SwapInsideS3) {
  auto s3 = symmetric_group(3);
  const Subgroup h = subgroup_closure(s3, std::vector<Element>{s3->at("(12)")});
  const GlobalSetAction swap{h.as_group(), {"p", "q"}, {{0, 1}, {1, 0}}};
  const auto ext = extend_by_zero(swap.as_partial(), h);
  std::size_t empty = 0;
  for (const auto& d : ext.domains) empty += d.empty();
  EXPECT_EQ(empty, 4u);
  EXPECT_TRUE(verify_partial_action(ext).all_pass());
  EXPECT_EQ(ext.maps[s3->at("(12)")](0), 1u);
}

TEST(ExtendByZero, TrivialSubgroup) {
  auto z2 = cyclic_group(2);
  const Subgroup e(z2, {0});
  const GlobalSetAction fix{e.as_group(), {"x", "y"}, {{0, 1}}};
  const auto ext = extend_by_zero(fix.as_partial(), e);
  EXPECT_TRUE(ext.domains[1].empty());
}

TEST(ExtendByZero, RejectsNonEmbedding) {
  auto z2 = cyclic_group(2);
  const GlobalSetAction swap{z2, {"p", "q"}, {{0, 1}, {1, 0}}};
  EXPECT_THROW(extend_by_zero(swap.as_partial(), cyclic_group(3), std::vector<Element>{0, 1}), Error);
}

TEST(GlobalPart, ExtensionByZeroRecoversSubgroup) {
  auto s3 = symmetric_group(3);
  const Subgroup h = subgroup_closure(s3, std::vector<Element>{s3->at("(123)")});
  const GlobalSetAction rot{h.as_group(), {"p", "q", "r"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  const auto gp = global_part(extend_by_zero(rot.as_partial(), h));
  EXPECT_EQ(gp.subgroup, h);
  EXPECT_EQ(gp.action.perms, rot.perms);
}

TEST(GlobalPart, GlobalActionGivesWholeGroup) {
  EXPECT_EQ(global_part(left_translation(test::klein()).as_partial()).subgroup.size(), 4u);
}

TEST(GlobalPart, Z4TranslationRestricted) {
  auto z4 = cyclic_group(4);
  const auto gp = global_part(restrict_global(left_translation(z4), {0, 2}));
  EXPECT_EQ(gp.subgroup.members(), (std::vector<Element>{0, 2}));
}

TEST(GlobalizeSet, GlobalActionIsItsOwnEnvelope) {
  const auto a = left_translation(symmetric_group(3)).as_partial();
  const auto glob = globalize_set(a);
  EXPECT_EQ(glob.envelope.size(), 6u);
  std::set<Point> image(glob.embedding.begin(), glob.embedding.end());
  EXPECT_EQ(image.size(), 6u);
  EXPECT_TRUE(verify_set_globalization(a, glob).all_pass());
}

TEST(GlobalizeSet, LonelyPointUnderZ2) {
  const auto a = make_action(cyclic_group(2), 1, {});
  const auto glob = globalize_set(a);
  ASSERT_EQ(glob.envelope.size(), 2u);
  EXPECT_EQ(glob.envelope.perms[1], (std::vector<Point>{1, 0}));
}

TEST(GlobalizeSet, S3ExtensionByZeroOnOnePoint) {
  auto s3 = symmetric_group(3);
  const Subgroup h = subgroup_closure(s3, std::vector<Element>{s3->at("(12)")});
  const GlobalSetAction one{h.as_group(), {"1"}, {{0}, {0}}};
  const auto glob = globalize_set(extend_by_zero(one.as_partial(), h));
  EXPECT_EQ(glob.envelope.size(), 3u);
}

TEST(GlobalizeSet, WitnessesPointAtTheirClass) {
  test::Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const auto a = test::random_partial_action(rng, test::random_group(rng), 5);
    const auto glob = globalize_set(a);
    for (std::size_t c = 0; c < glob.envelope.size(); ++c) {
      const auto [g, x] = glob.orbit_witness[c];
      EXPECT_EQ(glob.envelope.perms[g][glob.embedding[x]], c);
    }
  }
}

TEST(EnvelopesEquivalent, SameEnvelope) {
  const auto glob = globalize_set(make_action(cyclic_group(3), 2, {}));
  const auto f = envelopes_equivalent(glob, glob);
  ASSERT_TRUE(f);
  for (Point p = 0; p < f->size(); ++p) EXPECT_EQ((*f)[p], p);
}

TEST(EnvelopesEquivalent, SizeObstruction) {
  const auto three = globalize_set(make_action(cyclic_group(2), 2, {{"1", {{0, 0}}}}));
  const auto four = globalize_set(make_action(cyclic_group(2), 2, {}));
  ASSERT_EQ(three.envelope.size(), 3u);
  ASSERT_EQ(four.envelope.size(), 4u);
  EXPECT_FALSE(envelopes_equivalent(three, four));
}

SetGlobalization relabel(const SetGlobalization& glob, const std::vector<Point>& pi) {
  SetGlobalization out = glob;
  const std::size_t m = glob.envelope.size();
  for (std::size_t a = 0; a < glob.envelope.perms.size(); ++a)
    for (Point p = 0; p < m; ++p) out.envelope.perms[a][pi[p]] = pi[glob.envelope.perms[a][p]];
  for (Point p = 0; p < m; ++p) {
    out.envelope.carrier[pi[p]] = glob.envelope.carrier[p];
    out.orbit_witness[pi[p]] = glob.orbit_witness[p];
  }
  for (auto& x : out.embedding) x = pi[x];
  return out;
}

TEST(EnvelopesEquivalent, FindsHiddenRelabeling) {
  test::Rng rng(19);
  for (int i = 0; i < 40; ++i) {
    const auto a = test::random_partial_action(rng, test::random_group(rng), 5);
    const auto glob = globalize_set(a);
    std::vector<Point> pi(glob.envelope.size());
    std::iota(pi.begin(), pi.end(), Point{0});
    std::shuffle(pi.begin(), pi.end(), rng);
    const auto other = relabel(glob, pi);
    ASSERT_TRUE(verify_set_globalization(a, other).all_pass());
    const auto f = envelopes_equivalent(glob, other);
    ASSERT_TRUE(f);
    for (Element g = 0; g < a.group->order(); ++g)
      for (Point p = 0; p < pi.size(); ++p)
        EXPECT_EQ((*f)[glob.envelope.perms[g][p]], other.envelope.perms[g][(*f)[p]]);
    for (Point x = 0; x < a.size(); ++x) EXPECT_EQ((*f)[glob.embedding[x]], other.embedding[x]);
  }
}

TEST(EnvelopesEquivalent, RejectsNonEquivariantCandidate) {
  // Two free Z2-orbits against a candidate where sigma fixes the embedded points.
  const auto glob = globalize_set(make_action(cyclic_group(2), 2, {}));
  ASSERT_EQ(glob.envelope.size(), 4u);
  SetGlobalization other = glob;
  other.envelope.perms[1] = {0, 1, 3, 2};
  other.embedding = {0, 1};
  EXPECT_FALSE(envelopes_equivalent(glob, other));
}

// --- enumeration -------------------------------------------------------------

std::set<std::vector<Point>> brute_force(const GroupPtr& g, std::size_t n) {
  const auto candidates = partial_bijections(n);
  std::set<std::vector<Point>> out;
  std::vector<std::size_t> pick(g->order(), 0);
  for (;;) {
    SetPartialAction a{g, default_labels(n), {}, {}};
    for (Element e = 0; e < g->order(); ++e) {
      a.maps.push_back(candidates[pick[e]]);
      a.domains.push_back(candidates[pick[e]].image());
    }
    const bool naive = test::naive_is_partial_action(a);
    EXPECT_EQ(naive, verify_partial_action(a).all_pass());
    if (naive) out.insert(canonical_key(a));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == candidates.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

TEST(Enumerate, SmallCounts) {
  EXPECT_EQ(enumerate_partial_actions(trivial_group(), 3).size(), 1u);
  EXPECT_EQ(enumerate_partial_actions(cyclic_group(2), 1).size(), 2u);
  EXPECT_EQ(enumerate_partial_actions(cyclic_group(2), 2).size(), 5u);
}

TEST(Enumerate, PartialBijectionCounts) {
  // sum_k C(n,k)^2 k!
  EXPECT_EQ(partial_bijections(1).size(), 2u);
  EXPECT_EQ(partial_bijections(2).size(), 7u);
  EXPECT_EQ(partial_bijections(3).size(), 34u);
  EXPECT_EQ(partial_bijections(4).size(), 209u);
}

TEST(Enumerate, MatchesBruteForceFilter) {
  const std::vector<std::pair<GroupPtr, std::size_t>> cases = {
      {cyclic_group(2), 1}, {cyclic_group(2), 2}, {cyclic_group(2), 3}, {cyclic_group(3), 2},
      {cyclic_group(3), 3}, {cyclic_group(4), 2}, {test::klein(), 2},   {symmetric_group(3), 1},
      {symmetric_group(3), 2}};
  for (const auto& [g, n] : cases) {
    const auto listed = enumerate_partial_actions(g, n);
    std::set<std::vector<Point>> keys;
    for (const auto& a : listed) keys.insert(canonical_key(a));
    EXPECT_EQ(keys.size(), listed.size()) << "duplicates for |G|=" << g->order() << " n=" << n;
    EXPECT_EQ(keys, brute_force(g, n)) << "|G|=" << g->order() << " n=" << n;
  }
}

TEST(Enumerate, SortedAndCanonical) {
  const auto listed = enumerate_partial_actions(symmetric_group(3), 3);
  for (std::size_t k = 0; k < listed.size(); ++k) {
    EXPECT_TRUE(same_partial_action(canonicalize(listed[k]), listed[k]));
    if (k) EXPECT_LT(canonical_key(listed[k - 1]), canonical_key(listed[k]));
  }
}

TEST(Enumerate, SizeLimit) {
  EXPECT_THROW(enumerate_partial_actions(symmetric_group(4), 1), Error);
  EXPECT_THROW(enumerate_partial_actions(cyclic_group(2), 5), Error);
}

TEST(Describe, Format) {
  const auto a = make_action(cyclic_group(2), 2, {{"1", {{0, 1}, {1, 0}}}});
  EXPECT_EQ(describe(a), "0:{a->a,b->b} 1:{a->b,b->a}");
}

// --- properties --------------------------------------------------------------

TEST(SetProperties, ConstructionsYieldPartialActions) {
  test::Rng rng(23);
  for (int i = 0; i < 150; ++i) {
    const GroupPtr g = test::random_group(rng);
    const auto a = test::random_partial_action(rng, g, 6);
    ASSERT_TRUE(verify_partial_action(a).all_pass()) << describe(a);
    ASSERT_TRUE(test::naive_is_partial_action(a));
    const auto glob = globalize_set(a);
    const auto checks = verify_set_globalization(a, glob);
    ASSERT_TRUE(checks.all_pass()) << describe(a);
    ASSERT_LE(glob.envelope.size(), a.size() * g->order());
    const auto back = restrict_envelope(glob, a.carrier);
    ASSERT_TRUE(verify_partial_action(back).all_pass());
    ASSERT_EQ(back, a);
    ASSERT_TRUE(same_partial_action(canonicalize(canonicalize(a)), canonicalize(a)));
  }
}

TEST(SetProperties, ExtensionByZeroEnvelopeSize) {
  test::Rng rng(29);
  for (int i = 0; i < 80; ++i) {
    const GroupPtr g = test::random_group(rng);
    const Subgroup h = test::random_subgroup(rng, g);
    const GlobalSetAction inner = test::random_global_action(rng, h.as_group(), 4);
    const auto ext = extend_by_zero(inner.as_partial(), h);
    ASSERT_TRUE(verify_partial_action(ext).all_pass());
    ASSERT_EQ(globalize_set(ext).envelope.size(), h.index() * inner.size());
    const auto gp = global_part(ext);
    ASSERT_EQ(gp.subgroup, h);
    ASSERT_EQ(gp.action.perms, inner.perms);
  }
}

TEST(SetProperties, GlobalPartIsASubgroup) {
  test::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const GroupPtr g = test::random_group(rng);
    const auto a = test::random_partial_action(rng, g, 6);
    std::vector<Element> full;
    for (Element e = 0; e < g->order(); ++e)
      if (a.domains[e].size() == a.size()) full.push_back(e);
    ASSERT_TRUE(is_subgroup(*g, full));
    ASSERT_EQ(global_part(a).subgroup.members(), full);
  }
}

}  // namespace
}  // namespace pact
