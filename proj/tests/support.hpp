#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pact/algebra_action.hpp"
#include "pact/group.hpp"
#include "pact/set_action.hpp"

namespace pact::test {

using Rng = std::mt19937_64;

inline GroupPtr klein() { return direct_product(*cyclic_group(2), *cyclic_group(2)); }

/// Every group of order <= 6 up to isomorphism.
inline std::vector<GroupPtr> small_groups() {
  return {trivial_group(),  cyclic_group(2), cyclic_group(3), cyclic_group(4),
          klein(),          cyclic_group(5), cyclic_group(6), symmetric_group(3)};
}

inline GroupPtr random_group(Rng& rng) {
  static const std::vector<GroupPtr> pool = [] {
    auto g = small_groups();
    g.push_back(direct_product(*cyclic_group(2), *cyclic_group(4)));
    g.push_back(direct_product(*cyclic_group(2), *symmetric_group(3)));
    g.push_back(symmetric_group(4));
    return g;
  }();
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline Subgroup random_subgroup(Rng& rng, const GroupPtr& g) {
  auto all = all_subgroups(g);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

/// Disjoint union of coset actions G/H_k; every finite G-set has this shape.
inline GlobalSetAction random_global_action(Rng& rng, const GroupPtr& g, std::size_t max_points) {
  GlobalSetAction out{g, {}, std::vector<std::vector<Point>>(g->order())};
  for (int tries = 0; tries < 8; ++tries) {
    Subgroup h = random_subgroup(rng, g);
    if (out.size() + h.index() > max_points) continue;
    const LeftTransversal t = left_transversal(h);
    const std::size_t base = out.size();
    for (std::size_t c = 0; c < t.size(); ++c)
      out.carrier.push_back("o" + std::to_string(base) + "_" + g->name(t.reps()[c]));
    for (Element a = 0; a < g->order(); ++a)
      for (std::size_t c = 0; c < t.size(); ++c)
        out.perms[a].push_back(base + t.coset_of(g->mul(a, t.reps()[c])));
    if (std::bernoulli_distribution(0.4)(rng)) break;
  }
  if (out.carrier.empty()) {
    out.carrier.push_back("fixed");
    for (auto& p : out.perms) p.push_back(0);
  }
  return out;
}

inline PointSet random_subset(Rng& rng, std::size_t n) {
  PointSet s;
  for (Point x = 0; x < n; ++x)
    if (std::bernoulli_distribution(0.5)(rng)) s.push_back(x);
  if (s.empty()) s.push_back(std::uniform_int_distribution<Point>(0, n - 1)(rng));
  return s;
}

/// Restrictions of global actions are exactly the globalizable partial actions.
inline SetPartialAction random_partial_action(Rng& rng, const GroupPtr& g, std::size_t max_points) {
  const GlobalSetAction global = random_global_action(rng, g, max_points);
  return restrict_global(global, random_subset(rng, global.size()));
}

/// Independent restatement of the three axioms on plain vectors.
inline bool naive_is_partial_action(const SetPartialAction& a) {
  const FiniteGroup& g = *a.group;
  const std::size_t n = a.size();
  const Element e = g.identity();
  if (a.domains[e].size() != n) return false;
  for (Point x = 0; x < n; ++x)
    if (a.maps[e](x) != x) return false;
  for (Element s = 0; s < g.order(); ++s)
    for (Element t = 0; t < g.order(); ++t)
      for (Point x = 0; x < n; ++x) {
        const Point y = a.maps[t](x);
        if (y == kNoPoint) continue;
        const auto& dsi = a.domains[g.inv(s)];
        if (std::find(dsi.begin(), dsi.end(), y) == dsi.end()) continue;
        const auto& dsti = a.domains[g.inv(g.mul(s, t))];
        if (std::find(dsti.begin(), dsti.end(), x) == dsti.end()) return false;
        if (a.maps[s](y) != a.maps[g.mul(s, t)](x)) return false;
      }
  return true;
}

/// Restriction of a global algebra action beta on gamma to the blocks in
/// `keep`, renumbered 0..k-1: S_g = I cap beta_g(I).
inline AlgebraPartialAction restrict_global_algebra(const GroupPtr& g, const AlgebraPtr& gamma,
                                                    const std::vector<WreathMap>& beta,
                                                    const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> local(gamma->size(), WreathMap::npos);
  std::vector<Block> blocks;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    local[keep[k]] = k;
    blocks.push_back(gamma->block(keep[k]));
  }
  const AlgebraPtr lambda = BlockAlgebra::make(blocks);
  AlgebraPartialAction out{g, lambda, {}, {}};
  std::vector<std::vector<std::size_t>> dom(g->order());
  for (Element a = 0; a < g->order(); ++a)
    for (std::size_t p : keep)
      if (local[beta[a].image(p)] != WreathMap::npos) dom[a].push_back(local[beta[a].image(p)]);
  for (auto& d : dom) std::sort(d.begin(), d.end());
  for (Element a = 0; a < g->order(); ++a) {
    out.domains.push_back({lambda, dom[a]});
    WreathMap w{{lambda, dom[g->inv(a)]}, {lambda, dom[a]}, {}, {}};
    for (std::size_t q : dom[g->inv(a)]) {
      w.to.push_back(local[beta[a].image(keep[q])]);
      w.twist.push_back(beta[a].twist_at(keep[q]));
    }
    out.maps.push_back(std::move(w));
  }
  return out;
}

/// A random single-class partial action with nontrivial twists: an
/// extension-by-zero envelope restricted to some of its blocks.
inline AlgebraPartialAction random_algebra_action(Rng& rng, const GroupPtr& g, const Block& block) {
  const Subgroup h = random_subgroup(rng, g);
  const auto homs = homomorphisms(*h.as_group(), *block.aut);
  const auto& img = homs[std::uniform_int_distribution<std::size_t>(0, homs.size() - 1)(rng)];
  const AlgebraPtr lambda = BlockAlgebra::make({block});
  const GlobalizationResult env =
      globalize_extension_by_zero(lambda, make_subgroup_action(h, block.aut, img));
  return restrict_global_algebra(g, env.envelope, env.action, random_subset(rng, env.envelope->size()));
}

}  // namespace pact::test
