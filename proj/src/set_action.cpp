#include "pact/set_action.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "pact/error.hpp"
#include "pact/union_find.hpp"

namespace pact {

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// --- PartialMap ------------------------------------------------------------

PartialMap PartialMap::identity(std::size_t n) {
  PartialMap m(n);
  std::iota(m.img_.begin(), m.img_.end(), Point{0});
  return m;
}

PartialMap PartialMap::identity_on(std::size_t n, const PointSet& domain) {
  PartialMap m(n);
  for (Point x : domain) m.set(x, x);
  return m;
}

PointSet PartialMap::domain() const {
  PointSet out;
  for (Point x = 0; x < img_.size(); ++x)
    if (img_[x] != kNoPoint) out.push_back(x);
  return out;
}

PointSet PartialMap::image() const {
  PointSet out;
  for (Point y : img_)
    if (y != kNoPoint) out.push_back(y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PartialMap::injective() const {
  std::vector<bool> hit(img_.size(), false);
  for (Point y : img_) {
    if (y == kNoPoint) continue;
    if (y >= img_.size() || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool PartialMap::is_identity_on(const PointSet& s) const {
  return std::all_of(s.begin(), s.end(), [&](Point x) { return (*this)(x) == x; });
}

PartialMap PartialMap::inverse() const {
  PartialMap inv(img_.size());
  for (Point x = 0; x < img_.size(); ++x)
    if (img_[x] != kNoPoint) inv.img_[img_[x]] = x;
  return inv;
}

PointSet PartialMap::apply(const PointSet& s) const {
  PointSet out;
  for (Point x : s)
    if (defined(x)) out.push_back(img_[x]);
  std::sort(out.begin(), out.end());
  return out;
}

PartialMap PartialMap::restricted(const PointSet& domain) const {
  PartialMap m(img_.size());
  for (Point x : domain)
    if (defined(x)) m.img_[x] = img_[x];
  return m;
}

PartialMap compose(const PartialMap& outer, const PartialMap& inner) {
  PartialMap m(inner.carrier_size());
  for (Point x = 0; x < inner.carrier_size(); ++x) {
    Point y = inner(x);
    if (y != kNoPoint && outer.defined(y)) m.set(x, outer(y));
  }
  return m;
}

// --- value helpers -----------------------------------------------------------

bool same_partial_action(const SetPartialAction& a, const SetPartialAction& b) {
  return a.group && b.group && *a.group == *b.group && a.size() == b.size() &&
         a.domains == b.domains && a.maps == b.maps;
}

bool operator==(const SetPartialAction& a, const SetPartialAction& b) {
  return same_partial_action(a, b) && a.carrier == b.carrier;
}

bool operator==(const GlobalSetAction& a, const GlobalSetAction& b) {
  return a.group && b.group && *a.group == *b.group && a.carrier == b.carrier &&
         a.perms == b.perms;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
  return out;
}

SetPartialAction GlobalSetAction::as_partial() const {
  SetPartialAction pa{group, carrier, {}, {}};
  PointSet all(size());
  std::iota(all.begin(), all.end(), Point{0});
  for (const auto& perm : perms) {
    pa.domains.push_back(all);
    PartialMap m(size());
    for (Point x = 0; x < size(); ++x) m.set(x, perm[x]);
    pa.maps.push_back(std::move(m));
  }
  return pa;
}

namespace {

std::string point_name(const SetPartialAction& a, Point x) {
  return x < a.carrier.size() ? a.carrier[x] : "#" + std::to_string(x);
}

std::string elem(const FiniteGroup& g, Element a) { return g.name(a); }

}  // namespace

VerificationReport verify_group_action(const GlobalSetAction& action) {
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.size();
  VerificationReport r;
  const auto perm_item = r.add("permutations");
  const auto id_item = r.add("identity");
  const auto hom_item = r.add("composition");
  if (action.perms.size() != g.order()) {
    r.fail(perm_item, "expected one permutation per group element");
    return r;
  }
  for (Element a = 0; a < g.order(); ++a) {
    std::vector<bool> hit(n, false);
    for (Point x = 0; x < n; ++x) {
      Point y = action.perms[a].size() == n ? action.perms[a][x] : kNoPoint;
      if (y >= n || hit[y]) {
        r.fail(perm_item, "beta_" + elem(g, a) + " is not a permutation");
        return r;
      }
      hit[y] = true;
    }
  }
  for (Point x = 0; x < n; ++x)
    if (action.perms[g.identity()][x] != x)
      r.fail(id_item, "beta_e moves " + action.carrier[x]);
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      for (Point x = 0; x < n; ++x)
        if (action.perms[a][action.perms[b][x]] != action.perms[g.mul(a, b)][x])
          r.fail(hom_item, "g=" + elem(g, a) + ", t=" + elem(g, b) + ", x=" + action.carrier[x]);
  return r;
}

void check_well_formed(const SetPartialAction& action) {
  auto bad = [](const std::string& what) { throw Error(Errc::MalformedInput, what); };
  if (!action.group) bad("partial action without a group");
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.size();
  if (action.domains.size() != g.order() || action.maps.size() != g.order())
    bad("domains and maps need one entry per group element");
  for (Element a = 0; a < g.order(); ++a) {
    const PointSet& d = action.domains[a];
    if (!std::is_sorted(d.begin(), d.end()) || std::adjacent_find(d.begin(), d.end()) != d.end())
      bad("domain of " + elem(g, a) + " is not a sorted set");
    if (!d.empty() && d.back() >= n) bad("domain of " + elem(g, a) + " leaves the carrier");
    const PartialMap& m = action.maps[a];
    if (m.carrier_size() != n) bad("map of " + elem(g, a) + " has the wrong carrier size");
    for (Point y : m.images())
      if (y != kNoPoint && y >= n) bad("map of " + elem(g, a) + " leaves the carrier");
    if (!m.injective()) bad("map of " + elem(g, a) + " is not injective");
    if (m.image() != d) bad("map of " + elem(g, a) + " is not onto its domain D_g");
  }
}

VerificationReport verify_partial_action(const SetPartialAction& action) {
  check_well_formed(action);
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.size();
  const Element e = g.identity();
  const auto& D = action.domains;
  const auto& alpha = action.maps;

  VerificationReport r;
  const auto ax1 = r.add("(i) identity");
  const auto typing = r.add("typing");
  const auto ax2 = r.add("(ii) domain");
  const auto ax3 = r.add("(iii) composition");
  const auto image_id = r.add("derived: image identity");
  const auto inv_id = r.add("derived: inverse");

  if (D[e].size() != n)
    r.fail(ax1, "D_e misses " + point_name(action, [&] {
                  for (Point x = 0; x < n; ++x)
                    if (!std::binary_search(D[e].begin(), D[e].end(), x)) return x;
                  return Point{0};
                }()));
  for (Point x = 0; x < n; ++x)
    if (alpha[e](x) != x && std::binary_search(D[e].begin(), D[e].end(), x))
      r.fail(ax1, "alpha_e moves " + point_name(action, x));

  for (Element a = 0; a < g.order(); ++a)
    if (alpha[a].domain() != D[g.inv(a)])
      r.fail(typing, "dom alpha_" + elem(g, a) + " != D_" + elem(g, g.inv(a)));

  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const Element ab = g.mul(a, b);
      const PointSet& dom_ab = D[g.inv(ab)];
      // x in alpha_b^{-1}(D_b cap D_{a^-1}), i.e. alpha_a(alpha_b(x)) is defined.
      for (Point x = 0; x < n; ++x) {
        const Point y = alpha[b](x);
        if (y == kNoPoint || !std::binary_search(D[g.inv(a)].begin(), D[g.inv(a)].end(), y))
          continue;
        const std::string where =
            "g=" + elem(g, a) + ", h=" + elem(g, b) + ", x=" + point_name(action, x);
        if (!std::binary_search(dom_ab.begin(), dom_ab.end(), x)) r.fail(ax2, where);
        if (alpha[a](y) != alpha[ab](x)) r.fail(ax3, where);
      }
      // alpha_g(D_{g^-1} cap D_h) = D_g cap D_gh
      const PointSet lhs = alpha[a].apply(intersect(D[g.inv(a)], D[b]));
      if (lhs != intersect(D[a], D[ab]))
        r.fail(image_id, "g=" + elem(g, a) + ", h=" + elem(g, b));
    }

  for (Element a = 0; a < g.order(); ++a)
    if (alpha[g.inv(a)] != alpha[a].inverse())
      r.fail(inv_id, "alpha_" + elem(g, g.inv(a)) + " != alpha_" + elem(g, a) + "^-1");
  return r;
}

bool is_partial_action(const SetPartialAction& action) {
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.size();
  const auto& alpha = action.maps;
  if (action.domains[g.identity()].size() != n) return false;
  if (!alpha[g.identity()].is_identity_on(action.domains[g.identity()])) return false;
  for (Element a = 0; a < g.order(); ++a) {
    if (alpha[a].domain() != action.domains[g.inv(a)]) return false;
    for (Element b = 0; b < g.order(); ++b) {
      const Element ab = g.mul(a, b);
      for (Point x = 0; x < n; ++x) {
        const Point y = alpha[b](x);
        if (y == kNoPoint || !alpha[a].defined(y)) continue;
        if (alpha[ab](x) != alpha[a](y)) return false;
      }
    }
  }
  return true;
}

bool is_global(const SetPartialAction& action) {
  return std::all_of(action.domains.begin(), action.domains.end(),
                     [&](const PointSet& d) { return d.size() == action.size(); });
}

GlobalSetAction to_global(const SetPartialAction& action) {
  if (!is_global(action)) throw Error(Errc::MalformedInput, "action is not global");
  GlobalSetAction out{action.group, action.carrier, {}};
  for (const auto& m : action.maps) out.perms.push_back(m.images());
  return out;
}

SetPartialAction restrict_global(const GlobalSetAction& global, const PointSet& subset) {
  if (!std::is_sorted(subset.begin(), subset.end()) ||
      std::adjacent_find(subset.begin(), subset.end()) != subset.end() ||
      (!subset.empty() && subset.back() >= global.size()))
    throw Error(Errc::MalformedInput, "subset must be a sorted set of carrier points");
  const FiniteGroup& g = *global.group;
  const std::size_t k = subset.size();
  std::vector<Point> local(global.size(), kNoPoint);
  for (Point i = 0; i < k; ++i) local[subset[i]] = i;

  SetPartialAction pa{global.group, {}, std::vector<PointSet>(g.order()),
                      std::vector<PartialMap>(g.order(), PartialMap(k))};
  for (Point x : subset) pa.carrier.push_back(global.carrier[x]);
  for (Element a = 0; a < g.order(); ++a) {
    for (Point i = 0; i < k; ++i) {
      const Point y = local[global.perms[a][subset[i]]];
      if (y != kNoPoint) pa.maps[a].set(i, y);
    }
    pa.domains[a] = pa.maps[a].image();
  }
  return pa;
}

SetPartialAction extend_by_zero(const SetPartialAction& action_of_h, const GroupPtr& g,
                                std::span<const Element> embedding) {
  const FiniteGroup& h = *action_of_h.group;
  std::vector<bool> hit(g->order(), false);
  for (Element v : embedding) {
    if (v >= g->order() || hit[v]) throw Error(Errc::NotASubgroup, "embedding is not injective");
    hit[v] = true;
  }
  if (!is_homomorphism(h, *g, embedding))
    throw Error(Errc::NotASubgroup, "embedding is not a homomorphism");

  const std::size_t n = action_of_h.size();
  SetPartialAction pa{g, action_of_h.carrier, std::vector<PointSet>(g->order()),
                      std::vector<PartialMap>(g->order(), PartialMap(n))};
  for (Element k = 0; k < h.order(); ++k) {
    pa.domains[embedding[k]] = action_of_h.domains[k];
    pa.maps[embedding[k]] = action_of_h.maps[k];
  }
  return pa;
}

SetPartialAction extend_by_zero(const SetPartialAction& action_of_h, const Subgroup& h) {
  if (!action_of_h.group || !(*action_of_h.group == *h.as_group()))
    throw Error(Errc::NotASubgroup, "action is not over the given subgroup");
  return extend_by_zero(action_of_h, h.parent(), h.members());
}

GlobalPart global_part(const SetPartialAction& action) {
  const FiniteGroup& g = *action.group;
  std::vector<Element> members;
  for (Element a = 0; a < g.order(); ++a)
    if (action.domains[a].size() == action.size()) members.push_back(a);
  if (!is_subgroup(g, members))
    throw Error(Errc::InternalInconsistency, "{h : D_h = X} is not a subgroup");
  Subgroup h(action.group, members);
  GlobalSetAction restricted{h.as_group(), action.carrier, {}};
  for (Element a : h.members()) {
    const auto& img = action.maps[a].images();
    if (std::find(img.begin(), img.end(), kNoPoint) != img.end())
      throw Error(Errc::InternalInconsistency, "alpha_h is not total on a full domain");
    restricted.perms.push_back(img);
  }
  return {std::move(h), std::move(restricted)};
}

// --- globalization -------------------------------------------------------------

SetGlobalization globalize_set(const SetPartialAction& action) {
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.size();
  const std::size_t order = g.order();
  auto node = [n](Element a, Point x) { return a * n + x; };

  UnionFind uf(order * n);
  for (Element a = 0; a < order; ++a)
    for (Element k = 0; k < order; ++k) {
      const Element t = g.mul(a, g.inv(k));
      for (Point x = 0; x < n; ++x)
        if (action.maps[k].defined(x)) uf.unite(node(a, x), node(t, action.maps[k](x)));
    }

  // Order key: identity first, then by element index, then point.
  auto key = [&](Element a, Point x) {
    const std::size_t rank = a == g.identity() ? 0 : a + 1;
    return std::pair{rank, x};
  };
  std::vector<std::size_t> best(order * n, static_cast<std::size_t>(-1));
  for (Element a = 0; a < order; ++a)
    for (Point x = 0; x < n; ++x) {
      const std::size_t root = uf.find(node(a, x));
      const std::size_t cur = best[root];
      if (cur == static_cast<std::size_t>(-1) || key(a, x) < key(cur / n, cur % n))
        best[root] = node(a, x);
    }

  std::vector<std::size_t> reps;
  for (std::size_t v = 0; v < order * n; ++v)
    if (uf.find(v) == v) reps.push_back(best[v]);
  std::sort(reps.begin(), reps.end(), [&](std::size_t u, std::size_t v) {
    return key(u / n, u % n) < key(v / n, v % n);
  });

  std::vector<Point> class_id(order * n);
  {
    std::vector<Point> root_id(order * n, kNoPoint);
    for (Point c = 0; c < reps.size(); ++c) root_id[uf.find(reps[c])] = c;
    for (std::size_t v = 0; v < order * n; ++v) class_id[v] = root_id[uf.find(v)];
  }

  SetGlobalization out;
  out.envelope.group = action.group;
  for (std::size_t r : reps) {
    const Element a = r / n;
    const Point x = r % n;
    out.orbit_witness.emplace_back(a, x);
    out.envelope.carrier.push_back("[" + g.name(a) + "," + action.carrier[x] + "]");
  }
  out.envelope.perms.assign(order, std::vector<Point>(reps.size()));
  for (Element t = 0; t < order; ++t)
    for (Point c = 0; c < reps.size(); ++c) {
      const auto [a, x] = out.orbit_witness[c];
      out.envelope.perms[t][c] = class_id[node(g.mul(t, a), x)];
    }
  // The action must not depend on the chosen representative.
  for (Element t = 0; t < order; ++t)
    for (Element a = 0; a < order; ++a)
      for (Point x = 0; x < n; ++x)
        if (class_id[node(g.mul(t, a), x)] != out.envelope.perms[t][class_id[node(a, x)]])
          throw Error(Errc::InternalInconsistency,
                      "envelope action is not well defined; input is not a partial action");
  for (Point x = 0; x < n; ++x) out.embedding.push_back(class_id[node(g.identity(), x)]);
  return out;
}

VerificationReport verify_set_globalization(const SetPartialAction& action,
                                            const SetGlobalization& glob) {
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.size();
  const std::size_t m = glob.envelope.size();
  const auto& beta = glob.envelope.perms;

  VerificationReport r;
  const VerificationReport ga = verify_group_action(glob.envelope);
  r.record("global_action", ga.all_pass(),
           ga.all_pass() ? "" : [&] {
             for (const auto& it : ga.items())
               if (!it.pass) return it.name + ": " + it.witness;
             return std::string{};
           }());
  if (!ga.passed("permutations") || glob.embedding.size() != n) {
    r.record("ideal", false, "envelope data is malformed");
    return r;
  }

  const auto ideal = r.add("ideal");
  PointSet image;
  for (Point x = 0; x < n; ++x) {
    if (glob.embedding[x] >= m) {
      r.fail(ideal, "embedding leaves the envelope");
      return r;
    }
    image.push_back(glob.embedding[x]);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end())
    r.fail(ideal, "embedding is not injective");

  const auto covers = r.add("covers");
  std::vector<bool> reached(m, false);
  for (Element a = 0; a < g.order(); ++a)
    for (Point y : image) reached[beta[a][y]] = true;
  for (Point c = 0; c < m; ++c)
    if (!reached[c]) {
      r.fail(covers, glob.envelope.carrier[c] + " is outside every beta_g(X)");
      break;
    }

  const auto inter = r.add("intersection");
  const auto equi = r.add("equivariance");
  for (Element a = 0; a < g.order(); ++a) {
    PointSet moved;
    for (Point y : image) moved.push_back(beta[a][y]);
    std::sort(moved.begin(), moved.end());
    PointSet dom_image;
    for (Point x : action.domains[a]) dom_image.push_back(glob.embedding[x]);
    std::sort(dom_image.begin(), dom_image.end());
    if (dom_image != intersect(image, moved)) r.fail(inter, "g=" + g.name(a));
    for (Point x : action.domains[g.inv(a)]) {
      const Point y = action.maps[a](x);
      if (y == kNoPoint || glob.embedding[y] != beta[a][glob.embedding[x]])
        r.fail(equi, "g=" + g.name(a) + ", x=" + action.carrier[x]);
    }
  }
  r.record("size_bound", m <= n * g.order(),
           std::to_string(m) + " > " + std::to_string(n * g.order()));
  return r;
}

SetPartialAction restrict_envelope(const SetGlobalization& glob, std::vector<std::string> labels) {
  const FiniteGroup& g = *glob.envelope.group;
  const std::size_t n = glob.embedding.size();
  std::vector<Point> back(glob.envelope.size(), kNoPoint);
  for (Point x = 0; x < n; ++x) back[glob.embedding[x]] = x;
  SetPartialAction pa{glob.envelope.group, std::move(labels), std::vector<PointSet>(g.order()),
                      std::vector<PartialMap>(g.order(), PartialMap(n))};
  for (Element a = 0; a < g.order(); ++a) {
    for (Point x = 0; x < n; ++x) {
      const Point y = back[glob.envelope.perms[a][glob.embedding[x]]];
      if (y != kNoPoint) pa.maps[a].set(x, y);
    }
    pa.domains[a] = pa.maps[a].image();
  }
  return pa;
}

namespace {

// Backtracking search for an equivariant bijection extending a partial
// assignment. f maps a-points to b-points (kNoPoint = unassigned).
class EquivalenceSearch {
 public:
  EquivalenceSearch(const GlobalSetAction& a, const GlobalSetAction& b) : a_(a), b_(b) {}

  std::optional<std::vector<Point>> run(std::vector<Point> f) {
    std::vector<bool> used(b_.size(), false);
    for (Point y : f)
      if (y != kNoPoint) {
        if (used[y]) return std::nullopt;
        used[y] = true;
      }
    std::vector<Point> pending;
    for (Point p = 0; p < f.size(); ++p)
      if (f[p] != kNoPoint) pending.push_back(p);
    if (!propagate(f, used, pending)) return std::nullopt;
    return extend(f, used);
  }

 private:
  bool propagate(std::vector<Point>& f, std::vector<bool>& used, std::vector<Point> queue) {
    const std::size_t order = a_.group->order();
    while (!queue.empty()) {
      const Point p = queue.back();
      queue.pop_back();
      for (Element g = 0; g < order; ++g) {
        const Point pa = a_.perms[g][p];
        const Point pb = b_.perms[g][f[p]];
        if (f[pa] == kNoPoint) {
          if (used[pb]) return false;
          f[pa] = pb;
          used[pb] = true;
          queue.push_back(pa);
        } else if (f[pa] != pb) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<std::vector<Point>> extend(std::vector<Point>& f, std::vector<bool>& used) {
    auto it = std::find(f.begin(), f.end(), kNoPoint);
    if (it == f.end()) return f;
    const Point p = static_cast<Point>(it - f.begin());
    for (Point q = 0; q < b_.size(); ++q) {
      if (used[q]) continue;
      auto f2 = f;
      auto used2 = used;
      f2[p] = q;
      used2[q] = true;
      if (!propagate(f2, used2, {p})) continue;
      if (auto done = extend(f2, used2)) return done;
    }
    return std::nullopt;
  }

  const GlobalSetAction& a_;
  const GlobalSetAction& b_;
};

}  // namespace

std::optional<std::vector<Point>> envelopes_equivalent(const SetGlobalization& a,
                                                       const SetGlobalization& b) {
  if (!(*a.envelope.group == *b.envelope.group)) return std::nullopt;
  if (a.embedding.size() != b.embedding.size()) return std::nullopt;
  if (a.envelope.size() != b.envelope.size()) return std::nullopt;
  std::vector<Point> f(a.envelope.size(), kNoPoint);
  for (Point x = 0; x < a.embedding.size(); ++x) {
    const Point p = a.embedding[x];
    if (f[p] != kNoPoint && f[p] != b.embedding[x]) return std::nullopt;
    f[p] = b.embedding[x];
  }
  return EquivalenceSearch(a.envelope, b.envelope).run(std::move(f));
}

// --- enumeration ----------------------------------------------------------------

std::vector<Point> canonical_key(const SetPartialAction& action) {
  std::vector<Point> key;
  for (const auto& m : action.maps) key.insert(key.end(), m.images().begin(), m.images().end());
  return key;
}

SetPartialAction canonicalize(const SetPartialAction& action) {
  SetPartialAction out{action.group, default_labels(action.size()), {}, action.maps};
  for (const auto& m : out.maps) out.domains.push_back(m.image());
  return out;
}

std::vector<PartialMap> partial_bijections(std::size_t n) {
  std::vector<PartialMap> out;
  PartialMap cur(n);
  std::vector<bool> used(n, false);
  std::function<void(Point)> rec = [&](Point x) {
    if (x == n) {
      out.push_back(cur);
      return;
    }
    rec(x + 1);
    for (Point y = 0; y < n; ++y) {
      if (used[y]) continue;
      used[y] = true;
      cur.set(x, y);
      rec(x + 1);
      cur.set(x, kNoPoint);
      used[y] = false;
    }
  };
  rec(0);
  return out;
}

namespace {

class PartialActionEnumerator {
 public:
  PartialActionEnumerator(const GroupPtr& g, std::size_t n)
      : g_(g), n_(n), choices_(partial_bijections(n)), maps_(g->order()),
        assigned_(g->order(), false) {
    for (Element a = 0; a < g->order(); ++a)
      if (a != g->identity() && a <= g->inv(a)) slots_.push_back(a);
    maps_[g->identity()] = PartialMap::identity(n);
    assigned_[g->identity()] = true;
  }

  std::vector<SetPartialAction> run() {
    search(0);
    std::sort(found_.begin(), found_.end(), [](const auto& x, const auto& y) {
      return canonical_key(x) < canonical_key(y);
    });
    return std::move(found_);
  }

 private:
  // alpha_a alpha_b must agree with alpha_ab wherever the left side is defined.
  bool consistent(Element a, Element b) const {
    const Element ab = g_->mul(a, b);
    for (Point x = 0; x < n_; ++x) {
      const Point y = maps_[b](x);
      if (y == kNoPoint || !maps_[a].defined(y)) continue;
      if (maps_[ab](x) != maps_[a](y)) return false;
    }
    return true;
  }

  bool consistent_with(Element s) const {
    const Element si = g_->inv(s);
    for (Element a = 0; a < g_->order(); ++a) {
      if (!assigned_[a]) continue;
      for (Element b = 0; b < g_->order(); ++b) {
        if (!assigned_[b]) continue;
        const Element ab = g_->mul(a, b);
        if (!assigned_[ab]) continue;
        const bool touches = a == s || a == si || b == s || b == si || ab == s || ab == si;
        if (touches && !consistent(a, b)) return false;
      }
    }
    return true;
  }

  void search(std::size_t slot) {
    if (slot == slots_.size()) {
      SetPartialAction pa{g_, default_labels(n_), {}, maps_};
      for (const auto& m : pa.maps) pa.domains.push_back(m.image());
      found_.push_back(std::move(pa));
      return;
    }
    const Element s = slots_[slot];
    const Element si = g_->inv(s);
    for (const PartialMap& p : choices_) {
      PartialMap pinv = p.inverse();
      if (s == si && pinv != p) continue;
      maps_[s] = p;
      maps_[si] = std::move(pinv);
      assigned_[s] = assigned_[si] = true;
      if (consistent_with(s)) search(slot + 1);
      assigned_[s] = assigned_[si] = false;
    }
  }

  GroupPtr g_;
  std::size_t n_;
  std::vector<PartialMap> choices_;
  std::vector<Element> slots_;
  std::vector<PartialMap> maps_;
  std::vector<bool> assigned_;
  std::vector<SetPartialAction> found_;
};

}  // namespace

std::vector<SetPartialAction> enumerate_partial_actions(const GroupPtr& g, std::size_t n) {
  if (g->order() > kEnumMaxGroupOrder || n > kEnumMaxCarrier)
    throw Error(Errc::SizeLimit, "enumeration is limited to |G| <= 6 and at most 4 points");
  return PartialActionEnumerator(g, n).run();
}

std::string describe(const SetPartialAction& action) {
  const FiniteGroup& g = *action.group;
  std::ostringstream os;
  bool first = true;
  for (Element a = 0; a < g.order(); ++a) {
    const auto dom = action.maps[a].domain();
    if (dom.empty()) continue;
    if (!first) os << ' ';
    first = false;
    os << g.name(a) << ":{";
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (i) os << ',';
      os << action.carrier[dom[i]] << "->" << action.carrier[action.maps[a](dom[i])];
    }
    os << '}';
  }
  return first ? "{}" : os.str();
}

}  // namespace pact
