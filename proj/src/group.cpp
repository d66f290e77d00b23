#include "pact/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "pact/error.hpp"

namespace pact {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::ClassMismatch: return "ClassMismatch";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::CompositionMismatch: return "CompositionMismatch";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::TwistTransportConflict: return "TwistTransportConflict";
    case Errc::NotKBlocks: return "NotKBlocks";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::optional<Element> FiniteGroup::find(std::string_view label) const {
  auto it = std::find(names_.begin(), names_.end(), label);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Element>(it - names_.begin());
}

Element FiniteGroup::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw Error(Errc::UnknownElement, "no group element labelled '" + std::string(label) + "'");
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> rows(order_);
  for (std::size_t a = 0; a < order_; ++a)
    rows[a].assign(table_.begin() + a * order_, table_.begin() + (a + 1) * order_);
  return rows;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
  if (&a == &b) return true;
  return a.order_ == b.order_ && a.identity_ == b.identity_ && a.table_ == b.table_ &&
         a.names_ == b.names_;
}

GroupPtr make_group(const std::vector<std::vector<Element>>& table,
                    std::vector<std::string> names, GroupOrigin origin) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(Errc::NotAGroup, "empty table");
  if (n > FiniteGroup::kMaxOrder)
    throw Error(Errc::SizeLimit, "order " + std::to_string(n) + " exceeds " +
                                     std::to_string(FiniteGroup::kMaxOrder));
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n)
      throw Error(Errc::NotAGroup, "row " + std::to_string(a) + " has wrong length");
    for (Element v : table[a])
      if (v >= n) throw Error(Errc::NotAGroup, "entry out of range in row " + std::to_string(a));
  }

  // Latin square.
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (row_seen[table[a][b]])
        throw Error(Errc::NotAGroup, "row " + std::to_string(a) + " repeats an entry");
      if (col_seen[table[b][a]])
        throw Error(Errc::NotAGroup, "column " + std::to_string(a) + " repeats an entry");
      row_seen[table[a][b]] = col_seen[table[b][a]] = true;
    }
  }

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (!identity) throw Error(Errc::NotAGroup, "no two-sided identity");

  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          std::ostringstream os;
          os << "not associative at (" << a << "," << b << "," << c << ")";
          throw Error(Errc::NotAGroup, os.str());
        }

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->order_ = n;
  g->identity_ = *identity;
  g->table_.reserve(n * n);
  for (const auto& row : table) g->table_.insert(g->table_.end(), row.begin(), row.end());
  g->inverse_.assign(n, n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b)
      if (table[a][b] == *identity && table[b][a] == *identity) {
        g->inverse_[a] = b;
        break;
      }
    if (g->inverse_[a] == n) throw Error(Errc::NotAGroup, "element without inverse");
  }

  if (names.empty()) {
    for (Element a = 0; a < n; ++a) names.push_back("g" + std::to_string(a));
  } else if (names.size() != n) {
    throw Error(Errc::NotAGroup, "names has wrong length");
  }
  std::set<std::string> distinct(names.begin(), names.end());
  if (distinct.size() != n) throw Error(Errc::NotAGroup, "duplicate element names");
  g->names_ = std::move(names);
  g->origin_ = origin;
  return g;
}

std::string cycle_notation(std::span<const std::size_t> images) {
  std::string out;
  std::vector<bool> seen(images.size(), false);
  for (std::size_t start = 0; start < images.size(); ++start) {
    if (seen[start] || images[start] == start) continue;
    out += '(';
    for (std::size_t x = start; !seen[x]; x = images[x]) {
      seen[x] = true;
      out += std::to_string(x + 1);
    }
    out += ')';
  }
  return out.empty() ? "1" : out;
}

GroupPtr symmetric_group(std::size_t n) {
  if (n == 0) throw Error(Errc::MalformedInput, "symmetric group needs n >= 1");
  if (n > 6) throw Error(Errc::SizeLimit, "symmetric groups are limited to n <= 6");

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto moved = [](const std::vector<std::size_t>& q) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < q.size(); ++i) m += q[i] != i;
    return m;
  };
  std::sort(perms.begin(), perms.end(), [&](const auto& a, const auto& b) {
    auto ma = moved(a), mb = moved(b);
    if (ma != mb) return ma < mb;
    return cycle_notation(a) < cycle_notation(b);
  });

  const std::size_t order = perms.size();
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(cycle_notation(q));

  std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
  std::vector<std::size_t> prod(n);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t x = 0; x < n; ++x) prod[x] = perms[a][perms[b][x]];
      auto it = std::find(perms.begin(), perms.end(), prod);
      table[a][b] = static_cast<Element>(it - perms.begin());
    }
  return make_group(table, std::move(names), {GroupOrigin::Kind::Symmetric, n});
}

GroupPtr cyclic_group(std::size_t n) {
  if (n == 0) throw Error(Errc::MalformedInput, "cyclic group needs n >= 1");
  if (n > FiniteGroup::kMaxOrder) throw Error(Errc::SizeLimit, "cyclic group too large");
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return make_group(table, std::move(names), {GroupOrigin::Kind::Cyclic, n});
}

GroupPtr trivial_group() {
  static const GroupPtr g = cyclic_group(1);
  return g;
}

GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t n = g.order() * m;
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> names(n);
  for (Element a = 0; a < n; ++a) {
    names[a] = "(" + g.name(a / m) + "," + h.name(a % m) + ")";
    for (Element b = 0; b < n; ++b)
      table[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
  }
  return make_group(table, std::move(names));
}

// ---------------------------------------------------------------------------

bool is_subgroup(const FiniteGroup& g, std::span<const Element> members) {
  std::vector<bool> in(g.order(), false);
  for (Element a : members) {
    if (a >= g.order()) return false;
    in[a] = true;
  }
  if (!in[g.identity()]) return false;
  for (Element a = 0; a < g.order(); ++a) {
    if (!in[a]) continue;
    if (!in[g.inv(a)]) return false;
    for (Element b = 0; b < g.order(); ++b)
      if (in[b] && !in[g.mul(a, b)]) return false;
  }
  return true;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!parent_ || !is_subgroup(*parent_, members_))
    throw Error(Errc::NotASubgroup, "member set is not closed or lacks the identity");
  const std::size_t k = members_.size();
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < k; ++a) {
    names.push_back(parent_->name(members_[a]));
    for (std::size_t b = 0; b < k; ++b)
      table[a][b] = local_index(parent_->mul(members_[a], members_[b]));
  }
  as_group_ = make_group(table, std::move(names));
}

bool Subgroup::contains(Element a) const {
  return std::binary_search(members_.begin(), members_.end(), a);
}

std::size_t Subgroup::local_index(Element a) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), a);
  if (it == members_.end() || *it != a)
    throw Error(Errc::UnknownElement, parent_->name(a) + " is not in the subgroup");
  return static_cast<std::size_t>(it - members_.begin());
}

GroupPtr Subgroup::as_group() const { return as_group_; }

Subgroup subgroup_closure(const GroupPtr& g, std::span<const Element> generators) {
  std::vector<bool> in(g->order(), false);
  std::vector<Element> members{g->identity()};
  in[g->identity()] = true;
  for (Element s : generators) {
    if (s >= g->order()) throw Error(Errc::UnknownElement, "generator out of range");
  }
  // Finite group: closing under multiplication by generators suffices.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element s : generators) {
      Element x = g->mul(members[i], s);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  }
  return Subgroup(g, std::move(members));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> frontier{subgroup_closure(g, {}).members()};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& members : frontier) {
      for (Element a = 0; a < g->order(); ++a) {
        if (std::binary_search(members.begin(), members.end(), a)) continue;
        std::vector<Element> gens = members;
        gens.push_back(a);
        auto closed = subgroup_closure(g, gens).members();
        if (found.insert(closed).second) next.push_back(std::move(closed));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (const auto& m : found) out.emplace_back(g, m);
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const Element> images) {
  if (images.size() != from.order()) return false;
  for (Element v : images)
    if (v >= to.order()) return false;
  for (Element a = 0; a < from.order(); ++a)
    for (Element b = 0; b < from.order(); ++b)
      if (images[from.mul(a, b)] != to.mul(images[a], images[b])) return false;
  return true;
}

namespace {

void extend_homomorphisms(const FiniteGroup& from, const FiniteGroup& to, std::vector<Element>& img,
                          std::vector<bool>& set, Element next,
                          std::vector<std::vector<Element>>& out) {
  while (next < from.order() && set[next]) ++next;
  if (next == from.order()) {
    out.push_back(img);
    return;
  }
  for (Element v = 0; v < to.order(); ++v) {
    // Assign next -> v and propagate through products with assigned elements
    // until closure; reject on any clash.
    auto saved_img = img;
    auto saved_set = set;
    img[next] = v;
    set[next] = true;
    bool ok = true;
    bool changed = true;
    while (ok && changed) {
      changed = false;
      for (Element a = 0; a < from.order() && ok; ++a) {
        if (!set[a]) continue;
        for (Element b = 0; b < from.order() && ok; ++b) {
          if (!set[b]) continue;
          Element ab = from.mul(a, b);
          Element want = to.mul(img[a], img[b]);
          if (set[ab]) {
            ok = img[ab] == want;
          } else {
            img[ab] = want;
            set[ab] = true;
            changed = true;
          }
        }
      }
    }
    if (ok) extend_homomorphisms(from, to, img, set, next + 1, out);
    img = std::move(saved_img);
    set = std::move(saved_set);
  }
}

}  // namespace

std::vector<std::vector<Element>> homomorphisms(const FiniteGroup& from, const FiniteGroup& to) {
  std::vector<Element> img(from.order(), 0);
  std::vector<bool> set(from.order(), false);
  img[from.identity()] = to.identity();
  set[from.identity()] = true;
  std::vector<std::vector<Element>> out;
  extend_homomorphisms(from, to, img, set, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> LeftTransversal::rep_index(Element a) const {
  for (std::size_t i = 0; i < reps_.size(); ++i)
    if (reps_[i] == a) return i;
  return std::nullopt;
}

LeftTransversal left_transversal(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  LeftTransversal t(h);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  t.coset_of_.assign(g.order(), kUnset);

  auto claim = [&](Element rep) {
    const std::size_t idx = t.reps_.size();
    t.reps_.push_back(rep);
    for (Element m : h.members()) t.coset_of_[g.mul(rep, m)] = idx;
  };
  claim(g.identity());
  for (Element a = 0; a < g.order(); ++a)
    if (t.coset_of_[a] == kUnset) claim(a);
  return t;
}

CosetFactorization coset_factorize(const LeftTransversal& t) {
  const FiniteGroup& g = *t.subgroup().parent();
  const Subgroup& hsub = t.subgroup();
  CosetFactorization cf(t);
  const std::size_t width = t.size();
  cf.width_ = width;
  cf.j_.resize(g.order() * width);
  cf.h_.resize(g.order() * width);
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < width; ++i) {
      const Element prod = g.mul(a, t.reps()[i]);
      const std::size_t ji = t.coset_of(prod);
      cf.j_[a * width + i] = ji;
      cf.h_[a * width + i] = g.mul(g.inv(t.reps()[ji]), prod);
    }

  auto fail = [](const std::string& what) { throw Error(Errc::InternalInconsistency, what); };
  if (t.reps().empty() || t.reps()[0] != g.identity()) fail("transversal does not start at e");
  for (Element a = 0; a < g.order(); ++a) {
    std::vector<bool> hit(width, false);
    for (std::size_t i = 0; i < width; ++i) {
      if (g.mul(cf.j(a, i), cf.h(a, i)) != g.mul(a, t.reps()[i])) fail("g*g_i != j*h");
      if (!hsub.contains(cf.h(a, i))) fail("h(g,g_i) outside H");
      if (hit[cf.j_index(a, i)]) fail("j(g,-) is not a permutation of T");
      hit[cf.j_index(a, i)] = true;
    }
  }
  for (std::size_t i = 0; i < width; ++i)
    if (cf.j_index(g.identity(), i) != i || cf.h(g.identity(), i) != g.identity())
      fail("identity row is not trivial");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      for (std::size_t i = 0; i < width; ++i) {
        const Element ab = g.mul(a, b);
        const std::size_t jb = cf.j_index(b, i);
        if (cf.j_index(ab, i) != cf.j_index(a, jb)) fail("j cocycle identity");
        if (cf.h(ab, i) != g.mul(cf.h(a, jb), cf.h(b, i))) fail("h cocycle identity");
      }
  return cf;
}

std::string_view to_string(RowStatus s) noexcept {
  switch (s) {
    case RowStatus::Match: return "MATCH";
    case RowStatus::Mismatch: return "MISMATCH";
    case RowStatus::Missing: return "MISSING";
  }
  return "?";
}

DiscrepancyReport cross_validate_table(const CosetFactorization& cf,
                                       std::span<const ClaimedRow> claimed) {
  const FiniteGroup& g = cf.group();
  const LeftTransversal& t = cf.transversal();
  DiscrepancyReport report;
  std::vector<bool> covered(g.order() * t.size(), false);

  for (const ClaimedRow& row : claimed) {
    const Element a = g.at(row.g);
    const Element gi = g.at(row.gi);
    auto idx = t.rep_index(gi);
    if (!idx) throw Error(Errc::UnknownElement, row.gi + " is not a transversal representative");
    const Element cj = g.at(row.j);
    const Element ch = g.at(row.h);

    RowComparison cmp;
    cmp.g = a;
    cmp.gi = *idx;
    cmp.j = cf.j(a, *idx);
    cmp.h = cf.h(a, *idx);
    cmp.claimed = row;
    if (covered[a * t.size() + *idx]) cmp.note = "duplicate claim; ";
    covered[a * t.size() + *idx] = true;

    if (cj == cmp.j && ch == cmp.h) {
      cmp.status = RowStatus::Match;
      ++report.matches;
    } else {
      cmp.status = RowStatus::Mismatch;
      ++report.mismatches;
      cmp.note += "corrected j=" + g.name(cmp.j) + ", h=" + g.name(cmp.h);
      std::vector<std::string> why;
      if (!t.rep_index(cj)) why.push_back("claimed j is not a representative");
      if (!t.subgroup().contains(ch)) why.push_back("claimed h is not in H");
      if (g.mul(cj, ch) != g.mul(a, t.reps()[*idx]))
        why.push_back("claimed j*h != g*g_i");
      for (const auto& w : why) cmp.note += "; " + w;
    }
    report.rows.push_back(std::move(cmp));
  }

  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (covered[a * t.size() + i]) continue;
      RowComparison cmp;
      cmp.g = a;
      cmp.gi = i;
      cmp.j = cf.j(a, i);
      cmp.h = cf.h(a, i);
      cmp.status = RowStatus::Missing;
      cmp.note = "derived j=" + g.name(cmp.j) + ", h=" + g.name(cmp.h);
      ++report.missing;
      report.rows.push_back(std::move(cmp));
    }
  return report;
}

}  // namespace pact
