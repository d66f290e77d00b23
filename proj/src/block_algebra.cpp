#include "pact/block_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "pact/error.hpp"

namespace pact {

bool operator==(const Block& a, const Block& b) {
  return a.iso_class == b.iso_class && a.aut && b.aut && *a.aut == *b.aut;
}

AlgebraPtr BlockAlgebra::make(std::vector<Block> blocks) {
  if (blocks.empty()) throw Error(Errc::MalformedInput, "a block algebra needs at least one block");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!blocks[i].aut) throw Error(Errc::MalformedInput, "block without an automorphism group");
    for (std::size_t k = 0; k < i; ++k)
      if (blocks[k].iso_class == blocks[i].iso_class && !(*blocks[k].aut == *blocks[i].aut))
        throw Error(Errc::ClassMismatch,
                    "blocks of class " + blocks[i].iso_class + " disagree on their aut group");
  }
  return AlgebraPtr(new BlockAlgebra(std::move(blocks)));
}

AlgebraPtr BlockAlgebra::power(const Block& block, std::size_t n) {
  return make(std::vector<Block>(n, block));
}

AlgebraPtr BlockAlgebra::k_lines(std::size_t n) { return power({"K", trivial_group()}, n); }

bool BlockAlgebra::all_k_lines() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.is_k_line(); });
}

bool BlockIdeal::contains(std::size_t pos) const {
  return std::binary_search(support.begin(), support.end(), pos);
}

bool operator==(const BlockIdeal& a, const BlockIdeal& b) {
  return a.algebra && b.algebra && *a.algebra == *b.algebra && a.support == b.support;
}

BlockIdeal full_ideal(const AlgebraPtr& algebra) {
  std::vector<std::size_t> all(algebra->size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return {algebra, std::move(all)};
}

BlockIdeal zero_ideal(const AlgebraPtr& algebra) { return {algebra, {}}; }

BlockIdeal make_ideal(const AlgebraPtr& algebra, std::vector<std::size_t> support) {
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw Error(Errc::MalformedInput, "ideal support repeats a position");
  if (!support.empty() && support.back() >= algebra->size())
    throw Error(Errc::MalformedInput, "ideal support leaves the algebra");
  return {algebra, std::move(support)};
}

std::vector<std::size_t> ideal_psi(const BlockIdeal& ideal) { return ideal.support; }

namespace {

std::vector<std::string> class_multiset(const BlockIdeal& ideal) {
  std::vector<std::string> out;
  for (std::size_t p : ideal.support) out.push_back(ideal.algebra->block(p).iso_class);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool ideals_isomorphic(const BlockIdeal& a, const BlockIdeal& b) {
  if (a.support.size() != b.support.size()) return false;
  return class_multiset(a) == class_multiset(b);
}

std::size_t WreathMap::slot(std::size_t pos) const {
  auto it = std::lower_bound(source.support.begin(), source.support.end(), pos);
  if (it == source.support.end() || *it != pos) return npos;
  return static_cast<std::size_t>(it - source.support.begin());
}

bool operator==(const WreathMap& a, const WreathMap& b) {
  return a.source == b.source && a.target == b.target && a.to == b.to && a.twist == b.twist;
}

void validate_wreath_map(const WreathMap& w) {
  auto bad = [](const std::string& what) { throw Error(Errc::MalformedInput, what); };
  if (!w.source.algebra || !w.target.algebra) bad("wreath map without algebras");
  const std::size_t k = w.source.support.size();
  if (w.to.size() != k || w.twist.size() != k) bad("wreath map data is not aligned with its source");
  std::vector<std::size_t> image = w.to;
  std::sort(image.begin(), image.end());
  if (image != w.target.support) bad("wreath map is not a bijection onto its target support");
  for (std::size_t s = 0; s < k; ++s) {
    const Block& from = w.source.algebra->block(w.source.support[s]);
    const Block& onto = w.target.algebra->block(w.to[s]);
    if (from.iso_class != onto.iso_class)
      throw Error(Errc::ClassMismatch, "block of class " + from.iso_class + " sent to class " +
                                           onto.iso_class);
    if (w.twist[s] >= from.aut->order()) bad("twist outside the block's aut group");
  }
}

WreathMap identity_map(const BlockIdeal& ideal) {
  WreathMap w{ideal, ideal, ideal.support, {}};
  for (std::size_t p : ideal.support) w.twist.push_back(ideal.algebra->aut(p).identity());
  return w;
}

WreathMap make_ideal_iso(const BlockIdeal& a, const BlockIdeal& b, std::span<const std::size_t> theta) {
  if (theta.size() != a.support.size())
    throw Error(Errc::MalformedInput, "theta must give one image per support position");
  WreathMap w{a, b, {theta.begin(), theta.end()}, {}};
  for (std::size_t p : a.support) w.twist.push_back(a.algebra->aut(p).identity());
  validate_wreath_map(w);
  return w;
}

FormalSum formal_sum(const AlgebraPtr& algebra, const std::map<std::size_t, std::string>& tokens) {
  FormalSum x{algebra, {}};
  for (const auto& [pos, token] : tokens) {
    if (pos >= algebra->size()) throw Error(Errc::MalformedInput, "term outside the algebra");
    x.terms[pos] = {token, algebra->aut(pos).identity()};
  }
  return x;
}

FormalSum wreath_apply(const WreathMap& w, const FormalSum& x) {
  FormalSum out{w.target.algebra, {}};
  for (const auto& [pos, payload] : x.terms) {
    const std::size_t s = w.slot(pos);
    if (s == WreathMap::npos)
      throw Error(Errc::SupportViolation,
                  "term at position " + std::to_string(pos) + " is outside the map's source");
    const FiniteGroup& aut = w.source.algebra->aut(pos);
    out.terms[w.to[s]] = {payload.token, aut.mul(w.twist[s], payload.twist)};
  }
  return out;
}

WreathMap wreath_compose(const WreathMap& second, const WreathMap& first) {
  if (!(first.target == second.source))
    throw Error(Errc::CompositionMismatch, "target of the first map is not the source of the second");
  WreathMap w{first.source, second.target, {}, {}};
  for (std::size_t s = 0; s < first.source.support.size(); ++s) {
    const std::size_t mid = first.to[s];
    const std::size_t s2 = second.slot(mid);
    const FiniteGroup& aut = first.source.algebra->aut(first.source.support[s]);
    w.to.push_back(second.to[s2]);
    w.twist.push_back(aut.mul(second.twist[s2], first.twist[s]));
  }
  return w;
}

WreathMap wreath_inverse(const WreathMap& w) {
  WreathMap inv{w.target, w.source, std::vector<std::size_t>(w.to.size()),
                std::vector<Element>(w.to.size())};
  for (std::size_t s = 0; s < w.to.size(); ++s) {
    const std::size_t t = inv.slot(w.to[s]);
    inv.to[t] = w.source.support[s];
    inv.twist[t] = w.source.algebra->aut(w.source.support[s]).inv(w.twist[s]);
  }
  return inv;
}

std::string render(const FormalSum& x) {
  std::string out = "(";
  for (std::size_t pos = 0; pos < x.algebra->size(); ++pos) {
    if (pos) out += ",";
    auto it = x.terms.find(pos);
    if (it == x.terms.end()) {
      out += "0";
      continue;
    }
    const FiniteGroup& aut = x.algebra->aut(pos);
    const Payload& p = it->second;
    if (p.twist == aut.identity()) {
      out += p.token;
    } else {
      const std::string& label = aut.name(p.twist);
      out += label.front() == '(' ? label + p.token : label + "(" + p.token + ")";
    }
  }
  return out + ")";
}

std::vector<IsotypicComponent> decompose_isotypic(const BlockAlgebra& algebra) {
  std::vector<IsotypicComponent> out;
  for (std::size_t pos = 0; pos < algebra.size(); ++pos) {
    const std::string& cls = algebra.block(pos).iso_class;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const IsotypicComponent& c) { return c.iso_class == cls; });
    if (it == out.end()) out.push_back({cls, {pos}});
    else it->positions.push_back(pos);
  }
  return out;
}

std::vector<WreathMap> all_automorphisms(const AlgebraPtr& algebra) {
  const std::size_t n = algebra->size();
  const BlockIdeal full = full_ideal(algebra);
  std::vector<WreathMap> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool preserves = true;
    for (std::size_t i = 0; i < n && preserves; ++i)
      preserves = algebra->block(i).iso_class == algebra->block(perm[i]).iso_class;
    if (!preserves) continue;
    std::vector<Element> twist(n, 0);
    for (;;) {
      out.push_back({full, full, perm, twist});
      std::size_t i = 0;
      while (i < n && ++twist[i] == algebra->aut(i).order()) twist[i++] = 0;
      if (i == n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace pact
