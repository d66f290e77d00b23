#include "pact/algebra_action.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pact/error.hpp"

namespace pact {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedInput, what); }

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a && b && (a == b || *a == *b);
}

// Structural checks on a WreathMap that leave class preservation to the caller.
void check_map_shape(const WreathMap& w, const std::string& who) {
  const std::size_t k = w.source.support.size();
  if (w.to.size() != k || w.twist.size() != k) malformed(who + " is not aligned with its source");
  std::vector<std::size_t> image = w.to;
  std::sort(image.begin(), image.end());
  if (image != w.target.support) malformed(who + " is not a bijection onto its target");
  for (std::size_t s = 0; s < k; ++s)
    if (w.twist[s] >= w.source.algebra->aut(w.source.support[s]).order())
      malformed(who + " has a twist outside the block's aut group");
}

void check_ideal(const BlockIdeal& ideal, const AlgebraPtr& algebra, const std::string& who) {
  if (!same_algebra(ideal.algebra, algebra)) malformed(who + " lives in another algebra");
  const auto& s = ideal.support;
  if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
    malformed(who + " support is not a sorted set");
  if (!s.empty() && s.back() >= algebra->size()) malformed(who + " support leaves the algebra");
}

std::vector<std::size_t> positions_image(const WreathMap& w, const std::vector<std::size_t>& from) {
  std::vector<std::size_t> out;
  for (std::size_t p : from)
    if (w.defined(p)) out.push_back(w.image(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> meet(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string pos_name(std::size_t p) { return "e" + std::to_string(p + 1); }

}  // namespace

bool operator==(const AlgebraPartialAction& a, const AlgebraPartialAction& b) {
  return a.group && b.group && *a.group == *b.group && same_algebra(a.algebra, b.algebra) &&
         a.domains == b.domains && a.maps == b.maps;
}

void check_well_formed(const AlgebraPartialAction& action) {
  if (!action.group || !action.algebra) malformed("partial action without group or algebra");
  const FiniteGroup& g = *action.group;
  if (action.domains.size() != g.order() || action.maps.size() != g.order())
    malformed("domains and maps need one entry per group element");
  for (Element a = 0; a < g.order(); ++a) {
    const std::string who = "alpha_" + g.name(a);
    check_ideal(action.domains[a], action.algebra, "S_" + g.name(a));
    const WreathMap& w = action.maps[a];
    check_ideal(w.source, action.algebra, who + " source");
    check_ideal(w.target, action.algebra, who + " target");
    check_map_shape(w, who);
    if (w.target.support != action.domains[a].support) malformed(who + " is not onto S_" + g.name(a));
  }
}

VerificationReport verify_algebra_partial_action(const AlgebraPartialAction& action) {
  check_well_formed(action);
  const FiniteGroup& g = *action.group;
  const BlockAlgebra& lambda = *action.algebra;
  const auto& S = action.domains;
  const auto& alpha = action.maps;
  const Element e = g.identity();

  VerificationReport r;
  const auto ax1 = r.add("(i) identity");
  const auto typing = r.add("typing");
  const auto cls = r.add("class preservation");
  const auto ax2 = r.add("(ii) domain");
  const auto ax3 = r.add("(iii) composition");
  const auto image_id = r.add("derived: image identity");
  const auto inv_id = r.add("derived: inverse");

  if (!S[e].is_full()) r.fail(ax1, "S_e is not the whole algebra");
  for (std::size_t p : alpha[e].source.support)
    if (alpha[e].image(p) != p || alpha[e].twist_at(p) != lambda.aut(p).identity())
      r.fail(ax1, "alpha_e is not the identity at " + pos_name(p));

  for (Element a = 0; a < g.order(); ++a) {
    if (alpha[a].source.support != S[g.inv(a)].support)
      r.fail(typing, "source of alpha_" + g.name(a) + " != S_" + g.name(g.inv(a)));
    for (std::size_t p : alpha[a].source.support)
      if (lambda.block(p).iso_class != lambda.block(alpha[a].image(p)).iso_class)
        r.fail(cls, "alpha_" + g.name(a) + " sends " + pos_name(p) + " to another class");
  }

  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const Element ab = g.mul(a, b);
      for (std::size_t x : alpha[b].source.support) {
        const std::size_t y = alpha[b].image(x);
        if (!S[g.inv(a)].contains(y)) continue;
        const std::string where =
            "g=" + g.name(a) + ", h=" + g.name(b) + ", block " + pos_name(x);
        if (!S[g.inv(ab)].contains(x)) r.fail(ax2, where);
        if (!alpha[a].defined(y) || !alpha[ab].defined(x)) {
          r.fail(ax3, where);
          continue;
        }
        if (alpha[a].image(y) != alpha[ab].image(x)) {
          r.fail(ax3, where);
          continue;
        }
        if (lambda.block(x).iso_class != lambda.block(y).iso_class) continue;
        const FiniteGroup& aut = lambda.aut(x);
        if (aut.mul(alpha[a].twist_at(y), alpha[b].twist_at(x)) != alpha[ab].twist_at(x))
          r.fail(ax3, where + " (twist)");
      }
      const auto lhs = positions_image(alpha[a], meet(S[g.inv(a)].support, S[b].support));
      if (lhs != meet(S[a].support, S[ab].support))
        r.fail(image_id, "g=" + g.name(a) + ", h=" + g.name(b));
    }

  for (Element a = 0; a < g.order(); ++a) {
    const WreathMap& fwd = alpha[a];
    const WreathMap& back = alpha[g.inv(a)];
    bool ok = fwd.source.support == back.target.support && fwd.target.support == back.source.support;
    for (std::size_t s = 0; ok && s < fwd.to.size(); ++s) {
      const std::size_t p = fwd.source.support[s];
      const std::size_t q = fwd.to[s];
      ok = back.defined(q) && back.image(q) == p &&
           (lambda.block(p).iso_class != lambda.block(q).iso_class ||
            back.twist_at(q) == lambda.aut(p).inv(fwd.twist[s]));
    }
    if (!ok) r.fail(inv_id, "alpha_" + g.name(g.inv(a)) + " != alpha_" + g.name(a) + "^-1");
  }
  return r;
}

bool is_partial_action(const AlgebraPartialAction& action) {
  try {
    return verify_algebra_partial_action(action).all_pass();
  } catch (const Error&) {
    return false;
  }
}

bool is_global(const AlgebraPartialAction& action) {
  return std::all_of(action.domains.begin(), action.domains.end(),
                     [](const BlockIdeal& s) { return s.is_full(); });
}

GlobalizabilityReport globalizable_check(const AlgebraPartialAction& action) {
  check_well_formed(action);
  GlobalizabilityReport report;
  for (const auto& comp : decompose_isotypic(*action.algebra)) {
    ComponentShape shape{comp.iso_class, comp.positions, {}};
    for (const BlockIdeal& s : action.domains) {
      const std::size_t hit = meet(s.support, comp.positions).size();
      shape.per_element.push_back(hit == 0 ? DomainShape::Zero
                                  : hit == comp.positions.size() ? DomainShape::Full
                                                                 : DomainShape::Partial);
    }
    report.components.push_back(std::move(shape));
  }
  if (action.algebra->size() == 1) report.dichotomy = report.components.front().per_element;
  return report;
}

SubgroupAction make_subgroup_action(Subgroup subgroup, GroupPtr aut, std::vector<Element> images) {
  if (!aut) throw Error(Errc::MalformedInput, "subgroup action without an aut group");
  if (!is_homomorphism(*subgroup.as_group(), *aut, images))
    throw Error(Errc::NotAHomomorphism, "images do not define a homomorphism H -> Aut");
  return {std::move(subgroup), std::move(aut), std::move(images)};
}

SubgroupAction classify_indecomposable(const AlgebraPartialAction& action) {
  check_well_formed(action);
  if (action.algebra->size() != 1)
    throw Error(Errc::MalformedInput, "classification needs a single-block algebra");
  const FiniteGroup& g = *action.group;
  std::vector<Element> members;
  for (Element a = 0; a < g.order(); ++a)
    if (action.domains[a].is_full()) members.push_back(a);
  if (!is_subgroup(g, members))
    throw Error(Errc::InternalInconsistency, "{g : S_g = Lambda} is not a subgroup");
  Subgroup h(action.group, members);
  std::vector<Element> images;
  for (Element a : h.members()) images.push_back(action.maps[a].twist_at(0));
  return make_subgroup_action(std::move(h), action.algebra->block(0).aut, std::move(images));
}

AlgebraPartialAction extend_by_zero_algebra(const AlgebraPtr& lambda, const SubgroupAction& h_action) {
  if (lambda->size() != 1)
    throw Error(Errc::MalformedInput, "extension by zero is defined for a single block");
  if (!(*lambda->block(0).aut == *h_action.aut))
    throw Error(Errc::MalformedInput, "H-action does not act through the block's aut group");
  if (!is_homomorphism(*h_action.subgroup.as_group(), *h_action.aut, h_action.images))
    throw Error(Errc::NotAHomomorphism, "images do not define a homomorphism H -> Aut");
  const GroupPtr& g = h_action.subgroup.parent();
  const BlockIdeal full = full_ideal(lambda);
  const BlockIdeal zero = zero_ideal(lambda);
  AlgebraPartialAction pa{g, lambda, {}, {}};
  for (Element a = 0; a < g->order(); ++a) {
    if (h_action.subgroup.contains(a)) {
      pa.domains.push_back(full);
      pa.maps.push_back({full, full, {0}, {h_action.images[h_action.subgroup.local_index(a)]}});
    } else {
      pa.domains.push_back(zero);
      pa.maps.push_back(identity_map(zero));
    }
  }
  return pa;
}

// --- enveloping actions ---------------------------------------------------------

VerificationReport verify_global_action(const GroupPtr& group, const AlgebraPtr& envelope,
                                        const std::vector<WreathMap>& action) {
  const FiniteGroup& g = *group;
  VerificationReport r;
  const auto autos = r.add("automorphisms");
  const auto ident = r.add("identity");
  const auto comp = r.add("composition");
  if (action.size() != g.order()) {
    r.fail(autos, "expected one map per group element");
    return r;
  }
  for (Element a = 0; a < g.order(); ++a) {
    const WreathMap& w = action[a];
    try {
      if (!w.source.is_full() || !w.target.is_full() || !same_algebra(w.source.algebra, envelope) ||
          !same_algebra(w.target.algebra, envelope))
        malformed("beta_" + g.name(a) + " is not defined on the whole envelope");
      validate_wreath_map(w);
    } catch (const Error& err) {
      r.fail(autos, err.what());
    }
  }
  if (!r.passed("automorphisms")) return r;
  if (!(action[g.identity()] == identity_map(full_ideal(envelope))))
    r.fail(ident, "beta_e is not the identity");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (!(wreath_compose(action[a], action[b]) == action[g.mul(a, b)]))
        r.fail(comp, "g=" + g.name(a) + ", t=" + g.name(b));
  return r;
}

VerificationReport verify_enveloping(const AlgebraPartialAction& action,
                                     const GlobalizationResult& candidate) {
  check_well_formed(action);
  const FiniteGroup& g = *action.group;
  const BlockAlgebra& lambda = *action.algebra;
  if (!candidate.envelope) malformed("candidate without an envelope");
  const BlockAlgebra& gamma = *candidate.envelope;
  const auto& beta = candidate.action;
  const WreathMap& phi = candidate.embedding;

  const VerificationReport ga = verify_global_action(action.group, candidate.envelope, beta);
  if (!ga.passed("automorphisms")) malformed("beta maps are not automorphisms of the envelope");
  if (!phi.source.is_full() || !same_algebra(phi.source.algebra, action.algebra))
    malformed("embedding must be defined on all of Lambda");
  if (phi.to.size() != lambda.size() || phi.twist.size() != lambda.size())
    malformed("embedding is not aligned with Lambda");

  VerificationReport r;
  const auto ideal = r.add("ideal");
  const auto covers = r.add("covers");
  const auto inter = r.add("intersection");
  const auto equi = r.add("equivariance");

  for (std::size_t p : phi.to)
    if (p >= gamma.size()) {
      for (auto item : {ideal, covers, inter, equi}) r.fail(item, "embedding leaves the envelope");
      return r;
    }

  // (i) phi(Lambda) is a union of whole blocks, each hit isomorphically once.
  try {
    if (!same_algebra(phi.target.algebra, candidate.envelope))
      malformed("embedding targets another algebra");
    validate_wreath_map(phi);
  } catch (const Error& err) {
    r.fail(ideal, err.what());
  }

  std::vector<std::size_t> image = phi.to;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());

  // (ii) L = sum_g beta_g(phi(Lambda)).
  std::vector<bool> reached(gamma.size(), false);
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t p : image) reached[beta[a].image(p)] = true;
  for (std::size_t q = 0; q < gamma.size(); ++q)
    if (!reached[q]) {
      r.fail(covers, "envelope block " + std::to_string(q) + " is outside every beta_g(Lambda)");
      break;
    }

  for (Element a = 0; a < g.order(); ++a) {
    // (iii) phi(S_g) = phi(Lambda) cap beta_g(phi(Lambda)).
    std::vector<std::size_t> phi_s;
    for (std::size_t p : action.domains[a].support) phi_s.push_back(phi.image(p));
    std::sort(phi_s.begin(), phi_s.end());
    if (phi_s != meet(image, positions_image(beta[a], image)))
      r.fail(inter, "g=" + g.name(a));

    // (iv) phi o alpha_g = beta_g o phi on S_{g^-1}, blocks and twists.
    const WreathMap& al = action.maps[a];
    for (std::size_t p : al.source.support) {
      const std::size_t q = al.image(p);
      const std::size_t lhs_block = phi.image(q);
      const std::size_t mid = phi.image(p);
      const std::size_t rhs_block = beta[a].image(mid);
      const std::string where = "g=" + g.name(a) + ", block " + pos_name(p);
      if (lhs_block != rhs_block) {
        r.fail(equi, where);
        continue;
      }
      const FiniteGroup& aut = lambda.aut(p);
      if (!(aut == gamma.aut(mid)) || !(aut == lambda.aut(q))) {
        r.fail(equi, where + " (aut groups differ)");
        continue;
      }
      const Element lhs = aut.mul(phi.twist_at(q), al.twist_at(p));
      const Element rhs = aut.mul(beta[a].twist_at(mid), phi.twist_at(p));
      if (lhs != rhs) r.fail(equi, where + " (twist)");
    }
  }
  return r;
}

namespace {

void finish(GlobalizationResult& result, const AlgebraPartialAction& action) {
  const VerificationReport ga = verify_global_action(action.group, result.envelope, result.action);
  if (!ga.all_pass())
    throw Error(Errc::InternalInconsistency, result.pipeline + " produced a non-global action");
  result.checks = verify_enveloping(action, result);
  if (!result.checks.all_pass())
    throw Error(Errc::InternalInconsistency, result.pipeline + " failed an enveloping check");
}

}  // namespace

GlobalizationResult globalize_extension_by_zero(const AlgebraPtr& lambda,
                                                const SubgroupAction& h_action) {
  const AlgebraPartialAction pa = extend_by_zero_algebra(lambda, h_action);
  const FiniteGroup& g = *pa.group;
  const CosetFactorization cf = coset_factorize(left_transversal(h_action.subgroup));
  const LeftTransversal& t = cf.transversal();

  GlobalizationResult out;
  out.pipeline = "extension-by-zero";
  out.envelope = BlockAlgebra::power(lambda->block(0), t.size());
  for (Element rep : t.reps()) out.provenance.push_back({rep, 0});
  const BlockIdeal full = full_ideal(out.envelope);
  for (Element a = 0; a < g.order(); ++a) {
    WreathMap beta{full, full, {}, {}};
    for (std::size_t i = 0; i < t.size(); ++i) {
      beta.to.push_back(cf.j_index(a, i));
      beta.twist.push_back(h_action.images[h_action.subgroup.local_index(cf.h(a, i))]);
    }
    out.action.push_back(std::move(beta));
  }
  out.embedding = {full_ideal(lambda), make_ideal(out.envelope, {0}), {0},
                   {lambda->aut(0).identity()}};
  finish(out, pa);
  return out;
}

std::size_t envelope_block_count(const AlgebraPartialAction& action) {
  return classify_indecomposable(action).subgroup.index();
}

// --- products -----------------------------------------------------------------

std::vector<AlgebraPartialAction> split_partial_action(const AlgebraPartialAction& action) {
  check_well_formed(action);
  const auto comps = decompose_isotypic(*action.algebra);
  std::size_t offset = 0;
  std::vector<AlgebraPartialAction> parts;
  for (const auto& comp : comps) {
    for (std::size_t k = 0; k < comp.positions.size(); ++k)
      if (comp.positions[k] != offset + k)
        throw Error(Errc::MalformedInput, "isotypic components are not contiguous");
    std::vector<Block> blocks;
    for (std::size_t p : comp.positions) blocks.push_back(action.algebra->block(p));
    const AlgebraPtr sub = BlockAlgebra::make(std::move(blocks));
    const std::size_t end = offset + comp.positions.size();
    auto local = [&](const std::vector<std::size_t>& support) {
      std::vector<std::size_t> out;
      for (std::size_t p : support)
        if (p >= offset && p < end) out.push_back(p - offset);
      return BlockIdeal{sub, out};
    };

    AlgebraPartialAction part{action.group, sub, {}, {}};
    for (std::size_t a = 0; a < action.domains.size(); ++a) {
      part.domains.push_back(local(action.domains[a].support));
      const WreathMap& w = action.maps[a];
      WreathMap lw{local(w.source.support), local(w.target.support), {}, {}};
      for (std::size_t s = 0; s < w.to.size(); ++s) {
        const std::size_t p = w.source.support[s];
        if (p < offset || p >= end) continue;
        if (w.to[s] < offset || w.to[s] >= end)
          throw Error(Errc::ClassMismatch, "a map leaves its isotypic component");
        lw.to.push_back(w.to[s] - offset);
        lw.twist.push_back(w.twist[s]);
      }
      part.maps.push_back(std::move(lw));
    }
    parts.push_back(std::move(part));
    offset = end;
  }
  return parts;
}

AlgebraPartialAction product_partial_action(const std::vector<AlgebraPartialAction>& parts) {
  if (parts.empty()) throw Error(Errc::MalformedInput, "empty product");
  const GroupPtr& g = parts.front().group;
  std::vector<Block> blocks;
  for (const auto& part : parts) {
    if (!part.group || !(*part.group == *g))
      throw Error(Errc::GroupMismatch, "factors act by different groups");
    check_well_formed(part);
    blocks.insert(blocks.end(), part.algebra->blocks().begin(), part.algebra->blocks().end());
  }
  const AlgebraPtr algebra = BlockAlgebra::make(std::move(blocks));
  AlgebraPartialAction out{g, algebra, {}, {}};
  for (Element a = 0; a < g->order(); ++a) {
    BlockIdeal dom{algebra, {}};
    WreathMap w{{algebra, {}}, {algebra, {}}, {}, {}};
    std::size_t offset = 0;
    for (const auto& part : parts) {
      for (std::size_t p : part.domains[a].support) dom.support.push_back(p + offset);
      const WreathMap& pw = part.maps[a];
      for (std::size_t p : pw.source.support) w.source.support.push_back(p + offset);
      for (std::size_t p : pw.target.support) w.target.support.push_back(p + offset);
      for (std::size_t s = 0; s < pw.to.size(); ++s) {
        w.to.push_back(pw.to[s] + offset);
        w.twist.push_back(pw.twist[s]);
      }
      offset += part.algebra->size();
    }
    out.domains.push_back(std::move(dom));
    out.maps.push_back(std::move(w));
  }
  return out;
}

// --- idempotents and sets ----------------------------------------------------------

SetPartialAction restrict_to_idempotents(const AlgebraPartialAction& action) {
  check_well_formed(action);
  const std::size_t n = action.algebra->size();
  SetPartialAction out{action.group, {}, {}, {}};
  for (std::size_t p = 0; p < n; ++p) out.carrier.push_back(pos_name(p));
  for (std::size_t a = 0; a < action.domains.size(); ++a) {
    out.domains.push_back(action.domains[a].support);
    PartialMap m(n);
    const WreathMap& w = action.maps[a];
    for (std::size_t s = 0; s < w.to.size(); ++s) m.set(w.source.support[s], w.to[s]);
    out.maps.push_back(std::move(m));
  }
  return out;
}

AlgebraPartialAction lift_set_action(const SetPartialAction& action) {
  check_well_formed(action);
  const AlgebraPtr algebra = BlockAlgebra::k_lines(action.size());
  AlgebraPartialAction out{action.group, algebra, {}, {}};
  for (std::size_t a = 0; a < action.maps.size(); ++a) {
    out.domains.push_back({algebra, action.domains[a]});
    const PartialMap& m = action.maps[a];
    WreathMap w{{algebra, m.domain()}, {algebra, action.domains[a]}, {}, {}};
    for (Point x : w.source.support) {
      w.to.push_back(m(x));
      w.twist.push_back(0);
    }
    out.maps.push_back(std::move(w));
  }
  return out;
}

// --- globalization pipelines ------------------------------------------------------

GlobalizationResult globalize_block_power(const AlgebraPartialAction& action) {
  check_well_formed(action);
  const auto comps = decompose_isotypic(*action.algebra);
  if (comps.size() != 1)
    throw Error(Errc::MalformedInput, "block-power globalization needs a single iso class");
  const FiniteGroup& g = *action.group;
  const std::size_t n = action.algebra->size();
  const Block& block = action.algebra->block(0);
  const FiniteGroup& aut = *block.aut;

  const SetPartialAction induced = restrict_to_idempotents(action);
  const SetGlobalization env = globalize_set(induced);
  const std::size_t m = env.envelope.size();
  auto class_of = [&](Element a, Point x) { return env.envelope.perms[a][env.embedding[x]]; };

  auto conflict = [](const std::string& what) {
    throw Error(Errc::TwistTransportConflict, what);
  };

  // tau(g,x): beta_g(l e_x) = beta_t(tau(g,x) l e_y) for the class witness (t,y).
  std::vector<Element> tau(g.order() * n);
  for (Element a = 0; a < g.order(); ++a)
    for (Point x = 0; x < n; ++x) {
      const auto [t, y] = env.orbit_witness[class_of(a, x)];
      const Element k = g.mul(g.inv(t), a);
      if (induced.maps[k](x) != y)
        conflict("class witness of (" + g.name(a) + "," + pos_name(x) + ") is not reached");
      tau[a * n + x] = action.maps[k].twist_at(x);
    }
  for (Element a = 0; a < g.order(); ++a)
    for (Element k = 0; k < g.order(); ++k)
      for (std::size_t p : action.maps[k].source.support) {
        const Element b = g.mul(a, g.inv(k));
        const std::size_t q = action.maps[k].image(p);
        if (tau[a * n + p] != aut.mul(tau[b * n + q], action.maps[k].twist_at(p)))
          conflict("witness paths disagree at (" + g.name(a) + "," + pos_name(p) + ")");
      }

  GlobalizationResult out;
  out.pipeline = "block-power";
  out.envelope = BlockAlgebra::power(block, m);
  const BlockIdeal full = full_ideal(out.envelope);
  for (const auto& [t, y] : env.orbit_witness) out.provenance.push_back({t, y});
  for (Element a = 0; a < g.order(); ++a) {
    WreathMap beta{full, full, {}, {}};
    for (Point c = 0; c < m; ++c) {
      const auto [t, y] = env.orbit_witness[c];
      beta.to.push_back(env.envelope.perms[a][c]);
      beta.twist.push_back(tau[g.mul(a, t) * n + y]);
    }
    out.action.push_back(std::move(beta));
  }
  std::vector<std::size_t> image(env.embedding.begin(), env.embedding.end());
  out.embedding = {full_ideal(action.algebra), make_ideal(out.envelope, image), image, {}};
  for (Point x = 0; x < n; ++x) out.embedding.twist.push_back(tau[g.identity() * n + x]);
  finish(out, action);
  return out;
}

GlobalizationResult globalize_k_blocks(const AlgebraPartialAction& action) {
  check_well_formed(action);
  if (!action.algebra->all_k_lines())
    throw Error(Errc::NotKBlocks, "every block must be a K-line block");
  const FiniteGroup& g = *action.group;
  const SetGlobalization env = globalize_set(restrict_to_idempotents(action));

  GlobalizationResult out;
  out.pipeline = "k-blocks";
  std::vector<Block> blocks;
  for (const auto& [t, y] : env.orbit_witness) {
    blocks.push_back(action.algebra->block(y));
    out.provenance.push_back({t, y});
  }
  out.envelope = BlockAlgebra::make(std::move(blocks));
  const BlockIdeal full = full_ideal(out.envelope);
  for (Element a = 0; a < g.order(); ++a)
    out.action.push_back({full, full, env.envelope.perms[a],
                          std::vector<Element>(env.envelope.size(), 0)});
  std::vector<std::size_t> image(env.embedding.begin(), env.embedding.end());
  out.embedding = {full_ideal(action.algebra), make_ideal(out.envelope, image), image,
                   std::vector<Element>(image.size(), 0)};
  finish(out, action);
  return out;
}

GlobalizationResult globalize(const AlgebraPartialAction& action) {
  check_well_formed(action);
  if (action.algebra->size() == 1)
    return globalize_extension_by_zero(action.algebra, classify_indecomposable(action));
  if (action.algebra->all_k_lines()) return globalize_k_blocks(action);
  const auto parts = split_partial_action(action);
  if (parts.size() == 1) return globalize_block_power(action);

  const FiniteGroup& g = *action.group;
  GlobalizationResult out;
  out.pipeline = "product";
  std::vector<GlobalizationResult> pieces;
  std::vector<Block> blocks;
  for (const auto& part : parts) {
    pieces.push_back(part.algebra->all_k_lines() ? globalize_k_blocks(part)
                                                 : globalize_block_power(part));
    const auto& eb = pieces.back().envelope->blocks();
    blocks.insert(blocks.end(), eb.begin(), eb.end());
  }
  out.envelope = BlockAlgebra::make(std::move(blocks));
  const BlockIdeal full = full_ideal(out.envelope);
  out.action.assign(g.order(), WreathMap{full, full, {}, {}});
  std::vector<std::size_t> image;
  std::vector<Element> twists;
  std::size_t env_offset = 0;
  std::size_t lambda_offset = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    for (const auto& origin : piece.provenance)
      out.provenance.push_back({origin.g, origin.position + lambda_offset});
    for (Element a = 0; a < g.order(); ++a)
      for (std::size_t s = 0; s < piece.action[a].to.size(); ++s) {
        out.action[a].to.push_back(piece.action[a].to[s] + env_offset);
        out.action[a].twist.push_back(piece.action[a].twist[s]);
      }
    for (std::size_t s = 0; s < piece.embedding.to.size(); ++s) {
      image.push_back(piece.embedding.to[s] + env_offset);
      twists.push_back(piece.embedding.twist[s]);
    }
    env_offset += piece.envelope->size();
    lambda_offset += parts[i].algebra->size();
  }
  out.embedding = {full_ideal(action.algebra), make_ideal(out.envelope, image), image, twists};
  finish(out, action);
  return out;
}

// --- equivalence -----------------------------------------------------------------

namespace {

class EnvelopeIsoSearch {
 public:
  struct Slot {
    std::size_t to = WreathMap::npos;
    Element twist = 0;
  };

  EnvelopeIsoSearch(const FiniteGroup& g, const GlobalizationResult& a, const GlobalizationResult& b)
      : g_(g), a_(a), b_(b) {}

  std::optional<std::vector<Slot>> run(std::vector<Slot> f) {
    std::vector<bool> used(b_.envelope->size(), false);
    std::vector<std::size_t> queue;
    for (std::size_t p = 0; p < f.size(); ++p) {
      if (f[p].to == WreathMap::npos) continue;
      if (used[f[p].to] || !compatible(p, f[p].to)) return std::nullopt;
      used[f[p].to] = true;
      queue.push_back(p);
    }
    if (!propagate(f, used, std::move(queue))) return std::nullopt;
    return extend(f, used);
  }

 private:
  bool compatible(std::size_t p, std::size_t q) const {
    return a_.envelope->block(p) == b_.envelope->block(q);
  }

  // F(beta^a_g p) = (beta^b_g q, tb * f * ta^-1).
  bool propagate(std::vector<Slot>& f, std::vector<bool>& used, std::vector<std::size_t> queue) {
    while (!queue.empty()) {
      const std::size_t p = queue.back();
      queue.pop_back();
      const FiniteGroup& aut = a_.envelope->aut(p);
      for (Element g = 0; g < g_.order(); ++g) {
        const std::size_t pa = a_.action[g].image(p);
        const std::size_t qb = b_.action[g].image(f[p].to);
        const Element tw = aut.mul(aut.mul(b_.action[g].twist_at(f[p].to), f[p].twist),
                                   aut.inv(a_.action[g].twist_at(p)));
        if (f[pa].to == WreathMap::npos) {
          if (used[qb] || !compatible(pa, qb)) return false;
          f[pa] = {qb, tw};
          used[qb] = true;
          queue.push_back(pa);
        } else if (f[pa].to != qb || f[pa].twist != tw) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<std::vector<Slot>> extend(std::vector<Slot>& f, std::vector<bool>& used) {
    auto it = std::find_if(f.begin(), f.end(), [](const Slot& s) { return s.to == WreathMap::npos; });
    if (it == f.end()) return f;
    const std::size_t p = static_cast<std::size_t>(it - f.begin());
    for (std::size_t q = 0; q < used.size(); ++q) {
      if (used[q] || !compatible(p, q)) continue;
      for (Element tw = 0; tw < a_.envelope->aut(p).order(); ++tw) {
        auto f2 = f;
        auto used2 = used;
        f2[p] = {q, tw};
        used2[q] = true;
        if (!propagate(f2, used2, {p})) continue;
        if (auto done = extend(f2, used2)) return done;
      }
    }
    return std::nullopt;
  }

  const FiniteGroup& g_;
  const GlobalizationResult& a_;
  const GlobalizationResult& b_;
};

}  // namespace

std::optional<WreathMap> envelopes_equivalent(const GroupPtr& group, const GlobalizationResult& a,
                                              const GlobalizationResult& b) {
  const FiniteGroup& g = *group;
  if (a.action.size() != g.order() || b.action.size() != g.order()) return std::nullopt;
  if (a.envelope->size() != b.envelope->size()) return std::nullopt;
  if (a.embedding.to.size() != b.embedding.to.size()) return std::nullopt;

  using Slot = EnvelopeIsoSearch::Slot;
  std::vector<Slot> f(a.envelope->size());
  for (std::size_t i = 0; i < a.embedding.to.size(); ++i) {
    const std::size_t p = a.embedding.to[i];
    const FiniteGroup& aut = a.envelope->aut(p);
    // F(phi_a(i)) carries twist phi_b(i) * phi_a(i)^-1.
    const Slot want{b.embedding.to[i], aut.mul(b.embedding.twist[i], aut.inv(a.embedding.twist[i]))};
    if (f[p].to != WreathMap::npos && (f[p].to != want.to || f[p].twist != want.twist))
      return std::nullopt;
    f[p] = want;
  }
  auto found = EnvelopeIsoSearch(g, a, b).run(std::move(f));
  if (!found) return std::nullopt;
  WreathMap iso{full_ideal(a.envelope), full_ideal(b.envelope), {}, {}};
  for (const Slot& s : *found) {
    iso.to.push_back(s.to);
    iso.twist.push_back(s.twist);
  }
  return iso;
}

// --- enumeration ------------------------------------------------------------------

namespace {

class TwistEnumerator {
 public:
  TwistEnumerator(const SetPartialAction& shape, const Block& block, const AlgebraPtr& algebra)
      : shape_(shape), g_(*shape.group), aut_(*block.aut), algebra_(algebra),
        n_(shape.size()), twist_(g_.order(), std::vector<Element>(n_, 0)),
        assigned_(g_.order(), false) {
    for (Element a = 0; a < g_.order(); ++a)
      if (a != g_.identity() && a <= g_.inv(a)) slots_.push_back(a);
    std::fill(twist_[g_.identity()].begin(), twist_[g_.identity()].end(), aut_.identity());
    assigned_[g_.identity()] = true;
  }

  void run(std::vector<AlgebraPartialAction>& out) {
    out_ = &out;
    search(0);
  }

 private:
  bool consistent(Element a, Element b) const {
    const Element ab = g_.mul(a, b);
    for (Point x = 0; x < n_; ++x) {
      const Point y = shape_.maps[b](x);
      if (y == kNoPoint || !shape_.maps[a].defined(y)) continue;
      if (aut_.mul(twist_[a][y], twist_[b][x]) != twist_[ab][x]) return false;
    }
    return true;
  }

  bool consistent_with(Element s) const {
    const Element si = g_.inv(s);
    for (Element a = 0; a < g_.order(); ++a) {
      if (!assigned_[a]) continue;
      for (Element b = 0; b < g_.order(); ++b) {
        const Element ab = g_.mul(a, b);
        if (!assigned_[b] || !assigned_[ab]) continue;
        const bool touches = a == s || a == si || b == s || b == si || ab == s || ab == si;
        if (touches && !consistent(a, b)) return false;
      }
    }
    return true;
  }

  void search(std::size_t slot) {
    if (slot == slots_.size()) {
      emit();
      return;
    }
    const Element s = slots_[slot];
    const Element si = g_.inv(s);
    const PointSet dom = shape_.maps[s].domain();
    std::vector<Element> choice(dom.size(), 0);
    for (;;) {
      bool ok = true;
      for (std::size_t k = 0; k < dom.size(); ++k) twist_[s][dom[k]] = choice[k];
      // alpha_{s^-1} is the inverse map, with inverse twists.
      for (std::size_t k = 0; k < dom.size() && ok; ++k) {
        const Point y = shape_.maps[s](dom[k]);
        const Element want = aut_.inv(choice[k]);
        if (s == si && twist_[s][y] != want) ok = false;
        twist_[si][y] = want;
      }
      if (ok) {
        assigned_[s] = assigned_[si] = true;
        if (consistent_with(s)) search(slot + 1);
        assigned_[s] = assigned_[si] = false;
      }
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == aut_.order()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }

  void emit() {
    AlgebraPartialAction pa{shape_.group, algebra_, {}, {}};
    for (Element a = 0; a < g_.order(); ++a) {
      pa.domains.push_back({algebra_, shape_.domains[a]});
      WreathMap w{{algebra_, shape_.maps[a].domain()}, {algebra_, shape_.domains[a]}, {}, {}};
      for (Point x : w.source.support) {
        w.to.push_back(shape_.maps[a](x));
        w.twist.push_back(twist_[a][x]);
      }
      pa.maps.push_back(std::move(w));
    }
    out_->push_back(std::move(pa));
  }

  const SetPartialAction& shape_;
  const FiniteGroup& g_;
  const FiniteGroup& aut_;
  AlgebraPtr algebra_;
  std::size_t n_;
  std::vector<std::vector<Element>> twist_;
  std::vector<bool> assigned_;
  std::vector<Element> slots_;
  std::vector<AlgebraPartialAction>* out_ = nullptr;
};

}  // namespace

std::vector<AlgebraPartialAction> enumerate_algebra_partial_actions(const GroupPtr& g,
                                                                    const Block& block,
                                                                    std::size_t n) {
  if (n == 0) throw Error(Errc::MalformedInput, "a block algebra needs at least one block");
  const AlgebraPtr algebra = BlockAlgebra::power(block, n);
  std::vector<AlgebraPartialAction> out;
  for (const SetPartialAction& shape : enumerate_partial_actions(g, n))
    TwistEnumerator(shape, block, algebra).run(out);
  return out;
}

}  // namespace pact
