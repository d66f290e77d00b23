#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pact/block_algebra.hpp"
#include "pact/group.hpp"
#include "pact/report.hpp"
#include "pact/set_action.hpp"

namespace pact {

/// Partial action on a block algebra: ideals S_g and blockwise isomorphisms
/// alpha_g: S_{g^-1} -> S_g, one of each per group element.
struct AlgebraPartialAction {
  GroupPtr group;
  AlgebraPtr algebra;
  std::vector<BlockIdeal> domains;
  std::vector<WreathMap> maps;
};

bool operator==(const AlgebraPartialAction& a, const AlgebraPartialAction& b);

/// Throws MalformedInput for missing or misaligned data, maps that are not
/// bijections onto S_g, or ideals over a different algebra.
void check_well_formed(const AlgebraPartialAction& action);

/// Items: "(i) identity", "typing", "class preservation", "(ii) domain",
/// "(iii) composition", "derived: image identity", "derived: inverse".
VerificationReport verify_algebra_partial_action(const AlgebraPartialAction& action);

bool is_partial_action(const AlgebraPartialAction& action);
bool is_global(const AlgebraPartialAction& action);

enum class DomainShape { Zero, Full, Partial };

struct ComponentShape {
  std::string iso_class;
  std::vector<std::size_t> positions;
  std::vector<DomainShape> per_element;  // S_g restricted to the component
};

struct GlobalizabilityReport {
  /// Every support-generated ideal is generated by a central idempotent, so
  /// this is always true for data in this model.
  bool globalizable = true;
  std::vector<ComponentShape> components;
  /// Single-block algebras only: each S_g is zero or everything.
  std::optional<std::vector<DomainShape>> dichotomy;
};

GlobalizabilityReport globalizable_check(const AlgebraPartialAction& action);

/// A global action of a subgroup H on one block: a homomorphism H -> aut,
/// images[k] being the image of subgroup.members()[k].
struct SubgroupAction {
  Subgroup subgroup;
  GroupPtr aut;
  std::vector<Element> images;
};

/// Throws NotAHomomorphism if images do not define one.
SubgroupAction make_subgroup_action(Subgroup subgroup, GroupPtr aut, std::vector<Element> images);

/// For a single-block algebra: H = {g : S_g = Lambda} and the twists of
/// alpha_h as a homomorphism H -> Aut(Lambda). Throws MalformedInput if the
/// algebra has more than one block.
SubgroupAction classify_indecomposable(const AlgebraPartialAction& action);

/// S_g = Lambda and alpha_g = the H-action for g in H, zero elsewhere.
AlgebraPartialAction extend_by_zero_algebra(const AlgebraPtr& lambda, const SubgroupAction& h_action);

/// Block i of an envelope is beta_g(e_position) of the original algebra.
struct BlockOrigin {
  Element g = 0;
  std::size_t position = 0;

  friend bool operator==(const BlockOrigin&, const BlockOrigin&) = default;
};

struct GlobalizationResult {
  AlgebraPtr envelope;
  std::vector<BlockOrigin> provenance;
  std::vector<WreathMap> action;  // beta_g on the full envelope
  WreathMap embedding;            // Lambda -> ideal of the envelope
  VerificationReport checks;
  std::string pipeline;
};

/// beta_e = id and beta_g beta_t = beta_gt on the full envelope. Items:
/// "automorphisms", "identity", "composition".
VerificationReport verify_global_action(const GroupPtr& group, const AlgebraPtr& envelope,
                                        const std::vector<WreathMap>& action);

/// The four enveloping-action conditions for candidate data. Items: "ideal",
/// "covers", "intersection", "equivariance". Throws MalformedInput when the
/// candidate's beta maps are not automorphisms of the envelope or the
/// embedding does not start from all of Lambda.
VerificationReport verify_enveloping(const AlgebraPartialAction& action,
                                     const GlobalizationResult& candidate);

/// One copy of Lambda per left coset representative g_i; beta_g sends copy
/// g_i to copy j(g,g_i) twisted by the H-action of h(g,g_i).
GlobalizationResult globalize_extension_by_zero(const AlgebraPtr& lambda,
                                                const SubgroupAction& h_action);

/// [G:H] for the global part H of a single-block action.
std::size_t envelope_block_count(const AlgebraPartialAction& action);

/// Restriction to each isotypic component. Components must be contiguous in
/// block order (Lambda_1^n1 x ... x Lambda_k^nk), else MalformedInput.
std::vector<AlgebraPartialAction> split_partial_action(const AlgebraPartialAction& action);

/// Blockwise concatenation. Throws GroupMismatch if the groups differ.
AlgebraPartialAction product_partial_action(const std::vector<AlgebraPartialAction>& parts);

/// Induced partial action on the primitive idempotents, labelled e1..en.
SetPartialAction restrict_to_idempotents(const AlgebraPartialAction& action);

/// The partial action on K e_1 x ... x K e_n with trivial twists.
AlgebraPartialAction lift_set_action(const SetPartialAction& action);

/// Envelope of an action on Lambda^n: one block per point of the envelope of
/// the induced set action, with twists carried along the class witnesses.
/// Throws TwistTransportConflict if two witnesses disagree, which can only
/// happen for input that is not a partial action.
GlobalizationResult globalize_block_power(const AlgebraPartialAction& action);

/// Envelope for K-line algebras: blocks permuted by the envelope set action.
/// Throws NotKBlocks if some block has a nontrivial aut group.
GlobalizationResult globalize_k_blocks(const AlgebraPartialAction& action);

/// Picks the pipeline from the algebra's shape: one block, all K-lines, one
/// iso class, or a product of isotypic components.
GlobalizationResult globalize(const AlgebraPartialAction& action);

/// Equivariant isomorphism F: a.envelope -> b.envelope with F o phi_a = phi_b,
/// by exact backtracking over block images and twists.
std::optional<WreathMap> envelopes_equivalent(const GroupPtr& group, const GlobalizationResult& a,
                                              const GlobalizationResult& b);

/// Every partial action of g on block^n, ordered by the induced set action
/// and then by twists. Same size caps as enumerate_partial_actions.
std::vector<AlgebraPartialAction> enumerate_algebra_partial_actions(const GroupPtr& g,
                                                                    const Block& block,
                                                                    std::size_t n);

}  // namespace pact
