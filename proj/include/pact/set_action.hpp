#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pact/group.hpp"
#include "pact/report.hpp"

namespace pact {

/// Index of a point in a finite carrier.
using Point = std::size_t;
inline constexpr Point kNoPoint = static_cast<Point>(-1);

/// Sorted, duplicate-free list of points.
using PointSet = std::vector<Point>;

PointSet intersect(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& a, const PointSet& b);

/// An injective or not-yet-checked partial function on 0..n-1.
class PartialMap {
 public:
  PartialMap() = default;
  explicit PartialMap(std::size_t carrier_size) : img_(carrier_size, kNoPoint) {}

  static PartialMap identity(std::size_t n);
  static PartialMap identity_on(std::size_t n, const PointSet& domain);

  std::size_t carrier_size() const noexcept { return img_.size(); }
  bool defined(Point x) const { return x < img_.size() && img_[x] != kNoPoint; }
  /// kNoPoint where undefined.
  Point operator()(Point x) const { return x < img_.size() ? img_[x] : kNoPoint; }
  void set(Point x, Point y) { img_.at(x) = y; }
  const std::vector<Point>& images() const noexcept { return img_; }

  PointSet domain() const;
  PointSet image() const;
  bool injective() const;
  bool is_identity_on(const PointSet& s) const;
  /// Precondition: injective().
  PartialMap inverse() const;
  /// Image of s intersected with the domain.
  PointSet apply(const PointSet& s) const;
  PartialMap restricted(const PointSet& domain) const;

  friend auto operator<=>(const PartialMap&, const PartialMap&) = default;
  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  std::vector<Point> img_;
};

/// outer after inner, defined where both steps are.
PartialMap compose(const PartialMap& outer, const PartialMap& inner);

/// Partial action of a finite group on a finite set. Domains are stored for
/// every element (empty sets included); maps[g] is alpha_g: D_{g^-1} -> D_g.
struct SetPartialAction {
  GroupPtr group;
  std::vector<std::string> carrier;
  std::vector<PointSet> domains;
  std::vector<PartialMap> maps;

  std::size_t size() const noexcept { return carrier.size(); }
};

bool operator==(const SetPartialAction& a, const SetPartialAction& b);
/// Equality of the action data, ignoring carrier labels.
bool same_partial_action(const SetPartialAction& a, const SetPartialAction& b);

/// Labels "a", "b", ... for up to 26 points, "p0", "p1", ... beyond.
std::vector<std::string> default_labels(std::size_t n);

struct GlobalSetAction {
  GroupPtr group;
  std::vector<std::string> carrier;
  std::vector<std::vector<Point>> perms;  // beta_g as an image vector

  std::size_t size() const noexcept { return carrier.size(); }
  SetPartialAction as_partial() const;
};

bool operator==(const GlobalSetAction& a, const GlobalSetAction& b);

/// beta_e = id, each beta_g a permutation, beta_g beta_t = beta_gt.
VerificationReport verify_group_action(const GlobalSetAction& action);

/// Throws MalformedInput unless sizes agree, points are in range, domains are
/// sorted sets, every map is injective and every alpha_g maps onto D_g.
void check_well_formed(const SetPartialAction& action);

/// Itemized check of the partial action axioms. Items: "(i) identity",
/// "typing", "(ii) domain", "(iii) composition", "derived: image identity",
/// "derived: inverse". Throws MalformedInput via check_well_formed.
VerificationReport verify_partial_action(const SetPartialAction& action);

/// Fast yes/no version of verify_partial_action for well-formed input.
bool is_partial_action(const SetPartialAction& action);

bool is_global(const SetPartialAction& action);
/// Throws MalformedInput if some domain is not the whole carrier.
GlobalSetAction to_global(const SetPartialAction& action);

/// D_g = subset cap beta_g(subset), alpha_g = beta_g restricted. Points of the
/// result are the subset in increasing order, keeping their labels.
SetPartialAction restrict_global(const GlobalSetAction& global, const PointSet& subset);

/// Extension by zero along an injective homomorphism embedding: H -> G
/// (embedding[k] is the image of H's element k). Throws NotASubgroup if
/// embedding is not an injective homomorphism.
SetPartialAction extend_by_zero(const SetPartialAction& action_of_h, const GroupPtr& g,
                                std::span<const Element> embedding);
/// As above with action_of_h.group == h.as_group().
SetPartialAction extend_by_zero(const SetPartialAction& action_of_h, const Subgroup& h);

struct GlobalPart {
  Subgroup subgroup;
  GlobalSetAction action;  // over subgroup.as_group()
};

/// H = {h : D_h = X} and the restriction of the action to H.
GlobalPart global_part(const SetPartialAction& action);

struct SetGlobalization {
  GlobalSetAction envelope;
  std::vector<Point> embedding;                        // X -> X_env
  std::vector<std::pair<Element, Point>> orbit_witness;  // point = beta_g(embedding(x))
};

/// Enveloping action as the quotient of G x X by (g,x) ~ (t,y) iff
/// alpha_{t^-1 g}(x) = y. Classes are listed by their least (g,x), where the
/// identity sorts before every other element.
SetGlobalization globalize_set(const SetPartialAction& action);

/// The enveloping-action conditions carried over to sets. Items:
/// "global_action", "ideal" (embedding injective), "covers", "intersection",
/// "equivariance", "size_bound".
VerificationReport verify_set_globalization(const SetPartialAction& action,
                                            const SetGlobalization& glob);

/// The partial action the envelope induces on the embedded copy of X, in the
/// original point numbering.
SetPartialAction restrict_envelope(const SetGlobalization& glob, std::vector<std::string> labels);

/// Equivariant bijection f: a.envelope -> b.envelope with f o a.embedding =
/// b.embedding, found by exact backtracking; nullopt if none exists.
std::optional<std::vector<Point>> envelopes_equivalent(const SetGlobalization& a,
                                                       const SetGlobalization& b);

/// Images of every alpha_g concatenated in element order.
std::vector<Point> canonical_key(const SetPartialAction& action);
/// Default labels and domains recomputed as images.
SetPartialAction canonicalize(const SetPartialAction& action);

inline constexpr std::size_t kEnumMaxGroupOrder = 6;
inline constexpr std::size_t kEnumMaxCarrier = 4;

/// Every partial action of g on n points, sorted by canonical_key. Throws
/// SizeLimit beyond |G| <= 6, n <= 4.
std::vector<SetPartialAction> enumerate_partial_actions(const GroupPtr& g, std::size_t n);

/// All injective partial maps on n points.
std::vector<PartialMap> partial_bijections(std::size_t n);

/// "g:{x->y,...}" per element with a nonempty domain.
std::string describe(const SetPartialAction& action);

}  // namespace pact
