#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pact {

/// Index of a group element, 0..order-1.
using Element = std::size_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Where a group came from; lets serializers emit the compact form back.
struct GroupOrigin {
  enum class Kind { Cayley, Symmetric, Cyclic };
  Kind kind = Kind::Cayley;
  std::size_t n = 0;

  friend bool operator==(const GroupOrigin&, const GroupOrigin&) = default;
};

/// A finite group given by its full multiplication table.
///
/// Instances are only produced through make_group() and the named
/// constructors below, so every live FiniteGroup satisfies the group axioms.
class FiniteGroup {
 public:
  static constexpr std::size_t kMaxOrder = 64;

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }

  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Element> find(std::string_view label) const;
  /// Like find() but throws UnknownElement.
  Element at(std::string_view label) const;

  std::vector<std::vector<Element>> table() const;
  const GroupOrigin& origin() const noexcept { return origin_; }

  bool is_abelian() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b);

 private:
  friend GroupPtr make_group(const std::vector<std::vector<Element>>&,
                             std::vector<std::string>, GroupOrigin);
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
  GroupOrigin origin_;
};

/// Validates a Cayley table and builds the group. Names default to "g0", "g1", ...
GroupPtr make_group(const std::vector<std::vector<Element>>& table,
                    std::vector<std::string> names = {}, GroupOrigin origin = {});

/// S_n for 1 <= n <= 6 with cycle-notation labels. Products compose right to
/// left: (a*b)(x) = a(b(x)). Elements are ordered by number of moved points,
/// then by label, so S_3 is 1,(12),(13),(23),(123),(132).
GroupPtr symmetric_group(std::size_t n);

/// Z_n written additively, labels "0".."n-1".
GroupPtr cyclic_group(std::size_t n);

GroupPtr trivial_group();

/// G x H with labels "(g,h)"; element (g,h) has index g*|H| + h.
GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Cycle notation for an image vector over 0..n-1, printed 1-based.
std::string cycle_notation(std::span<const std::size_t> images);

class Subgroup {
 public:
  /// Throws NotASubgroup unless members is nonempty, contains the identity and
  /// is closed under products and inverses.
  Subgroup(GroupPtr parent, std::vector<Element> members);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Element a) const;
  std::size_t index() const { return parent_->order() / members_.size(); }

  /// H as a standalone group; element k corresponds to members()[k].
  GroupPtr as_group() const;
  /// Position of a in members(); a must be a member.
  std::size_t local_index(Element a) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return *a.parent_ == *b.parent_ && a.members_ == b.members_;
  }

 private:
  GroupPtr parent_;
  std::vector<Element> members_;  // sorted
  GroupPtr as_group_;
};

/// True iff members (any order, duplicates ignored) form a subgroup of g.
bool is_subgroup(const FiniteGroup& g, std::span<const Element> members);

Subgroup subgroup_closure(const GroupPtr& g, std::span<const Element> generators);

/// Every subgroup of g, ordered by (size, members).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

/// All homomorphisms from -> to, each as the image vector indexed by element.
std::vector<std::vector<Element>> homomorphisms(const FiniteGroup& from, const FiniteGroup& to);

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const Element> images);

class LeftTransversal {
 public:
  const Subgroup& subgroup() const noexcept { return subgroup_; }
  const std::vector<Element>& reps() const noexcept { return reps_; }
  std::size_t size() const noexcept { return reps_.size(); }
  /// Index into reps() of the coset containing a.
  std::size_t coset_of(Element a) const { return coset_of_[a]; }
  /// Index into reps() of a, if a is a representative.
  std::optional<std::size_t> rep_index(Element a) const;

 private:
  friend LeftTransversal left_transversal(const Subgroup& h);
  explicit LeftTransversal(Subgroup h) : subgroup_(std::move(h)) {}

  Subgroup subgroup_;
  std::vector<Element> reps_;
  std::vector<std::size_t> coset_of_;
};

/// One representative per left coset gH. reps()[0] is the identity; the rest
/// are the least element index of each coset, listed in increasing order.
LeftTransversal left_transversal(const Subgroup& h);

/// The maps j: G x T -> T and h: G x T -> H with g*g_i = j(g,g_i)*h(g,g_i).
class CosetFactorization {
 public:
  const LeftTransversal& transversal() const noexcept { return transversal_; }
  const FiniteGroup& group() const { return *transversal_.subgroup().parent(); }

  /// Transversal index of j(g, g_i) where g_i = reps()[i].
  std::size_t j_index(Element g, std::size_t i) const { return j_[g * width_ + i]; }
  Element j(Element g, std::size_t i) const { return transversal_.reps()[j_index(g, i)]; }
  Element h(Element g, std::size_t i) const { return h_[g * width_ + i]; }

 private:
  friend CosetFactorization coset_factorize(const LeftTransversal& t);
  explicit CosetFactorization(LeftTransversal t) : transversal_(std::move(t)) {}

  LeftTransversal transversal_;
  std::size_t width_ = 0;
  std::vector<std::size_t> j_;
  std::vector<Element> h_;
};

/// Builds j and h and checks the defining equality, the identity rows, the
/// cocycle identities and that every g permutes T. Throws InternalInconsistency
/// if any of those fail.
CosetFactorization coset_factorize(const LeftTransversal& t);

struct ClaimedRow {
  std::string g;
  std::string gi;
  std::string j;
  std::string h;
};

enum class RowStatus { Match, Mismatch, Missing };

struct RowComparison {
  Element g = 0;
  std::size_t gi = 0;  // transversal index
  Element j = 0;       // recomputed
  Element h = 0;       // recomputed
  RowStatus status = RowStatus::Missing;
  std::optional<ClaimedRow> claimed;
  std::string note;
};

struct DiscrepancyReport {
  /// Claimed rows in input order, then the missing (g, g_i) pairs.
  std::vector<RowComparison> rows;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t missing = 0;
};

/// Compares claimed ((g,g_i), j, h) rows with the recomputed factorization.
/// Throws UnknownElement if g is not a group label or g_i is not a
/// representative; a claimed j or h that is not even a group label is also
/// UnknownElement.
DiscrepancyReport cross_validate_table(const CosetFactorization& cf,
                                       std::span<const ClaimedRow> claimed);

std::string_view to_string(RowStatus s) noexcept;

}  // namespace pact
