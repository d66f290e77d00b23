#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pact/group.hpp"

namespace pact {

/// An indecomposable block, known only by its isomorphism class label and
/// its automorphism group. K-line blocks carry the trivial group.
struct Block {
  std::string iso_class;
  GroupPtr aut;

  bool is_k_line() const { return aut->order() == 1; }
};

bool operator==(const Block& a, const Block& b);

class BlockAlgebra;
using AlgebraPtr = std::shared_ptr<const BlockAlgebra>;

/// A finite product of blocks; position i carries the primitive central
/// idempotent e_i.
class BlockAlgebra {
 public:
  /// Throws MalformedInput for an empty list or a missing aut group, and
  /// ClassMismatch if two blocks share a label but not an aut group.
  static AlgebraPtr make(std::vector<Block> blocks);
  /// n copies of one block.
  static AlgebraPtr power(const Block& block, std::size_t n);
  /// n K-line blocks of class "K".
  static AlgebraPtr k_lines(std::size_t n);

  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const FiniteGroup& aut(std::size_t i) const { return *blocks_.at(i).aut; }
  bool all_k_lines() const;

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  explicit BlockAlgebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
  std::vector<Block> blocks_;
};

/// Ideal generated by the idempotents at the support positions.
struct BlockIdeal {
  AlgebraPtr algebra;
  std::vector<std::size_t> support;  // sorted

  bool contains(std::size_t pos) const;
  bool is_zero() const { return support.empty(); }
  bool is_full() const { return algebra && support.size() == algebra->size(); }
};

bool operator==(const BlockIdeal& a, const BlockIdeal& b);

BlockIdeal full_ideal(const AlgebraPtr& algebra);
BlockIdeal zero_ideal(const AlgebraPtr& algebra);
/// Sorts and validates the support; throws MalformedInput on bad positions.
BlockIdeal make_ideal(const AlgebraPtr& algebra, std::vector<std::size_t> support);

/// psi(I): the positions i with e_i I != 0, i.e. the support.
std::vector<std::size_t> ideal_psi(const BlockIdeal& ideal);

/// Isomorphic iff the supports carry the same multiset of iso classes (for
/// K-line algebras: the same size).
bool ideals_isomorphic(const BlockIdeal& a, const BlockIdeal& b);

/// Blockwise isomorphism source -> target: source.support[k] goes to to[k]
/// with automorphism twist[k] of that block applied first. Not validated on
/// construction; see validate_wreath_map().
struct WreathMap {
  BlockIdeal source;
  BlockIdeal target;
  std::vector<std::size_t> to;
  std::vector<Element> twist;

  /// Slot of pos in source.support, or npos.
  std::size_t slot(std::size_t pos) const;
  bool defined(std::size_t pos) const { return slot(pos) != npos; }
  std::size_t image(std::size_t pos) const { return to.at(slot(pos)); }
  Element twist_at(std::size_t pos) const { return twist.at(slot(pos)); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

bool operator==(const WreathMap& a, const WreathMap& b);

/// Throws MalformedInput unless to is a bijection source.support ->
/// target.support and each twist lies in its block's aut group; throws
/// ClassMismatch if a block is sent to a block of another class.
void validate_wreath_map(const WreathMap& w);

/// The identity map of an ideal.
WreathMap identity_map(const BlockIdeal& ideal);

/// Coordinate relabeling sum l_x e_x -> sum l_x e_theta(x); theta is aligned
/// with a.support. Throws ClassMismatch if theta crosses iso classes.
WreathMap make_ideal_iso(const BlockIdeal& a, const BlockIdeal& b, std::span<const std::size_t> theta);

/// Symbolic payload twist(token) sitting at one block position.
struct Payload {
  std::string token;
  Element twist = 0;

  friend bool operator==(const Payload&, const Payload&) = default;
};

/// A formal element sum_i payload_i e_i of a block algebra.
struct FormalSum {
  AlgebraPtr algebra;
  std::map<std::size_t, Payload> terms;

  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    return *a.algebra == *b.algebra && a.terms == b.terms;
  }
};

/// Untwisted tokens at each given position.
FormalSum formal_sum(const AlgebraPtr& algebra, const std::map<std::size_t, std::string>& tokens);

/// Moves the payload at i to to(i), applying twist(i). Throws
/// SupportViolation if x has a term outside w.source.support.
FormalSum wreath_apply(const WreathMap& w, const FormalSum& x);

/// second o first. Position map composes; twist at i is
/// second.twist(first(i)) * first.twist(i). Throws CompositionMismatch unless
/// first.target == second.source.
WreathMap wreath_compose(const WreathMap& second, const WreathMap& first);

WreathMap wreath_inverse(const WreathMap& w);

/// "(t1 x, t2 y, ...)" per position; blank positions print as 0.
std::string render(const FormalSum& x);

struct IsotypicComponent {
  std::string iso_class;
  std::vector<std::size_t> positions;

  friend bool operator==(const IsotypicComponent&, const IsotypicComponent&) = default;
};

/// Positions grouped by iso class, classes in order of first occurrence.
std::vector<IsotypicComponent> decompose_isotypic(const BlockAlgebra& algebra);

/// Every full-support WreathMap of the algebra onto itself.
std::vector<WreathMap> all_automorphisms(const AlgebraPtr& algebra);

}  // namespace pact
