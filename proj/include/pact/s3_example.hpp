#pragma once

#include <string>
#include <vector>

#include "pact/algebra_action.hpp"
#include "pact/group.hpp"

namespace pact::s3 {

/// Z_2 = {1, sigma} acting on the two-way quiver algebra, extended by zero
/// from L = <(12)> to S_3, together with its globalization.
struct Example {
  GroupPtr group;
  Subgroup subgroup;
  AlgebraPtr lambda;
  SubgroupAction h_action;
  AlgebraPartialAction partial;
  CosetFactorization factorization;
  GlobalizationResult globalization;
};

Example build();

/// The 17 (g, g_i) rows of the published j/h table, labels as printed there.
std::vector<ClaimedRow> reference_rows();
inline constexpr const char* kReferenceSource = "published S3 two-way quiver j/h table";

/// beta_g(x,y,z) written out for g in S_3, block order (1,(13),(23)).
struct BetaFormula {
  std::string g;
  std::string image;  // e.g. "(y,x,(12)z)"
};

std::vector<BetaFormula> reference_beta();

struct BetaCheck {
  std::string g;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// Applies each beta_g of the globalization to (x,y,z) and compares the
/// rendered result with reference_beta().
std::vector<BetaCheck> check_beta(const Example& ex);

}  // namespace pact::s3
