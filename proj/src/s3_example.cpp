#include "pact/s3_example.hpp"

#include "pact/error.hpp"

namespace pact::s3 {

Example build() {
  GroupPtr s3 = symmetric_group(3);
  const Element t12 = s3->at("(12)");
  Subgroup l = subgroup_closure(s3, std::vector<Element>{t12});
  // Aut(Lambda) only needs sigma: swap the vertices and the two arrows.
  const Block quiver{"two-way-quiver", symmetric_group(2)};
  AlgebraPtr lambda = BlockAlgebra::make({quiver});
  SubgroupAction act = make_subgroup_action(l, quiver.aut, {0, 1});
  AlgebraPartialAction partial = extend_by_zero_algebra(lambda, act);
  CosetFactorization cf = coset_factorize(left_transversal(l));
  GlobalizationResult glob = globalize_extension_by_zero(lambda, act);
  return {s3, std::move(l), lambda, std::move(act), std::move(partial), std::move(cf), std::move(glob)};
}

std::vector<ClaimedRow> reference_rows() {
  return {
      {"1", "1", "1", "1"},
      {"1", "(23)", "(23)", "1"},
      {"1", "(13)", "(13)", "1"},
      {"(12)", "1", "(13)", "(12)"},
      {"(12)", "(23)", "(13)", "(12)"},
      {"(23)", "1", "(23)", "(23)"},
      {"(23)", "(23)", "1", "1"},
      {"(23)", "(13)", "(13)", "(12)"},
      {"(123)", "1", "(13)", "(12)"},
      {"(123)", "(23)", "1", "(12)"},
      {"(123)", "(13)", "(23)", "1"},
      {"(13)", "1", "(13)", "1"},
      {"(13)", "(23)", "(23)", "(12)"},
      {"(13)", "(13)", "1", "1"},
      {"(132)", "1", "(23)", "(12)"},
      {"(132)", "(23)", "(13)", "1"},
      {"(132)", "(13)", "1", "(12)"},
  };
}

std::vector<BetaFormula> reference_beta() {
  return {
      {"1", "(x,y,z)"},
      {"(12)", "((12)x,(12)z,(12)y)"},
      {"(13)", "(y,x,(12)z)"},
      {"(123)", "((12)z,(12)x,y)"},
      {"(23)", "(z,(12)y,x)"},
      {"(132)", "((12)y,z,(12)x)"},
  };
}

std::vector<BetaCheck> check_beta(const Example& ex) {
  const auto& reps = ex.factorization.transversal().reps();
  const std::vector<Element> order = {ex.group->at("1"), ex.group->at("(13)"), ex.group->at("(23)")};
  // Envelope blocks follow the transversal; the formulas follow `order`.
  std::vector<std::size_t> slot(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto i = ex.factorization.transversal().rep_index(order[k]);
    if (!i || reps.size() != order.size())
      throw Error(Errc::InternalInconsistency, "transversal is not {1,(13),(23)}");
    slot[k] = *i;
  }
  const AlgebraPtr& gamma = ex.globalization.envelope;
  const char* vars[] = {"x", "y", "z"};
  std::map<std::size_t, std::string> tokens;
  for (std::size_t k = 0; k < order.size(); ++k) tokens[slot[k]] = vars[k];
  const FormalSum xyz = formal_sum(gamma, tokens);

  std::vector<BetaCheck> out;
  for (const BetaFormula& f : reference_beta()) {
    const FormalSum img = wreath_apply(ex.globalization.action[ex.group->at(f.g)], xyz);
    FormalSum reordered{gamma, {}};
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto it = img.terms.find(slot[k]);
      if (it != img.terms.end()) reordered.terms[k] = it->second;
    }
    const std::string got = render(reordered);
    out.push_back({f.g, f.image, got, got == f.image});
  }
  return out;
}

}  // namespace pact::s3
