#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "potentia/bimatrix.hpp"
#include "potentia/game.hpp"
#include "potentia/minimal_system.hpp"
#include "potentia/potential.hpp"

namespace potentia {

/// One detection method's verdict on a game.
struct CriterionResult {
  std::string method;     // CLI method key, e.g. "corner"
  std::string reference;  // which characterization it implements
  bool potential = false;
  double max_residual = 0.0;
  std::size_t equalities = 0;
};

struct CheckReport {
  std::vector<CriterionResult> results;
  bool all_agree = true;
  bool potential = false;  // consensus verdict (first result when agreeing)
};

/// Methods meaningful for the game's shape. Bi-matrix criteria apply to any
/// 2-player game; the multi-player machinery needs a uniform strategy count.
inline std::vector<std::string> applicable_methods(const FiniteGame& game) {
  const bool two_player = game.players() == 2;
  std::vector<std::string> methods;
  if (two_player || game.uniform()) methods.push_back("equation");
  if (two_player) {
    methods.insert(methods.end(),
                   {"theorem1", "corner", "hino", "four-cycle", "centering"});
  }
  if (two_player || game.uniform()) methods.push_back("minimal");
  if (game.uniform()) {
    methods.push_back("t21");
    methods.push_back("reshaped");
  }
  methods.push_back("subgames");
  return methods;
}

/// Run one detection method; `method` must be applicable to the game shape.
/// Methods evaluating two equivalent forms (t21, reshaped) report the worse
/// residual of the two and demand both verdicts to be "potential".
inline CriterionResult run_criterion(const FiniteGame& game,
                                     const std::string& method,
                                     const Tolerance& tol = {}) {
  CriterionResult r;
  r.method = method;
  if (method == "equation") {
    const EquationCheck c = is_potential_by_equation(game, tol);
    r.reference = "potential equation solvable";
    r.potential = c.potential;
    r.max_residual = c.max_residual;
    r.equalities = (game.players() - 1) * game.profile_space();
  } else if (method == "theorem1" || method == "corner" || method == "hino" ||
             method == "four-cycle" || method == "centering") {
    const BiMatrixGame bm = as_bimatrix(game);
    const Matrix rel = bm.relative_payoffs();
    CriterionOutcome c;
    if (method == "theorem1") {
      c = bimatrix_is_potential(bm, tol);
      r.reference = "B R B^T = 0";
    } else if (method == "corner") {
      c = check_corner(rel, tol);
      r.reference = "corner identities";
    } else if (method == "hino") {
      c = check_hino(rel, tol);
      r.reference = "adjacent-pair identities";
    } else if (method == "four-cycle") {
      c = check_four_cycle(rel, tol);
      r.reference = "all four-cycle identities";
    } else {
      c = check_centering(rel, tol);
      r.reference = "H R H = 0";
    }
    r.potential = c.potential;
    r.max_residual = c.max_residual;
    r.equalities = c.equalities;
  } else if (method == "minimal") {
    const MinimalCheck c = is_potential_minimal(game, tol);
    r.reference = "minimal verification system";
    r.potential = c.potential;
    r.max_residual = c.max_residual;
    r.equalities = c.residuals.size();
  } else if (method == "t21") {
    const CriterionOutcome ii =
        check_pairwise_t21(game, tol, T21Variant::conditions_ii);
    const CriterionOutcome iii =
        check_pairwise_t21(game, tol, T21Variant::conditions_iii);
    r.reference = "pairwise double-boundary rows (both variants)";
    r.potential = ii.potential && iii.potential;
    r.max_residual = std::max(ii.max_residual, iii.max_residual);
    r.equalities = ii.equalities + iii.equalities;
  } else if (method == "reshaped") {
    const CriterionOutcome bform = check_pairwise_reshaped(game, tol, false);
    const CriterionOutcome hform = check_pairwise_reshaped(game, tol, true);
    r.reference = "pair-reshaped relative payoffs (B and H forms)";
    r.potential = bform.potential && hform.potential;
    r.max_residual = std::max(bform.max_residual, hform.max_residual);
    r.equalities = bform.equalities + hform.equalities;
  } else if (method == "subgames") {
    const SubgameCheck c = check_all_subgames(game, tol);
    r.reference = "every bi-matrix sub-game potential";
    r.potential = c.potential;
    r.max_residual = c.max_residual;
    r.equalities = c.subgames_checked;
  } else {
    throw ShapeError("unknown method: " + method);
  }
  return r;
}

/// Run every applicable method. The methods are provably equivalent, so a
/// disagreement indicates a defect and is surfaced via all_agree.
inline CheckReport run_all_criteria(const FiniteGame& game,
                                    const Tolerance& tol = {}) {
  CheckReport report;
  for (const std::string& method : applicable_methods(game)) {
    report.results.push_back(run_criterion(game, method, tol));
  }
  report.potential = report.results.front().potential;
  for (const CriterionResult& r : report.results) {
    if (r.potential != report.potential) {
      report.all_agree = false;
    }
  }
  return report;
}

}  // namespace potentia
