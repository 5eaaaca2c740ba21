#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "potentia/decomposition.hpp"
#include "potentia/game.hpp"

namespace potentia {

/// V^p, the structure vector of a potential function p, so that
/// p(x_1,...,x_n) = V^p x_1 x_2 ... x_n. Unique up to an additive constant;
/// constant_offset records the free constant that was folded into entries.
struct PotentialVector {
  std::vector<double> entries;
  double constant_offset = 0.0;
};

/// Verdict plus worst violation of a zero test, and how many equalities the
/// criterion evaluated. Used to compare all detection methods on one game.
struct CriterionOutcome {
  bool potential = false;
  double max_residual = 0.0;
  std::size_t equalities = 0;
};

/// The linear system Psi xi = b whose solvability characterizes potential
/// games. Psi has n-1 block rows of height prod(k); block row mu holds
/// -Psi_1 in block column 1 and Psi_{mu+1} in block column mu+1, and b
/// stacks (V_{mu+1} - V_1)^T. Psi_i = I_{k^(i-1)} (x) 1_k (x) I_{k^(n-i)};
/// with non-uniform counts the identity factors use the mixed products.
struct PotentialEquationSystem {
  Matrix psi;
  std::vector<double> rhs;
  std::vector<std::size_t> xi_block_sizes;  // n blocks, block i has prod/k_i entries
};

/// Psi_i for player i (1-based): averages out player i's own coordinate.
inline Matrix psi_factor(std::span<const std::size_t> counts, std::size_t i) {
  std::size_t before = 1, after = 1;
  for (std::size_t t = 0; t + 1 < i; ++t) before *= counts[t];
  for (std::size_t t = i; t < counts.size(); ++t) after *= counts[t];
  return kron(kron(Matrix::identity(before), Matrix::ones(counts[i - 1], 1)),
              Matrix::identity(after));
}

namespace detail {

inline void require_potential_shape(const FiniteGame& game) {
  for (std::size_t k : game.strategy_counts()) {
    if (k < 2) {
      throw ShapeError("potential criteria require every player to have at "
                       "least 2 strategies");
    }
  }
  // Multi-player machinery requires a uniform strategy count; the 2-player
  // case keeps full k1 != k2 generality.
  if (game.players() > 2) game.uniform_count();
}

}  // namespace detail

inline PotentialEquationSystem build_potential_equation(const FiniteGame& game) {
  detail::require_potential_shape(game);
  const std::size_t n = game.players();
  const auto& counts = game.strategy_counts();

  std::vector<Matrix> factors(n);
  for (std::size_t i = 1; i <= n; ++i) factors[i - 1] = psi_factor(counts, i);

  std::vector<std::vector<Matrix>> grid(n - 1, std::vector<Matrix>(n));
  for (std::size_t mu = 0; mu + 1 < n; ++mu) {
    grid[mu][0] = -factors[0];
    grid[mu][mu + 1] = factors[mu + 1];
  }
  PotentialEquationSystem sys;
  sys.psi = assemble_blocks(grid);
  sys.rhs.reserve((n - 1) * game.profile_space());
  for (std::size_t mu = 2; mu <= n; ++mu) {
    const std::vector<double> diff = game.relative_payoff(1, mu);
    sys.rhs.insert(sys.rhs.end(), diff.begin(), diff.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    sys.xi_block_sizes.push_back(factors[i].cols());
  }
  return sys;
}

struct EquationCheck {
  bool potential = false;
  std::optional<std::vector<double>> xi;  // one solution, when potential
  double max_residual = 0.0;              // least-squares residual, inf-norm
};

/// The game is potential iff Psi xi = b is solvable; returns the
/// minimum-norm solution when it is.
inline EquationCheck is_potential_by_equation(const FiniteGame& game,
                                              const Tolerance& tol = {}) {
  const PotentialEquationSystem sys = build_potential_equation(game);
  LeastSquaresSolution ls = lstsq_min_norm(sys.psi, sys.rhs);
  EquationCheck result;
  result.max_residual = ls.residual_inf;
  result.potential =
      ls.consistent || ls.residual_inf <= tol.threshold(game.max_abs_payoff());
  if (result.potential) result.xi = std::move(ls.x);
  return result;
}

/// (V^p)^T = (V_1)^T - (1_{k_1} (x) I_{rest}) xi_1: the potential recovered
/// from the first block of an equation solution.
inline PotentialVector potential_from_xi(const FiniteGame& game,
                                         std::span<const double> xi1) {
  const std::size_t space = game.profile_space();
  const std::size_t k1 = game.strategy_counts()[0];
  const std::size_t rest = space / k1;
  if (xi1.size() != rest) {
    throw DimensionError("potential_from_xi: xi_1 has length " +
                         std::to_string(xi1.size()) + ", expected " +
                         std::to_string(rest));
  }
  PotentialVector pv;
  pv.entries = game.payoff_row(1);
  for (std::size_t a = 0; a < k1; ++a) {
    for (std::size_t t = 0; t < rest; ++t) {
      pv.entries[a * rest + t] -= xi1[t];
    }
  }
  return pv;
}

struct PotentialValidation {
  bool valid = false;
  double max_residual = 0.0;
};

/// Brute-force check of the defining property: for every player, every pair
/// of own strategies and every opponent profile, the payoff difference must
/// equal the potential difference.
inline PotentialValidation validate_potential(const FiniteGame& game,
                                              const PotentialVector& pv,
                                              const Tolerance& tol = {}) {
  const std::size_t space = game.profile_space();
  if (pv.entries.size() != space) {
    throw DimensionError("validate_potential: potential has length " +
                         std::to_string(pv.entries.size()) + ", expected " +
                         std::to_string(space));
  }
  const std::size_t n = game.players();
  const auto& counts = game.strategy_counts();

  PotentialValidation out;
  std::size_t stride = 1;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t k = counts[i];
    const auto& ci = game.payoff_row(i + 1);
    for (std::size_t flat = 0; flat < space; ++flat) {
      if ((flat / stride) % k != 0) continue;  // visit each own-strategy line once
      for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = x + 1; y < k; ++y) {
          const std::size_t fx = flat + x * stride;
          const std::size_t fy = flat + y * stride;
          const double payoff_diff = ci[fx] - ci[fy];
          const double potential_diff = pv.entries[fx] - pv.entries[fy];
          out.max_residual =
              std::max(out.max_residual, std::abs(payoff_diff - potential_diff));
        }
      }
    }
    stride *= k;
  }
  const double scale = std::max(game.max_abs_payoff(), max_abs(pv.entries));
  out.valid = out.max_residual <= tol.threshold(scale);
  return out;
}

}  // namespace potentia
