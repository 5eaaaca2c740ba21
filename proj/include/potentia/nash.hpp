#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "potentia/game.hpp"
#include "potentia/potential.hpp"

namespace potentia {

enum class EquilibriumMethod { brute_force, potential_argmax };

/// Pure-strategy equilibria, sorted lexicographically, no duplicates.
/// For the potential route, global_argmax flags the profiles attaining the
/// maximum of the potential (always a subset of the local maxima returned).
struct EquilibriumSet {
  std::vector<StrategyProfile> profiles;
  EquilibriumMethod method = EquilibriumMethod::brute_force;
  std::vector<bool> global_argmax;  // parallel to profiles; empty for brute force
};

namespace detail {

/// Profiles where no unilateral deviation raises `value_of` by more than the
/// threshold; ties at tolerance count as non-improving.
template <typename ValueFn>
std::vector<StrategyProfile> stable_profiles(const FiniteGame& game,
                                             ValueFn&& value_of,
                                             double threshold) {
  const std::size_t n = game.players();
  const auto& counts = game.strategy_counts();
  std::vector<StrategyProfile> result;
  for (std::size_t flat = 0; flat < game.profile_space(); ++flat) {
    const StrategyProfile profile = game.index_to_profile(flat);
    bool stable = true;
    for (std::size_t player = 1; player <= n && stable; ++player) {
      const double current = value_of(player, flat);
      StrategyProfile deviated = profile;
      for (std::size_t alt = 1; alt <= counts[player - 1]; ++alt) {
        if (alt == profile.choices[player - 1]) continue;
        deviated.choices[player - 1] = alt;
        if (value_of(player, game.profile_to_index(deviated)) >
            current + threshold) {
          stable = false;
          break;
        }
      }
    }
    if (stable) result.push_back(profile);
  }
  return result;  // flat-index order is lexicographic profile order
}

}  // namespace detail

/// Best-response enumeration over all profiles; works for any strategy
/// counts and serves as the oracle for the potential route.
inline EquilibriumSet pure_nash_brute(const FiniteGame& game,
                                      const Tolerance& tol = {}) {
  const double threshold = tol.threshold(game.max_abs_payoff());
  EquilibriumSet out;
  out.method = EquilibriumMethod::brute_force;
  out.profiles = detail::stable_profiles(
      game,
      [&game](std::size_t player, std::size_t flat) {
        return game.payoff_row(player)[flat];
      },
      threshold);
  return out;
}

/// Equilibria of a potential game as the local maxima of its potential
/// under unilateral deviations. Every pure equilibrium of a potential game
/// is such a local maximum, and conversely; the global argmax subset is
/// flagged separately.
inline EquilibriumSet nash_from_potential(const FiniteGame& game,
                                          const PotentialVector& pv,
                                          const Tolerance& tol = {}) {
  const PotentialValidation validation = validate_potential(game, pv, tol);
  if (!validation.valid) {
    throw PreconditionError(
        "nash_from_potential: the supplied potential fails validation "
        "(max residual " + std::to_string(validation.max_residual) + ")",
        {validation.max_residual});
  }
  const double threshold =
      tol.threshold(std::max(game.max_abs_payoff(), max_abs(pv.entries)));
  EquilibriumSet out;
  out.method = EquilibriumMethod::potential_argmax;
  out.profiles = detail::stable_profiles(
      game,
      [&pv](std::size_t, std::size_t flat) { return pv.entries[flat]; },
      threshold);

  double best = pv.entries.empty() ? 0.0 : pv.entries[0];
  for (double v : pv.entries) best = std::max(best, v);
  out.global_argmax.reserve(out.profiles.size());
  for (const StrategyProfile& p : out.profiles) {
    out.global_argmax.push_back(pv.entries[game.profile_to_index(p)] >=
                                best - threshold);
  }
  return out;
}

}  // namespace potentia
