#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potentia/matrix.hpp"

namespace potentia {

/// One strategy per player, 1-based (the flat profile index is 0-based).
struct StrategyProfile {
  std::vector<std::size_t> choices;

  auto operator<=>(const StrategyProfile&) const = default;
};

/// Optional display names carried through file round-trips untouched.
struct GameLabels {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;

  bool operator==(const GameLabels&) const = default;
};

/// Finite normal-form game: n players, per-player strategy counts, and one
/// payoff row per player listing that player's payoffs over all strategy
/// profiles in lexicographic order with player 1 varying slowest. Row i is
/// the structure vector of player i's payoff function, so that
/// c_i(x_1,...,x_n) = V_i x_1 x_2 ... x_n on logical vectors.
class FiniteGame {
 public:
  FiniteGame(std::vector<std::size_t> strategy_counts,
             std::vector<std::vector<double>> payoff_rows,
             std::optional<GameLabels> labels = std::nullopt)
      : counts_(std::move(strategy_counts)),
        payoffs_(std::move(payoff_rows)),
        labels_(std::move(labels)) {
    if (counts_.size() < 2) {
      throw DimensionError("FiniteGame: needs at least 2 players");
    }
    std::size_t space = 1;
    for (std::size_t k : counts_) {
      if (k < 1) throw DimensionError("FiniteGame: strategy counts must be >= 1");
      space *= k;
    }
    space_ = space;
    if (payoffs_.size() != counts_.size()) {
      throw DimensionError("FiniteGame: expected one payoff row per player");
    }
    for (std::size_t i = 0; i < payoffs_.size(); ++i) {
      if (payoffs_[i].size() != space_) {
        throw DimensionError("FiniteGame: payoff row " + std::to_string(i) +
                             " has length " + std::to_string(payoffs_[i].size()) +
                             ", expected " + std::to_string(space_));
      }
      for (double v : payoffs_[i]) {
        if (!std::isfinite(v)) {
          throw DimensionError("FiniteGame: payoff row " + std::to_string(i) +
                               " contains a non-finite value");
        }
      }
    }
  }

  std::size_t players() const { return counts_.size(); }
  const std::vector<std::size_t>& strategy_counts() const { return counts_; }

  std::size_t strategy_count(std::size_t player) const {
    require_player(player);
    return counts_[player - 1];
  }

  /// Number of strategy profiles, prod_j k_j.
  std::size_t profile_space() const { return space_; }

  bool uniform() const {
    for (std::size_t k : counts_)
      if (k != counts_[0]) return false;
    return true;
  }

  /// The common strategy count k; throws when counts differ.
  std::size_t uniform_count() const {
    if (!uniform()) {
      throw ShapeError("operation requires a uniform strategy count");
    }
    return counts_[0];
  }

  /// Flat index of a profile: player 1 varies slowest, player n fastest,
  /// matching the semi-tensor-product order of x_1 x_2 ... x_n.
  std::size_t profile_to_index(const StrategyProfile& p) const {
    if (p.choices.size() != counts_.size()) {
      throw ProfileError("profile has " + std::to_string(p.choices.size()) +
                         " choices for " + std::to_string(counts_.size()) +
                         " players");
    }
    std::size_t index = 0;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      const std::size_t c = p.choices[j];
      if (c < 1 || c > counts_[j]) {
        throw ProfileError("choice " + std::to_string(c) + " of player " +
                           std::to_string(j + 1) + " is out of range 1.." +
                           std::to_string(counts_[j]));
      }
      index = index * counts_[j] + (c - 1);
    }
    return index;
  }

  StrategyProfile index_to_profile(std::size_t index) const {
    if (index >= space_) throw ProfileError("profile index out of range");
    StrategyProfile p;
    p.choices.assign(counts_.size(), 1);
    for (std::size_t j = counts_.size(); j-- > 0;) {
      p.choices[j] = index % counts_[j] + 1;
      index /= counts_[j];
    }
    return p;
  }

  double payoff(std::size_t player, const StrategyProfile& p) const {
    require_player(player);
    return payoffs_[player - 1][profile_to_index(p)];
  }

  const std::vector<double>& payoff_row(std::size_t player) const {
    require_player(player);
    return payoffs_[player - 1];
  }

  /// (V_j - V_i)^T: player j's structure vector minus player i's.
  std::vector<double> relative_payoff(std::size_t i, std::size_t j) const {
    require_player(i);
    require_player(j);
    if (i == j) throw ProfileError("relative_payoff: players must differ");
    std::vector<double> r(space_);
    const auto& vi = payoffs_[i - 1];
    const auto& vj = payoffs_[j - 1];
    for (std::size_t t = 0; t < space_; ++t) r[t] = vj[t] - vi[t];
    return r;
  }

  double max_abs_payoff() const {
    double m = 0.0;
    for (const auto& row : payoffs_) m = std::max(m, max_abs(row));
    return m;
  }

  const std::optional<GameLabels>& labels() const { return labels_; }

  bool operator==(const FiniteGame& o) const {
    return counts_ == o.counts_ && payoffs_ == o.payoffs_ && labels_ == o.labels_;
  }

 private:
  void require_player(std::size_t player) const {
    if (player < 1 || player > counts_.size()) {
      throw ProfileError("player index " + std::to_string(player) +
                         " out of range 1.." + std::to_string(counts_.size()));
    }
  }

  std::vector<std::size_t> counts_;
  std::vector<std::vector<double>> payoffs_;
  std::optional<GameLabels> labels_;
  std::size_t space_ = 0;
};

/// Two-player game in matrix form; C1 and C2 are k1 x k2 with rows indexed
/// by player 1's choice and columns by player 2's.
struct BiMatrixGame {
  Matrix c1;
  Matrix c2;

  BiMatrixGame(Matrix first, Matrix second)
      : c1(std::move(first)), c2(std::move(second)) {
    if (c1.rows() != c2.rows() || c1.cols() != c2.cols()) {
      throw DimensionError("BiMatrixGame: C1 is " + c1.shape_string() +
                           " but C2 is " + c2.shape_string());
    }
    if (c1.rows() < 1 || c1.cols() < 1) {
      throw DimensionError("BiMatrixGame: payoff matrices must be non-empty");
    }
  }

  std::size_t k1() const { return c1.rows(); }
  std::size_t k2() const { return c1.cols(); }

  /// Relative payoff matrix R = C2 - C1.
  Matrix relative_payoffs() const { return c2 - c1; }

  double max_abs_payoff() const { return std::max(c1.max_abs(), c2.max_abs()); }

  FiniteGame to_finite_game() const {
    return FiniteGame({k1(), k2()}, {c1.to_vector(), c2.to_vector()});
  }
};

/// View an n=2 game in matrix form.
inline BiMatrixGame as_bimatrix(const FiniteGame& game) {
  if (game.players() != 2) {
    throw ShapeError("as_bimatrix: game has " + std::to_string(game.players()) +
                     " players");
  }
  const std::size_t k1 = game.strategy_counts()[0];
  const std::size_t k2 = game.strategy_counts()[1];
  return BiMatrixGame(
      unvec_rows(Matrix::column(game.payoff_row(1)), k1, k2),
      unvec_rows(Matrix::column(game.payoff_row(2)), k1, k2));
}

/// Multi-index reshape of a k^n vector for a pair of players i < j: rows are
/// indexed by (choice_i, choice_j) lexicographically, columns by the
/// remaining players' choices in lexicographic order of increasing player
/// number. This is the multi-indexed matrix v^{ij} with the hatted players
/// removed from the column index.
inline Matrix reshape_pair(std::span<const double> v, std::size_t n,
                           std::size_t k, std::size_t i, std::size_t j) {
  if (n < 2 || k < 1) throw DimensionError("reshape_pair: needs n >= 2, k >= 1");
  if (i < 1 || j < 1 || i > n || j > n || i >= j) {
    throw ProfileError("reshape_pair: requires players 1 <= i < j <= n");
  }
  std::size_t space = 1;
  for (std::size_t t = 0; t < n; ++t) space *= k;
  if (v.size() != space) {
    throw DimensionError("reshape_pair: vector length " + std::to_string(v.size()) +
                         " is not k^n = " + std::to_string(space));
  }
  const std::size_t cols = space / (k * k);
  Matrix out(k * k, cols);
  std::vector<std::size_t> choice(n, 0);  // 0-based digits
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t c = 0; c < cols; ++c) {
        std::size_t rest = c;
        for (std::size_t t = n; t-- > 0;) {
          if (t + 1 == i) {
            choice[t] = a;
          } else if (t + 1 == j) {
            choice[t] = b;
          } else {
            choice[t] = rest % k;
            rest /= k;
          }
        }
        std::size_t flat = 0;
        for (std::size_t t = 0; t < n; ++t) flat = flat * k + choice[t];
        out(a * k + b, c) = v[flat];
      }
    }
  }
  return out;
}

/// The 2-player game induced on players i < j when every other player's
/// choice is fixed by `rest` (choices listed in increasing player order).
inline BiMatrixGame subgame(const FiniteGame& game, std::size_t i, std::size_t j,
                            const std::vector<std::size_t>& rest) {
  const std::size_t n = game.players();
  if (i < 1 || j < 1 || i > n || j > n || i >= j) {
    throw ProfileError("subgame: requires players 1 <= i < j <= n");
  }
  if (rest.size() != n - 2) {
    throw ProfileError("subgame: expected " + std::to_string(n - 2) +
                       " fixed choices, got " + std::to_string(rest.size()));
  }
  StrategyProfile p;
  p.choices.assign(n, 1);
  std::size_t r = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    if (t != i && t != j) p.choices[t - 1] = rest[r++];
  }
  const std::size_t ki = game.strategy_count(i);
  const std::size_t kj = game.strategy_count(j);
  Matrix c1(ki, kj), c2(ki, kj);
  for (std::size_t a = 1; a <= ki; ++a) {
    for (std::size_t b = 1; b <= kj; ++b) {
      p.choices[i - 1] = a;
      p.choices[j - 1] = b;
      c1(a - 1, b - 1) = game.payoff(i, p);
      c2(a - 1, b - 1) = game.payoff(j, p);
    }
  }
  return BiMatrixGame(std::move(c1), std::move(c2));
}

}  // namespace potentia
