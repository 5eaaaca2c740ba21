#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "potentia/bimatrix.hpp"
#include "potentia/game.hpp"
#include "potentia/potential.hpp"

namespace potentia {

namespace detail {

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) {
    if (r > (std::size_t{1} << 40)) {
      throw CapacityError("k^n overflows any representable matrix dimension");
    }
    r *= base;
  }
  return r;
}

/// 1_m (delta_m^m)^T: the m x m matrix whose last column is all ones.
inline Matrix ones_times_last_unit(std::size_t m) {
  Matrix r(m, m);
  for (std::size_t i = 0; i < m; ++i) r(i, m - 1) = 1.0;
  return r;
}

/// (delta_k^k)^T as a 1 x k row.
inline Matrix last_unit_row(std::size_t k) {
  Matrix r(1, k);
  r(0, k - 1) = 1.0;
  return r;
}

}  // namespace detail

/// Block diagonal of the given blocks, in order.
inline Matrix block_diagonal(std::span<const Matrix> blocks) {
  std::vector<std::vector<Matrix>> grid(blocks.size(),
                                        std::vector<Matrix>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) grid[i][i] = blocks[i];
  return assemble_blocks(grid);
}

/// b~ = [(V_n - V_1)^T; ...; (V_n - V_{n-1})^T], the stacked relative
/// payoffs against the last player.
inline std::vector<double> stacked_relative_payoffs(const FiniteGame& game) {
  const std::size_t n = game.players();
  std::vector<double> b;
  b.reserve((n - 1) * game.profile_space());
  for (std::size_t j = 1; j < n; ++j) {
    const std::vector<double> block = game.relative_payoff(j, n);
    b.insert(b.end(), block.begin(), block.end());
  }
  return b;
}

/// The row transformations that bring the reordered potential equation to
/// echelon form. Blocks are stored without the leading minus sign of the
/// full transform T = diag(-T_ij); phi and gamma carry the signs the
/// echelon identity produces.
///
///   t1[j-1] = I_{k^(j-1)} (x) (delta_k^k)^T (x) I_{k^(n-j)}
///   t2[j-1] = I_{k^(j-1)} (x) B_k (x) I_{k^(n-j-1)} (x) (delta_k^k)^T
///   t3[j-1] = I_{k^(j-1)} (x) B_k (x) I_{k^(n-j-1)} (x) B_k
///   phi[i-1]   = -I_{k^(i-1)} (x) B_k (x) I_{k^(n-i-1)}
///   gamma[i-1] = -I_{k^(i-1)} (x) (delta_k^k)^T (x) I_{k^(n-1-i)} (x) 1_k
struct TransformBlocks {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Matrix> t1, t2, t3;
  std::vector<Matrix> phi, gamma;
};

inline const TransformBlocks& build_transform(std::size_t n, std::size_t k) {
  if (n < 2 || k < 2) {
    throw ShapeError("build_transform: requires n >= 2 and k >= 2");
  }
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>,
                  std::unique_ptr<const TransformBlocks>>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) {
    auto blocks = std::make_unique<TransformBlocks>();
    blocks->n = n;
    blocks->k = k;
    const Matrix b = boundary_matrix(k);
    const Matrix du = detail::last_unit_row(k);
    const Matrix ones_col = Matrix::ones(k, 1);
    for (std::size_t j = 1; j < n; ++j) {
      const Matrix left = Matrix::identity(detail::ipow(k, j - 1));
      blocks->t1.push_back(
          kron(kron(left, du), Matrix::identity(detail::ipow(k, n - j))));
      const Matrix mid = Matrix::identity(detail::ipow(k, n - j - 1));
      blocks->t2.push_back(kron(kron(kron(left, b), mid), du));
      blocks->t3.push_back(kron(kron(kron(left, b), mid), b));
      blocks->phi.push_back(-kron(kron(left, b), mid));
      blocks->gamma.push_back(-kron(
          kron(kron(left, du), Matrix::identity(detail::ipow(k, n - 1 - j))),
          ones_col));
    }
    slot = std::move(blocks);
  }
  return *slot;
}

/// The square elimination matrix S (and its right inverse witness U) that
/// reduce the single remaining block equation to one boundary-matrix row
/// block. Sub-blocks, named as in their defining equations, are kept for
/// the exact structural identity checks:
///
///   N_ij     = D_{k^(n-i)} (I_{k^(j-i)} (x) D_k^T (x) 1 delta^T)
///   L_ij     = -I_{k^(i-2)} (x) B_k (x) N_ij
///   M_i,i-1  = I_{k^(i-2)(k-1)} (x) B_{k^(n-i)}
///   G_i      = I_{k^(i-1)(k-1)} (x) D_{k^(n-i-1)}^T
struct EliminationBlocks {
  std::size_t n = 0;
  std::size_t k = 0;
  Matrix s;          // [s1; s2], square of order (n-1)(k-1)k^(n-2)
  Matrix s1, s2;
  Matrix u;          // SU = I
  Matrix s_tilde1;   // S1 = D_{k^(n-1)} s_tilde1; last row of s_tilde1 is 0
  std::vector<Matrix> n_row;                // N_{1j}, j = 1..n-1
  std::vector<Matrix> m_diag;               // M_{i,i-1}, i = 2..n-1
  std::vector<std::vector<Matrix>> l_rows;  // l_rows[i-2][j-i] = L_ij
  std::vector<Matrix> g;                    // G_i, i = 1..n-2
};

namespace detail {

inline Matrix n_block(std::size_t n, std::size_t k, std::size_t i, std::size_t j) {
  const Matrix inner = kron(
      kron(Matrix::identity(ipow(k, j - i)), selector_matrix(k).transpose()),
      ones_times_last_unit(ipow(k, n - j - 1)));
  return selector_matrix(ipow(k, n - i)) * inner;
}

}  // namespace detail

inline const EliminationBlocks& build_elimination(std::size_t n, std::size_t k) {
  if (n < 3) {
    throw ShapeError("build_elimination: requires n >= 3 "
                     "(2-player games use the bi-matrix criteria)");
  }
  if (k < 2) throw ShapeError("build_elimination: requires k >= 2");
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>,
                  std::unique_ptr<const EliminationBlocks>>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) {
    auto eb = std::make_unique<EliminationBlocks>();
    eb->n = n;
    eb->k = k;
    const Matrix b = boundary_matrix(k);

    for (std::size_t j = 1; j < n; ++j) {
      eb->n_row.push_back(detail::n_block(n, k, 1, j));
    }
    for (std::size_t i = 2; i < n; ++i) {
      eb->m_diag.push_back(kron(
          Matrix::identity(detail::ipow(k, i - 2) * (k - 1)),
          boundary_matrix(detail::ipow(k, n - i))));
      std::vector<Matrix> row;
      for (std::size_t j = i; j < n; ++j) {
        row.push_back(-kron(kron(Matrix::identity(detail::ipow(k, i - 2)), b),
                            detail::n_block(n, k, i, j)));
      }
      eb->l_rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      eb->g.push_back(kron(
          Matrix::identity(detail::ipow(k, i - 1) * (k - 1)),
          selector_matrix(detail::ipow(k, n - i - 1)).transpose()));
    }

    std::vector<std::vector<Matrix>> s1_grid(1, std::vector<Matrix>(n - 1));
    for (std::size_t j = 0; j + 1 < n; ++j) s1_grid[0][j] = eb->n_row[j];
    eb->s1 = assemble_blocks(s1_grid);

    std::vector<std::vector<Matrix>> s2_grid(n - 2, std::vector<Matrix>(n - 1));
    for (std::size_t i = 2; i < n; ++i) {
      s2_grid[i - 2][i - 2] = eb->m_diag[i - 2];
      for (std::size_t j = i; j < n; ++j) {
        s2_grid[i - 2][j - 1] = eb->l_rows[i - 2][j - i];
      }
    }
    eb->s2 = assemble_blocks(s2_grid);
    eb->s = vstack(eb->s1, eb->s2);

    const TransformBlocks& tb = build_transform(n, k);
    const Matrix d_top_t = selector_matrix(detail::ipow(k, n - 1)).transpose();
    std::vector<std::vector<Matrix>> u_grid(n - 1, std::vector<Matrix>(n - 1));
    for (std::size_t i = 1; i < n; ++i) {
      u_grid[i - 1][0] = -(tb.phi[i - 1] * d_top_t);
      if (i + 1 < n) u_grid[i - 1][i] = eb->g[i - 1];
    }
    eb->u = assemble_blocks(u_grid);

    std::vector<std::vector<Matrix>> st_grid(1, std::vector<Matrix>(n - 1));
    for (std::size_t j = 1; j < n; ++j) {
      st_grid[0][j - 1] = kron(
          kron(Matrix::identity(detail::ipow(k, j - 1)),
               selector_matrix(k).transpose()),
          detail::ones_times_last_unit(detail::ipow(k, n - j - 1)));
    }
    eb->s_tilde1 = assemble_blocks(st_grid);
    slot = std::move(eb);
  }
  return *slot;
}

/// Counts of verification equations: the provably minimal number
/// (n-1)k^n - n k^(n-1) + 1, and for comparison the pairwise-condition
/// count n(n-1)k^(n-2)(k-1)^2 / 2 used by the adjacent-pair methods.
struct EquationCounts {
  std::size_t minimal = 0;
  std::size_t pairwise = 0;
};

inline EquationCounts minimal_equation_count(std::size_t n, std::size_t k) {
  if (n < 2 || k < 2) {
    throw ShapeError("minimal_equation_count: requires n >= 2 and k >= 2");
  }
  EquationCounts c;
  c.minimal = (n - 1) * detail::ipow(k, n) - n * detail::ipow(k, n - 1) + 1;
  c.pairwise = n * (n - 1) * detail::ipow(k, n - 2) * (k - 1) * (k - 1) / 2;
  return c;
}

/// The minimal verification system [S2 T2; T3] acting on b~: the game is
/// potential iff every row annihilates b~. Row order is pinned: the S2 T2
/// block first, then the T3 blocks for j = 1..n-1 (the golden (3, 2)
/// instance in the tests freezes this order entry by entry).
inline Matrix minimal_check_matrix(std::size_t n, std::size_t k) {
  if (n < 3) {
    throw ShapeError("minimal_check_matrix: requires n >= 3 "
                     "(use kron(B_k1, B_k2) for 2-player games)");
  }
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<const Matrix>>
      cache;
  const TransformBlocks& tb = build_transform(n, k);
  const EliminationBlocks& eb = build_elimination(n, k);
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) {
    const Matrix t2 = block_diagonal(tb.t2);
    const Matrix t3 = block_diagonal(tb.t3);
    slot = std::make_unique<const Matrix>(vstack(eb.s2 * t2, t3));
  }
  return *slot;
}

/// Coefficient matrix of the minimal verification equations for any n >= 2;
/// n = 2 delegates to the bi-matrix criterion rows B_k (x) B_k.
inline Matrix verification_matrix(std::size_t n, std::size_t k) {
  if (n < 2 || k < 2) {
    throw ShapeError("verification_matrix: requires n >= 2 and k >= 2");
  }
  if (n == 2) return kron(boundary_matrix(k), boundary_matrix(k));
  return minimal_check_matrix(n, k);
}

struct MinimalCheck {
  bool potential = false;
  std::vector<double> residuals;  // one per verification equation
  double max_residual = 0.0;
};

/// Evaluate the minimal verification system on b~. For n = 2 the bi-matrix
/// criterion entries B_{k1} R B_{k2}^T are the residuals (full k1 != k2
/// generality).
inline MinimalCheck is_potential_minimal(const FiniteGame& game,
                                         const Tolerance& tol = {}) {
  detail::require_potential_shape(game);
  MinimalCheck out;
  if (game.players() == 2) {
    const BiMatrixGame bm = as_bimatrix(game);
    const Matrix m = boundary_matrix(bm.k1()) * bm.relative_payoffs() *
                     boundary_matrix(bm.k2()).transpose();
    out.residuals = m.to_vector();
  } else {
    const std::size_t k = game.uniform_count();
    out.residuals = mat_vec(minimal_check_matrix(game.players(), k),
                            stacked_relative_payoffs(game));
  }
  out.max_residual = max_abs(out.residuals);
  out.potential = out.max_residual <= tol.threshold(game.max_abs_payoff());
  return out;
}

/// Closed-form potential for a potential game:
///   (V^p)^T = (V_1)^T + (1_k (delta_k^k)^T (x) I_{k^(n-1)}) (V_n - V_1)^T
///             - sum_{j=2}^{n-1} (1_k (delta_k^k)^T (x) I_{k^(j-2)} (x)
///               D_k^T B_k (x) 1 delta^T) (V_n - V_j)^T + c 1.
/// For n = 2 the sum is empty and the first two terms reduce to the
/// bi-matrix formula (with k1 != k2 allowed).
inline PotentialVector potential_closed_form(const FiniteGame& game,
                                             double c = 0.0,
                                             const Tolerance& tol = {}) {
  const MinimalCheck check = is_potential_minimal(game, tol);
  if (!check.potential) {
    throw PreconditionError(
        "potential_closed_form: game is not potential (max residual " +
            std::to_string(check.max_residual) + ")",
        check.residuals);
  }
  const std::size_t n = game.players();
  const auto& counts = game.strategy_counts();
  const std::size_t rest = game.profile_space() / counts[0];

  PotentialVector pv;
  pv.constant_offset = c;
  pv.entries = game.payoff_row(1);

  const Matrix broadcast_last =
      kron(detail::ones_times_last_unit(counts[0]), Matrix::identity(rest));
  const std::vector<double> first_term =
      mat_vec(broadcast_last, game.relative_payoff(1, n));
  for (std::size_t t = 0; t < pv.entries.size(); ++t) {
    pv.entries[t] += first_term[t] + c;
  }

  if (n >= 3) {
    const std::size_t k = counts[0];
    const Matrix head = detail::ones_times_last_unit(k);
    const Matrix dtb = selector_matrix(k).transpose() * boundary_matrix(k);
    for (std::size_t j = 2; j < n; ++j) {
      const Matrix factor = kron(
          kron(kron(head, Matrix::identity(detail::ipow(k, j - 2))), dtb),
          detail::ones_times_last_unit(detail::ipow(k, n - j)));
      const std::vector<double> term = mat_vec(factor, game.relative_payoff(j, n));
      for (std::size_t t = 0; t < pv.entries.size(); ++t) pv.entries[t] -= term[t];
    }
  }
  return pv;
}

/// xi_n = S~1 T2 b~ + c 1, with T2 taken as the unsigned block stack (the
/// same convention the minimal check matrix uses); for a potential game the
/// result satisfies Phi xi_n = -T2 b~, the reduced block of the echelon
/// system.
inline std::vector<double> xi_n_closed_form(const FiniteGame& game, double c = 0.0) {
  const std::size_t n = game.players();
  const std::size_t k = game.uniform_count();
  if (n < 3) throw ShapeError("xi_n_closed_form: requires n >= 3");
  const TransformBlocks& tb = build_transform(n, k);
  const EliminationBlocks& eb = build_elimination(n, k);
  std::vector<double> t2b;
  for (std::size_t j = 1; j < n; ++j) {
    const std::vector<double> block =
        mat_vec(tb.t2[j - 1], game.relative_payoff(j, n));
    t2b.insert(t2b.end(), block.begin(), block.end());
  }
  std::vector<double> xi = mat_vec(eb.s_tilde1, t2b);
  for (double& v : xi) v += c;
  return xi;
}

enum class T21Variant {
  conditions_ii,   // T3-style rows on (V_n - V_i) plus mixed rows on (V_j - V_i)
  conditions_iii,  // one double-boundary row block per pair i < j
};

/// Pairwise equality families equivalent to the potential property.
inline CriterionOutcome check_pairwise_t21(const FiniteGame& game,
                                           const Tolerance& tol = {},
                                           T21Variant variant = T21Variant::conditions_iii) {
  detail::require_potential_shape(game);
  const std::size_t n = game.players();
  const std::size_t k = game.uniform_count();
  const Matrix b = boundary_matrix(k);
  CriterionOutcome out;
  auto absorb = [&out](const std::vector<double>& rows) {
    out.max_residual = std::max(out.max_residual, max_abs(rows));
    out.equalities += rows.size();
  };
  if (variant == T21Variant::conditions_ii) {
    const TransformBlocks& tb = build_transform(n, k);
    for (std::size_t i = 1; i < n; ++i) {
      absorb(mat_vec(tb.t3[i - 1], game.relative_payoff(i, n)));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Matrix factor = kron(
            kron(kron(kron(Matrix::identity(detail::ipow(k, i - 1)), b),
                      Matrix::identity(detail::ipow(k, j - i - 1))),
                 b),
            kron(Matrix::identity(detail::ipow(k, n - j - 1)),
                 detail::last_unit_row(k)));
        absorb(mat_vec(factor, game.relative_payoff(i, j)));
      }
    }
  } else {
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        const Matrix factor = kron(
            kron(kron(kron(Matrix::identity(detail::ipow(k, i - 1)), b),
                      Matrix::identity(detail::ipow(k, j - i - 1))),
                 b),
            Matrix::identity(detail::ipow(k, n - j)));
        absorb(mat_vec(factor, game.relative_payoff(i, j)));
      }
    }
  }
  out.potential = out.max_residual <= tol.threshold(game.max_abs_payoff());
  return out;
}

/// (B_k (x) B_k) applied to the pair-reshaped relative payoffs, for every
/// pair i < j; with use_centering the operator is H_k (x) H_k instead.
inline CriterionOutcome check_pairwise_reshaped(const FiniteGame& game,
                                                const Tolerance& tol = {},
                                                bool use_centering = false) {
  detail::require_potential_shape(game);
  const std::size_t n = game.players();
  const std::size_t k = game.uniform_count();
  const Matrix op = use_centering
                        ? kron(centering_matrix(k), centering_matrix(k))
                        : kron(boundary_matrix(k), boundary_matrix(k));
  CriterionOutcome out;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const Matrix reshaped =
          reshape_pair(game.relative_payoff(i, j), n, k, i, j);
      const Matrix residual = op * reshaped;
      out.max_residual = std::max(out.max_residual, residual.max_abs());
      out.equalities += residual.size();
    }
  }
  out.potential = out.max_residual <= tol.threshold(game.max_abs_payoff());
  return out;
}

struct SubgameFailure {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::size_t> rest;
};

struct SubgameCheck {
  bool potential = false;
  std::vector<SubgameFailure> failures;
  double max_residual = 0.0;
  std::size_t subgames_checked = 0;
};

/// A finite game is potential iff every bi-matrix sub-game is. Enumerates
/// deterministically: pairs i < j in lexicographic order, then the fixed
/// choices of the remaining players in lexicographic order.
inline SubgameCheck check_all_subgames(const FiniteGame& game,
                                       const Tolerance& tol = {}) {
  const std::size_t n = game.players();
  const auto& counts = game.strategy_counts();
  for (std::size_t k : counts) {
    if (k < 2) throw ShapeError("check_all_subgames: requires every k >= 2");
  }
  const double cutoff = tol.threshold(game.max_abs_payoff());
  SubgameCheck out;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      std::vector<std::size_t> other_counts;
      for (std::size_t t = 1; t <= n; ++t) {
        if (t != i && t != j) other_counts.push_back(counts[t - 1]);
      }
      std::size_t combos = 1;
      for (std::size_t c : other_counts) combos *= c;
      for (std::size_t flat = 0; flat < combos; ++flat) {
        std::vector<std::size_t> rest(other_counts.size(), 1);
        std::size_t v = flat;
        for (std::size_t t = other_counts.size(); t-- > 0;) {
          rest[t] = v % other_counts[t] + 1;
          v /= other_counts[t];
        }
        const BiMatrixGame sub = subgame(game, i, j, rest);
        const Matrix m = boundary_matrix(sub.k1()) * sub.relative_payoffs() *
                         boundary_matrix(sub.k2()).transpose();
        const double residual = m.max_abs();
        out.max_residual = std::max(out.max_residual, residual);
        ++out.subgames_checked;
        if (residual > cutoff) out.failures.push_back({i, j, rest});
      }
    }
  }
  out.potential = out.failures.empty();
  return out;
}

struct IdentityCheck {
  std::string name;
  bool exact = false;
};

struct StructureIdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_exact = true;
};

/// Exact integer verification of the elimination-structure identities:
/// SU = I, the boundary-row reduction -sum_j N_1j Phi_j = B_{k^(n-1)},
/// the vanishing lower rows M Phi + sum L Phi = 0, the witness identities
/// M G = I and L G = 0, and S Phi = [B_{k^(n-1)}; 0].
inline StructureIdentityReport verify_structure_identities(std::size_t n,
                                                           std::size_t k) {
  const TransformBlocks& tb = build_transform(n, k);
  const EliminationBlocks& eb = build_elimination(n, k);
  StructureIdentityReport report;
  auto record = [&report](std::string name, bool ok) {
    report.checks.push_back({std::move(name), ok});
    report.all_exact = report.all_exact && ok;
  };

  const std::size_t top = detail::ipow(k, n - 1);
  {
    Matrix sum(eb.n_row[0].rows(), tb.phi[0].cols());
    for (std::size_t j = 1; j < n; ++j) {
      sum = sum + eb.n_row[j - 1] * tb.phi[j - 1];
    }
    record("-sum_j N_1j Phi_j = B_{k^(n-1)}", -sum == boundary_matrix(top));
  }
  for (std::size_t i = 2; i < n; ++i) {
    Matrix sum = eb.m_diag[i - 2] * tb.phi[i - 2];
    for (std::size_t j = i; j < n; ++j) {
      sum = sum + eb.l_rows[i - 2][j - i] * tb.phi[j - 1];
    }
    record("M_{" + std::to_string(i) + "," + std::to_string(i - 1) +
               "} Phi + sum_j L Phi = 0",
           sum == Matrix(sum.rows(), sum.cols()));
  }
  record("SU = I", eb.s * eb.u == Matrix::identity(eb.s.rows()));
  for (std::size_t i = 2; i < n; ++i) {
    const Matrix product = eb.m_diag[i - 2] * eb.g[i - 2];
    record("M_{" + std::to_string(i) + "," + std::to_string(i - 1) + "} G = I",
           product == Matrix::identity(product.rows()));
  }
  for (std::size_t i = 2; i < n; ++i) {
    for (std::size_t j = i; j + 1 < n; ++j) {
      const Matrix product = eb.l_rows[i - 2][j - i] * eb.g[j - 1];
      record("L_{" + std::to_string(i) + "," + std::to_string(j) + "} G = 0",
             product == Matrix(product.rows(), product.cols()));
    }
  }
  {
    // Phi carries the echelon minus sign, so the reduced coefficient block
    // comes out as the boundary matrix on -Phi.
    std::vector<std::vector<Matrix>> phi_grid(n - 1, std::vector<Matrix>(1));
    for (std::size_t i = 1; i < n; ++i) phi_grid[i - 1][0] = -tb.phi[i - 1];
    const Matrix s_phi = eb.s * assemble_blocks(phi_grid);
    Matrix expected(s_phi.rows(), s_phi.cols());
    const Matrix b_top = boundary_matrix(top);
    for (std::size_t i = 0; i < b_top.rows(); ++i) {
      for (std::size_t j = 0; j < b_top.cols(); ++j) expected(i, j) = b_top(i, j);
    }
    record("S (-Phi) = [B_{k^(n-1)}; 0]", s_phi == expected);
  }
  return report;
}

}  // namespace potentia
