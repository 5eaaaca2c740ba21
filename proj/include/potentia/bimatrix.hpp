#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "potentia/game.hpp"
#include "potentia/potential.hpp"

namespace potentia {

/// A bi-matrix game is potential iff B_{k1} (C2 - C1) B_{k2}^T = 0.
inline CriterionOutcome bimatrix_is_potential(const BiMatrixGame& g,
                                              const Tolerance& tol = {}) {
  if (g.k1() < 2 || g.k2() < 2) {
    throw ShapeError("bimatrix_is_potential: requires k1, k2 >= 2");
  }
  const Matrix m = boundary_matrix(g.k1()) * g.relative_payoffs() *
                   boundary_matrix(g.k2()).transpose();
  CriterionOutcome out;
  out.max_residual = m.max_abs();
  out.equalities = m.size();
  out.potential = out.max_residual <= tol.threshold(g.max_abs_payoff());
  return out;
}

/// Matrix form of a potential of a potential bi-matrix game:
/// P = C1 + 1_{k1} (last row of C2 - C1) + lambda 1 1^T.
inline Matrix bimatrix_potential(const BiMatrixGame& g, double lambda = 0.0,
                                 const Tolerance& tol = {}) {
  const CriterionOutcome check = bimatrix_is_potential(g, tol);
  if (!check.potential) {
    throw PreconditionError(
        "bimatrix_potential: game is not potential (max residual " +
            std::to_string(check.max_residual) + ")",
        {check.max_residual});
  }
  const Matrix r = g.relative_payoffs();
  Matrix p = g.c1;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      p(i, j) += r(r.rows() - 1, j) + lambda;
    }
  }
  return p;
}

/// Corner identities r_ij - r_{i,k2} - r_{k1,j} + r_{k1,k2} = 0 for all
/// i < k1, j < k2: the entrywise form of B_{k1} R B_{k2}^T = 0.
inline CriterionOutcome check_corner(const Matrix& r, const Tolerance& tol = {}) {
  const std::size_t k1 = r.rows(), k2 = r.cols();
  CriterionOutcome out;
  for (std::size_t i = 0; i + 1 < k1; ++i) {
    for (std::size_t j = 0; j + 1 < k2; ++j) {
      const double v = r(i, j) - r(i, k2 - 1) - r(k1 - 1, j) + r(k1 - 1, k2 - 1);
      out.max_residual = std::max(out.max_residual, std::abs(v));
      ++out.equalities;
    }
  }
  out.potential = out.max_residual <= tol.threshold(r.max_abs());
  return out;
}

/// Adjacent-pair identities r_ij - r_{i+1,j} - r_{i,j+1} + r_{i+1,j+1} = 0.
inline CriterionOutcome check_hino(const Matrix& r, const Tolerance& tol = {}) {
  const std::size_t k1 = r.rows(), k2 = r.cols();
  CriterionOutcome out;
  for (std::size_t i = 0; i + 1 < k1; ++i) {
    for (std::size_t j = 0; j + 1 < k2; ++j) {
      const double v = r(i, j) - r(i + 1, j) - r(i, j + 1) + r(i + 1, j + 1);
      out.max_residual = std::max(out.max_residual, std::abs(v));
      ++out.equalities;
    }
  }
  out.potential = out.max_residual <= tol.threshold(r.max_abs());
  return out;
}

/// Every four-cycle identity r_ij - r_{i'j} - r_{ij'} + r_{i'j'} = 0; each
/// cycle is enumerated once (i < i', j < j'), which covers the full
/// quantifier set by symmetry.
inline CriterionOutcome check_four_cycle(const Matrix& r, const Tolerance& tol = {}) {
  const std::size_t k1 = r.rows(), k2 = r.cols();
  CriterionOutcome out;
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t ip = i + 1; ip < k1; ++ip) {
      for (std::size_t j = 0; j < k2; ++j) {
        for (std::size_t jp = j + 1; jp < k2; ++jp) {
          const double v = r(i, j) - r(ip, j) - r(i, jp) + r(ip, jp);
          out.max_residual = std::max(out.max_residual, std::abs(v));
          ++out.equalities;
        }
      }
    }
  }
  out.potential = out.max_residual <= tol.threshold(r.max_abs());
  return out;
}

/// H_{k1} R H_{k2} = 0: the doubly-centered relative payoffs vanish.
inline CriterionOutcome check_centering(const Matrix& r, const Tolerance& tol = {}) {
  const Matrix m = centering_matrix(r.rows()) * r * centering_matrix(r.cols());
  CriterionOutcome out;
  out.max_residual = m.max_abs();
  out.equalities = m.size();
  out.potential = out.max_residual <= tol.threshold(r.max_abs());
  return out;
}

/// r_ij split into row average + column average - grand average plus a
/// residual; the residual equals H_{k1} R H_{k2} entrywise and vanishes
/// exactly on potential games.
struct AverageDecomposition {
  std::vector<double> row_means;
  std::vector<double> col_means;
  double grand_mean = 0.0;
  Matrix residual;
};

inline AverageDecomposition average_decomposition(const Matrix& r) {
  const std::size_t k1 = r.rows(), k2 = r.cols();
  AverageDecomposition d;
  d.row_means.assign(k1, 0.0);
  d.col_means.assign(k2, 0.0);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      d.row_means[i] += r(i, j);
      d.col_means[j] += r(i, j);
      d.grand_mean += r(i, j);
    }
  }
  for (double& v : d.row_means) v /= static_cast<double>(k2);
  for (double& v : d.col_means) v /= static_cast<double>(k1);
  d.grand_mean /= static_cast<double>(k1 * k2);
  d.residual = Matrix(k1, k2);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      d.residual(i, j) = r(i, j) - d.row_means[i] - d.col_means[j] + d.grand_mean;
    }
  }
  return d;
}

struct Projection {
  BiMatrixGame projected;
  double distance = 0.0;  // Frobenius norm of the removed component
};

/// Orthogonal projection onto the potential subspace: the projected game is
/// (C1, C1 + R') with R' = R - H_{k1} R H_{k2}, i.e. the relative payoffs
/// lose their doubly-centered component. The distance is ||R - R'||_F.
inline Projection project_to_potential(const BiMatrixGame& g) {
  const Matrix r = g.relative_payoffs();
  const Matrix removed = centering_matrix(g.k1()) * r * centering_matrix(g.k2());
  const Matrix projected_r = r - removed;
  return Projection{BiMatrixGame(g.c1, g.c1 + projected_r),
                    removed.frobenius_norm()};
}

}  // namespace potentia
