#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "potentia/matrix.hpp"

namespace potentia {

/// Householder QR with (optional) column pivoting, LAPACK-style packed
/// storage: R on and above the diagonal, reflector tails below, scaling
/// factors in tau. Numerical rank uses the standard convention: diagonal
/// entries below max(rows, cols) * machine-epsilon * |R(0,0)| count as zero.
struct QrDecomposition {
  Matrix packed;
  std::vector<double> tau;
  std::vector<std::size_t> col_perm;  // position j holds original column col_perm[j]
  std::size_t rank = 0;

  std::size_t reflectors() const { return tau.size(); }

  /// v := Q^T v (v has length rows()).
  void apply_qt(std::vector<double>& v) const {
    for (std::size_t k = 0; k < reflectors(); ++k) apply_reflector(k, v);
  }

  /// v := Q v.
  void apply_q(std::vector<double>& v) const {
    for (std::size_t k = reflectors(); k-- > 0;) apply_reflector(k, v);
  }

 private:
  void apply_reflector(std::size_t k, std::vector<double>& v) const {
    const double t = tau[k];
    if (t == 0.0) return;
    double w = v[k];
    for (std::size_t i = k + 1; i < packed.rows(); ++i) w += packed(i, k) * v[i];
    w *= t;
    v[k] -= w;
    for (std::size_t i = k + 1; i < packed.rows(); ++i) v[i] -= w * packed(i, k);
  }
};

inline QrDecomposition qr_factor(const Matrix& input, bool pivot_columns = true) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  QrDecomposition d;
  d.packed = input;
  d.col_perm.resize(n);
  std::iota(d.col_perm.begin(), d.col_perm.end(), std::size_t{0});
  const std::size_t steps = std::min(m, n);
  d.tau.assign(steps, 0.0);
  Matrix& a = d.packed;

  for (std::size_t k = 0; k < steps; ++k) {
    if (pivot_columns) {
      // Recomputing the trailing column norms each step keeps the pivot
      // choice exact; problem sizes here make the extra pass negligible.
      std::size_t best = k;
      double best_norm = -1.0;
      for (std::size_t j = k; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += a(i, j) * a(i, j);
        if (s > best_norm) {
          best_norm = s;
          best = j;
        }
      }
      if (best != k) {
        for (std::size_t i = 0; i < m; ++i) std::swap(a(i, k), a(i, best));
        std::swap(d.col_perm[k], d.col_perm[best]);
      }
    }

    double norm_sq = 0.0;
    for (std::size_t i = k; i < m; ++i) norm_sq += a(i, k) * a(i, k);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
      d.tau[k] = 0.0;
      continue;
    }
    const double alpha = a(k, k);
    const double beta = alpha >= 0.0 ? -norm : norm;
    d.tau[k] = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t i = k + 1; i < m; ++i) a(i, k) *= scale;
    a(k, k) = beta;

    for (std::size_t j = k + 1; j < n; ++j) {
      double w = a(k, j);
      for (std::size_t i = k + 1; i < m; ++i) w += a(i, k) * a(i, j);
      w *= d.tau[k];
      a(k, j) -= w;
      for (std::size_t i = k + 1; i < m; ++i) a(i, j) -= w * a(i, k);
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const double cutoff =
      static_cast<double>(std::max(m, n)) * eps *
      (steps > 0 ? std::abs(a(0, 0)) : 0.0);
  d.rank = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    if (std::abs(a(k, k)) > cutoff) {
      ++d.rank;
    } else {
      break;
    }
  }
  return d;
}

inline std::size_t numerical_rank(const Matrix& a) {
  return qr_factor(a).rank;
}

/// cols(A) - numerical rank(A).
inline std::size_t nullity(const Matrix& a) {
  return a.cols() - numerical_rank(a);
}

struct LeastSquaresSolution {
  std::vector<double> x;     // minimum-norm least-squares solution
  double residual_inf = 0.0; // max |Ax - b|
  std::size_t rank_a = 0;
  std::size_t rank_augmented = 0;
  bool consistent = false;   // rank([A|b]) <= rank(A)
};

/// Minimum-norm least-squares solve via a complete orthogonal decomposition:
/// column-pivoted QR of A followed by a plain QR of the leading rows of R
/// transposed. Consistency is decided by comparing the numerical ranks of A
/// and [A|b].
inline LeastSquaresSolution lstsq_min_norm(const Matrix& a, std::span<const double> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) {
    throw DimensionError("lstsq_min_norm: rhs length " + std::to_string(b.size()) +
                         " does not match " + a.shape_string());
  }
  LeastSquaresSolution out;
  const QrDecomposition qa = qr_factor(a);
  out.rank_a = qa.rank;

  Matrix augmented(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = a(i, j);
    augmented(i, n) = b[i];
  }
  out.rank_augmented = qr_factor(augmented).rank;
  out.consistent = out.rank_augmented <= out.rank_a;

  const std::size_t r = qa.rank;
  out.x.assign(n, 0.0);
  if (r > 0) {
    std::vector<double> qtb(b.begin(), b.end());
    qa.apply_qt(qtb);

    // Leading r rows of R, in the pivoted column order.
    Matrix r1t(n, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < n; ++j) r1t(j, i) = qa.packed(i, j);
    const QrDecomposition qt = qr_factor(r1t, /*pivot_columns=*/false);

    // Forward-substitute T^T z = (Q^T b)[0..r).
    std::vector<double> z(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      double s = qtb[i];
      for (std::size_t j = 0; j < i; ++j) s -= qt.packed(j, i) * z[j];
      z[i] = s / qt.packed(i, i);
    }

    std::vector<double> u(n, 0.0);
    std::copy(z.begin(), z.end(), u.begin());
    qt.apply_q(u);
    for (std::size_t j = 0; j < n; ++j) out.x[qa.col_perm[j]] = u[j];
  }

  const std::vector<double> ax = mat_vec(a, out.x);
  for (std::size_t i = 0; i < m; ++i) {
    out.residual_inf = std::max(out.residual_inf, std::abs(ax[i] - b[i]));
  }
  return out;
}

/// Returns a solution of Ax = b when the system is consistent (decided by
/// comparing the numerical ranks of A and [A|b]), absent otherwise. When
/// underdetermined, the minimum-norm solution is returned so that repeated
/// runs and golden tests see one deterministic answer.
inline std::optional<std::vector<double>> solve_consistent(
    const Matrix& a, std::span<const double> b, const Tolerance& tol = {}) {
  (void)tol;  // rank decisions use the scaled machine-epsilon convention
  LeastSquaresSolution s = lstsq_min_norm(a, b);
  if (!s.consistent) return std::nullopt;
  return std::move(s.x);
}

}  // namespace potentia
