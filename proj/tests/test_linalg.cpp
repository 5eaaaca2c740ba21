// Dense matrix arithmetic, the structured building blocks, and the
// rank-revealing solver.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "potentia/decomposition.hpp"
#include "potentia/matrix.hpp"

using namespace potentia;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                     double lo = -3.0, double hi = 3.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("boundary matrix definition and kernel") {
  REQUIRE(boundary_matrix(2) == Matrix::from_rows({{1, -1}}));
  REQUIRE(boundary_matrix(3) == Matrix::from_rows({{1, 0, -1}, {0, 1, -1}}));
  REQUIRE_THROWS_AS(boundary_matrix(1), DimensionError);

  for (std::size_t k = 2; k <= 7; ++k) {
    const Matrix annihilated = boundary_matrix(k) * Matrix::ones(k, 1);
    REQUIRE(annihilated == Matrix(k - 1, 1));
  }
}

TEST_CASE("selector matrix identities are exact") {
  REQUIRE(selector_matrix(2) == Matrix::from_rows({{1, 0}}));
  REQUIRE_THROWS_AS(selector_matrix(1), DimensionError);

  for (std::size_t k = 2; k <= 7; ++k) {
    const Matrix b = boundary_matrix(k);
    const Matrix d = selector_matrix(k);
    REQUIRE(d * Matrix::unit_column(k, k) == Matrix(k - 1, 1));
    REQUIRE(b * d.transpose() == Matrix::identity(k - 1));
    // D^T B = I - 1 (delta_k^k)^T
    Matrix expected = Matrix::identity(k);
    for (std::size_t i = 0; i < k; ++i) expected(i, k - 1) -= 1.0;
    REQUIRE(d.transpose() * b == expected);
  }
}

TEST_CASE("centering matrix") {
  REQUIRE(centering_matrix(1) == Matrix(1, 1));
  REQUIRE(centering_matrix(2) == Matrix::from_rows({{0.5, -0.5}, {-0.5, 0.5}}));

  for (std::size_t k = 1; k <= 6; ++k) {
    const Matrix h = centering_matrix(k);
    REQUIRE(h == h.transpose());
    REQUIRE((h * h - h).max_abs() < 1e-12);
    REQUIRE((h * Matrix::ones(k, 1)).max_abs() < 1e-12);
  }

  SECTION("equals the boundary-matrix projector B^T (B B^T)^{-1} B") {
    for (std::size_t k = 2; k <= 5; ++k) {
      const Matrix b = boundary_matrix(k);
      // (B B^T)^{-1} via the solver, column by column.
      const Matrix bbt = b * b.transpose();
      Matrix inv(k - 1, k - 1);
      for (std::size_t j = 0; j < k - 1; ++j) {
        std::vector<double> e(k - 1, 0.0);
        e[j] = 1.0;
        const auto x = solve_consistent(bbt, e);
        REQUIRE(x.has_value());
        for (std::size_t i = 0; i < k - 1; ++i) inv(i, j) = (*x)[i];
      }
      const Matrix projector = b.transpose() * inv * b;
      REQUIRE((projector - centering_matrix(k)).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("kron basics") {
  const Matrix row = Matrix::from_rows({{1, -1}});
  REQUIRE(kron(Matrix::identity(2), row) ==
          Matrix::from_rows({{1, -1, 0, 0}, {0, 0, 1, -1}}));
  REQUIRE(kron(row, Matrix::identity(2)) ==
          Matrix::from_rows({{1, 0, -1, 0}, {0, 1, 0, -1}}));

  SECTION("mixed-product identity on random blocks") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = random_matrix(rng, 2, 2);
      const Matrix b = random_matrix(rng, 2, 2);
      const Matrix c = random_matrix(rng, 2, 2);
      const Matrix d = random_matrix(rng, 2, 2);
      const Matrix lhs = kron(a, b) * kron(c, d);
      const Matrix rhs = kron(a * c, b * d);
      REQUIRE((lhs - rhs).max_abs() < 1e-12);
    }
  }

  SECTION("capacity cap") {
    const Matrix big(2000, 1900);
    REQUIRE_THROWS_AS(kron(big, big), CapacityError);
  }
}

TEST_CASE("row-major vectorization") {
  const Matrix x = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix v = vec_rows(x);
  REQUIRE(v == Matrix::column(std::vector<double>{1, 2, 3, 4}));
  REQUIRE(unvec_rows(v, 2, 2) == x);
  REQUIRE_THROWS_AS(unvec_rows(v, 3, 2), DimensionError);

  SECTION("round-trips exactly for all shapes up to 6x6") {
    std::mt19937 rng(11);
    for (std::size_t r = 1; r <= 6; ++r) {
      for (std::size_t c = 1; c <= 6; ++c) {
        const Matrix m = random_matrix(rng, r, c);
        REQUIRE(unvec_rows(vec_rows(m), r, c) == m);
      }
    }
  }

  SECTION("V_r(ABC) = (A kron C^T) V_r(B)") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = random_matrix(rng, 2, 2);
      const Matrix b = random_matrix(rng, 2, 2);
      const Matrix c = random_matrix(rng, 2, 2);
      const Matrix lhs = vec_rows(a * b * c);
      const Matrix rhs = kron(a, c.transpose()) * vec_rows(b);
      REQUIRE((lhs - rhs).max_abs() < 1e-12);
      const Matrix lhs2 = vec_rows(a * b);
      const Matrix rhs2 = kron(a, Matrix::identity(2)) * vec_rows(b);
      REQUIRE((lhs2 - rhs2).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("solve_consistent") {
  SECTION("identity system") {
    const auto x = solve_consistent(Matrix::identity(2), std::vector<double>{3, 4});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == Catch::Approx(3.0));
    REQUIRE((*x)[1] == Catch::Approx(4.0));
  }

  SECTION("underdetermined consistent returns a valid minimum-norm solution") {
    const Matrix a = Matrix::from_rows({{1, -1}});
    const auto x = solve_consistent(a, std::vector<double>{5});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] - (*x)[1] == Catch::Approx(5.0));
    // minimum-norm solution of x1 - x2 = 5 is (2.5, -2.5)
    REQUIRE((*x)[0] == Catch::Approx(2.5));
    REQUIRE((*x)[1] == Catch::Approx(-2.5));
  }

  SECTION("inconsistent system returns absent") {
    const Matrix a = Matrix::from_rows({{1}, {1}});
    REQUIRE_FALSE(solve_consistent(a, std::vector<double>{0, 1}).has_value());
  }

  SECTION("dimension mismatch") {
    REQUIRE_THROWS_AS(solve_consistent(Matrix::identity(2), std::vector<double>{1}),
                      DimensionError);
  }

  SECTION("absent exactly when rank([A|b]) exceeds rank(A)") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 5);
      const std::size_t m = dim(rng), n = dim(rng);
      Matrix a = random_matrix(rng, m, n);
      if (trial % 2 == 0 && m > 1) {
        // force a rank drop so inconsistent right sides actually occur
        for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = a(0, j);
      }
      const Matrix b_col = random_matrix(rng, m, 1);
      std::vector<double> b(b_col.data());
      Matrix augmented(m, n + 1);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) augmented(i, j) = a(i, j);
        augmented(i, n) = b[i];
      }
      const bool rank_consistent = numerical_rank(augmented) <= numerical_rank(a);
      const auto x = solve_consistent(a, b);
      REQUIRE(x.has_value() == rank_consistent);
      if (x.has_value()) {
        const auto ax = mat_vec(a, *x);
        for (std::size_t i = 0; i < m; ++i) {
          REQUIRE(std::abs(ax[i] - b[i]) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("rank and nullity") {
  REQUIRE(nullity(Matrix::identity(3)) == 0);
  REQUIRE(nullity(Matrix(2, 5)) == 5);

  SECTION("kron(B_k1, B_k2) has nullity k1 + k2 - 1") {
    for (auto [k1, k2] : {std::pair<std::size_t, std::size_t>{2, 2},
                          {2, 3},
                          {3, 3}}) {
      const Matrix m = kron(boundary_matrix(k1), boundary_matrix(k2));
      REQUIRE(nullity(m) == k1 + k2 - 1);
    }
  }

  SECTION("rank of random products is bounded by the factor sizes") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix a = random_matrix(rng, 4, 2);
      const Matrix b = random_matrix(rng, 2, 4);
      REQUIRE(numerical_rank(a * b) <= 2);
    }
  }
}

TEST_CASE("tolerance validation") {
  REQUIRE_THROWS_AS(Tolerance(-1.0, 0.0), DimensionError);
  REQUIRE_THROWS_AS(Tolerance(0.0, -1.0), DimensionError);
  const Tolerance t(1e-6, 1e-9);
  REQUIRE(t.threshold(1000.0) == Catch::Approx(1e-6 + 1e-6));
}
