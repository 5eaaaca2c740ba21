// Acceptance suite: one pass/fail line per release criterion, each pinned
// to its stated tolerance and runtime budget.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "generators.hpp"
#include "potentia/potentia.hpp"

using namespace potentia;
namespace fs = std::filesystem;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void report(int number, const std::string& name, bool ok, double seconds) {
  std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), seconds);
  std::fflush(stdout);
}

const std::vector<std::vector<std::size_t>> kUniformShapes = {
    {2, 2}, {3, 3}, {2, 2, 2}, {3, 3, 3}, {2, 2, 2, 2}, {3, 3, 3, 3}};

std::vector<long long> golden_row(std::size_t index) {
  static const std::vector<std::vector<long long>> rows = {
      {0, 1, 0, -1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1},
      {1, -1, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, -1, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1}};
  return rows[index];
}

}  // namespace

TEST_CASE("criterion 1: golden coefficient matrix from the CLI") {
  const Stopwatch watch;
  const fs::path out = fs::temp_directory_path() / "potentia_equations32.json";
  const std::string command = std::string(POTENTIA_CLI_PATH) +
                              " equations 3 2 --format json > " + out.string();
  bool ok = std::system(command.c_str()) == 0;
  if (ok) {
    std::ifstream file(out);
    std::ostringstream text;
    text << file.rdbuf();
    const nlohmann::json doc = nlohmann::json::parse(text.str());
    ok = doc["rows"].size() == 5;
    for (std::size_t i = 0; ok && i < 5; ++i) {
      ok = doc["rows"][i].get<std::vector<long long>>() == golden_row(i);
    }
  }
  // and the library object itself, entry for entry in integer arithmetic
  const Matrix m = minimal_check_matrix(3, 2);
  ok = ok && m.rows() == 5 && m.cols() == 16;
  for (std::size_t i = 0; ok && i < 5; ++i) {
    const auto row = golden_row(i);
    for (std::size_t j = 0; j < 16; ++j) {
      if (m(i, j) != static_cast<double>(row[j])) {
        ok = false;
        break;
      }
    }
  }
  const double elapsed = watch.seconds();
  ok = ok && elapsed < 1.0;
  report(1, "equations (3,2) reproduces the golden 5x16 matrix exactly", ok,
         elapsed);
  REQUIRE(ok);
}

TEST_CASE("criterion 2: minimal equation counts") {
  const Stopwatch watch;
  const std::vector<std::pair<std::size_t, std::size_t>> sizes = {
      {3, 2}, {3, 3}, {4, 2}, {4, 3}};
  const std::vector<std::size_t> expected = {5, 28, 17, 136};
  bool ok = true;
  for (std::size_t t = 0; t < sizes.size(); ++t) {
    const auto [n, k] = sizes[t];
    const Matrix m = minimal_check_matrix(n, k);
    ok = ok && m.rows() == expected[t];
    ok = ok && minimal_equation_count(n, k).minimal == expected[t];
  }
  const double elapsed = watch.seconds();
  ok = ok && elapsed < 5.0;
  report(2, "row counts equal (n-1)k^n - nk^(n-1) + 1 at all four sizes", ok,
         elapsed);
  REQUIRE(ok);
}

TEST_CASE("criterion 3: elimination identities hold exactly") {
  const Stopwatch watch;
  bool ok = true;
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{3, 2},
                      {3, 3},
                      {4, 2}}) {
    const StructureIdentityReport report_nk = verify_structure_identities(n, k);
    ok = ok && report_nk.all_exact;
  }
  const double elapsed = watch.seconds();
  ok = ok && elapsed < 5.0;
  report(3, "SU=I, boundary reduction, vanishing rows, MG=I, LG=0 (exact)", ok,
         elapsed);
  REQUIRE(ok);
}

TEST_CASE("criterion 4: all criteria agree on 540 generated games") {
  const Stopwatch watch;
  std::mt19937 rng(2024);
  const Tolerance tol;
  std::size_t games = 0;
  std::size_t disagreements = 0;
  std::size_t wrong_verdicts = 0;
  for (const auto& shape : kUniformShapes) {
    for (int trial = 0; trial < 45; ++trial) {
      const FiniteGame potential_game = testgen::random_potential_game(rng, shape);
      const FiniteGame perturbed = testgen::perturb_one_entry(rng, potential_game);
      for (const auto& [game, expected] :
           {std::pair<const FiniteGame&, bool>{potential_game, true},
            {perturbed, false}}) {
        const CheckReport report_g = run_all_criteria(game, tol);
        ++games;
        if (!report_g.all_agree) ++disagreements;
        if (report_g.potential != expected) ++wrong_verdicts;
      }
    }
  }
  const double elapsed = watch.seconds();
  const bool ok =
      games >= 500 && disagreements == 0 && wrong_verdicts == 0 && elapsed < 60.0;
  report(4,
         "zero disagreements across " + std::to_string(games) +
             " games (potential accepted, perturbed rejected)",
         ok, elapsed);
  REQUIRE(games >= 500);
  REQUIRE(disagreements == 0);
  REQUIRE(wrong_verdicts == 0);
  REQUIRE(elapsed < 60.0);
}

TEST_CASE("criterion 5: every potential route validates, routes differ by constants") {
  const Stopwatch watch;
  std::mt19937 rng(2025);
  bool ok = true;
  for (const auto& shape : kUniformShapes) {
    for (int trial = 0; trial < 15; ++trial) {
      const FiniteGame game = testgen::random_potential_game(rng, shape);
      const double bound = 1e-9 * (1.0 + game.max_abs_payoff());

      std::vector<std::vector<double>> candidates;
      const PotentialVector closed = potential_closed_form(game, 0.0);
      candidates.push_back(closed.entries);

      const EquationCheck check = is_potential_by_equation(game);
      ok = ok && check.potential;
      if (check.potential) {
        const std::size_t block = game.profile_space() / shape[0];
        candidates.push_back(
            potential_from_xi(game,
                              std::span<const double>(check.xi->data(), block))
                .entries);
      }
      if (game.players() == 2) {
        candidates.push_back(
            vec_rows(bimatrix_potential(as_bimatrix(game), 0.0)).to_vector());
      }

      for (const auto& entries : candidates) {
        const PotentialValidation v = validate_potential(game, {entries, 0.0});
        ok = ok && v.valid && v.max_residual <= bound;
      }
      for (std::size_t a = 0; a < candidates.size(); ++a) {
        for (std::size_t b = a + 1; b < candidates.size(); ++b) {
          double lo = candidates[a][0] - candidates[b][0];
          double hi = lo;
          for (std::size_t t = 0; t < candidates[a].size(); ++t) {
            const double d = candidates[a][t] - candidates[b][t];
            lo = std::min(lo, d);
            hi = std::max(hi, d);
          }
          ok = ok && (hi - lo) <= bound;
        }
      }
    }
  }
  const double elapsed = watch.seconds();
  report(5, "potential routes validate at 1e-9 (1 + max |payoff|)", ok, elapsed);
  REQUIRE(ok);
}

TEST_CASE("criterion 6: projection onto the potential subspace") {
  const Stopwatch watch;
  std::mt19937 rng(2026);
  bool ok = true;
  std::size_t games = 0;
  for (std::size_t k1 = 2; k1 <= 4; ++k1) {
    for (std::size_t k2 = 2; k2 <= 4; ++k2) {
      const Matrix b = kron(boundary_matrix(k1), boundary_matrix(k2));
      ok = ok && nullity(b) == k1 + k2 - 1;

      // projector of the doubly-centered form vs the generic null-space form
      const Matrix bbt = b * b.transpose();
      Matrix inverse(b.rows(), b.rows());
      for (std::size_t j = 0; j < b.rows(); ++j) {
        std::vector<double> e(b.rows(), 0.0);
        e[j] = 1.0;
        const auto x = solve_consistent(bbt, e);
        ok = ok && x.has_value();
        if (!x) continue;
        for (std::size_t i = 0; i < b.rows(); ++i) inverse(i, j) = (*x)[i];
      }
      const Matrix generic =
          Matrix::identity(k1 * k2) - b.transpose() * inverse * b;
      Matrix centering_form =
          Matrix::identity(k1 * k2) -
          kron(centering_matrix(k1), centering_matrix(k2));
      ok = ok && (generic - centering_form).max_abs() <= 1e-10;

      for (int trial = 0; trial < 12; ++trial) {
        const BiMatrixGame game = testgen::random_bimatrix(rng, k1, k2);
        ++games;
        const Projection once = project_to_potential(game);
        ok = ok && bimatrix_is_potential(once.projected).potential;
        const Projection twice = project_to_potential(once.projected);
        ok = ok && twice.distance <= 1e-10;
        ok = ok && (twice.projected.relative_payoffs() -
                    once.projected.relative_payoffs())
                           .max_abs() <= 1e-10;
        const Matrix via_generic =
            generic * vec_rows(game.relative_payoffs());
        const Matrix via_centering =
            vec_rows(once.projected.relative_payoffs());
        ok = ok && (via_generic - via_centering).max_abs() <= 1e-10;
      }
    }
  }
  const double elapsed = watch.seconds();
  ok = ok && games >= 100;
  report(6,
         "projection of " + std::to_string(games) +
             " games: fixed points, idempotence, projector equality, nullity",
         ok, elapsed);
  REQUIRE(ok);
}

TEST_CASE("criterion 7: Nash equilibria via potential maxima") {
  const Stopwatch watch;
  std::mt19937 rng(2027);
  bool ok = true;
  for (const auto& shape : kUniformShapes) {
    for (int trial = 0; trial < 15; ++trial) {
      const FiniteGame game = testgen::random_potential_game(rng, shape);
      const PotentialVector pv = potential_closed_form(game);
      const EquilibriumSet via_potential = nash_from_potential(game, pv);
      const EquilibriumSet via_brute = pure_nash_brute(game);
      ok = ok && via_potential.profiles == via_brute.profiles;
      ok = ok && !via_brute.profiles.empty();
    }
  }
  const FiniteGame pennies({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
  ok = ok && pure_nash_brute(pennies).profiles.empty();
  const double elapsed = watch.seconds();
  report(7, "potential-argmax equals brute force and is nonempty; pennies empty",
         ok, elapsed);
  REQUIRE(ok);
}

TEST_CASE("criterion 8: no large-scale results beyond the algebraic gates") {
  // Everything this tool asserts is exactly reproducible at desk scale and
  // already covered by criteria 1-7; there is nothing bigger to re-run.
  report(8, "nothing beyond criteria 1-7 to reproduce", true, 0.0);
  SUCCEED();
}
