// Pure Nash equilibria: best-response enumeration and the potential-argmax
// route, which must coincide on potential games.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "generators.hpp"
#include "potentia/minimal_system.hpp"
#include "potentia/nash.hpp"

using namespace potentia;

namespace {

FiniteGame zero_game(std::vector<std::size_t> counts) {
  std::size_t space = 1;
  for (std::size_t k : counts) space *= k;
  return FiniteGame(counts, std::vector<std::vector<double>>(
                                counts.size(), std::vector<double>(space, 0.0)));
}

bool same_profiles(const EquilibriumSet& a, const EquilibriumSet& b) {
  return a.profiles == b.profiles;
}

}  // namespace

TEST_CASE("brute-force enumeration") {
  SECTION("zero game: every profile is an equilibrium") {
    const FiniteGame game = zero_game({2, 2, 2});
    const EquilibriumSet eq = pure_nash_brute(game);
    REQUIRE(eq.profiles.size() == 8);
    for (std::size_t idx = 0; idx < 8; ++idx) {
      REQUIRE(eq.profiles[idx] == game.index_to_profile(idx));
    }
  }

  SECTION("matching pennies has none") {
    const FiniteGame pennies({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
    REQUIRE(pure_nash_brute(pennies).profiles.empty());
  }

  SECTION("prisoners dilemma has exactly the mutual-defection profile") {
    // exhaustive check of all four profiles by hand gives {(2,2)}
    const FiniteGame pd({2, 2}, {{3, 0, 5, 1}, {3, 5, 0, 1}});
    const EquilibriumSet eq = pure_nash_brute(pd);
    REQUIRE(eq.profiles.size() == 1);
    REQUIRE(eq.profiles[0] == StrategyProfile{{2, 2}});
  }

  SECTION("profiles come out sorted and unique") {
    std::mt19937 rng(71);
    const FiniteGame game = testgen::random_potential_game(rng, {2, 3, 2});
    const EquilibriumSet eq = pure_nash_brute(game);
    for (std::size_t t = 1; t < eq.profiles.size(); ++t) {
      REQUIRE(eq.profiles[t - 1] < eq.profiles[t]);
    }
  }
}

TEST_CASE("potential-argmax route") {
  SECTION("constant potential marks every profile") {
    const FiniteGame game = zero_game({2, 2});
    const EquilibriumSet eq =
        nash_from_potential(game, {std::vector<double>(4, 1.0), 0.0});
    REQUIRE(eq.profiles.size() == 4);
    for (bool flag : eq.global_argmax) REQUIRE(flag);
  }

  SECTION("invalid potential is rejected") {
    const FiniteGame pennies({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
    REQUIRE_THROWS_AS(
        nash_from_potential(pennies, {std::vector<double>(4, 0.0), 0.0}),
        PreconditionError);
  }

  SECTION("agrees with brute force on potential games") {
    std::mt19937 rng(72);
    for (const auto& shape :
         {std::vector<std::size_t>{2, 2}, std::vector<std::size_t>{3, 3},
          std::vector<std::size_t>{2, 2, 2}, std::vector<std::size_t>{3, 3, 3},
          std::vector<std::size_t>{2, 2, 2, 2}}) {
      for (int trial = 0; trial < 10; ++trial) {
        const FiniteGame game = testgen::random_potential_game(rng, shape);
        const PotentialVector pv = potential_closed_form(game);
        const EquilibriumSet via_potential = nash_from_potential(game, pv);
        const EquilibriumSet via_brute = pure_nash_brute(game);
        REQUIRE(same_profiles(via_potential, via_brute));
        REQUIRE_FALSE(via_brute.profiles.empty());  // finite argmax exists
        // every global maximizer is in the set and flagged
        bool any_global = false;
        for (bool flag : via_potential.global_argmax) any_global |= flag;
        REQUIRE(any_global);
      }
    }
  }

  SECTION("constant shifts change nothing") {
    std::mt19937 rng(73);
    const FiniteGame game = testgen::random_potential_game(rng, {2, 2, 2});
    const PotentialVector pv = potential_closed_form(game);
    PotentialVector shifted = pv;
    for (double& v : shifted.entries) v += 9.75;
    const EquilibriumSet a = nash_from_potential(game, pv);
    const EquilibriumSet b = nash_from_potential(game, shifted);
    REQUIRE(same_profiles(a, b));
    REQUIRE(a.global_argmax == b.global_argmax);
  }
}
