// potentia: decide whether a finite game is a potential game (by any of the
// implemented criteria), compute potentials, project bi-matrix games onto
// the potential subspace, enumerate pure Nash equilibria, and print the
// minimal verification equations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "potentia/potentia.hpp"

namespace {

using potentia::json;

constexpr int kExitPotential = 0;
constexpr int kExitNotPotential = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDisagreement = 3;

std::string format_number(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::string format_residual(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3e", v);
  return buffer;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) {
    throw potentia::ParseError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

potentia::FiniteGame load_game(const std::string& path) {
  return potentia::parse_game(read_input(path));
}

std::string profile_string(const potentia::StrategyProfile& p) {
  std::string s = "(";
  for (std::size_t t = 0; t < p.choices.size(); ++t) {
    if (t) s += ",";
    s += std::to_string(p.choices[t]);
  }
  return s + ")";
}

json profile_json(const potentia::StrategyProfile& p) {
  return json(p.choices);
}

struct CommonOptions {
  std::string input = "-";
  double abs_eps = potentia::Tolerance{}.abs_eps;
  double rel_scale = potentia::Tolerance{}.rel_scale;
  std::string format = "human";

  potentia::Tolerance tolerance() const { return {abs_eps, rel_scale}; }
  bool json_output() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_input = true) {
  if (with_input) {
    cmd->add_option("input", opts.input, "game file (JSON), or - for stdin");
  }
  cmd->add_option("--abs-eps", opts.abs_eps, "absolute zero-test tolerance");
  cmd->add_option("--rel-scale", opts.rel_scale,
                  "relative zero-test tolerance (scales with max |payoff|)");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"human", "json"}));
}

json shape_json(const potentia::FiniteGame& game) {
  json j;
  j["players"] = game.players();
  j["strategies"] = game.strategy_counts();
  return j;
}

std::string shape_string(const potentia::FiniteGame& game) {
  std::string s = std::to_string(game.players()) + " players, strategies [";
  const auto& counts = game.strategy_counts();
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (t) s += ",";
    s += std::to_string(counts[t]);
  }
  return s + "]";
}

int cmd_check(const CommonOptions& opts, const std::string& method) {
  const potentia::FiniteGame game = load_game(opts.input);
  const potentia::Tolerance tol = opts.tolerance();
  const std::vector<std::string> applicable = potentia::applicable_methods(game);

  std::vector<potentia::CriterionResult> results;
  if (method == "all") {
    const potentia::CheckReport report = potentia::run_all_criteria(game, tol);
    results = report.results;
  } else {
    if (std::find(applicable.begin(), applicable.end(), method) ==
        applicable.end()) {
      std::string names;
      for (const auto& m : applicable) names += " " + m;
      std::cerr << "error: method '" << method
                << "' is not applicable to this game shape (" << shape_string(game)
                << "); applicable methods:" << names << "\n";
      return kExitUsage;
    }
    results.push_back(potentia::run_criterion(game, method, tol));
  }

  bool all_agree = true;
  for (const auto& r : results) {
    if (r.potential != results.front().potential) all_agree = false;
  }
  const bool potential = results.front().potential;

  // the minimal system is the one criterion whose individual equation
  // residuals are worth reading; list them when it is run on its own
  std::optional<std::vector<double>> minimal_residuals;
  if (method == "minimal") {
    minimal_residuals = potentia::is_potential_minimal(game, tol).residuals;
  }

  if (opts.json_output()) {
    json out = shape_json(game);
    out["method"] = method;
    json list = json::array();
    for (const auto& r : results) {
      json item;
      item["method"] = r.method;
      item["criterion"] = r.reference;
      item["potential"] = r.potential;
      item["max_residual"] = r.max_residual;
      item["equalities"] = r.equalities;
      if (r.method == "minimal" && minimal_residuals) {
        item["residuals"] = *minimal_residuals;
      }
      list.push_back(std::move(item));
    }
    out["results"] = std::move(list);
    out["agree"] = all_agree;
    out["potential"] = all_agree ? json(potential) : json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "game: " << shape_string(game) << "\n";
    std::printf("%-12s %-14s %-14s %-11s %s\n", "method", "verdict",
                "max residual", "equalities", "criterion");
    for (const auto& r : results) {
      std::printf("%-12s %-14s %-14s %-11zu %s\n", r.method.c_str(),
                  r.potential ? "potential" : "not potential",
                  format_residual(r.max_residual).c_str(), r.equalities,
                  r.reference.c_str());
    }
    if (minimal_residuals) {
      std::cout << "residuals:";
      for (double r : *minimal_residuals) std::cout << " " << format_number(r);
      std::cout << "\n";
    }
    if (!all_agree) {
      std::cout << "overall: INTERNAL DISAGREEMENT between criteria\n";
    } else {
      std::cout << "overall: " << (potential ? "potential" : "not potential")
                << " (" << results.size()
                << (results.size() == 1 ? " method)" : " methods agree)") << "\n";
    }
  }
  if (!all_agree) return kExitDisagreement;
  return potential ? kExitPotential : kExitNotPotential;
}

int report_not_potential(const CommonOptions& opts,
                         const std::vector<double>& residuals,
                         double max_residual) {
  if (opts.json_output()) {
    json out;
    out["potential"] = false;
    out["max_residual"] = max_residual;
    out["residuals"] = residuals;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "not a potential game (max residual "
              << format_residual(max_residual) << ")\n";
    if (!residuals.empty()) {
      std::cout << "residuals:";
      for (double r : residuals) std::cout << " " << format_number(r);
      std::cout << "\n";
    }
  }
  return kExitNotPotential;
}

int cmd_potential(const CommonOptions& opts, const std::string& route_flag,
                  double constant, double lambda) {
  const potentia::FiniteGame game = load_game(opts.input);
  const potentia::Tolerance tol = opts.tolerance();

  std::string route = route_flag;
  if (route == "auto") route = game.players() == 2 ? "eq9-1" : "eq40";
  if (route == "eq9-1" && game.players() != 2) {
    std::cerr << "error: route eq9-1 applies to 2-player games only\n";
    return kExitUsage;
  }

  const potentia::MinimalCheck verdict = potentia::is_potential_minimal(game, tol);
  if (!verdict.potential) {
    return report_not_potential(opts, verdict.residuals, verdict.max_residual);
  }

  potentia::PotentialVector pv;
  std::optional<potentia::Matrix> matrix_form;
  if (route == "eq9-1") {
    const potentia::BiMatrixGame bm = potentia::as_bimatrix(game);
    matrix_form = potentia::bimatrix_potential(bm, lambda, tol);
    pv.entries = matrix_form->to_vector();
    pv.constant_offset = lambda;
  } else if (route == "eq8-1") {
    const potentia::EquationCheck check =
        potentia::is_potential_by_equation(game, tol);
    if (!check.potential) {
      return report_not_potential(opts, {}, check.max_residual);
    }
    const std::size_t block = game.profile_space() / game.strategy_counts()[0];
    pv = potentia::potential_from_xi(
        game, std::span<const double>(check.xi->data(), block));
    for (double& v : pv.entries) v += constant;
    pv.constant_offset = constant;
  } else {  // eq40
    pv = potentia::potential_closed_form(game, constant, tol);
  }

  const potentia::PotentialValidation validation =
      potentia::validate_potential(game, pv, tol);

  if (opts.json_output()) {
    json out = shape_json(game);
    out["route"] = route;
    out[route == "eq9-1" ? "lambda" : "constant"] =
        route == "eq9-1" ? lambda : constant;
    if (matrix_form) {
      json rows = json::array();
      for (std::size_t i = 0; i < matrix_form->rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < matrix_form->cols(); ++j) {
          row.push_back((*matrix_form)(i, j));
        }
        rows.push_back(std::move(row));
      }
      out["potential_matrix"] = std::move(rows);
    }
    out["potential"] = pv.entries;
    out["validation"] = {{"valid", validation.valid},
                         {"max_residual", validation.max_residual}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "route: " << route
              << (route == "eq9-1"
                      ? " (lambda = " + format_number(lambda) + ")"
                      : " (constant c = " + format_number(constant) + ")")
              << "\n";
    if (matrix_form) {
      std::cout << "potential matrix P (" << matrix_form->rows() << "x"
                << matrix_form->cols() << "):\n";
      for (std::size_t i = 0; i < matrix_form->rows(); ++i) {
        std::cout << " ";
        for (std::size_t j = 0; j < matrix_form->cols(); ++j) {
          std::cout << " " << format_number((*matrix_form)(i, j));
        }
        std::cout << "\n";
      }
    } else {
      std::cout << "potential V^p (" << pv.entries.size() << " entries):\n ";
      for (double v : pv.entries) std::cout << " " << format_number(v);
      std::cout << "\n";
    }
    std::cout << "validation: max residual "
              << format_residual(validation.max_residual) << " ("
              << (validation.valid ? "valid" : "INVALID") << ")\n";
  }
  return validation.valid ? kExitPotential : kExitDisagreement;
}

int cmd_project(const CommonOptions& opts, const std::string& output_path) {
  const potentia::FiniteGame game = load_game(opts.input);
  const potentia::BiMatrixGame bm = potentia::as_bimatrix(game);  // n > 2 exits 2
  const potentia::Projection projection = potentia::project_to_potential(bm);

  potentia::FiniteGame projected = projection.projected.to_finite_game();
  if (game.labels()) {
    projected = potentia::FiniteGame(
        projected.strategy_counts(),
        {projected.payoff_row(1), projected.payoff_row(2)}, game.labels());
  }
  const std::string document = potentia::serialize_game(projected);

  if (!output_path.empty()) {
    std::ofstream file(output_path);
    if (!file) {
      std::cerr << "error: cannot write " << output_path << "\n";
      return kExitUsage;
    }
    file << document << "\n";
    std::cout << "distance: " << format_number(projection.distance) << "\n";
  } else if (opts.json_output()) {
    json out;
    out["projected"] = potentia::game_to_json(projected);
    out["distance"] = projection.distance;
    std::cout << out.dump(2) << "\n";
  } else {
    // game document on stdout (pipeline friendly), distance on stderr
    std::cout << document << "\n";
    std::cerr << "distance: " << format_number(projection.distance) << "\n";
  }
  return kExitPotential;
}

int cmd_nash(const CommonOptions& opts) {
  const potentia::FiniteGame game = load_game(opts.input);
  const potentia::Tolerance tol = opts.tolerance();

  const potentia::EquilibriumSet brute = potentia::pure_nash_brute(game, tol);

  bool is_potential = false;
  std::optional<potentia::EquilibriumSet> via_potential;
  try {
    const potentia::MinimalCheck verdict =
        potentia::is_potential_minimal(game, tol);
    is_potential = verdict.potential;
    if (is_potential) {
      const potentia::PotentialVector pv =
          potentia::potential_closed_form(game, 0.0, tol);
      via_potential = potentia::nash_from_potential(game, pv, tol);
    }
  } catch (const potentia::ShapeError&) {
    // no potential machinery for this shape; brute force only
  }

  bool agree = true;
  if (via_potential) {
    agree = via_potential->profiles == brute.profiles;
  }

  if (opts.json_output()) {
    json out = shape_json(game);
    json list = json::array();
    for (const auto& p : brute.profiles) list.push_back(profile_json(p));
    out["equilibria"] = std::move(list);
    out["potential"] = is_potential;
    if (via_potential) {
      json plist = json::array();
      json glist = json::array();
      for (std::size_t t = 0; t < via_potential->profiles.size(); ++t) {
        plist.push_back(profile_json(via_potential->profiles[t]));
        if (via_potential->global_argmax[t]) {
          glist.push_back(profile_json(via_potential->profiles[t]));
        }
      }
      out["potential_equilibria"] = std::move(plist);
      out["global_argmax"] = std::move(glist);
      out["agree"] = agree;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "game: " << shape_string(game) << "\n";
    std::cout << "brute-force equilibria (" << brute.profiles.size() << "):";
    if (brute.profiles.empty()) std::cout << " none";
    for (const auto& p : brute.profiles) std::cout << " " << profile_string(p);
    std::cout << "\n";
    std::cout << "potential game: " << (is_potential ? "yes" : "no") << "\n";
    if (via_potential) {
      std::cout << "potential-argmax equilibria ("
                << via_potential->profiles.size() << "):";
      for (const auto& p : via_potential->profiles) {
        std::cout << " " << profile_string(p);
      }
      std::cout << "\n";
      std::cout << "global argmax:";
      for (std::size_t t = 0; t < via_potential->profiles.size(); ++t) {
        if (via_potential->global_argmax[t]) {
          std::cout << " " << profile_string(via_potential->profiles[t]);
        }
      }
      std::cout << "\n";
      std::cout << "agreement: " << (agree ? "yes" : "NO") << "\n";
    }
  }
  if (!agree) return kExitDisagreement;
  return brute.profiles.empty() ? kExitNotPotential : kExitPotential;
}

int cmd_equations(const CommonOptions& opts, std::size_t n, std::size_t k) {
  const potentia::Matrix m = potentia::verification_matrix(n, k);
  const potentia::EquationCounts counts = potentia::minimal_equation_count(n, k);

  if (opts.json_output()) {
    json out;
    out["n"] = n;
    out["k"] = k;
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) {
        row.push_back(static_cast<long long>(m(i, j)));
      }
      rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    out["minimal_count"] = counts.minimal;
    out["pairwise_count"] = counts.pairwise;
    std::cout << out.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) std::cout << " ";
        std::cout << static_cast<long long>(m(i, j));
      }
      std::cout << "\n";
    }
    std::cout << "counts (n=" << n << ", k=" << k << "): " << counts.minimal
              << " minimal vs " << counts.pairwise << " pairwise\n";
  }
  return kExitPotential;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "potentia: potential-game detection, potentials, projections, and "
      "pure Nash equilibria for finite normal-form games"};
  app.require_subcommand(1);

  CommonOptions check_opts;
  std::string method = "all";
  CLI::App* check = app.add_subcommand(
      "check", "decide whether the game is a potential game");
  add_common(check, check_opts);
  check->add_option("--method", method, "criterion to run (default: all)")
      ->check(CLI::IsMember({"equation", "theorem1", "corner", "hino",
                             "four-cycle", "centering", "minimal", "t21",
                             "reshaped", "subgames", "all"}));

  CommonOptions potential_opts;
  std::string route = "auto";
  double constant = 0.0;
  double lambda = 0.0;
  CLI::App* potential = app.add_subcommand(
      "potential", "compute a potential function of a potential game");
  add_common(potential, potential_opts);
  potential->add_option("--route", route, "formula to use (default by shape)")
      ->check(CLI::IsMember({"auto", "eq9-1", "eq8-1", "eq40"}));
  potential->add_option("--constant", constant,
                        "additive constant c for vector routes");
  potential->add_option("--lambda", lambda,
                        "additive constant for the matrix route");

  CommonOptions project_opts;
  std::string output_path;
  CLI::App* project = app.add_subcommand(
      "project",
      "orthogonally project a bi-matrix game onto the potential subspace");
  add_common(project, project_opts);
  project->add_option("--output", output_path, "write the projected game here");

  CommonOptions nash_opts;
  CLI::App* nash =
      app.add_subcommand("nash", "enumerate pure-strategy Nash equilibria");
  add_common(nash, nash_opts);

  CommonOptions equations_opts;
  std::size_t eq_n = 0, eq_k = 0;
  CLI::App* equations = app.add_subcommand(
      "equations", "print the minimal verification coefficient matrix");
  equations->add_option("n", eq_n, "number of players")->required();
  equations->add_option("k", eq_k, "strategies per player")->required();
  add_common(equations, equations_opts, /*with_input=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_opts, method);
    if (potential->parsed())
      return cmd_potential(potential_opts, route, constant, lambda);
    if (project->parsed()) return cmd_project(project_opts, output_path);
    if (nash->parsed()) return cmd_nash(nash_opts);
    if (equations->parsed()) return cmd_equations(equations_opts, eq_n, eq_k);
  } catch (const potentia::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
