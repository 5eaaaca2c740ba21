#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "potentia/game.hpp"

namespace potentia {

using json = nlohmann::ordered_json;

namespace detail {

inline double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) {
    throw ParseError(path + ": expected a number");
  }
  const double v = node.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(path + ": non-finite number");
  }
  return v;
}

inline std::size_t count_at(const json& node, const std::string& path,
                            std::size_t minimum) {
  if (!node.is_number_integer() || node.get<long long>() < 0) {
    throw ParseError(path + ": expected a nonnegative integer");
  }
  const auto v = static_cast<std::size_t>(node.get<long long>());
  if (v < minimum) {
    throw ParseError(path + ": must be at least " + std::to_string(minimum));
  }
  return v;
}

inline Matrix matrix_at(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty()) {
    throw ParseError(path + ": expected a non-empty array of rows");
  }
  const std::size_t rows = node.size();
  if (!node[0].is_array() || node[0].empty()) {
    throw ParseError(path + "[0]: expected a non-empty row of numbers");
  }
  const std::size_t cols = node[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!node[i].is_array() || node[i].size() != cols) {
      throw ParseError(row_path + ": expected " + std::to_string(cols) +
                       " numbers");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = number_at(node[i][j], row_path + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

inline GameLabels labels_at(const json& node, const std::string& path) {
  GameLabels labels;
  if (!node.is_object()) throw ParseError(path + ": expected an object");
  if (node.contains("players")) {
    const json& p = node["players"];
    if (!p.is_array()) throw ParseError(path + ".players: expected an array");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_string()) {
        throw ParseError(path + ".players[" + std::to_string(i) +
                         "]: expected a string");
      }
      labels.players.push_back(p[i].get<std::string>());
    }
  }
  if (node.contains("strategies")) {
    const json& s = node["strategies"];
    if (!s.is_array()) throw ParseError(path + ".strategies: expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string sp = path + ".strategies[" + std::to_string(i) + "]";
      if (!s[i].is_array()) throw ParseError(sp + ": expected an array");
      std::vector<std::string> names;
      for (std::size_t j = 0; j < s[i].size(); ++j) {
        if (!s[i][j].is_string()) {
          throw ParseError(sp + "[" + std::to_string(j) + "]: expected a string");
        }
        names.push_back(s[i][j].get<std::string>());
      }
      labels.strategies.push_back(std::move(names));
    }
  }
  return labels;
}

}  // namespace detail

/// Parse a game document. Two forms are accepted: the standard form with
/// players / strategies / payoffs (payoff row i lists player i's payoffs in
/// lexicographic profile order, player 1 slowest), and the bi-matrix
/// shortcut { "bimatrix": { "C1": [[..]], "C2": [[..]] } } which is
/// converted on load by row-major vectorization.
inline FiniteGame parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");

  if (doc.contains("bimatrix")) {
    const json& bm = doc["bimatrix"];
    if (!bm.is_object() || !bm.contains("C1") || !bm.contains("C2")) {
      throw ParseError("bimatrix: expected an object with C1 and C2");
    }
    Matrix c1 = detail::matrix_at(bm["C1"], "bimatrix.C1");
    Matrix c2 = detail::matrix_at(bm["C2"], "bimatrix.C2");
    if (c1.rows() != c2.rows() || c1.cols() != c2.cols()) {
      throw ParseError("bimatrix.C2: shape " + c2.shape_string() +
                       " does not match C1 shape " + c1.shape_string());
    }
    std::optional<GameLabels> labels;
    if (doc.contains("labels")) labels = detail::labels_at(doc["labels"], "labels");
    return FiniteGame({c1.rows(), c1.cols()}, {c1.to_vector(), c2.to_vector()},
                      std::move(labels));
  }

  for (const char* key : {"players", "strategies", "payoffs"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string(key) + ": required field is missing");
    }
  }
  const std::size_t n = detail::count_at(doc["players"], "players", 2);
  const json& strategies = doc["strategies"];
  if (!strategies.is_array() || strategies.size() != n) {
    throw ParseError("strategies: expected an array of " + std::to_string(n) +
                     " strategy counts");
  }
  std::vector<std::size_t> counts;
  std::size_t space = 1;
  for (std::size_t j = 0; j < n; ++j) {
    counts.push_back(detail::count_at(strategies[j],
                                      "strategies[" + std::to_string(j) + "]", 1));
    space *= counts.back();
  }
  const json& payoffs = doc["payoffs"];
  if (!payoffs.is_array() || payoffs.size() != n) {
    throw ParseError("payoffs: expected " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = "payoffs[" + std::to_string(i) + "]";
    if (!payoffs[i].is_array() || payoffs[i].size() != space) {
      throw ParseError(row_path + ": expected " + std::to_string(space) +
                       " numbers, got " +
                       std::to_string(payoffs[i].is_array() ? payoffs[i].size() : 0));
    }
    std::vector<double> row;
    row.reserve(space);
    for (std::size_t t = 0; t < space; ++t) {
      row.push_back(detail::number_at(payoffs[i][t],
                                      row_path + "[" + std::to_string(t) + "]"));
    }
    rows.push_back(std::move(row));
  }
  std::optional<GameLabels> labels;
  if (doc.contains("labels")) labels = detail::labels_at(doc["labels"], "labels");
  return FiniteGame(std::move(counts), std::move(rows), std::move(labels));
}

inline json game_to_json(const FiniteGame& game) {
  json doc;
  doc["players"] = game.players();
  doc["strategies"] = game.strategy_counts();
  json payoffs = json::array();
  for (std::size_t i = 1; i <= game.players(); ++i) {
    payoffs.push_back(game.payoff_row(i));
  }
  doc["payoffs"] = std::move(payoffs);
  if (game.labels()) {
    json labels = json::object();
    if (!game.labels()->players.empty()) labels["players"] = game.labels()->players;
    if (!game.labels()->strategies.empty()) {
      labels["strategies"] = game.labels()->strategies;
    }
    doc["labels"] = std::move(labels);
  }
  return doc;
}

/// Round-trip-lossless serialization of a game to the standard form.
inline std::string serialize_game(const FiniteGame& game, int indent = 2) {
  return game_to_json(game).dump(indent);
}

}  // namespace potentia
