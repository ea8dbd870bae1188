#pragma once

// JSON encoding of complex data and the golden fixture format:
//   {"header": {n, targets, k, alpha, theta, source},
//    "rows": R, "cols": C, "entries": [{"re": x, "im": y}, ...]}   (row-major)

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grover/complex_linalg.hpp"
#include "grover/errors.hpp"

namespace grover {

struct FixtureHeader {
  int n = 0;
  std::vector<std::size_t> targets;
  int k = 0;
  double alpha = 0.0;
  double theta = 0.0;
  std::string source;
};

struct Fixture {
  FixtureHeader header;
  ComplexMatrix data;  // vectors are stored as a single column
};

inline nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

inline Complex complex_from_json(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline nlohmann::json vector_to_json(std::span<const Complex> v) {
  auto arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back(complex_to_json(z));
  return arr;
}

inline nlohmann::json fixture_to_json(const Fixture& f) {
  nlohmann::json header{{"n", f.header.n},
                        {"targets", f.header.targets},
                        {"k", f.header.k},
                        {"alpha", f.header.alpha},
                        {"theta", f.header.theta},
                        {"source", f.header.source}};
  return nlohmann::json{{"header", header},
                        {"rows", f.data.rows()},
                        {"cols", f.data.cols()},
                        {"entries", vector_to_json(f.data.data())}};
}

inline Fixture fixture_from_json(const nlohmann::json& j) {
  Fixture f;
  const auto& h = j.at("header");
  f.header.n = h.at("n").get<int>();
  f.header.targets = h.at("targets").get<std::vector<std::size_t>>();
  f.header.k = h.at("k").get<int>();
  f.header.alpha = h.at("alpha").get<double>();
  f.header.theta = h.at("theta").get<double>();
  f.header.source = h.value("source", "");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  std::vector<Complex> entries;
  for (const auto& e : j.at("entries")) entries.push_back(complex_from_json(e));
  f.data = ComplexMatrix(rows, cols, std::move(entries));
  return f;
}

inline Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixture " + path);
  nlohmann::json j;
  try {
    in >> j;
    return fixture_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed fixture " + path + ": " + e.what());
  }
}

}  // namespace grover
