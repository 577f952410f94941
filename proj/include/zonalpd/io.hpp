#pragma once

// Structured-text (JSON) documents for coefficient sequences, derivative
// decompositions and kernels, plus the CSV number format.

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zonalpd/coeffs.hpp"
#include "zonalpd/derivative.hpp"
#include "zonalpd/error.hpp"
#include "zonalpd/kernels.hpp"
#include "zonalpd/spaces.hpp"

namespace zonalpd {

using json = nlohmann::json;

/// Shortest decimal that round-trips, at most 17 significant digits.
inline std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

inline json to_json(const CoeffSeq& c) {
  json j;
  j["alpha"] = c.params().alpha();
  j["beta"] = c.params().beta();
  j["values"] = c.values();
  if (const auto* g = std::get_if<GeometricTail>(&c.tail())) {
    j["tail"] = {{"type", "geometric"}, {"ratio", g->ratio}, {"scale", g->scale}};
  } else {
    j["tail"] = {{"type", "zero"}};
  }
  return j;
}

inline CoeffSeq coeffs_from_json(const json& j) {
  try {
    const JacobiParams p(j.at("alpha").get<double>(), j.at("beta").get<double>());
    auto values = j.at("values").get<std::vector<double>>();
    Tail tail = ZeroTail{};
    if (j.contains("tail")) {
      const auto& t = j.at("tail");
      const auto type = t.at("type").get<std::string>();
      if (type == "geometric") {
        tail = GeometricTail{t.at("ratio").get<double>(), t.at("scale").get<double>()};
      } else if (type != "zero") {
        throw DomainError("unknown tail type: " + type);
      }
    }
    return {p, std::move(values), tail};
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed coefficient document: ") + e.what());
  }
}

inline json to_json(const DerivativeDecomposition& d) {
  json j;
  j["source"] = {{"alpha", d.source.alpha()}, {"beta", d.source.beta()}};
  j["scale"] = d.scale;
  j["route"] = d.route == LiftRoute::Alpha ? "alpha" : "both";
  j["f1"] = to_json(d.f1);
  j["f2"] = to_json(d.f2);
  return j;
}

inline DerivativeDecomposition decomposition_from_json(const json& j) {
  try {
    const auto& src = j.at("source");
    const JacobiParams source(src.at("alpha").get<double>(), src.at("beta").get<double>());
    const auto route_name = j.value("route", std::string("alpha"));
    if (route_name != "alpha" && route_name != "both") throw DomainError("unknown route: " + route_name);
    return {coeffs_from_json(j.at("f1")), coeffs_from_json(j.at("f2")), source, j.at("scale").get<double>(),
            route_name == "alpha" ? LiftRoute::Alpha : LiftRoute::Both};
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed decomposition document: ") + e.what());
  }
}

inline json to_json(const ZonalKernel& k) {
  return {{"space", to_string(k.space())}, {"coeffs", to_json(k.coeffs())}};
}

inline ZonalKernel kernel_from_json(const json& j) {
  try {
    return {parse_space(j.at("space").get<std::string>()), coeffs_from_json(j.at("coeffs"))};
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed kernel document: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("cannot parse " + path + ": " + e.what());
  }
}

/// Gram matrix as CSV, row-major, LF line endings.
inline std::string gram_csv(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_number(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace zonalpd
