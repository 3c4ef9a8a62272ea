#include "newton/primitive_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace newton {

namespace {
constexpr const char* kFormatName = "newton-calc/piecewise-primitive";
}

std::string to_json(const PiecewisePrimitive& p, const std::string& label) {
  nlohmann::json j;
  j["format"] = kFormatName;
  j["version"] = kPrimitiveFormatVersion;
  j["k"] = p.size();
  j["base_point"] = p.base_point();
  j["refinement_level"] = p.refinement_level();
  j["cauchy_delta"] = p.cauchy_delta();
  j["label"] = label;
  j["breakpoints"] = p.breakpoints();
  auto& pieces = j["pieces"] = nlohmann::json::array();
  for (const auto& q : p.pieces()) pieces.push_back({q.half_u, q.v, q.w});
  return j.dump();
}

PiecewisePrimitive primitive_from_json(const std::string& text, std::string* label) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormatName) {
      throw Error(ErrorCode::invalid_format, "unexpected format tag");
    }
    const int version = j.at("version").get<int>();
    if (version != kPrimitiveFormatVersion) {
      throw Error(ErrorCode::invalid_format, "unsupported version " + std::to_string(version));
    }
    const auto k = j.at("k").get<std::size_t>();
    auto breakpoints = j.at("breakpoints").get<std::vector<double>>();
    const auto& raw = j.at("pieces");
    if (breakpoints.size() != k + 1 || raw.size() != k) {
      throw Error(ErrorCode::invalid_format, "piece count does not match k");
    }
    if (breakpoints.front() != j.at("base_point").get<double>()) {
      throw Error(ErrorCode::invalid_format, "base_point differs from the first breakpoint");
    }
    std::vector<QuadraticPiece> pieces;
    pieces.reserve(k);
    for (const auto& t : raw) {
      if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::invalid_format, "piece is not a triple");
      pieces.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
    if (label) *label = j.value("label", std::string{});
    PiecewisePrimitive p(std::move(breakpoints), std::move(pieces), j.at("refinement_level").get<int>(),
                         j.at("cauchy_delta").get<double>());
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_format, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_format) throw;
    throw Error(ErrorCode::invalid_format, e.what());
  }
}

void save_primitive(const std::string& path, const PiecewisePrimitive& p, const std::string& label) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
  out << to_json(p, label);
}

PiecewisePrimitive load_primitive(const std::string& path, std::string* label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_format, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return primitive_from_json(buffer.str(), label);
}

}  // namespace newton
