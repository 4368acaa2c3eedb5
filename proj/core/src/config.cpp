#include "avk/config.hpp"

#include <fstream>
#include <sstream>

#include "avk/error.hpp"
#include "json.hpp"

namespace avk {

namespace {

Scalar rational(const nlohmann::json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw Error(ErrorCode::kParse, "rationals must be integers or \"p/q\" strings");
}

}  // namespace

AlgebraConfig parse_algebra_config(const std::string& json_text) {
  AlgebraConfig c;
  try {
    const auto j = nlohmann::json::parse(json_text);
    c.name = j.value("name", "custom");
    c.basis = j.at("basis").get<std::vector<std::string>>();
    c.cartan = j.at("cartan").get<std::vector<std::size_t>>();
    if (j.contains("positive")) c.positive = j.at("positive").get<std::vector<std::size_t>>();
    for (const auto& b : j.at("brackets")) {
      AlgebraConfig::Bracket br{b.at("i").get<std::size_t>(), b.at("j").get<std::size_t>(), {}};
      for (const auto& t : b.at("terms")) br.terms.emplace_back(t.at(0).get<std::size_t>(), rational(t.at(1)));
      c.brackets.push_back(std::move(br));
    }
    for (const auto& row : j.at("form")) {
      std::vector<Scalar> r;
      for (const auto& x : row) r.push_back(rational(x));
      c.form.push_back(std::move(r));
    }
    c.normalize = j.value("normalize", true);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("algebra config: ") + e.what());
  }
  return c;
}

std::string algebra_config_to_json(const AlgebraConfig& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["basis"] = c.basis;
  j["cartan"] = c.cartan;
  if (c.positive) j["positive"] = *c.positive;
  j["brackets"] = nlohmann::json::array();
  for (const auto& b : c.brackets) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, s] : b.terms) terms.push_back({k, s.to_string()});
    j["brackets"].push_back({{"i", b.i}, {"j", b.j}, {"terms", terms}});
  }
  j["form"] = nlohmann::json::array();
  for (const auto& row : c.form) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& s : row) r.push_back(s.to_string());
    j["form"].push_back(r);
  }
  j["normalize"] = c.normalize;
  return j.dump(2) + "\n";
}

AlgebraConfig load_algebra_config(const std::string& source) {
  if (source == "sl2") return SimpleLieAlgebra::sl2_config();
  if (source == "sl3") return SimpleLieAlgebra::sl3_config();
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::kIOFailure, "cannot read algebra config " + source);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_config(ss.str());
}

}  // namespace avk
