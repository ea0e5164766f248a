#include "facloc/instance.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace facloc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& reason) {
  throw std::invalid_argument("instance: field '" + field + "': " + reason);
}

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "not finite");
  return v;
}

CostFunction cost_from_json(const json& j, const std::string& prefix) {
  if (!j.is_object()) fail(prefix, "expected an object");
  if (!j.contains("kind")) fail(prefix + ".kind", "missing");
  const std::string kind = j.at("kind").get<std::string>();

  CostFunction cost = CostFunction::linear(1.0);
  if (kind == "linear") {
    if (!j.contains("slope")) fail(prefix + ".slope", "missing");
    cost = CostFunction::linear(finite_number(j.at("slope"), prefix + ".slope"));
  } else if (kind == "piecewise_linear") {
    if (!j.contains("slopes")) fail(prefix + ".slopes", "missing");
    const auto& arr = j.at("slopes");
    if (!arr.is_array() || arr.empty())
      fail(prefix + ".slopes", "expected a nonempty array");
    std::vector<double> slopes;
    for (std::size_t i = 0; i < arr.size(); ++i)
      slopes.push_back(finite_number(arr[i], prefix + ".slopes[" +
                                                 std::to_string(i) + "]"));
    double width = 1.0;
    if (j.contains("piece_width"))
      width = finite_number(j.at("piece_width"), prefix + ".piece_width");
    cost = CostFunction::piecewise_linear(std::move(slopes), width);
  } else if (kind == "exponential") {
    if (!j.contains("lambda")) fail(prefix + ".lambda", "missing");
    cost = CostFunction::exponential(
        finite_number(j.at("lambda"), prefix + ".lambda"));
  } else if (kind == "radius") {
    if (!j.contains("r")) fail(prefix + ".r", "missing");
    cost = CostFunction::radius(finite_number(j.at("r"), prefix + ".r"));
  } else {
    fail(prefix + ".kind", "unknown cost kind '" + kind + "'");
  }

  if (auto violation = cost.validate()) fail(prefix, *violation);
  return cost;
}

json cost_to_json_obj(const CostFunction& cost) {
  json j;
  switch (cost.kind()) {
    case CostKind::linear:
      j["kind"] = "linear";
      j["slope"] = cost.slopes()[0];
      break;
    case CostKind::piecewise_linear:
      j["kind"] = "piecewise_linear";
      j["slopes"] = cost.slopes();
      j["piece_width"] = cost.piece_width();
      break;
    case CostKind::exponential:
      j["kind"] = "exponential";
      j["lambda"] = cost.lambda();
      break;
    case CostKind::radius:
      j["kind"] = "radius";
      j["r"] = cost.radius_value();
      break;
  }
  return j;
}

}  // namespace

void Instance::ensure_valid() const {
  if (k < 1) throw std::invalid_argument("instance: k must be at least 1");
  if (locations.empty())
    throw std::invalid_argument("instance: locations empty");
  for (double x : locations)
    if (!std::isfinite(x))
      throw std::invalid_argument("instance: location not finite");
  cost.ensure_valid();
  if (domain_length) {
    if (!(std::isfinite(*domain_length) && *domain_length > 0.0))
      throw std::invalid_argument("instance: domain length not positive");
    for (double x : locations)
      if (x < 0.0 || x > *domain_length)
        throw std::invalid_argument("instance: location outside [0, L]");
  }
}

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance: malformed JSON: ") +
                                e.what());
  }
  if (!j.is_object()) fail("<root>", "expected an object");

  Instance inst;
  if (!j.contains("k")) fail("k", "missing");
  if (!j.at("k").is_number_integer()) fail("k", "expected an integer");
  inst.k = j.at("k").get<int>();
  if (inst.k < 1) fail("k", "must be at least 1");

  if (!j.contains("locations")) fail("locations", "missing");
  const auto& locs = j.at("locations");
  if (!locs.is_array() || locs.empty())
    fail("locations", "expected a nonempty array");
  for (std::size_t i = 0; i < locs.size(); ++i)
    inst.locations.push_back(
        finite_number(locs[i], "locations[" + std::to_string(i) + "]"));

  if (!j.contains("cost")) fail("cost", "missing");
  inst.cost = cost_from_json(j.at("cost"), "cost");

  if (j.contains("domain")) {
    const auto& dom = j.at("domain");
    if (!dom.is_object() || !dom.contains("kind"))
      fail("domain", "expected an object with a 'kind'");
    const std::string kind = dom.at("kind").get<std::string>();
    if (kind == "bounded") {
      if (!dom.contains("length")) fail("domain.length", "missing");
      const double L = finite_number(dom.at("length"), "domain.length");
      if (L <= 0.0) fail("domain.length", "must be positive");
      for (std::size_t i = 0; i < inst.locations.size(); ++i)
        if (inst.locations[i] < 0.0 || inst.locations[i] > L)
          fail("locations[" + std::to_string(i) + "]",
               "location outside [0, L]");
      inst.domain_length = L;
    } else if (kind != "line") {
      fail("domain.kind", "unknown domain kind '" + kind + "'");
    }
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["k"] = inst.k;
  j["locations"] = inst.locations;
  j["cost"] = cost_to_json_obj(inst.cost);
  if (inst.domain_length)
    j["domain"] = {{"kind", "bounded"}, {"length", *inst.domain_length}};
  return j.dump();
}

CostFunction parse_cost(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("cost: malformed JSON: ") +
                                e.what());
  }
  return cost_from_json(j, "cost");
}

std::string cost_to_json(const CostFunction& cost) {
  return cost_to_json_obj(cost).dump();
}

}  // namespace facloc
