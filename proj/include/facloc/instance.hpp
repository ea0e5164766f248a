#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facloc/cost_model.hpp"

namespace facloc {

// A k-facility location instance: agent locations on the line, the number
// of facilities, the shared cost function, and an optional bounded domain
// [0, L].
struct Instance {
  std::vector<double> locations;
  int k = 1;
  CostFunction cost = CostFunction::linear(1.0);
  std::optional<double> domain_length;  // bounded domain [0, L] when set

  // Throws std::invalid_argument on any invariant violation.
  void ensure_valid() const;
};

// Parse/serialize the JSON instance format:
//   {"k": 2, "locations": [0, 1, 2],
//    "cost": {"kind": "linear", "slope": 1.0},
//    "domain": {"kind": "bounded", "length": 10.0}}   // optional
// Errors carry the offending field in the message.
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);

// Cost descriptors, the "cost" object above:
//   {"kind":"linear","slope":b} | {"kind":"piecewise_linear","slopes":[...],
//   "piece_width":w} | {"kind":"exponential","lambda":l} |
//   {"kind":"radius","r":r}
CostFunction parse_cost(const std::string& text);
std::string cost_to_json(const CostFunction& cost);

}  // namespace facloc
