#include <doctest.h>

#include <stdexcept>
#include <string>

#include "facloc/instance.hpp"

using facloc::CostKind;
using facloc::Instance;

namespace {

std::string thrown_message(const std::string& text) {
  try {
    facloc::parse_instance(text);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parses a minimal instance") {
  const auto inst = facloc::parse_instance(
      R"({"k":2,"locations":[0,1,2],"cost":{"kind":"linear","slope":1.0}})");
  CHECK(inst.k == 2);
  CHECK(inst.locations == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(inst.cost.kind() == CostKind::linear);
  CHECK(!inst.domain_length.has_value());
}

TEST_CASE("parses every cost kind and the bounded domain") {
  const auto pwl = facloc::parse_instance(
      R"({"k":1,"locations":[1],"cost":{"kind":"piecewise_linear",
          "slopes":[2,1],"piece_width":0.5}})");
  CHECK(pwl.cost.kind() == CostKind::piecewise_linear);
  CHECK(pwl.cost.piece_width() == 0.5);

  const auto exp = facloc::parse_instance(
      R"({"k":1,"locations":[1],"cost":{"kind":"exponential","lambda":2}})");
  CHECK(exp.cost.lambda() == 2.0);

  const auto rad = facloc::parse_instance(
      R"({"k":1,"locations":[1],"cost":{"kind":"radius","r":3}})");
  CHECK(rad.cost.radius_value() == 3.0);

  const auto bounded = facloc::parse_instance(
      R"({"k":1,"locations":[1,4],"cost":{"kind":"linear","slope":1},
          "domain":{"kind":"bounded","length":5}})");
  CHECK(bounded.domain_length == 5.0);

  const auto line = facloc::parse_instance(
      R"({"k":1,"locations":[1],"cost":{"kind":"linear","slope":1},
          "domain":{"kind":"line"}})");
  CHECK(!line.domain_length.has_value());
}

TEST_CASE("rejects malformed input with the offending field") {
  CHECK(thrown_message(
            R"({"k":1,"locations":[1],"cost":{"kind":"convex","x":1}})")
            .find("unknown cost kind") != std::string::npos);
  CHECK(thrown_message(
            R"({"k":1,"locations":[1,7],"cost":{"kind":"linear","slope":1},
                "domain":{"kind":"bounded","length":5}})")
            .find("outside [0, L]") != std::string::npos);
  CHECK(thrown_message(R"({"locations":[1],"cost":{"kind":"linear","slope":1}})")
            .find("'k'") != std::string::npos);
  CHECK(thrown_message(R"({"k":0,"locations":[1],"cost":{"kind":"linear","slope":1}})")
            .find("at least 1") != std::string::npos);
  CHECK(thrown_message(R"({"k":1,"locations":[],"cost":{"kind":"linear","slope":1}})")
            .find("locations") != std::string::npos);
  CHECK(thrown_message(
            R"({"k":1,"locations":[1],"cost":{"kind":"linear","slope":-1}})")
            .find("slope not positive") != std::string::npos);
  CHECK(thrown_message("{not json").find("malformed JSON") !=
        std::string::npos);
}

TEST_CASE("round-trips through JSON") {
  Instance inst;
  inst.k = 3;
  inst.locations = {0.25, 1.0 / 3.0, 99.125};
  inst.cost = facloc::CostFunction::piecewise_linear({2.5, 1.25}, 0.75);
  inst.domain_length = 128.0;
  const auto back = facloc::parse_instance(facloc::instance_to_json(inst));
  CHECK(back.k == inst.k);
  CHECK(back.locations == inst.locations);
  CHECK(back.cost.slopes() == inst.cost.slopes());
  CHECK(back.cost.piece_width() == inst.cost.piece_width());
  CHECK(back.domain_length == inst.domain_length);
}

TEST_CASE("cost descriptors parse standalone") {
  const auto cost = facloc::parse_cost(R"({"kind":"linear","slope":2})");
  CHECK(cost.eval(3.0) == 6.0);
  CHECK_THROWS_AS(facloc::parse_cost(R"({"kind":"linear"})"),
                  std::invalid_argument);
  const auto round =
      facloc::parse_cost(facloc::cost_to_json(facloc::CostFunction::exponential(0.5)));
  CHECK(round.lambda() == 0.5);
}
