#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace facloc {

enum class CostKind { linear, piecewise_linear, exponential, radius };

// Connection-cost model c(d): nonnegative, nondecreasing, c(0) = 0.
//
// Supported families:
//   linear            c(d) = slope * d
//   piecewise_linear  continuous, growth rate slopes[i] on piece
//                     [i*w, (i+1)*w); the last slope extends to infinity
//   exponential       c(d) = 1 - exp(-lambda * d)
//   radius            c(d) = 0 if d < r, else 1 (not concave; accepted only
//                     by the radius variant of the mechanism)
//
// Immutable after construction; safe to share between threads.
class CostFunction {
 public:
  static CostFunction linear(double slope);
  static CostFunction piecewise_linear(std::vector<double> slopes,
                                       double piece_width);
  static CostFunction exponential(double lambda);
  static CostFunction radius(double r);

  CostKind kind() const { return kind_; }
  bool concave() const { return kind_ != CostKind::radius; }

  // c(d). Throws std::domain_error for d < 0.
  double eval(double d) const;

  // Checks the model invariants (positive finite parameters, nonincreasing
  // slopes). Returns a description of the first violation, or nullopt.
  std::optional<std::string> validate() const;
  // Throws std::invalid_argument with the violation description.
  void ensure_valid() const;

  // Rescales a linear/piecewise_linear function to pieces of width 1:
  // returns (unit_slopes, scale) with eval(d) == unit_eval(d / scale).
  // Throws std::logic_error for other kinds.
  std::pair<std::vector<double>, double> unit_pieces() const;

  const std::vector<double>& slopes() const { return slopes_; }
  double piece_width() const { return piece_width_; }
  double lambda() const { return lambda_; }
  double radius_value() const { return radius_; }

 private:
  CostFunction() = default;

  CostKind kind_ = CostKind::linear;
  std::vector<double> slopes_;      // linear & piecewise_linear
  double piece_width_ = 1.0;        // piecewise_linear
  double lambda_ = 0.0;             // exponential
  double radius_ = 0.0;             // radius
  std::vector<double> piece_cost_;  // cumulative cost at piece boundaries
};

// Piecewise-linear approximation of a general concave increasing function f
// with f(0) = 0, sampled on a uniform grid over [0, span]. The default grid
// step is span/64. Throws std::invalid_argument if the samples are not
// concave increasing.
CostFunction approximate_concave(const std::function<double(double)>& f,
                                 double span, int pieces = 64);

}  // namespace facloc
