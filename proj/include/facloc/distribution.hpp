#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "facloc/cost_model.hpp"
#include "facloc/rng.hpp"

namespace facloc {

// The facility placement variable X on [0, length], constructed so that
// every point of the interval has the same expected connection cost
// (the cached equal_cost value).
class FacilityDistribution {
 public:
  enum class Kind { discrete, exponential_mixture };

  static FacilityDistribution point_mass(double at);
  static FacilityDistribution discrete(std::vector<double> support,
                                       std::vector<double> probs,
                                       double length, double equal_cost);
  // Mass 1/(len*lambda+2) at each endpoint, the rest uniform on (0, len).
  static FacilityDistribution exponential_mixture(double length,
                                                  double lambda);

  Kind kind() const { return kind_; }
  double length() const { return length_; }
  double equal_cost() const { return equal_cost_; }

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  double lambda() const { return lambda_; }
  double endpoint_prob() const { return endpoint_prob_; }
  double uniform_prob() const { return 1.0 - 2.0 * endpoint_prob_; }

  double sample(SplitMix64& rng) const;

 private:
  Kind kind_ = Kind::discrete;
  double length_ = 0.0;
  double equal_cost_ = 0.0;
  std::vector<double> support_;
  std::vector<double> probs_;
  double lambda_ = 0.0;
  double endpoint_prob_ = 0.0;
};

// Support of X in unit-piece coordinates: {i} and {length - i} for
// integer i = 0..floor(length), sorted and deduplicated.
std::vector<double> support_points(double length);

// The homogeneous system matrix: one row per gap between consecutive
// support points, one column per support point (sorted order).
struct LambdaSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major

  double at(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
};

// Builds the system from the zero-derivative condition: in the gap (u, v)
// the derivative of E[c(|x - X|)] is sum_{s <= u} p_s c'(x - s)
// - sum_{s >= v} p_s c'(s - x), and each c' is the slope of a piece that
// does not change inside the gap. Requires length > 0 and unit-width
// slopes (validated, strictly positive, nonincreasing).
LambdaSystem build_system(double length, std::span<const double> unit_slopes);

// Unique symmetric nonnegative normalized nullspace vector of the system.
// Constructive: difference consecutive rows, rotate the first column to the
// end, eliminate (the sign structure keeps pivots positive and off-diagonal
// entries nonpositive), back-substitute with the last two variables free,
// and combine the two resulting basis vectors. Throws std::domain_error
// naming the condition if the matrix lacks the required structure.
std::vector<double> solve_symmetric(const LambdaSystem& system);

// Same nullspace, free variables set to (w1, w2) instead of summing the two
// basis vectors, then explicitly symmetrized and normalized. Any positive
// weights give the same vector; exposed for the uniqueness check.
std::vector<double> solve_symmetric_weighted(const LambdaSystem& system,
                                             double w1, double w2);

// The equalizing distribution for cost function c on [0, length]:
// closed forms for linear and exponential costs, the homogeneous-system
// solution for piecewise linear ones. Rejects non-concave cost functions.
FacilityDistribution solve_distribution(const CostFunction& c, double length);

// E[c(|x - X|)]; x may lie outside [0, length].
double expected_cost_at(const FacilityDistribution& dist,
                        const CostFunction& c, double x);

// C(length), the common expected cost of the interval's points.
double equal_cost_value(const CostFunction& c, double length);

}  // namespace facloc
