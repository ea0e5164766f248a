#include "facloc/cost_model.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace facloc {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

CostFunction CostFunction::linear(double slope) {
  return piecewise_linear({slope}, 1.0);
}

CostFunction CostFunction::piecewise_linear(std::vector<double> slopes,
                                            double piece_width) {
  CostFunction c;
  c.kind_ = slopes.size() == 1 ? CostKind::linear : CostKind::piecewise_linear;
  c.slopes_ = std::move(slopes);
  c.piece_width_ = piece_width;
  // Cumulative piece costs, summed in index order.
  c.piece_cost_.resize(c.slopes_.size() + 1);
  c.piece_cost_[0] = 0.0;
  for (std::size_t i = 0; i < c.slopes_.size(); ++i)
    c.piece_cost_[i + 1] = c.piece_cost_[i] + c.slopes_[i] * piece_width;
  return c;
}

CostFunction CostFunction::exponential(double lambda) {
  CostFunction c;
  c.kind_ = CostKind::exponential;
  c.lambda_ = lambda;
  return c;
}

CostFunction CostFunction::radius(double r) {
  CostFunction c;
  c.kind_ = CostKind::radius;
  c.radius_ = r;
  return c;
}

double CostFunction::eval(double d) const {
  if (d < 0.0) throw std::domain_error("cost: negative distance");
  switch (kind_) {
    case CostKind::linear:
      return slopes_[0] * d;
    case CostKind::piecewise_linear: {
      const std::size_t m = slopes_.size();
      double q = std::floor(d / piece_width_);
      if (q >= static_cast<double>(m)) {
        // Beyond the provided pieces the last slope extends.
        return piece_cost_[m] +
               slopes_[m - 1] * (d - static_cast<double>(m) * piece_width_);
      }
      const auto i = static_cast<std::size_t>(q);
      double rem = d - q * piece_width_;
      if (rem < 0.0) rem = 0.0;
      return piece_cost_[i] + slopes_[i] * rem;
    }
    case CostKind::exponential:
      return 1.0 - std::exp(-lambda_ * d);
    case CostKind::radius:
      return d < radius_ ? 0.0 : 1.0;
  }
  return 0.0;
}

std::optional<std::string> CostFunction::validate() const {
  switch (kind_) {
    case CostKind::linear:
    case CostKind::piecewise_linear: {
      if (slopes_.empty()) return "slopes empty";
      if (!positive_finite(piece_width_)) return "piece width not positive";
      for (std::size_t i = 0; i < slopes_.size(); ++i) {
        if (!positive_finite(slopes_[i]))
          return "slope not positive at index " + std::to_string(i);
        if (i > 0 && slopes_[i] > slopes_[i - 1])
          return "slopes not nonincreasing at index " + std::to_string(i);
      }
      return std::nullopt;
    }
    case CostKind::exponential:
      if (!positive_finite(lambda_)) return "lambda not positive";
      return std::nullopt;
    case CostKind::radius:
      if (!positive_finite(radius_)) return "radius not positive";
      return std::nullopt;
  }
  return std::nullopt;
}

void CostFunction::ensure_valid() const {
  if (auto violation = validate())
    throw std::invalid_argument("invalid cost function: " + *violation);
}

CostFunction approximate_concave(const std::function<double(double)>& f,
                                 double span, int pieces) {
  if (!(span > 0.0) || pieces < 1)
    throw std::invalid_argument("approximate_concave: bad grid");
  if (f(0.0) != 0.0)
    throw std::invalid_argument("approximate_concave: f(0) must be 0");
  const double width = span / pieces;
  std::vector<double> slopes(pieces);
  double prev = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double next = f((i + 1) * width);
    slopes[i] = (next - prev) / width;
    prev = next;
  }
  auto cost = CostFunction::piecewise_linear(std::move(slopes), width);
  cost.ensure_valid();
  return cost;
}

std::pair<std::vector<double>, double> CostFunction::unit_pieces() const {
  if (kind_ != CostKind::linear && kind_ != CostKind::piecewise_linear)
    throw std::logic_error("unit_pieces: cost function is not piecewise linear");
  std::vector<double> unit(slopes_.size());
  for (std::size_t i = 0; i < slopes_.size(); ++i)
    unit[i] = slopes_[i] * piece_width_;
  return {std::move(unit), piece_width_};
}

}  // namespace facloc
