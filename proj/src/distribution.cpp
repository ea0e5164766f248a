#include "facloc/distribution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace facloc {

namespace {

std::size_t piece_index(double distance, std::size_t num_slopes) {
  double q = std::floor(distance);
  if (q < 0.0) q = 0.0;
  auto idx = static_cast<std::size_t>(q);
  return std::min(idx, num_slopes - 1);
}

void check_unit_slopes(std::span<const double> slopes) {
  if (slopes.empty())
    throw std::domain_error("build_system: empty slope vector");
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (!(std::isfinite(slopes[i]) && slopes[i] > 0.0))
      throw std::domain_error("build_system: slope not positive at index " +
                              std::to_string(i));
    if (i > 0 && slopes[i] > slopes[i - 1])
      throw std::domain_error(
          "build_system: slopes not nonincreasing at index " +
          std::to_string(i));
  }
}

// Nullspace basis of the differenced, column-rotated system, stored in the
// p indexing (p[0] = rotated-away column). p1 and p2 correspond to the two
// free variables set to (1,0) and (0,1).
struct NullspaceBasis {
  std::vector<double> p1, p2;
};

// a = the positive diagonal sequence a_0 >= a_1 >= ... > 0 of the n x (n+1)
// system; there are a.size() + 1 unknowns. Differencing consecutive rows
// leaves the band of slope differences d_m = a_{m-1} - a_m around a 2*a_0
// diagonal, so elimination and back substitution stay within that band.
NullspaceBasis solve_sequence(std::span<const double> a) {
  const std::size_t n = a.size() + 1;  // unknowns
  NullspaceBasis basis;
  basis.p1.assign(n, 0.0);
  basis.p2.assign(n, 0.0);

  const std::size_t q = n - 2;  // rows after differencing
  std::vector<double> d(n - 1, 0.0);
  std::size_t width = 0;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    d[m] = a[m - 1] - a[m];
    if (d[m] != 0.0) width = m;
  }

  // Row i covers columns [i - width, i + width] (clipped to [0, n-2]) plus
  // the rotated column n-1 whose entry is -d[i+1].
  std::vector<std::vector<double>> band(q);
  std::vector<double> last(q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    band[i].assign(2 * width + 1, 0.0);
    band[i][width] = 2.0 * a[0];
    for (std::size_t m = 1; m <= width; ++m) {
      if (i >= m) band[i][width - m] = -d[m];
      if (i + m <= n - 2) band[i][width + m] = -d[m];
    }
    last[i] = -d[i + 1];
  }

  // Elimination in the prescribed order; the sign structure keeps every
  // pivot positive, so no pivoting is performed.
  for (std::size_t i = 0; i < q; ++i) {
    const double pivot = band[i][width];
    for (std::size_t r = i + 1; r <= std::min(i + width, q - 1); ++r) {
      const double entry = band[r][width - (r - i)];
      if (entry == 0.0) continue;
      const double f = entry / pivot;
      for (std::size_t m = 0; m <= width && i + m <= n - 2; ++m)
        band[r][width - (r - i) + m] -= f * band[i][width + m];
      last[r] -= f * last[i];
    }
  }

  // Back substitution with x_{n-2}, x_{n-1} free, carried as coefficients
  // on the two free variables. All coefficients are nonnegative.
  std::vector<std::array<double, 2>> xs(n, {0.0, 0.0});
  xs[n - 2] = {1.0, 0.0};
  xs[n - 1] = {0.0, 1.0};
  for (std::size_t ii = q; ii-- > 0;) {
    std::array<double, 2> acc = {0.0, 0.0};
    for (std::size_t m = 1; m <= width && ii + m <= n - 2; ++m) {
      const double coef = band[ii][width + m];
      acc[0] += coef * xs[ii + m][0];
      acc[1] += coef * xs[ii + m][1];
    }
    acc[0] += last[ii] * xs[n - 1][0];
    acc[1] += last[ii] * xs[n - 1][1];
    const double pivot = band[ii][width];
    xs[ii] = {-acc[0] / pivot, -acc[1] / pivot};
  }

  // p[0] is the rotated-away variable x_{n-1}; p[j] = x_{j-1} otherwise.
  basis.p1[0] = xs[n - 1][0];
  basis.p2[0] = xs[n - 1][1];
  for (std::size_t j = 1; j < n; ++j) {
    basis.p1[j] = xs[j - 1][0];
    basis.p2[j] = xs[j - 1][1];
  }
  return basis;
}

std::vector<double> normalized(std::vector<double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  for (double& x : v) x /= total;
  return v;
}

// Extracts the diagonal sequence of the system, verifying the structural
// conditions the solver relies on.
std::vector<double> extract_sequence(const LambdaSystem& sys) {
  if (sys.rows == 0 || sys.rows + 1 != sys.cols)
    throw std::domain_error(
        "solve_symmetric: matrix must have one more column than rows");
  std::vector<double> a(sys.rows), b(sys.cols);
  for (std::size_t m = 0; m < sys.rows; ++m) a[m] = sys.at(m, 0);
  for (std::size_t m = 1; m < sys.cols; ++m) b[m] = sys.at(0, m);
  for (std::size_t i = 0; i < sys.rows; ++i)
    for (std::size_t j = 0; j < sys.cols; ++j) {
      const double expect = i >= j ? a[i - j] : b[j - i];
      if (sys.at(i, j) != expect)
        throw std::domain_error(
            "solve_symmetric: diagonals not constant at (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  for (std::size_t m = 1; m < sys.cols; ++m)
    if (b[m] != -a[m - 1])
      throw std::domain_error(
          "solve_symmetric: upper band does not negate lower band at offset " +
          std::to_string(m));
  for (std::size_t m = 0; m < sys.rows; ++m) {
    if (!(a[m] > 0.0))
      throw std::domain_error(
          "solve_symmetric: diagonal sequence not positive at index " +
          std::to_string(m));
    if (m > 0 && a[m] > a[m - 1])
      throw std::domain_error(
          "solve_symmetric: diagonal sequence increasing at index " +
          std::to_string(m));
  }
  return a;
}

}  // namespace

FacilityDistribution FacilityDistribution::point_mass(double at) {
  FacilityDistribution d;
  d.kind_ = Kind::discrete;
  d.length_ = at;
  d.equal_cost_ = 0.0;
  d.support_ = {at};
  d.probs_ = {1.0};
  return d;
}

FacilityDistribution FacilityDistribution::discrete(
    std::vector<double> support, std::vector<double> probs, double length,
    double equal_cost) {
  FacilityDistribution d;
  d.kind_ = Kind::discrete;
  d.length_ = length;
  d.equal_cost_ = equal_cost;
  d.support_ = std::move(support);
  d.probs_ = std::move(probs);
  return d;
}

FacilityDistribution FacilityDistribution::exponential_mixture(double length,
                                                               double lambda) {
  FacilityDistribution d;
  d.kind_ = Kind::exponential_mixture;
  d.length_ = length;
  d.lambda_ = lambda;
  d.endpoint_prob_ = 1.0 / (length * lambda + 2.0);
  d.equal_cost_ = length * lambda / (length * lambda + 2.0);
  return d;
}

double FacilityDistribution::sample(SplitMix64& rng) const {
  if (kind_ == Kind::discrete) {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      cum += probs_[i];
      if (u < cum) return support_[i];
    }
    return support_.back();
  }
  const double u = rng.uniform01();
  if (u < endpoint_prob_) return 0.0;
  if (u < 2.0 * endpoint_prob_) return length_;
  return length_ * rng.uniform01();
}

std::vector<double> support_points(double length) {
  if (length < 0.0) throw std::domain_error("support_points: negative length");
  const auto m = static_cast<long long>(std::floor(length));
  std::vector<double> points;
  points.reserve(2 * static_cast<std::size_t>(m + 1));
  for (long long i = 0; i <= m; ++i) {
    points.push_back(static_cast<double>(i));
    points.push_back(length - static_cast<double>(i));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

LambdaSystem build_system(double length, std::span<const double> unit_slopes) {
  if (!(length > 0.0))
    throw std::domain_error("build_system: length must be positive");
  check_unit_slopes(unit_slopes);

  const auto support = support_points(length);
  LambdaSystem sys;
  sys.rows = support.size() - 1;
  sys.cols = support.size();
  sys.entries.assign(sys.rows * sys.cols, 0.0);
  for (std::size_t r = 0; r < sys.rows; ++r) {
    const double mid = 0.5 * (support[r] + support[r + 1]);
    for (std::size_t j = 0; j < sys.cols; ++j) {
      if (j <= r)
        sys.entries[r * sys.cols + j] =
            unit_slopes[piece_index(mid - support[j], unit_slopes.size())];
      else
        sys.entries[r * sys.cols + j] =
            -unit_slopes[piece_index(support[j] - mid, unit_slopes.size())];
    }
  }
  return sys;
}

std::vector<double> solve_symmetric(const LambdaSystem& system) {
  const auto a = extract_sequence(system);
  const auto basis = solve_sequence(a);
  std::vector<double> p(basis.p1.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = basis.p1[j] + basis.p2[j];
  return normalized(std::move(p));
}

std::vector<double> solve_symmetric_weighted(const LambdaSystem& system,
                                             double w1, double w2) {
  const auto a = extract_sequence(system);
  const auto basis = solve_sequence(a);
  const std::size_t n = basis.p1.size();
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j)
    v[j] = w1 * basis.p1[j] + w2 * basis.p2[j];
  std::vector<double> sym(n);
  for (std::size_t j = 0; j < n; ++j) sym[j] = 0.5 * (v[j] + v[n - 1 - j]);
  return normalized(std::move(sym));
}

FacilityDistribution solve_distribution(const CostFunction& c, double length) {
  c.ensure_valid();
  if (!c.concave())
    throw std::invalid_argument(
        "solve_distribution: cost function is not concave");
  if (length < 0.0)
    throw std::domain_error("solve_distribution: negative length");
  if (length == 0.0) return FacilityDistribution::point_mass(0.0);

  switch (c.kind()) {
    case CostKind::linear:
      return FacilityDistribution::discrete({0.0, length}, {0.5, 0.5}, length,
                                            c.slopes()[0] * length / 2.0);
    case CostKind::exponential:
      return FacilityDistribution::exponential_mixture(length, c.lambda());
    case CostKind::piecewise_linear: {
      const auto [unit_slopes, scale] = c.unit_pieces();
      const double unit_length = length / scale;
      auto support = support_points(unit_length);
      const std::size_t n = support.size();

      // Diagonal sequence of the system, read off the zero-derivative rule
      // for the leftmost support point in each gap.
      std::vector<double> a(n - 1);
      for (std::size_t m = 0; m + 1 < n; ++m) {
        const double mid = 0.5 * (support[m] + support[m + 1]);
        a[m] = unit_slopes[piece_index(mid, unit_slopes.size())];
      }
      const auto basis = solve_sequence(a);
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = basis.p1[j] + basis.p2[j];
      p = normalized(std::move(p));

      for (double& s : support) {
        s *= scale;
        if (s > length) s = length;
      }
      support.back() = length;

      double equal_cost = 0.0;
      for (std::size_t j = 0; j < n; ++j) equal_cost += p[j] * c.eval(support[j]);
      return FacilityDistribution::discrete(std::move(support), std::move(p),
                                            length, equal_cost);
    }
    case CostKind::radius:
      break;  // unreachable: rejected by the concavity check
  }
  throw std::invalid_argument("solve_distribution: unsupported cost kind");
}

double expected_cost_at(const FacilityDistribution& dist, const CostFunction& c,
                        double x) {
  if (dist.kind() == FacilityDistribution::Kind::discrete) {
    double total = 0.0;
    const auto& support = dist.support();
    const auto& probs = dist.probs();
    for (std::size_t j = 0; j < support.size(); ++j)
      total += probs[j] * c.eval(std::abs(x - support[j]));
    return total;
  }

  const double len = dist.length();
  const double lambda = dist.lambda();
  const double w = dist.endpoint_prob();
  // Antiderivative of c on [0, z].
  const auto F = [lambda](double z) {
    return z - (1.0 - std::exp(-lambda * z)) / lambda;
  };
  double integral;
  if (x < 0.0)
    integral = F(len - x) - F(-x);
  else if (x > len)
    integral = F(x) - F(x - len);
  else
    integral = F(x) + F(len - x);
  return w * (c.eval(std::abs(x)) + c.eval(std::abs(x - len))) +
         lambda * w * integral;
}

double equal_cost_value(const CostFunction& c, double length) {
  return solve_distribution(c, length).equal_cost();
}

}  // namespace facloc
