#include "concav/concavifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "concav/eigen_bounds.hpp"
#include "concav/error.hpp"

namespace concav {

namespace {

void require_dimension(const Objective& f, std::span<const double> x,
                       const char* what) {
  if (x.size() != f.dimension()) throw InvalidInput(what);
}

void require_domain(const Objective& f, const BoxDomain& domain) {
  if (domain.dimension() != f.dimension())
    throw InvalidInput("domain dimension does not match the objective");
}

}  // namespace

std::string_view to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::kHessianSampling: return "hessian-sampling";
    case EstimateMethod::kMidpointSup: return "midpoint-sup";
    case EstimateMethod::kAnalytic: return "analytic";
  }
  return "unknown";
}

UpperQuadraticResult upper_quadratic_check(const Objective& f,
                                           std::span<const double> x,
                                           std::span<const double> y,
                                           double alpha) {
  require_dimension(f, x, "upper_quadratic_check: x has wrong dimension");
  require_dimension(f, y, "upper_quadratic_check: y has wrong dimension");
  if (!(alpha >= 0.0))
    throw InvalidInput("upper_quadratic_check: alpha must be >= 0");

  const double fx = f.value(x);
  const double fy = f.value(y);
  const Vector g = f.gradient(x);
  double linear = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) linear += g[i] * (y[i] - x[i]);

  UpperQuadraticResult r;
  r.slack = fx + linear + 0.5 * alpha * squared_distance(x, y) - fy;
  r.holds = r.slack >= -1e-9 * std::max(1.0, std::abs(fx));
  return r;
}

double midpoint_acceleration(const Objective& f, std::span<const double> x,
                             std::span<const double> y) {
  require_dimension(f, x, "midpoint_acceleration: x has wrong dimension");
  require_dimension(f, y, "midpoint_acceleration: y has wrong dimension");
  const double dist2 = squared_distance(x, y);
  if (!(std::sqrt(dist2) >= kMidpointSeparationFloor))
    throw DegeneratePair("midpoint_acceleration: ||x - y|| below 1e-8");

  Vector mid(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + y[i]);
  return 4.0 / dist2 * (f.value(x) + f.value(y) - 2.0 * f.value(mid));
}

ConcavifierEstimate estimate_concavifier_midpoint(const Objective& f,
                                                  const BoxDomain& domain,
                                                  std::mt19937_64& rng) {
  require_domain(f, domain);
  if (domain.budget() < 2)
    throw InvalidInput("estimate_concavifier_midpoint: budget must be >= 2");

  const std::size_t dim = f.dimension();
  const double eps = 1e-3 * domain.diameter();
  if (!(eps >= kMidpointSeparationFloor))
    throw InvalidInput("estimate_concavifier_midpoint: box is too small");

  ConcavifierEstimate est;
  est.method = EstimateMethod::kMidpointSup;
  double best = -std::numeric_limits<double>::infinity();

  auto consider = [&](const Vector& x, const Vector& y) {
    if (std::sqrt(squared_distance(x, y)) < kMidpointSeparationFloor) return;
    const double psi = midpoint_acceleration(f, x, y);
    ++est.samples_used;
    if (psi > best) {
      best = psi;
      est.witness = {x, y};
    }
  };

  const std::size_t uniform = domain.budget() / 2;
  const std::size_t aligned = domain.budget() - uniform;

  for (std::size_t s = 0; s < uniform; ++s) {
    const Vector x = domain.sample(rng);
    const Vector y = domain.sample(rng);
    consider(x, y);
  }

  const auto lo = domain.lower();
  const auto hi = domain.upper();
  for (std::size_t s = 0; s < aligned; ++s) {
    Vector x = domain.sample(rng);
    Vector dir;
    if (f.has_hessian()) {
      dir = max_eigenvalue(f.hessian(x)).vector;
    } else {
      dir.assign(dim, 0.0);
      dir[s % dim] = 1.0;
    }
    // Slide the base point so that x + eps * dir stays inside the box.
    bool fits = true;
    for (std::size_t i = 0; i < dim; ++i) {
      const double step = eps * dir[i];
      const double lo_i = lo[i] - std::min(0.0, step);
      const double hi_i = hi[i] - std::max(0.0, step);
      if (lo_i > hi_i) {
        fits = false;
        break;
      }
      x[i] = std::clamp(x[i], lo_i, hi_i);
    }
    if (!fits) continue;
    Vector y(dim);
    for (std::size_t i = 0; i < dim; ++i) y[i] = x[i] + eps * dir[i];
    consider(x, y);
  }

  est.value = std::max(0.0, best);
  return est;
}

ConcavifierEstimate estimate_concavifier_hessian(const Objective& f,
                                                 const BoxDomain& domain,
                                                 std::mt19937_64& rng) {
  require_domain(f, domain);
  if (!f.has_hessian())
    throw UnsupportedOperation(
        "estimate_concavifier_hessian: objective has no Hessian");

  ConcavifierEstimate est;
  est.method = EstimateMethod::kHessianSampling;
  double best = -std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < domain.budget(); ++s) {
    const Vector x = s == 0 ? domain.center() : domain.sample(rng);
    const double lambda = max_eigenvalue(f.hessian(x)).value;
    ++est.samples_used;
    if (lambda > best) {
      best = lambda;
      est.witness = {x};
    }
  }

  est.value = std::max(0.0, best);
  return est;
}

}  // namespace concav
