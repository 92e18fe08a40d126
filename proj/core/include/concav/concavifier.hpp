#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "concav/objective.hpp"

namespace concav {

enum class EstimateMethod { kHessianSampling, kMidpointSup, kAnalytic };

std::string_view to_string(EstimateMethod m);

struct ConcavifierEstimate {
  double value = 0.0;  // >= 0
  EstimateMethod method = EstimateMethod::kAnalytic;
  std::size_t samples_used = 0;
  // One point for Hessian sampling, the pair (x, y) for the mid-point sup.
  std::vector<Vector> witness;
};

struct UpperQuadraticResult {
  bool holds = false;
  double slack = 0.0;
};

/// slack = f(x) + grad f(x)^T (y - x) + alpha/2 ||y - x||^2 - f(y);
/// holds when slack >= -1e-9 * max(1, |f(x)|).
UpperQuadraticResult upper_quadratic_check(const Objective& f,
                                           std::span<const double> x,
                                           std::span<const double> y,
                                           double alpha);

/// Minimum ||x - y|| accepted by midpoint_acceleration.
inline constexpr double kMidpointSeparationFloor = 1e-8;

/// Psi(x, y) = 4 / ||x - y||^2 * [f(x) + f(y) - 2 f((x + y) / 2)]
double midpoint_acceleration(const Objective& f, std::span<const double> x,
                             std::span<const double> y);

/// Sup of Psi over sampled pairs inside `domain`. Half the budget goes to
/// uniform pairs, half to short pairs (x, x + eps e) with eps = 1e-3 times the
/// box diameter and e the principal Hessian direction at x (or a coordinate
/// axis when f has no Hessian). Sampled sups are lower bounds on the optimal
/// concavifier over the box.
ConcavifierEstimate estimate_concavifier_midpoint(const Objective& f,
                                                  const BoxDomain& domain,
                                                  std::mt19937_64& rng);

/// max over sampled x of lambda_max(hess f(x)), clamped at zero. The box
/// center is always one of the samples. Throws UnsupportedOperation when f
/// has no Hessian.
ConcavifierEstimate estimate_concavifier_hessian(const Objective& f,
                                                 const BoxDomain& domain,
                                                 std::mt19937_64& rng);

}  // namespace concav
