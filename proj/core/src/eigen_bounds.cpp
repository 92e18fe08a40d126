#include "concav/eigen_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace concav {

namespace {

// Power iteration on (M + shift I). Convergence is judged on M itself: the
// residual is shift-invariant and the tolerance scales with the unshifted
// eigenvalue.
EigenResult iterate(const SymMatrix& m, double shift,
                    const PowerIterationOptions& opts) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidInput("power_iteration: empty matrix");
  if (!all_finite(m.data()))
    throw InvalidInput("power_iteration: matrix has non-finite entries");

  Vector v(n, 1.0);
  v[0] += 1e-6;
  {
    const double nv = norm(v);
    for (double& x : v) x /= nv;
  }
  Vector w(n);

  EigenResult out;
  double prev_quotient = std::numeric_limits<double>::quiet_NaN();
  int flat_since = 0;
  double residual_at_flat = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= opts.max_iterations; ++it) {
    m.multiply(v, w);
    const double lambda = dot(v, w);  // Rayleigh quotient of M, ||v|| = 1

    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] - lambda * v[i];
      res2 += r * r;
    }
    const double residual = std::sqrt(res2);

    out.value = lambda;
    out.vector = v;
    out.iterations = it;
    out.residual = residual;

    const double scale = std::max(1.0, std::abs(lambda));
    const bool quotient_flat =
        std::abs(lambda - prev_quotient) <= opts.rayleigh_tol * scale;
    const bool residual_ok = residual <= opts.residual_tol * scale;

    if (residual_ok && (quotient_flat || residual == 0.0)) {
      out.converged = true;
      return out;
    }

    if (quotient_flat) {
      if (flat_since == 0) residual_at_flat = residual;
      if (++flat_since >= opts.stagnation_window) {
        if (residual >= 0.999 * residual_at_flat) return out;
        flat_since = 0;
      }
    } else {
      flat_since = 0;
    }
    prev_quotient = lambda;

    for (std::size_t i = 0; i < n; ++i) w[i] += shift * v[i];
    const double nw = norm(w);
    if (nw == 0.0) {
      // v lies in the null space of M + shift I; v is already an eigenvector.
      out.converged = residual_ok;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return out;
}

}  // namespace

EigenResult power_iteration(const SymMatrix& m,
                            const PowerIterationOptions& opts) {
  return iterate(m, 0.0, opts);
}

EigenResult max_eigenvalue(const SymMatrix& m,
                           const PowerIterationOptions& opts) {
  if (m.size() == 0) throw InvalidInput("max_eigenvalue: empty matrix");
  const double shift = std::max(0.0, -gershgorin_lower(m));
  return iterate(m, shift, opts);
}

double eigen_residual(const SymMatrix& m, double lambda,
                      std::span<const double> v) {
  const Vector mv = m.multiply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < mv.size(); ++i) {
    const double r = mv[i] - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

double gershgorin_upper(const SymMatrix& m) {
  if (m.size() == 0) throw InvalidInput("gershgorin_upper: empty matrix");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i)
    best = std::max(best, m(i, i) + m.off_diagonal_radius(i));
  return best;
}

double gershgorin_lower(const SymMatrix& m) {
  if (m.size() == 0) throw InvalidInput("gershgorin_lower: empty matrix");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i)
    best = std::min(best, m(i, i) - m.off_diagonal_radius(i));
  return best;
}

std::string_view to_string(CassiniVariant v) {
  return v == CassiniVariant::kStandard ? "standard" : "unhalved";
}

CassiniVariant parse_cassini_variant(std::string_view s) {
  if (s == "standard") return CassiniVariant::kStandard;
  // "paper" is the accepted command-line alias.
  if (s == "unhalved" || s == "paper") return CassiniVariant::kUnhalved;
  throw InvalidInput("unknown alpha4 variant '" + std::string(s) +
                     "' (expected standard or unhalved)");
}

double brauer_cassini_upper(const SymMatrix& m, CassiniVariant variant) {
  const std::size_t n = m.size();
  if (n < 2)
    throw InvalidInput("brauer_cassini_upper: needs a matrix of order >= 2");

  Vector diag(n), radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = m(i, i);
    radius[i] = m.off_diagonal_radius(i);
  }

  const double half = variant == CassiniVariant::kStandard ? 0.5 : 1.0;
  double best = -std::numeric_limits<double>::infinity();
  // The expression is symmetric in (i, j), so i < j covers every i != j.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double spread = half * (diag[i] - diag[j]);
      const double v = 0.5 * (diag[i] + diag[j]) +
                       std::sqrt(spread * spread + radius[i] * radius[j]);
      best = std::max(best, v);
    }
  }
  return best;
}

SymMatrix kron_allones(const SymMatrix& s, std::size_t k) {
  if (k == 0) throw InvalidInput("kron_allones: k must be >= 1");
  const std::size_t d = s.size();
  const std::size_t n = k * d;
  std::vector<double> entries(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) entries[r * n + c] = s(r % d, c % d);
  return SymMatrix(n, std::move(entries));
}

double kron_allones_structure_lambda(const SymMatrix& s, std::size_t k) {
  if (k == 0)
    throw InvalidInput("kron_allones_structure_lambda: k must be >= 1");
  if (s.size() == 0)
    throw InvalidInput("kron_allones_structure_lambda: empty matrix");
  // Spectrum of (1 1^T) (x) S is {k lambda_i(S)} plus zeros when k > 1.
  const double top = static_cast<double>(k) * max_eigenvalue(s).value;
  return k > 1 ? std::max(top, 0.0) : top;
}

}  // namespace concav
