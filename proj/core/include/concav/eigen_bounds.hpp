#pragma once

#include <cstddef>
#include <string_view>

#include "concav/sym_matrix.hpp"

namespace concav {

struct EigenResult {
  double value = 0.0;
  Vector vector;  // unit norm
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // ||M v - value v||
};

struct PowerIterationOptions {
  double rayleigh_tol = 1e-10;    // relative change of the Rayleigh quotient
  double residual_tol = 1e-8;     // relative to max(1, |value|)
  int max_iterations = 100000;
  // Give up early when the quotient has been flat this long and the residual
  // has stopped shrinking (e.g. +/- eigenvalue ties).
  int stagnation_window = 2000;
};

/// Dominant (largest-magnitude) eigenpair by power iteration. The start
/// vector is the normalized all-ones vector with 1e-6 added to its first
/// coordinate, so results are deterministic. For the PSD Gram matrices used
/// throughout this library the dominant eigenvalue is lambda_max.
EigenResult power_iteration(const SymMatrix& m,
                            const PowerIterationOptions& opts = {});

/// Algebraically largest eigenpair of an arbitrary symmetric matrix. Shifts
/// by the Gershgorin lower bound so the shifted matrix is PSD, then runs
/// power iteration and shifts back.
EigenResult max_eigenvalue(const SymMatrix& m,
                           const PowerIterationOptions& opts = {});

/// ||M v - lambda v||
double eigen_residual(const SymMatrix& m, double lambda,
                      std::span<const double> v);

/// max_i (m_ii + R_i(M))
double gershgorin_upper(const SymMatrix& m);

/// min_i (m_ii - R_i(M))
double gershgorin_lower(const SymMatrix& m);

enum class CassiniVariant {
  kStandard,      // ((m_ii - m_jj) / 2)^2 under the root
  kUnhalved,  // (m_ii - m_jj)^2 under the root
};

std::string_view to_string(CassiniVariant v);
CassiniVariant parse_cassini_variant(std::string_view s);

/// Brauer ovals-of-Cassini upper bound on lambda_max:
///   max_{i != j} (m_ii + m_jj)/2 + sqrt(D_ij + R_i R_j)
/// with D_ij chosen by `variant`. Requires n >= 2.
double brauer_cassini_upper(const SymMatrix& m,
                            CassiniVariant variant = CassiniVariant::kStandard);

/// Explicit kd x kd matrix (1 1^T) (x) S, i.e. every k x k block equals S.
SymMatrix kron_allones(const SymMatrix& s, std::size_t k);

/// lambda_max((1 1^T) (x) S) = k * lambda_max(S), without forming the
/// Kronecker product.
double kron_allones_structure_lambda(const SymMatrix& s, std::size_t k);

}  // namespace concav
