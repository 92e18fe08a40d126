#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "concav/eigen_bounds.hpp"
#include "concav/relu_model.hpp"

namespace concav {

/// Optimal concavifier of the single-point loss: k ||x||^2.
double alpha_single_point(std::span<const double> x, std::size_t k);

/// Uncentered second moment S = (1/N) sum_i x_i x_i^T (d x d).
SymMatrix second_moment(const ReluDataset& data);

/// M = (1/N) sum_i abar(x_i) abar(x_i)^T, accumulated explicitly (kd x kd).
SymMatrix abar_gram(const ReluDataset& data, std::size_t k);

/// alpha_1 = (k/N) sum_i ||x_i||^2
double bound_alpha1(const ReluDataset& data, std::size_t k);

/// alpha_2 = lambda_max(M), via the Kronecker fast path k * lambda_max(S).
double bound_alpha2(const ReluDataset& data, std::size_t k);

/// alpha_3 = Gershgorin bound on M.
double bound_alpha3(const ReluDataset& data, std::size_t k);

/// alpha_4 = Brauer/Cassini bound on M. Requires kd >= 2.
double bound_alpha4(const ReluDataset& data, std::size_t k,
                    CassiniVariant variant = CassiniVariant::kStandard);

enum class OracleStrategy { kPatternEnum, kRandomSearch };

std::string_view to_string(OracleStrategy s);
OracleStrategy parse_oracle_strategy(std::string_view s);

struct OracleOptions {
  OracleStrategy strategy = OracleStrategy::kRandomSearch;
  std::size_t budget = 10000;  // random draws; ignored by pattern-enum
  std::uint64_t seed = 0;      // random-search stream seed
  // pattern-enum limits
  std::size_t max_points = 12;
  std::size_t max_dim = 3;
  std::size_t max_combinations = 1000000;
};

/// Search value of (1/N) max_w lambda_max(sum_i a(x_i,w) a(x_i,w)^T).
///
/// random-search: max over `budget` standard Gaussian weight draws. This is a
/// lower bound on the supremum.
///
/// pattern-enum: collects every activation pattern a single neuron can
/// produce, certified by sampling directions on a dense sphere grid plus the
/// zero vector, then evaluates every multiset of k patterns (neuron order
/// does not change the spectrum). Throws UnsupportedOperation beyond the
/// size limits in `opts`.
double alpha_oracle(const ReluDataset& data, std::size_t k,
                    const OracleOptions& opts);

/// Activation patterns of one neuron found by the sphere-grid certification,
/// each encoded as a bitmask over data points. Exposed for testing.
std::vector<std::uint32_t> realizable_patterns(const ReluDataset& data);

struct BoundReport {
  NetConfig config;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  std::optional<double> alpha4;  // undefined when k * d < 2
  std::optional<double> alpha_oracle;
  CassiniVariant alpha4_variant = CassiniVariant::kStandard;

  /// alpha2 <= alpha1, alpha2 <= alpha3, alpha2 <= alpha4 <= alpha3 (standard
  /// variant) and oracle <= alpha2, each with relative slack `slack`.
  bool chain_holds(double slack = 1e-9) const;
};

BoundReport compute_bounds(const ReluDataset& data, const NetConfig& config,
                           CassiniVariant variant = CassiniVariant::kStandard,
                           const std::optional<OracleOptions>& oracle = {});

}  // namespace concav
