#include "concav/relu_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "concav/error.hpp"

namespace concav {

double alpha_single_point(std::span<const double> x, std::size_t k) {
  if (k == 0) throw InvalidInput("alpha_single_point: k must be >= 1");
  return static_cast<double>(k) * squared_norm(x);
}

namespace {

void require_nonempty(const ReluDataset& data, std::size_t k) {
  if (data.size() == 0) throw InvalidInput("dataset is empty");
  if (k == 0) throw InvalidInput("k must be >= 1");
}

// Per-point outer products x_i x_i^T, row-major d x d each.
std::vector<double> point_outers(const ReluDataset& data) {
  const std::size_t d = data.dim();
  std::vector<double> out(data.size() * d * d);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.input(i);
    double* p = out.data() + i * d * d;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) p[r * d + c] = x[r] * x[c];
  }
  return out;
}

// (1/N) sum_i a_i a_i^T where neuron j is active on point i iff
// active(i, j). Only blocks (j, l) with j <= l are accumulated, then mirrored.
template <class ActiveFn>
SymMatrix gram_from_activity(const ReluDataset& data, std::size_t k,
                             const std::vector<double>& outers,
                             ActiveFn active) {
  const std::size_t d = data.dim();
  const std::size_t n = k * d;
  std::vector<double> m(n * n, 0.0);
  std::vector<std::size_t> on;
  on.reserve(k);
  for (std::size_t i = 0; i < data.size(); ++i) {
    on.clear();
    for (std::size_t j = 0; j < k; ++j)
      if (active(i, j)) on.push_back(j);
    const double* p = outers.data() + i * d * d;
    for (std::size_t a = 0; a < on.size(); ++a) {
      for (std::size_t b = a; b < on.size(); ++b) {
        const std::size_t r0 = on[a] * d;
        const std::size_t c0 = on[b] * d;
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c)
            m[(r0 + r) * n + c0 + c] += p[r * d + c];
      }
    }
  }
  // Blocks with j <= l hold the sums; everything at or above the diagonal
  // is valid, so mirror it down.
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      const double v = m[r * n + c] * inv_n;
      m[r * n + c] = v;
      m[c * n + r] = v;
    }
  }
  return SymMatrix(n, std::move(m));
}

}  // namespace

SymMatrix second_moment(const ReluDataset& data) {
  if (data.size() == 0) throw InvalidInput("second_moment: dataset is empty");
  SymMatrix s(data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) s.add_outer(data.input(i));
  s *= 1.0 / static_cast<double>(data.size());
  return s;
}

SymMatrix abar_gram(const ReluDataset& data, std::size_t k) {
  require_nonempty(data, k);
  SymMatrix m(k * data.dim());
  for (std::size_t i = 0; i < data.size(); ++i)
    m.add_outer(abar_vector(data.input(i), k));
  m *= 1.0 / static_cast<double>(data.size());
  return m;
}

double bound_alpha1(const ReluDataset& data, std::size_t k) {
  require_nonempty(data, k);
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    s += squared_norm(data.input(i));
  return static_cast<double>(k) * s / static_cast<double>(data.size());
}

double bound_alpha2(const ReluDataset& data, std::size_t k) {
  require_nonempty(data, k);
  return kron_allones_structure_lambda(second_moment(data), k);
}

double bound_alpha3(const ReluDataset& data, std::size_t k) {
  require_nonempty(data, k);
  return gershgorin_upper(abar_gram(data, k));
}

double bound_alpha4(const ReluDataset& data, std::size_t k,
                    CassiniVariant variant) {
  require_nonempty(data, k);
  if (k * data.dim() < 2)
    throw InvalidInput("bound_alpha4: needs k * d >= 2");
  return brauer_cassini_upper(abar_gram(data, k), variant);
}

std::string_view to_string(OracleStrategy s) {
  return s == OracleStrategy::kPatternEnum ? "pattern-enum" : "random-search";
}

OracleStrategy parse_oracle_strategy(std::string_view s) {
  if (s == "pattern-enum") return OracleStrategy::kPatternEnum;
  if (s == "random-search") return OracleStrategy::kRandomSearch;
  throw InvalidInput("unknown oracle strategy '" + std::string(s) +
                     "' (expected pattern-enum or random-search)");
}

std::vector<std::uint32_t> realizable_patterns(const ReluDataset& data) {
  const std::size_t d = data.dim();
  const std::size_t n = data.size();
  if (n > 32) throw UnsupportedOperation("realizable_patterns: N > 32");

  std::vector<std::uint32_t> patterns;
  auto record = [&](std::span<const double> v) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (dot(data.input(i), v) >= 0.0) mask |= (1u << i);
    patterns.push_back(mask);
  };

  // The zero vector activates every point.
  record(Vector(d, 0.0));

  if (d == 1) {
    record(Vector{1.0});
    record(Vector{-1.0});
  } else if (d == 2) {
    constexpr int kAngles = 8192;
    for (int t = 0; t < kAngles; ++t) {
      const double th = 2.0 * std::numbers::pi * (t + 0.5) / kAngles;
      record(Vector{std::cos(th), std::sin(th)});
    }
  } else if (d == 3) {
    // Fibonacci lattice on the unit sphere.
    constexpr int kPoints = 32768;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int t = 0; t < kPoints; ++t) {
      const double z = 1.0 - 2.0 * (t + 0.5) / kPoints;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * t;
      record(Vector{r * std::cos(phi), r * std::sin(phi), z});
    }
  } else {
    throw UnsupportedOperation("realizable_patterns: only d <= 3 is supported");
  }

  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  return patterns;
}

namespace {

double oracle_random_search(const ReluDataset& data, std::size_t k,
                            const OracleOptions& opts) {
  if (opts.budget == 0)
    throw InvalidInput("alpha_oracle: random-search budget must be >= 1");
  const auto outers = point_outers(data);
  auto rng = make_rng(opts.seed, SeedStream::kOracle);
  const std::size_t n = data.size();
  std::vector<char> act(n * k);
  PowerIterationOptions screen;
  screen.max_iterations = 40;
  constexpr double kRefineBand = 0.02;
  double best = 0.0;
  for (std::size_t b = 0; b < opts.budget; ++b) {
    const Weights w = Weights::gaussian(k, data.dim(), rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j)
        act[i * k + j] = dot(data.input(i), w.block(j)) >= 0.0;
    const SymMatrix m = gram_from_activity(
        data, k, outers,
        [&](std::size_t i, std::size_t j) { return act[i * k + j] != 0; });
    // Any Rayleigh quotient is a lower bound on lambda_max, so a short
    // screening run is safe; only draws that might beat the best so far are
    // iterated to convergence.
    const double screened = power_iteration(m, screen).value;
    if (screened >= (1.0 - kRefineBand) * best)
      best = std::max({best, screened, power_iteration(m).value});
  }
  return best;
}

// C(n + k - 1, k), saturating at `cap + 1`.
std::size_t multiset_count(std::size_t n, std::size_t k, std::size_t cap) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n + i - 1) / static_cast<double>(i);
    if (c > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

double oracle_pattern_enum(const ReluDataset& data, std::size_t k,
                           const OracleOptions& opts) {
  if (data.size() > opts.max_points || data.dim() > opts.max_dim)
    throw UnsupportedOperation(
        "alpha_oracle: pattern-enum requires N <= " +
        std::to_string(opts.max_points) + " and d <= " +
        std::to_string(opts.max_dim) + "; use random-search");

  const auto patterns = realizable_patterns(data);
  if (multiset_count(patterns.size(), k, opts.max_combinations) >
      opts.max_combinations)
    throw UnsupportedOperation(
        "alpha_oracle: " + std::to_string(patterns.size()) +
        " patterns per neuron with k = " + std::to_string(k) +
        " exceed the combination limit");

  const auto outers = point_outers(data);
  std::vector<std::size_t> pick(k, 0);  // non-decreasing pattern indices
  double best = 0.0;
  while (true) {
    const SymMatrix m = gram_from_activity(
        data, k, outers, [&](std::size_t i, std::size_t j) {
          return ((patterns[pick[j]] >> i) & 1u) != 0;
        });
    best = std::max(best, power_iteration(m).value);

    // Next non-decreasing index sequence.
    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] + 1 == patterns.size()) --pos;
    if (pos == 0) break;
    const std::size_t v = pick[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < k; ++j) pick[j] = v;
  }
  return best;
}

}  // namespace

double alpha_oracle(const ReluDataset& data, std::size_t k,
                    const OracleOptions& opts) {
  require_nonempty(data, k);
  return opts.strategy == OracleStrategy::kPatternEnum
             ? oracle_pattern_enum(data, k, opts)
             : oracle_random_search(data, k, opts);
}

bool BoundReport::chain_holds(double slack) const {
  auto le = [slack](double a, double b) {
    return a <= b + slack * std::max(1.0, std::abs(b));
  };
  bool ok = le(alpha2, alpha1) && le(alpha2, alpha3);
  if (alpha4) {
    ok = ok && le(alpha2, *alpha4);
    if (alpha4_variant == CassiniVariant::kStandard)
      ok = ok && le(*alpha4, alpha3);
  }
  if (alpha_oracle) ok = ok && le(*alpha_oracle, alpha2);
  return ok;
}

BoundReport compute_bounds(const ReluDataset& data, const NetConfig& config,
                           CassiniVariant variant,
                           const std::optional<OracleOptions>& oracle) {
  const std::size_t k = config.k;
  require_nonempty(data, k);
  if (config.d != data.dim())
    throw InvalidInput("compute_bounds: config dimension does not match data");

  BoundReport r;
  r.config = config;
  r.alpha4_variant = variant;
  r.alpha1 = bound_alpha1(data, k);
  r.alpha2 = bound_alpha2(data, k);
  const SymMatrix m = abar_gram(data, k);
  r.alpha3 = gershgorin_upper(m);
  if (m.size() >= 2) r.alpha4 = brauer_cassini_upper(m, variant);
  if (oracle) r.alpha_oracle = alpha_oracle(data, k, *oracle);
  return r;
}

}  // namespace concav
