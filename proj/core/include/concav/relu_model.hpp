#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "concav/objective.hpp"
#include "concav/sym_matrix.hpp"
#include "concav/vector_ops.hpp"

namespace concav {

/// Shape of the single-hidden-layer ReLU network f(x, w) = sum_j relu(x^T w^j)
/// (no biases, unit output weights) plus the seed that generates its data.
struct NetConfig {
  std::size_t d = 1;  // input dimension
  std::size_t k = 1;  // hidden neurons
  std::size_t n = 1;  // data points
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const NetConfig&) const = default;
};

/// Independent random streams derived from one seed. The numbering is part
/// of the reproducibility contract; do not reorder.
enum class SeedStream : std::uint64_t {
  kData = 0,          // teacher weights, then inputs
  kStudentInit = 1,   // initial student weights for descent runs
  kOracle = 2,        // random-search oracle draws
  kPairs = 3,         // random pairs for certification checks
};

std::mt19937_64 make_rng(std::uint64_t seed, SeedStream stream);

/// Stacked weights w = (w^1, ..., w^k), each block in R^d.
class Weights {
 public:
  Weights() = default;
  Weights(std::size_t k, std::size_t d);  // zeros
  Weights(std::size_t k, std::size_t d, Vector flat);

  static Weights gaussian(std::size_t k, std::size_t d, std::mt19937_64& rng);

  std::size_t k() const noexcept { return k_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t size() const noexcept { return flat_.size(); }

  std::span<const double> block(std::size_t j) const noexcept {
    return {flat_.data() + j * d_, d_};
  }
  std::span<double> block(std::size_t j) noexcept {
    return {flat_.data() + j * d_, d_};
  }

  std::span<const double> flat() const noexcept { return flat_; }
  std::span<double> flat() noexcept { return flat_; }

  bool operator==(const Weights&) const = default;

 private:
  std::size_t k_ = 0;
  std::size_t d_ = 0;
  Vector flat_;
};

/// Teacher-generated training set: x_i ~ N(0, I_d), y_i = f(x_i, w*).
class ReluDataset {
 public:
  ReluDataset() = default;
  /// `inputs` is row-major n x d. Throws InvalidInput on shape mismatch.
  ReluDataset(std::size_t d, Vector inputs, Vector targets, Weights teacher,
              std::uint64_t seed);

  std::size_t size() const noexcept { return targets_.size(); }
  std::size_t dim() const noexcept { return d_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const double> input(std::size_t i) const noexcept {
    return {inputs_.data() + i * d_, d_};
  }
  std::span<const double> inputs() const noexcept { return inputs_; }
  std::span<const double> targets() const noexcept { return targets_; }
  double target(std::size_t i) const noexcept { return targets_[i]; }
  const Weights& teacher() const noexcept { return teacher_; }

  bool operator==(const ReluDataset&) const = default;

 private:
  std::size_t d_ = 0;
  Vector inputs_;
  Vector targets_;
  Weights teacher_;
  std::uint64_t seed_ = 0;
};

ReluDataset generate_dataset(const NetConfig& config);

/// Dataset whose targets come from `teacher`; used for hand-built fixtures.
ReluDataset make_dataset(std::size_t d, Vector inputs, const Weights& teacher,
                         std::uint64_t seed = 0);

/// sum_j max(0, x^T w^j)
double forward(std::span<const double> x, const Weights& w);

/// (1 / 2N) sum_i (f(x_i, w) - y_i)^2
double loss(const Weights& w, const ReluDataset& data);

/// Block j is 1{x^T w^j >= 0} x. Zero pre-activation counts as active.
Vector a_vector(std::span<const double> x, const Weights& w);

/// k stacked copies of x.
Vector abar_vector(std::span<const double> x, std::size_t k);

/// (1/N) sum_i (f(x_i, w) - y_i) a(x_i, w)
Vector gradient(const Weights& w, const ReluDataset& data);

/// (1/N) sum_i a(x_i, w) a(x_i, w)^T: the loss Hessian away from kinks,
/// taking the ReLU second derivative as zero everywhere.
SymMatrix masked_gram(const Weights& w, const ReluDataset& data);

/// False when some |x_i^T w^j| < rel_tol * ||x_i|| ||w^j||. Gradient checks are
/// only meaningful at kink-free points.
bool is_kink_free(const Weights& w, const ReluDataset& data,
                  double rel_tol = 1e-6);

/// Standard Gaussian student initialization from the kStudentInit stream.
Weights initial_student(const NetConfig& config);

/// The training loss as an Objective over R^{kd}.
class ReluLoss final : public Objective {
 public:
  ReluLoss(const ReluDataset& data, std::size_t k);

  std::size_t dimension() const override { return k_ * data_->dim(); }
  double value(std::span<const double> w) const override;
  Vector gradient(std::span<const double> w) const override;
  bool has_hessian() const override { return true; }
  SymMatrix hessian(std::span<const double> w) const override;

  const ReluDataset& data() const noexcept { return *data_; }
  std::size_t k() const noexcept { return k_; }
  Weights weights(std::span<const double> w) const;

 private:
  const ReluDataset* data_;
  std::size_t k_;
};

}  // namespace concav
