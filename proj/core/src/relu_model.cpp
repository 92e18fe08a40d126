#include "concav/relu_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "concav/error.hpp"

namespace concav {

void NetConfig::validate() const {
  if (d < 1 || k < 1 || n < 1)
    throw InvalidInput("NetConfig: d, k and n must all be >= 1");
}

std::mt19937_64 make_rng(std::uint64_t seed, SeedStream stream) {
  const auto s = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(0x5eedu)};
  return std::mt19937_64(seq);
}

Weights::Weights(std::size_t k, std::size_t d) : k_(k), d_(d), flat_(k * d) {}

Weights::Weights(std::size_t k, std::size_t d, Vector flat)
    : k_(k), d_(d), flat_(std::move(flat)) {
  if (flat_.size() != k * d)
    throw InvalidInput("Weights: expected " + std::to_string(k * d) +
                       " entries, got " + std::to_string(flat_.size()));
}

Weights Weights::gaussian(std::size_t k, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector flat(k * d);
  for (double& v : flat) v = normal(rng);
  return Weights(k, d, std::move(flat));
}

ReluDataset::ReluDataset(std::size_t d, Vector inputs, Vector targets,
                         Weights teacher, std::uint64_t seed)
    : d_(d),
      inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      teacher_(std::move(teacher)),
      seed_(seed) {
  if (d_ == 0) throw InvalidInput("ReluDataset: input dimension must be >= 1");
  if (inputs_.size() != targets_.size() * d_)
    throw InvalidInput("ReluDataset: inputs and targets disagree in length");
  if (teacher_.d() != d_)
    throw InvalidInput("ReluDataset: teacher dimension does not match inputs");
}

ReluDataset generate_dataset(const NetConfig& config) {
  config.validate();
  auto rng = make_rng(config.seed, SeedStream::kData);
  Weights teacher = Weights::gaussian(config.k, config.d, rng);

  std::normal_distribution<double> normal(0.0, 1.0);
  Vector inputs(config.n * config.d);
  for (double& v : inputs) v = normal(rng);

  Vector targets(config.n);
  for (std::size_t i = 0; i < config.n; ++i)
    targets[i] = forward({inputs.data() + i * config.d, config.d}, teacher);
  return ReluDataset(config.d, std::move(inputs), std::move(targets),
                     std::move(teacher), config.seed);
}

ReluDataset make_dataset(std::size_t d, Vector inputs, const Weights& teacher,
                         std::uint64_t seed) {
  if (d == 0 || inputs.size() % d != 0)
    throw InvalidInput("make_dataset: inputs are not a multiple of d");
  const std::size_t n = inputs.size() / d;
  Vector targets(n);
  for (std::size_t i = 0; i < n; ++i)
    targets[i] = forward({inputs.data() + i * d, d}, teacher);
  return ReluDataset(d, std::move(inputs), std::move(targets), teacher, seed);
}

double forward(std::span<const double> x, const Weights& w) {
  if (x.size() != w.d())
    throw InvalidInput("forward: input dimension does not match weights");
  double out = 0.0;
  for (std::size_t j = 0; j < w.k(); ++j)
    out += std::max(0.0, dot(x, w.block(j)));
  return out;
}

namespace {

void require_compatible(const Weights& w, const ReluDataset& data) {
  if (data.size() == 0) throw InvalidInput("dataset is empty");
  if (w.d() != data.dim())
    throw InvalidInput("weights dimension does not match the dataset");
}

}  // namespace

double loss(const Weights& w, const ReluDataset& data) {
  require_compatible(w, data);
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = forward(data.input(i), w) - data.target(i);
    s += r * r;
  }
  return s / (2.0 * static_cast<double>(data.size()));
}

Vector a_vector(std::span<const double> x, const Weights& w) {
  if (x.size() != w.d())
    throw InvalidInput("a_vector: input dimension does not match weights");
  Vector a(w.size(), 0.0);
  for (std::size_t j = 0; j < w.k(); ++j) {
    if (dot(x, w.block(j)) >= 0.0)
      std::copy(x.begin(), x.end(), a.begin() + j * w.d());
  }
  return a;
}

Vector abar_vector(std::span<const double> x, std::size_t k) {
  if (k == 0) throw InvalidInput("abar_vector: k must be >= 1");
  Vector a;
  a.reserve(k * x.size());
  for (std::size_t j = 0; j < k; ++j) a.insert(a.end(), x.begin(), x.end());
  return a;
}

Vector gradient(const Weights& w, const ReluDataset& data) {
  require_compatible(w, data);
  const std::size_t d = w.d();
  Vector g(w.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.input(i);
    double out = 0.0;
    for (std::size_t j = 0; j < w.k(); ++j)
      out += std::max(0.0, dot(x, w.block(j)));
    const double r = out - data.target(i);
    if (r == 0.0) continue;
    for (std::size_t j = 0; j < w.k(); ++j) {
      if (dot(x, w.block(j)) < 0.0) continue;
      double* gj = g.data() + j * d;
      for (std::size_t c = 0; c < d; ++c) gj[c] += r * x[c];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (double& v : g) v *= inv_n;
  return g;
}

SymMatrix masked_gram(const Weights& w, const ReluDataset& data) {
  require_compatible(w, data);
  SymMatrix m(w.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    m.add_outer(a_vector(data.input(i), w));
  m *= 1.0 / static_cast<double>(data.size());
  return m;
}

bool is_kink_free(const Weights& w, const ReluDataset& data, double rel_tol) {
  require_compatible(w, data);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.input(i);
    const double nx = norm(x);
    for (std::size_t j = 0; j < w.k(); ++j) {
      const auto wj = w.block(j);
      if (std::abs(dot(x, wj)) < rel_tol * nx * norm(wj)) return false;
    }
  }
  return true;
}

Weights initial_student(const NetConfig& config) {
  config.validate();
  auto rng = make_rng(config.seed, SeedStream::kStudentInit);
  return Weights::gaussian(config.k, config.d, rng);
}

ReluLoss::ReluLoss(const ReluDataset& data, std::size_t k)
    : data_(&data), k_(k) {
  if (k_ == 0) throw InvalidInput("ReluLoss: k must be >= 1");
  if (data.size() == 0) throw InvalidInput("ReluLoss: dataset is empty");
}

Weights ReluLoss::weights(std::span<const double> w) const {
  if (w.size() != dimension())
    throw InvalidInput("ReluLoss: weight vector has wrong length");
  return Weights(k_, data_->dim(), Vector(w.begin(), w.end()));
}

double ReluLoss::value(std::span<const double> w) const {
  return loss(weights(w), *data_);
}

Vector ReluLoss::gradient(std::span<const double> w) const {
  return concav::gradient(weights(w), *data_);
}

SymMatrix ReluLoss::hessian(std::span<const double> w) const {
  return masked_gram(weights(w), *data_);
}

}  // namespace concav
