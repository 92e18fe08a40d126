#include "concav/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace concav {

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymMatrix::SymMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n)
    throw InvalidInput("SymMatrix: expected " + std::to_string(n * n) +
                       " entries, got " + std::to_string(data_.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = data_[i * n + j];
      const double b = data_[j * n + i];
      if (!(std::abs(a - b) <= kSymmetryTol * std::max(1.0, std::abs(a))))
        throw InvalidInput("SymMatrix: entries (" + std::to_string(i) + "," +
                           std::to_string(j) + ") and their transpose differ");
      const double mean = 0.5 * (a + b);
      data_[i * n + j] = mean;
      data_[j * n + i] = mean;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i)
    m.data_[i * m.n_ + i] = diag[i];
  return m;
}

SymMatrix SymMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidInput("SymMatrix: ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return SymMatrix(n, std::move(entries));
}

Vector SymMatrix::multiply(std::span<const double> x) const {
  Vector y(n_);
  multiply(x, y);
  return y;
}

void SymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_)
    throw InvalidInput("SymMatrix::multiply: dimension mismatch");
  for (std::size_t i = 0; i < n_; ++i) y[i] = dot(row(i), x);
}

void SymMatrix::add_outer(std::span<const double> v, double scale) {
  if (v.size() != n_) throw InvalidInput("SymMatrix::add_outer: size mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    const double si = scale * v[i];
    if (si == 0.0) continue;
    for (std::size_t j = i; j < n_; ++j) {
      const double t = si * v[j];
      data_[i * n_ + j] += t;
      if (j != i) data_[j * n_ + i] += t;
    }
  }
}

SymMatrix& SymMatrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw InvalidInput("SymMatrix: size mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

double SymMatrix::off_diagonal_radius(std::size_t i) const noexcept {
  double r = 0.0;
  const auto ri = row(i);
  for (std::size_t j = 0; j < n_; ++j)
    if (j != i) r += std::abs(ri[j]);
  return r;
}

}  // namespace concav
