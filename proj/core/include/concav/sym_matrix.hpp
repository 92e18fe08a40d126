#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "concav/vector_ops.hpp"

namespace concav {

/// Dense symmetric matrix, row-major. Symmetry is checked on construction
/// (|m_ij - m_ji| <= 1e-10 * max(1, |m_ij|)) and the stored entries are
/// averaged so the matrix is exactly symmetric afterwards.
class SymMatrix {
 public:
  static constexpr double kSymmetryTol = 1e-10;

  SymMatrix() = default;

  /// Zero matrix of order n.
  explicit SymMatrix(std::size_t n);

  /// Takes a full row-major n*n grid. Throws InvalidInput when the grid is
  /// not square or not symmetric within kSymmetryTol.
  SymMatrix(std::size_t n, std::vector<double> entries);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);
  static SymMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) noexcept {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }

  std::span<const double> data() const noexcept { return data_; }

  /// y = M x
  Vector multiply(std::span<const double> x) const;
  void multiply(std::span<const double> x, std::span<double> y) const;

  /// Adds scale * v v^T. Rank-one updates keep the matrix exactly symmetric.
  void add_outer(std::span<const double> v, double scale = 1.0);

  SymMatrix& operator*=(double s) noexcept;
  SymMatrix& operator+=(const SymMatrix& other);

  /// Off-diagonal absolute row sum R_i = sum_{j != i} |m_ij|.
  double off_diagonal_radius(std::size_t i) const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace concav
