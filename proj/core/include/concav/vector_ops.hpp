#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "concav/error.hpp"

namespace concav {

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) {
  return std::sqrt(squared_norm(a));
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline void require_same_size(std::span<const double> a,
                              std::span<const double> b, const char* what) {
  if (a.size() != b.size()) throw InvalidInput(what);
}

}  // namespace concav
