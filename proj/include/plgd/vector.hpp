#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace plgd {

// Dense vector in R^n, n >= 1, all components finite. The checked
// constructor is the public construction path; solvers build trial points
// through unchecked() and validate them before committing, since a trial
// step may momentarily overflow and get rejected by the acceptance test.
class Vector {
 public:
  Vector() = default;

  explicit Vector(std::vector<double> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw std::invalid_argument("Vector: dimension must be >= 1");
    for (double c : components_)
      if (!std::isfinite(c))
        throw std::invalid_argument("Vector: components must be finite");
  }

  static Vector unchecked(std::vector<double> components) {
    Vector v;
    v.components_ = std::move(components);
    return v;
  }

  std::size_t size() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  std::span<const double> values() const { return components_; }

  bool all_finite() const {
    for (double c : components_)
      if (!std::isfinite(c)) return false;
    return true;
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<double> components_;
};

// The norm is Euclidean everywhere in this library.
inline double euclidean_norm(const Vector& v) {
  double s = 0.0;
  for (double c : v.values()) s += c * c;
  return std::sqrt(s);
}

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace plgd
