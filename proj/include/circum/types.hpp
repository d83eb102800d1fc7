#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace circum {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr const char* kVersion = "1.0.0";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(Index expected, Index got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class InvalidMetric : public Error {
 public:
  using Error::Error;
};

class CoincidentPoints : public Error {
 public:
  using Error::Error;
};

/// Thrown when a sphere triple plus its center cannot be placed in Euclidean
/// space: the triple circumradius exceeds the sphere radius (or is infinite).
class NotEmbeddable : public Error {
 public:
  NotEmbeddable(double circumradius, double sphere_radius)
      : Error("not embeddable: circumradius " +
              std::to_string(circumradius) + " exceeds sphere radius " +
              std::to_string(sphere_radius)),
        circumradius_(circumradius),
        sphere_radius_(sphere_radius) {}

  double circumradius() const { return circumradius_; }
  double sphere_radius() const { return sphere_radius_; }
  bool circumradius_is_infinite() const { return std::isinf(circumradius_); }

 private:
  double circumradius_;
  double sphere_radius_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, std::string message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(std::move(message)) {}

  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// A nonnegative radius extended with a distinguished infinite value
/// (metrically collinear triples have no finite circumradius).
template <class Scalar>
class ExtendedRadiusT {
 public:
  ExtendedRadiusT() : value_(Scalar(0)) {}

  static ExtendedRadiusT finite(Scalar v) {
    if (!(v >= Scalar(0)) || std::isinf(v))
      throw Error("finite radius must be a nonnegative real");
    ExtendedRadiusT r;
    r.value_ = v;
    return r;
  }
  static ExtendedRadiusT infinite() {
    ExtendedRadiusT r;
    r.value_ = std::numeric_limits<Scalar>::infinity();
    return r;
  }

  bool is_finite() const { return !std::isinf(value_); }
  bool is_infinite() const { return std::isinf(value_); }

  /// Finite value; throws on the infinite element.
  Scalar value() const {
    if (is_infinite()) throw Error("radius is infinite");
    return value_;
  }
  /// Raw value with IEEE infinity standing in for the infinite element.
  Scalar value_or_infinity() const { return value_; }

  friend bool operator==(const ExtendedRadiusT& a, const ExtendedRadiusT& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedRadiusT& a, const ExtendedRadiusT& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtendedRadiusT& a, const ExtendedRadiusT& b) {
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtendedRadiusT& a, const ExtendedRadiusT& b) {
    return b < a;
  }
  friend bool operator<=(const ExtendedRadiusT& a, const ExtendedRadiusT& b) {
    return !(b < a);
  }
  friend bool operator>=(const ExtendedRadiusT& a, const ExtendedRadiusT& b) {
    return !(a < b);
  }

 private:
  Scalar value_;
};

using ExtendedRadius = ExtendedRadiusT<double>;

}  // namespace circum
