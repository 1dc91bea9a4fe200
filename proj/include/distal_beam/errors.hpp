#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace distal_beam {

// Argument outside the domain of a function (arc length beyond [0, L], mode
// index out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sampled data does not match the grid it is paired with.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for failures of the numerical model itself (as opposed to bad input).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The parallel offset folds over itself: a0 * kappa(s) >= 1 somewhere.
class SelfIntersectError : public NumericalError {
 public:
  SelfIntersectError(double max_offset_curvature, double arc_length);
  double max_offset_curvature() const noexcept { return max_offset_curvature_; }
  double arc_length() const noexcept { return arc_length_; }

 private:
  double max_offset_curvature_;
  double arc_length_;
};

// y(L)/x(L) is undefined because the tip sits on the y axis.
class DegenerateTipError : public NumericalError {
 public:
  explicit DegenerateTipError(double tip_x);
  double tip_x() const noexcept { return tip_x_; }

 private:
  double tip_x_;
};

class RankDeficientError : public NumericalError {
 public:
  RankDeficientError(int rank, int expected);
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> residual,
                      int iterations);
  const std::vector<double>& residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<double> residual_;
  int iterations_;
};

}  // namespace distal_beam
