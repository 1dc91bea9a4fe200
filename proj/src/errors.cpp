#include "distal_beam/errors.hpp"

#include <cmath>
#include <cstdio>

namespace distal_beam {
namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string describe(const std::string& what, const std::vector<double>& r, int iterations) {
  double norm = 0.0;
  for (double v : r) norm += v * v;
  char buf[96];
  std::snprintf(buf, sizeof buf, " (residual norm %.3e after %d iterations)", std::sqrt(norm),
                iterations);
  return what + buf;
}

}  // namespace

SelfIntersectError::SelfIntersectError(double max_offset_curvature, double arc_length)
    : NumericalError(fmt("parallel offset self-intersects: a0*kappa = %.6g >= 1 at s = %.6g",
                         max_offset_curvature, arc_length)),
      max_offset_curvature_(max_offset_curvature),
      arc_length_(arc_length) {}

DegenerateTipError::DegenerateTipError(double tip_x)
    : NumericalError(fmt("tip ratio undefined: |x(L)| = %.3e is below the degeneracy threshold",
                         std::abs(tip_x))),
      tip_x_(tip_x) {}

RankDeficientError::RankDeficientError(int rank, int expected)
    : NumericalError("constraint matrix has rank " + std::to_string(rank) + ", expected " +
                     std::to_string(expected)),
      rank_(rank) {}

NonConvergenceError::NonConvergenceError(const std::string& what, std::vector<double> residual,
                                         int iterations)
    : NumericalError(describe(what, residual, iterations)),
      residual_(std::move(residual)),
      iterations_(iterations) {}

}  // namespace distal_beam
