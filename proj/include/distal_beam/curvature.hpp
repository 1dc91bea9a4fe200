#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace distal_beam {

inline constexpr std::size_t kDefaultGridSamples = 2049;
inline constexpr int kDefaultModes = 3;

/// Uniform arc-length grid s_0 = 0, ..., s_{n-1} = L with n odd and >= 3.
class ArcGrid {
 public:
  ArcGrid(double length, std::size_t samples = kDefaultGridSamples);

  double length() const noexcept { return length_; }
  std::size_t samples() const noexcept { return nodes_.size(); }
  double spacing() const noexcept { return spacing_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t i) const { return nodes_[i]; }

  bool operator==(const ArcGrid& other) const noexcept {
    return length_ == other.length_ && nodes_.size() == other.nodes_.size();
  }

 private:
  double length_;
  double spacing_;
  std::vector<double> nodes_;
};

enum class BasisKind { cos, sin };

/// cos(m pi s / L) or sin(m pi s / L). Throws DomainError for m < 1 or s
/// outside [0, L].
double eval_basis(int mode, BasisKind kind, double s, double length);

/// Truncated Fourier series of backbone curvature,
///   kappa(s) = sum_{m=1..M} a_m cos(m pi s / L) + b_m sin(m pi s / L),
/// stored as (a_1..a_M, b_1..b_M).
class FourierCurvature {
 public:
  FourierCurvature(std::vector<double> coeffs, double length);

  static FourierCurvature zero(int modes, double length);

  int modes() const noexcept { return static_cast<int>(coeffs_.size() / 2); }
  double length() const noexcept { return length_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double cos_coeff(int mode) const { return coeffs_.at(mode - 1); }
  double sin_coeff(int mode) const { return coeffs_.at(modes() + mode - 1); }

  /// this + alpha * direction (same M and L).
  FourierCurvature plus(std::span<const double> direction, double alpha) const;

  friend FourierCurvature operator+(const FourierCurvature& a, const FourierCurvature& b);

 private:
  std::vector<double> coeffs_;
  double length_;
};

/// kappa(s) = C^T B(s). Throws DomainError for s outside [0, L].
double eval_curvature(const FourierCurvature& kappa, double s);

/// theta(s) = integral_0^s kappa, from the closed-form antiderivative of the
/// series. Throws DomainError for s outside [0, L].
double eval_tangent_angle(const FourierCurvature& kappa, double s);

/// The 2M basis functions tabulated on a grid, row-major (one row per
/// coefficient, in coefficient order).
class BasisTable {
 public:
  BasisTable(int modes, const ArcGrid& grid);

  int modes() const noexcept { return modes_; }
  const ArcGrid& grid() const noexcept { return grid_; }
  std::span<const double> row(std::size_t j) const;

  /// sum_j coeffs[j] * row(j)
  std::vector<double> combine(std::span<const double> coeffs) const;

 private:
  int modes_;
  ArcGrid grid_;
  std::vector<double> rows_;
};

/// kappa sampled on every grid node.
std::vector<double> sample_curvature(const FourierCurvature& kappa, const ArcGrid& grid);

/// F(s_0) = 0, F(s_i) ~ integral_0^{s_i} f ds. Each interval uses the cubic
/// through its four nearest samples (one-sided at the ends), so the rule is
/// exact for cubics and O(h^4) globally; a three-sample grid falls back to
/// the quadratic rule. Throws ShapeError if f does not match the grid.
std::vector<double> cumulative_integral(std::span<const double> f, const ArcGrid& grid);

/// Last value of cumulative_integral.
double definite_integral(std::span<const double> f, const ArcGrid& grid);

}  // namespace distal_beam
