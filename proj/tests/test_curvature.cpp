#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distal_beam/curvature.hpp"
#include "distal_beam/errors.hpp"

using namespace distal_beam;
using std::numbers::pi;

namespace {

std::vector<double> sample(const ArcGrid& g, double (*f)(double)) {
  std::vector<double> out(g.samples());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(g[i]);
  return out;
}

}  // namespace

TEST_CASE("arc grid nodes") {
  const ArcGrid g(2.0, 9);
  CHECK(g.samples() == 9);
  CHECK(g[0] == 0.0);
  CHECK(g[8] == 2.0);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK_THROWS_AS(ArcGrid(1.0, 4), DomainError);
  CHECK_THROWS_AS(ArcGrid(1.0, 1), DomainError);
  CHECK_THROWS_AS(ArcGrid(0.0, 9), DomainError);

  const ArcGrid h(2.0, 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(g[i] == h[i]);
}

TEST_CASE("basis values") {
  CHECK(eval_basis(1, BasisKind::sin, 0.0, 1.0) == 0.0);
  CHECK(eval_basis(2, BasisKind::cos, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(eval_basis(1, BasisKind::cos, 0.5, 1.0)) < 1e-15);
  CHECK_THROWS_AS(eval_basis(0, BasisKind::cos, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(eval_basis(1, BasisKind::cos, -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(eval_basis(1, BasisKind::sin, 1.5, 1.0), DomainError);
}

TEST_CASE("curvature evaluation") {
  CHECK(eval_curvature(FourierCurvature::zero(3, 1.0), 0.3) == 0.0);
  CHECK(eval_curvature(FourierCurvature({1, 0, 0, 0, 0, 0}, 1.0), 0.0) == 1.0);
  CHECK(eval_curvature(FourierCurvature({0, 0, 0, 1, 0, 0}, 1.0), 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eval_curvature(FourierCurvature::zero(3, 1.0), 1.01), DomainError);
  CHECK_THROWS(FourierCurvature({1.0, 2.0, 3.0}, 1.0));
  CHECK_THROWS(FourierCurvature({}, 1.0));
}

TEST_CASE("curvature is linear in the coefficients") {
  const FourierCurvature c1({0.3, -1.2, 0.7, 2.0, 0.1, -0.4}, 1.7);
  const FourierCurvature c2({-0.9, 0.5, 0.25, -1.0, 3.0, 0.6}, 1.7);
  const FourierCurvature sum = c1 + c2;
  for (double s : {0.0, 0.11, 0.5, 1.23, 1.7}) {
    CHECK(eval_curvature(sum, s) ==
          doctest::Approx(eval_curvature(c1, s) + eval_curvature(c2, s)).epsilon(1e-15));
  }
}

TEST_CASE("closed-form tangent angle matches quadrature") {
  const FourierCurvature k({0.4, -0.3, 0.2, 1.1, -0.5, 0.35}, 1.3);
  const ArcGrid g(1.3);
  const auto theta = cumulative_integral(sample_curvature(k, g), g);
  for (std::size_t i = 0; i < g.samples(); i += 97)
    CHECK(theta[i] == doctest::Approx(eval_tangent_angle(k, g[i])).epsilon(1e-12));
}

TEST_CASE("cumulative integral examples") {
  const ArcGrid g(1.0);
  const auto zero = cumulative_integral(std::vector<double>(g.samples(), 0.0), g);
  for (double v : zero) CHECK(v == 0.0);

  const auto one = cumulative_integral(std::vector<double>(g.samples(), 1.0), g);
  CHECK(one.front() == 0.0);
  CHECK(one.back() == doctest::Approx(1.0).epsilon(1e-14));

  const auto lin = cumulative_integral(sample(g, [](double s) { return s; }), g);
  CHECK(std::abs(lin.back() - 0.5) <= 1e-12);

  CHECK_THROWS_AS(cumulative_integral(std::vector<double>(10, 1.0), g), ShapeError);
  CHECK_THROWS_AS(definite_integral(std::vector<double>(10, 1.0), g), ShapeError);
}

TEST_CASE("definite integral examples") {
  const ArcGrid g(1.0);
  CHECK(definite_integral(std::vector<double>(g.samples(), 0.0), g) == 0.0);
  const double sin_int = definite_integral(sample(g, [](double s) { return std::sin(pi * s); }), g);
  CHECK(std::abs(sin_int - 2.0 / pi) <= 1e-8);
  const double ssin_int =
      definite_integral(sample(g, [](double s) { return s * std::sin(pi * s); }), g);
  CHECK(std::abs(ssin_int - 1.0 / pi) <= 1e-8);
}

TEST_CASE("quadrature error shrinks by at least 3.9 per halving") {
  double prev = 0.0;
  for (std::size_t n : {9u, 17u, 33u, 65u, 129u}) {
    const ArcGrid g(1.0, n);
    const double err =
        std::abs(definite_integral(sample(g, [](double s) { return std::sin(pi * s); }), g) -
                 2.0 / pi);
    if (prev > 0.0) CHECK(prev / err >= 3.9);
    prev = err;
  }
}

TEST_CASE("cubic integrands are exact") {
  const ArcGrid g(2.0, 7);
  const auto F = cumulative_integral(sample(g, [](double s) { return s * s * s - s + 2.0; }), g);
  for (std::size_t i = 0; i < g.samples(); ++i) {
    const double s = g[i];
    CHECK(F[i] == doctest::Approx(s * s * s * s / 4 - s * s / 2 + 2 * s).epsilon(1e-13));
  }
}

TEST_CASE("basis table agrees with direct evaluation") {
  const FourierCurvature k({0.4, -0.3, 0.2, 1.1, -0.5, 0.35}, 1.0);
  const ArcGrid g(1.0, 257);
  const auto sampled = sample_curvature(k, g);
  for (std::size_t i = 0; i < g.samples(); ++i)
    CHECK(sampled[i] == doctest::Approx(eval_curvature(k, g[i])).epsilon(1e-13));

  const auto again = sample_curvature(k, g);
  CHECK(sampled == again);
}
