#include <doctest.h>

#include <cmath>
#include <random>

#include "distal_beam/constraints.hpp"
#include "distal_beam/kernels.hpp"

using namespace distal_beam;
namespace k = distal_beam::kernels;

namespace {

struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::set_backend(saved); }
};

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - b[i]) <= tol * (1.0 + std::abs(a[i])));
}

}  // namespace

TEST_CASE("scalar backend can always be selected") {
  BackendGuard guard;
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  CHECK(k::backend_name(k::Backend::scalar) == "scalar");
  if (!k::avx2_available()) CHECK_THROWS(k::set_backend(k::Backend::avx2));
}

TEST_CASE("avx2 kernels match the scalar reference on random inputs") {
  if (!k::avx2_available()) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  BackendGuard guard;
  k::set_backend(k::Backend::scalar);
  const k::KernelTable& s = k::active();
  k::set_backend(k::Backend::avx2);
  const k::KernelTable& v = k::active();
  REQUIRE(&s != &v);

  std::mt19937_64 rng(7);
  // sizes straddle the 4-lane width so both bodies and tails run
  for (std::size_t n : {4u, 5u, 6u, 7u, 8u, 9u, 13u, 31u, 64u, 257u, 1000u}) {
    CAPTURE(n);
    const auto f = random_vec(rng, n, -3, 3);
    const auto g = random_vec(rng, n, -3, 3);

    const std::size_t m = 6;
    const auto coeffs = random_vec(rng, m, -2, 2);
    const auto rows = random_vec(rng, m * n, -1, 1);
    std::vector<double> o1(n), o2(n);
    s.combine_rows(coeffs, rows.data(), n, o1);
    v.combine_rows(coeffs, rows.data(), n, o2);
    close(o1, o2, 1e-14);

    std::vector<double> i1(n - 1), i2(n - 1);
    s.interval_increments(f, 0.01, i1);
    v.interval_increments(f, 0.01, i2);
    close(i1, i2, 1e-14);

    std::vector<double> ct(n), st(n);
    for (std::size_t i = 0; i < n; ++i) {
      ct[i] = std::cos(g[i]);
      st[i] = std::sin(g[i]);
    }
    const auto w = random_vec(rng, n, 0, 0.2);
    std::vector<double> x1(n), y1(n), x2(n), y2(n);
    s.offset_points(f, g, ct, st, w, x1, y1);
    v.offset_points(f, g, ct, st, w, x2, y2);
    close(x1, x2, 1e-15);
    close(y1, y2, 1e-15);

    CHECK(v.polyline_length(f, g) == doctest::Approx(s.polyline_length(f, g)).epsilon(1e-13));

    const auto taper = random_vec(rng, n, 0, 0.2);
    std::vector<double> t1(n), t2(n);
    s.taper_norm(f, taper, 0.15, t1);
    v.taper_norm(f, taper, 0.15, t2);
    close(t1, t2, 1e-14);

    CHECK(v.max_scaled(f, 0.15) == s.max_scaled(f, 0.15));
  }
}

TEST_CASE("reports agree across backends") {
  if (!k::avx2_available()) return;
  BackendGuard guard;
  const BeamConfig cfg(1.0, 0.08 / 0.52);
  const FourierCurvature kappa = fit_initial_curvature({0.52, std::atan(0.053)}, cfg);
  k::set_backend(k::Backend::scalar);
  const InvariantReport a = invariant_report(kappa, cfg);
  k::set_backend(k::Backend::avx2);
  const InvariantReport b = invariant_report(kappa, cfg);
  CHECK(a.L1 == doctest::Approx(b.L1).epsilon(1e-13));
  CHECK(a.Lc == doctest::Approx(b.Lc).epsilon(1e-13));
  CHECK(a.tip_ratio == doctest::Approx(b.tip_ratio).epsilon(1e-12));
  CHECK(a.theta_bar == doctest::Approx(b.theta_bar).epsilon(1e-12));
}
