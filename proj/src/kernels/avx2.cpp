#include "distal_beam/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace distal_beam::kernels {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void combine_rows(std::span<const double> coeffs, const double* rows,
                  std::size_t stride, std::span<double> out) {
  const std::size_t n = out.size();
  double* o = out.data();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double c = coeffs[j];
    const __m256d vc = _mm256_set1_pd(c);
    const double* row = rows + j * stride;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d acc = _mm256_loadu_pd(o + i);
      _mm256_storeu_pd(o + i, _mm256_fmadd_pd(vc, _mm256_loadu_pd(row + i), acc));
    }
    for (; i < n; ++i) o[i] = std::fma(c, row[i], o[i]);
  }
}

void interval_increments(std::span<const double> f, double h,
                         std::span<double> inc) {
  const std::size_t m = inc.size();
  const double w = h / 24.0;
  const double* p = f.data();
  inc[0] = w * (9.0 * p[0] + 19.0 * p[1] - 5.0 * p[2] + p[3]);

  const __m256d vw = _mm256_set1_pd(w);
  const __m256d v13 = _mm256_set1_pd(13.0);
  std::size_t i = 1;
  for (; i + 4 < m; i += 4) {
    const __m256d inner = _mm256_add_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(p + i + 1));
    const __m256d outer = _mm256_add_pd(_mm256_loadu_pd(p + i - 1), _mm256_loadu_pd(p + i + 2));
    const __m256d v = _mm256_sub_pd(_mm256_mul_pd(v13, inner), outer);
    _mm256_storeu_pd(inc.data() + i, _mm256_mul_pd(vw, v));
  }
  for (; i + 1 < m; ++i)
    inc[i] = w * (13.0 * (p[i] + p[i + 1]) - (p[i - 1] + p[i + 2]));
  inc[m - 1] = w * (9.0 * p[m] + 19.0 * p[m - 1] - 5.0 * p[m - 2] + p[m - 3]);
}

void offset_points(std::span<const double> x, std::span<const double> y,
                   std::span<const double> cos_t, std::span<const double> sin_t,
                   std::span<const double> w, std::span<double> out_x,
                   std::span<double> out_y) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vw = _mm256_loadu_pd(w.data() + i);
    _mm256_storeu_pd(out_x.data() + i,
                     _mm256_fnmadd_pd(vw, _mm256_loadu_pd(sin_t.data() + i),
                                      _mm256_loadu_pd(x.data() + i)));
    _mm256_storeu_pd(out_y.data() + i,
                     _mm256_fmadd_pd(vw, _mm256_loadu_pd(cos_t.data() + i),
                                     _mm256_loadu_pd(y.data() + i)));
  }
  for (; i < n; ++i) {
    out_x[i] = x[i] - w[i] * sin_t[i];
    out_y[i] = y[i] + w[i] * cos_t[i];
  }
}

double polyline_length(std::span<const double> x, std::span<const double> y) {
  const std::size_t segments = x.empty() ? 0 : x.size() - 1;
  const double* px = x.data();
  const double* py = y.data();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= segments; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i + 1), _mm256_loadu_pd(px + i));
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i + 1), _mm256_loadu_pd(py + i));
    const __m256d d2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(d2));
  }
  double total = hsum(acc);
  for (; i < segments; ++i) {
    const double dx = px[i + 1] - px[i];
    const double dy = py[i + 1] - py[i];
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

void taper_norm(std::span<const double> kappa, std::span<const double> taper,
                double c, std::span<double> out) {
  const std::size_t n = kappa.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d c2 = _mm256_set1_pd(c * c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_fnmadd_pd(_mm256_loadu_pd(taper.data() + i),
                                       _mm256_loadu_pd(kappa.data() + i), one);
    _mm256_storeu_pd(out.data() + i, _mm256_sqrt_pd(_mm256_fmadd_pd(t, t, c2)));
  }
  for (; i < n; ++i) {
    const double t = 1.0 - taper[i] * kappa[i];
    out[i] = std::sqrt(t * t + c * c);
  }
}

double max_scaled(std::span<const double> kappa, double a) {
  const std::size_t n = kappa.size();
  const __m256d va = _mm256_set1_pd(a);
  __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, _mm256_mul_pd(va, _mm256_loadu_pd(kappa.data() + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, a * kappa[i]);
  return r;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{combine_rows,    interval_increments,
                                 offset_points,   polyline_length,
                                 taper_norm,      max_scaled};
  return table;
}

}  // namespace distal_beam::kernels
