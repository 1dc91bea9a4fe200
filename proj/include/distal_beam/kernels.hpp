#pragma once

// Data-parallel inner loops over arc-length grids. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant selected at
// runtime. The two are equivalence-tested; they agree to rounding, not
// bit-for-bit (reductions use four partial sums in the vector path).

#include <cstddef>
#include <span>
#include <string_view>

namespace distal_beam::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  // out[i] = sum_j coeffs[j] * rows[j * stride + i], for i < out.size()
  void (*combine_rows)(std::span<const double> coeffs, const double* rows,
                       std::size_t stride, std::span<double> out);

  // inc[i] = integral over [s_i, s_{i+1}] of the cubic through the four
  // nearest samples (one-sided at the ends). inc.size() == f.size() - 1,
  // f.size() >= 4.
  void (*interval_increments)(std::span<const double> f, double h,
                              std::span<double> inc);

  // out = p + w[i] * (-sin, cos)
  void (*offset_points)(std::span<const double> x, std::span<const double> y,
                        std::span<const double> cos_t,
                        std::span<const double> sin_t,
                        std::span<const double> w, std::span<double> out_x,
                        std::span<double> out_y);

  // sum_i |p_{i+1} - p_i|
  double (*polyline_length)(std::span<const double> x,
                            std::span<const double> y);

  // out[i] = sqrt((1 - taper[i] * kappa[i])^2 + c^2)
  void (*taper_norm)(std::span<const double> kappa,
                     std::span<const double> taper, double c,
                     std::span<double> out);

  // max_i (a * kappa[i])
  double (*max_scaled)(std::span<const double> kappa, double a);
};

const KernelTable& scalar_kernels();
#if defined(DISTAL_BEAM_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

// True if this build contains the AVX2 path and the CPU can run it.
bool avx2_available();

// The dispatched table. Defaults to AVX2 when available unless the
// environment variable DISTAL_BEAM_KERNELS=scalar is set.
const KernelTable& active();
Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unavailable
std::string_view backend_name(Backend b);

}  // namespace distal_beam::kernels
