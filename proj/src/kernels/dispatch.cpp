#include "distal_beam/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace distal_beam::kernels {
namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("DISTAL_BEAM_KERNELS")) {
    if (std::string(env) == "scalar") return Backend::scalar;
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool avx2_available() {
#if defined(DISTAL_BEAM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& active() {
#if defined(DISTAL_BEAM_HAVE_AVX2)
  if (current().load(std::memory_order_relaxed) == Backend::avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::runtime_error("AVX2 kernels are not available on this build/CPU");
  current().store(b);
}

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace distal_beam::kernels
