#pragma once

#include <cstddef>
#include <string_view>

// Inner loops shared by feature extraction, STM and degradation. Each kernel
// has a portable scalar reference and, where the CPU allows, an AVX2/FMA
// variant. The variant is chosen once per process; set STMSEG_KERNELS=scalar
// to force the reference path.

namespace stmseg::kernels {

struct KernelTable {
  std::string_view name;

  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y[i] += a * (xp[i] - xm[i])
  void (*axpy_diff)(double a, const double* xp, const double* xm, double* y,
                    std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // out[i] = x[i] * w[i]
  void (*multiply)(const double* x, const double* w, double* out,
                   std::size_t n);
  // out[k] = re^2 + im^2 + floor over interleaved complex bins
  void (*power_spectrum)(const double* interleaved, double* out,
                         std::size_t bins, double floor);
  // x[i] = x[i] > tau ? x[i] : tau
  void (*floor_at)(double* x, std::size_t n, double tau);
  // x[i] = clamp(x[i], -tau, tau)
  void (*clip_symmetric)(double* x, std::size_t n, double tau);
};

const KernelTable& scalar();
/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2();
const KernelTable& active();

}  // namespace stmseg::kernels
