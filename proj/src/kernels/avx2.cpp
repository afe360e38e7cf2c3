// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "stmseg/kernels.hpp"

namespace stmseg::kernels {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_diff(double a, const double* xp, const double* xm, double* y,
               std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xp + i), _mm256_loadu_pd(xm + i));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, d, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * (xp[i] - xm[i]);
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

void multiply(const double* x, const double* w, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(w + i)));
  for (; i < n; ++i) out[i] = x[i] * w[i];
}

void power_spectrum(const double* interleaved, double* out, std::size_t bins,
                    double floor) {
  const __m256d vfloor = _mm256_set1_pd(floor);
  std::size_t k = 0;
  for (; k + 4 <= bins; k += 4) {
    // a = [re0 im0 re1 im1], b = [re2 im2 re3 im3]
    const __m256d a = _mm256_loadu_pd(interleaved + 2 * k);
    const __m256d b = _mm256_loadu_pd(interleaved + 2 * k + 4);
    // hadd -> [|0|^2 |2|^2 |1|^2 |3|^2]; permute restores bin order.
    const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    const __m256d ordered = _mm256_permute4x64_pd(sq, _MM_SHUFFLE(3, 1, 2, 0));
    _mm256_storeu_pd(out + k, _mm256_add_pd(ordered, vfloor));
  }
  for (; k < bins; ++k) {
    const double re = interleaved[2 * k];
    const double im = interleaved[2 * k + 1];
    out[k] = re * re + im * im + floor;
  }
}

void floor_at(double* x, std::size_t n, double tau) {
  const __m256d vt = _mm256_set1_pd(tau);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d keep = _mm256_cmp_pd(v, vt, _CMP_GT_OQ);
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(vt, v, keep));
  }
  for (; i < n; ++i) x[i] = x[i] > tau ? x[i] : tau;
}

void clip_symmetric(double* x, std::size_t n, double tau) {
  const __m256d hi = _mm256_set1_pd(tau);
  const __m256d lo = _mm256_set1_pd(-tau);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    __m256d r = _mm256_blendv_pd(v, hi, _mm256_cmp_pd(v, hi, _CMP_GE_OQ));
    r = _mm256_blendv_pd(r, lo, _mm256_cmp_pd(v, lo, _CMP_LE_OQ));
    _mm256_storeu_pd(x + i, r);
  }
  for (; i < n; ++i) {
    if (x[i] >= tau)
      x[i] = tau;
    else if (x[i] <= -tau)
      x[i] = -tau;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2", axpy, axpy_diff, dot, sum_squares, multiply, power_spectrum, floor_at,
      clip_symmetric,
  };
  return table;
}

}  // namespace stmseg::kernels
