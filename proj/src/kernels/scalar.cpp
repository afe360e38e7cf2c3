#include "stmseg/kernels.hpp"

namespace stmseg::kernels {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_diff(double a, const double* xp, const double* xm, double* y,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * (xp[i] - xm[i]);
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void multiply(const double* x, const double* w, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * w[i];
}

void power_spectrum(const double* interleaved, double* out, std::size_t bins,
                    double floor) {
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = interleaved[2 * k];
    const double im = interleaved[2 * k + 1];
    out[k] = re * re + im * im + floor;
  }
}

void floor_at(double* x, std::size_t n, double tau) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] > tau ? x[i] : tau;
}

void clip_symmetric(double* x, std::size_t n, double tau) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] >= tau)
      x[i] = tau;
    else if (x[i] <= -tau)
      x[i] = -tau;
  }
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{
      "scalar", axpy, axpy_diff, dot, sum_squares, multiply, power_spectrum, floor_at,
      clip_symmetric,
  };
  return table;
}

}  // namespace stmseg::kernels
