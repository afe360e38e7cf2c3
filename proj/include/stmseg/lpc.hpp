#pragma once

#include <span>

namespace stmseg::detail {

/// Solves the autocorrelation normal equations of order lpc.size() for
/// A(z) = 1 + sum a_k z^-k. `autocorr` needs lpc.size() + 1 lags. Returns the
/// final prediction error. The recursion stops early, leaving the remaining
/// coefficients at zero, if a reflection coefficient reaches magnitude 1.
double levinson_durbin(std::span<const double> autocorr, std::span<double> lpc);

/// Cepstrum c_1..c_n of the all-pole model 1 / A(z) (gain term excluded).
void lpc_to_cepstrum(std::span<const double> lpc, std::span<double> cep);

}  // namespace stmseg::detail
