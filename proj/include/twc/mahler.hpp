#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "twc/laurent.hpp"

namespace twc {

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Logarithmic Mahler measure of a univariate polynomial via Jensen's
/// formula: log|lead| + sum log max(1, |root|). Throws on the zero
/// polynomial. A monomial factor z^k contributes nothing.
double mahler_univariate(std::vector<std::complex<double>> coeffs);
double mahler_univariate_int(const std::vector<long long>& coeffs);

/// Mean of log|p| over the unit circle by the midpoint rule; test oracle.
double circle_log_mean(const std::vector<std::complex<double>>& coeffs, int nodes);

struct MahlerResult {
  double value = 0;        // the quadrature value (primary)
  double error_bound = 0;  // |quadrature - monte carlo| + mc stderr
  double quadrature = 0;
  double monte_carlo = 0;
  double mc_stderr = 0;
};

/// Bivariate logarithmic Mahler measure: outer Gauss-Legendre quadrature of
/// the exact inner univariate Jensen value, cross-checked by Monte Carlo.
MahlerResult mahler_bivariate(const LaurentPoly& p, int gl_nodes = 512,
                              long long mc_samples = 1000000,
                              std::uint64_t seed = 0x6d61686c65ULL);

}  // namespace twc
