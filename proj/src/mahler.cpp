#include "twc/mahler.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace twc {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Golub-Welsch on the Jacobi matrix for Legendre polynomials.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (es.eigenvalues()(i) + 1.0);  // map (-1,1) -> (0,1)
    double v0 = es.eigenvectors()(0, i);
    weights[i] = v0 * v0;  // total mass 1 on [0,1]
  }
}

namespace {

std::vector<std::complex<double>> trim(std::vector<std::complex<double>> c) {
  double maxabs = 0;
  for (const auto& x : c) maxabs = std::max(maxabs, std::abs(x));
  if (maxabs == 0) return {};
  while (c.size() > 1 && std::abs(c.back()) < 1e-13 * maxabs) c.pop_back();
  size_t lead_zero = 0;
  while (lead_zero < c.size() && std::abs(c[lead_zero]) < 1e-13 * maxabs)
    ++lead_zero;
  c.erase(c.begin(), c.begin() + lead_zero);  // monomial factor, measure 0
  return c;
}

}  // namespace

double mahler_univariate(std::vector<std::complex<double>> coeffs) {
  coeffs = trim(std::move(coeffs));
  if (coeffs.empty()) throw std::domain_error("Mahler measure of the zero polynomial");
  const int n = static_cast<int>(coeffs.size()) - 1;
  double m = std::log(std::abs(coeffs[n]));
  if (n == 0) return m;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < n; ++i) {
    double r = std::abs(es.eigenvalues()(i));
    if (r > 1.0) m += std::log(r);
  }
  return m;
}

double mahler_univariate_int(const std::vector<long long>& coeffs) {
  std::vector<std::complex<double>> c(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) c[i] = static_cast<double>(coeffs[i]);
  return mahler_univariate(std::move(c));
}

double circle_log_mean(const std::vector<std::complex<double>>& coeffs, int nodes) {
  double acc = 0;
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * std::numbers::pi * (j + 0.5) / nodes;
    std::complex<double> z(std::cos(th), std::sin(th));
    std::complex<double> v = 0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
      v = v * z + coeffs[k];
    acc += std::log(std::abs(v));
  }
  return acc / nodes;
}

MahlerResult mahler_bivariate(const LaurentPoly& p, int gl_nodes,
                              long long mc_samples, std::uint64_t seed) {
  if (p.nvars() != 2) throw std::invalid_argument("bivariate Mahler needs 2 variables");
  if (p.is_zero()) throw std::domain_error("Mahler measure of the zero polynomial");

  // Group terms by z1-exponent (shifted to start at zero).
  int lo1 = 0, hi1 = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    lo1 = first ? e[1] : std::min(lo1, e[1]);
    hi1 = first ? e[1] : std::max(hi1, e[1]);
    first = false;
  }
  const int deg1 = hi1 - lo1;
  std::vector<std::vector<std::pair<int, long long>>> fibers(deg1 + 1);
  for (const auto& [e, c] : p.terms())
    fibers[e[1] - lo1].push_back({e[0], c});

  std::vector<double> nodes, weights;
  gauss_legendre(gl_nodes, nodes, weights);
  double quad = 0;
  for (int i = 0; i < gl_nodes; ++i) {
    std::vector<std::complex<double>> coeff(deg1 + 1, 0.0);
    for (int j = 0; j <= deg1; ++j)
      for (const auto& [e0, c] : fibers[j]) {
        double a = 2.0 * std::numbers::pi * nodes[i] * e0;
        coeff[j] += static_cast<double>(c) * std::complex<double>(std::cos(a), std::sin(a));
      }
    quad += weights[i] * mahler_univariate(std::move(coeff));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sum = 0, sumsq = 0;
  long long kept = 0;
  long long attempts = 0;
  const long long max_attempts = mc_samples + mc_samples / 10 + 100;
  while (kept < mc_samples && attempts < max_attempts) {
    ++attempts;
    double v = std::log(std::abs(p.eval_unit({u(rng), u(rng)})));
    if (!std::isfinite(v)) continue;  // P vanishes on a null set
    sum += v;
    sumsq += v * v;
    ++kept;
  }
  if (kept == 0) throw std::runtime_error("Monte Carlo found no finite samples");
  double mean = sum / kept;
  double var = std::max(0.0, sumsq / kept - mean * mean);
  double se = std::sqrt(var / kept);

  MahlerResult out;
  out.quadrature = quad;
  out.monte_carlo = mean;
  out.mc_stderr = se;
  out.value = quad;
  out.error_bound = std::abs(quad - mean) + se;
  return out;
}

}  // namespace twc
