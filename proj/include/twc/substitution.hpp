#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "twc/laurent.hpp"
#include "twc/mahler.hpp"
#include "twc/rational.hpp"

namespace twc {

/// A substitution on the two-letter alphabet {0,1} with its abelianization
/// S = ((a,b),(c,d)): a,c count the 0s of theta(0), theta(1); b,d the 1s.
struct Substitution2 {
  std::string word0, word1;
  long long a = 0, b = 0, c = 0, d = 0;
  bool constant_length = false;
  long long q = 0;  // common length when constant_length

  bool primitive() const;
};

Substitution2 parse_substitution(const std::string& text);  // "0->w0;1->w1"

/// Entry (alpha, beta) of the spectral cocycle matrix: sum over positions k
/// with theta(alpha)_k = beta of z^(abelianized prefix before k). Returned
/// as integer Laurent polynomials in (z0, z1); the matrix at zeta = 0 is S.
std::array<std::array<LaurentPoly, 2>, 2> spectral_matrix_sym(const Substitution2& s);

Eigen::Matrix2cd spectral_matrix(const Substitution2& s, double zeta0, double zeta1);

/// P = a + z0^a z1^b c - c - z0^c z1^d a, whose Mahler measure is the top
/// exponent of the spectral cocycle.
LaurentPoly build_P(const Substitution2& s);

enum class CertBranch { constant_length, irreducible_trace, none };

struct SingularityCertificate {
  std::string rule;
  CertBranch branch = CertBranch::none;
  bool certified = false;

  // constant-length branch
  long long q = 0;
  std::vector<long long> diag_poly;  // a(z,z) - c(z,z), ascending coefficients
  double chi_plus_diag = 0;          // m(a(z,z)-c(z,z))
  double l2_bound = 0;               // (1/2) log(sum coeff^2)

  // irreducible branch
  int witness_n = 0;
  std::string lambda_n_lower;   // exact rational lower bound for lambda^n
  std::string column_bound;     // 2 min(a_n+c_n, b_n+d_n), exact integer
  double best_ratio = 0;        // max over n of lambda^n / column bound

  // shared diagnostics
  double chi_plus = 0;          // m(P), numerical
  double chi_plus_error = 0;
  double threshold = 0;         // (1/2) log lambda
  double margin = 0;            // threshold - chi_plus
  double perron = 0;
};

/// Pure-singular-spectrum certificate. The integer inequality
/// lambda^n > 2 min(a_n+c_n, b_n+d_n) is decided in exact arithmetic with
/// rational Perron bounds; the constant-length branch certifies through the
/// univariate Mahler measure of a(z,z) - c(z,z) against (1/2) log q.
SingularityCertificate certify(const Substitution2& s, int n_max);

/// Re-runs the exact integer inequalities of a stored certificate.
bool revalidate(const SingularityCertificate& cert);

struct ChiPlusEstimate {
  double value = 0;
  double stderr_ = 0;
  long long samples = 0;
};

/// Monte Carlo estimate of the top exponent integral of log|det B(zeta)|
/// over the torus (or over the diagonal z0 = z1 when diagonal is set).
ChiPlusEstimate chi_plus_direct(const Substitution2& s, long long samples,
                                int seeds = 8, bool diagonal = false,
                                std::uint64_t seed = 0x73756273ULL);

}  // namespace twc
