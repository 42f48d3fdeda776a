#pragma once

#include <complex>
#include <vector>

#include "twc/rational.hpp"

namespace twc {

/// Z-linear combinations of N-th roots of unity, represented in
/// Z[x]/(x^N - 1). Two representatives denote the same complex number
/// exactly when their difference is divisible by the cyclotomic polynomial
/// Phi_N, so equality goes through a reduction mod Phi_N.
class CycRing {
 public:
  explicit CycRing(long long N);
  long long modulus() const { return n_; }

  using Elem = std::vector<long long>;  // length N, coefficient of x^k

  Elem zero() const { return Elem(n_, 0); }
  Elem one() const;
  /// x^(theta * N) for a rational phase theta with denominator dividing N;
  /// the value is exp(2*pi*i*theta).
  Elem phase(const Rational& theta) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem scale(long long c, const Elem& a) const;
  /// Complex conjugate: x^k -> x^(N-k).
  Elem conj(const Elem& a) const;

  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const;

  std::complex<double> value(const Elem& a) const;

 private:
  long long n_;
  std::vector<long long> phi_;  // Phi_N, monic, degree phi(N)
};

/// Coefficients of the N-th cyclotomic polynomial.
std::vector<long long> cyclotomic_polynomial(long long N);

}  // namespace twc
