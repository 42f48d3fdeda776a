#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "twc/cyclotomic.hpp"
#include "twc/rational.hpp"

namespace twc {

/// Sparse integer Laurent polynomial in a fixed number of variables.
/// Terms map exponent vectors to nonzero coefficients.
class LaurentPoly {
 public:
  using Exponent = std::vector<int>;

  explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}
  static LaurentPoly constant(int nvars, long long c);
  static LaurentPoly monomial(Exponent e, long long c = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, long long>& terms() const { return terms_; }

  void add_term(const Exponent& e, long long c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  /// Complex conjugate under |z_i| = 1: negate all exponents.
  LaurentPoly unit_conj() const;

  /// Substitute z_var := prod_i z_i^{rel_i} (rel_var must be 0); used to
  /// restrict to a subtorus such as z_b = z_a z_c.
  LaurentPoly substitute(int var, const Exponent& rel) const;

  /// Substitute z_i := prod_j z_j^{rows[i][j]} for every variable at once;
  /// this is precomposition with the toral endomorphism given by the
  /// integer matrix whose i-th row is rows[i].
  LaurentPoly compose_linear(const std::vector<Exponent>& rows) const;

  std::complex<double> eval(const std::vector<std::complex<double>>& z) const;
  /// Evaluate at z_i = exp(2*pi*i*theta_i), one sincos per term.
  std::complex<double> eval_unit(const std::vector<double>& theta) const;
  /// Evaluate at z_i = exp(2*pi*i*zeta_i) for rational zeta, exactly.
  CycRing::Elem eval_cyc(const CycRing& ring, const std::vector<Rational>& zeta) const;

  long long sum_abs_coeff() const;
  long long sum_coeff_sq() const;

  /// Collapse to one variable by substituting z_i := z for all i; returns
  /// coefficients of z^k indexed from the minimal exponent.
  std::pair<std::vector<long long>, int> collapse_univariate() const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Exponent, long long> terms_;
};

}  // namespace twc
