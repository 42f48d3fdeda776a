#include "twc/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twc {

namespace {

// Exact division of polynomials with integer coefficients, divisor monic.
std::vector<long long> divide_exact(std::vector<long long> num,
                                    const std::vector<long long>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  std::vector<long long> q(dn - dd + 1, 0);
  for (int k = dn - dd; k >= 0; --k) {
    long long c = num[k + dd];
    q[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (int j = 0; j < dd; ++j)
    if (num[j] != 0) throw std::logic_error("inexact polynomial division");
  return q;
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(long long N) {
  if (N < 1) throw std::invalid_argument("cyclotomic index must be positive");
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
  std::vector<long long> poly(N + 1, 0);
  poly[0] = -1;
  poly[N] = 1;
  for (long long d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

CycRing::CycRing(long long N) : n_(N) {
  if (N < 1 || N > 200000)
    throw std::invalid_argument("cyclotomic modulus out of range");
  phi_ = cyclotomic_polynomial(N);
}

CycRing::Elem CycRing::one() const {
  Elem e(n_, 0);
  e[0] = 1;
  return e;
}

CycRing::Elem CycRing::phase(const Rational& theta) const {
  Rational t = mod1(theta) * n_;
  if (denominator(t) != 1)
    throw std::invalid_argument("phase denominator does not divide the ring modulus");
  Elem e(n_, 0);
  e[static_cast<size_t>(numerator(t).convert_to<long long>() % n_)] = 1;
  return e;
}

CycRing::Elem CycRing::add(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (long long i = 0; i < n_; ++i) r[i] = a[i] + b[i];
  return r;
}

CycRing::Elem CycRing::sub(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (long long i = 0; i < n_; ++i) r[i] = a[i] - b[i];
  return r;
}

CycRing::Elem CycRing::mul(const Elem& a, const Elem& b) const {
  Elem r(n_, 0);
  for (long long i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (long long j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      long long k = i + j;
      if (k >= n_) k -= n_;
      r[k] += a[i] * b[j];
    }
  }
  return r;
}

CycRing::Elem CycRing::neg(const Elem& a) const {
  Elem r(n_);
  for (long long i = 0; i < n_; ++i) r[i] = -a[i];
  return r;
}

CycRing::Elem CycRing::scale(long long c, const Elem& a) const {
  Elem r(n_);
  for (long long i = 0; i < n_; ++i) r[i] = c * a[i];
  return r;
}

CycRing::Elem CycRing::conj(const Elem& a) const {
  Elem r(n_, 0);
  r[0] = a[0];
  for (long long i = 1; i < n_; ++i) r[n_ - i] = a[i];
  return r;
}

bool CycRing::is_zero(const Elem& a) const {
  // Reduce mod Phi_N; the class of a is zero iff Phi_N divides it.
  std::vector<long long> r(a);
  const int dd = static_cast<int>(phi_.size()) - 1;
  for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
    long long c = r[k];
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) r[k - dd + j] -= c * phi_[j];
  }
  for (int j = 0; j < dd; ++j)
    if (r[j] != 0) return false;
  return true;
}

bool CycRing::equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

std::complex<double> CycRing::value(const Elem& a) const {
  std::complex<double> v = 0;
  for (long long i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_);
    v += static_cast<double>(a[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return v;
}

}  // namespace twc
