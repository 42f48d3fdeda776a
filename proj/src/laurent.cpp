#include "twc/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace twc {

LaurentPoly LaurentPoly::constant(int nvars, long long c) {
  LaurentPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(Exponent e, long long c) {
  LaurentPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(const Exponent& e, long long c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw std::invalid_argument("exponent arity mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::unit_conj() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne(nvars_);
    for (int i = 0; i < nvars_; ++i) ne[i] = -e[i];
    r.add_term(ne, c);
  }
  return r;
}

LaurentPoly LaurentPoly::substitute(int var, const Exponent& rel) const {
  if (rel[var] != 0) throw std::invalid_argument("self-referential substitution");
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    int k = ne[var];
    ne[var] = 0;
    for (int i = 0; i < nvars_; ++i) ne[i] += k * rel[i];
    r.add_term(ne, c);
  }
  return r;
}

LaurentPoly LaurentPoly::compose_linear(const std::vector<Exponent>& rows) const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne(nvars_, 0);
    for (int i = 0; i < nvars_; ++i)
      for (int j = 0; j < nvars_; ++j) ne[j] += e[i] * rows[i][j];
    r.add_term(ne, c);
  }
  return r;
}

std::complex<double> LaurentPoly::eval(const std::vector<std::complex<double>>& z) const {
  std::complex<double> acc = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = static_cast<double>(c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      t *= std::pow(z[i], e[i]);
    }
    acc += t;
  }
  return acc;
}

std::complex<double> LaurentPoly::eval_unit(const std::vector<double>& theta) const {
  std::complex<double> acc = 0;
  for (const auto& [e, c] : terms_) {
    double ang = 0;
    for (int i = 0; i < nvars_; ++i) ang += e[i] * theta[i];
    ang *= 2.0 * std::numbers::pi;
    acc += static_cast<double>(c) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

CycRing::Elem LaurentPoly::eval_cyc(const CycRing& ring,
                                    const std::vector<Rational>& zeta) const {
  CycRing::Elem acc = ring.zero();
  for (const auto& [e, c] : terms_) {
    Rational theta = 0;
    for (int i = 0; i < nvars_; ++i) theta += Rational(e[i]) * zeta[i];
    acc = ring.add(acc, ring.scale(c, ring.phase(theta)));
  }
  return acc;
}

long long LaurentPoly::sum_abs_coeff() const {
  long long s = 0;
  for (const auto& [e, c] : terms_) s += std::llabs(c);
  return s;
}

long long LaurentPoly::sum_coeff_sq() const {
  long long s = 0;
  for (const auto& [e, c] : terms_) s += c * c;
  return s;
}

std::pair<std::vector<long long>, int> LaurentPoly::collapse_univariate() const {
  if (terms_.empty()) return {{}, 0};
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int deg = 0;
    for (int v : e) deg += v;
    if (first || deg < lo) lo = first ? deg : std::min(lo, deg);
    hi = first ? deg : std::max(hi, deg);
    first = false;
  }
  std::vector<long long> coeffs(hi - lo + 1, 0);
  for (const auto& [e, c] : terms_) {
    int deg = 0;
    for (int v : e) deg += v;
    coeffs[deg - lo] += c;
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  while (!coeffs.empty() && coeffs.front() == 0) {
    coeffs.erase(coeffs.begin());
    ++lo;
  }
  return {coeffs, lo};
}

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    long long cc = c;
    if (!first) os << (cc > 0 ? " + " : " - ");
    else if (cc < 0) os << "-";
    first = false;
    long long a = std::llabs(cc);
    bool any = false;
    for (int i = 0; i < nvars_; ++i) any = any || e[i] != 0;
    if (a != 1 || !any) os << a;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << names[i];
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace twc
