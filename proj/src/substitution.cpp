#include "twc/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace twc {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

struct Mat2Big {
  BigInt a, b, c, d;
  Mat2Big operator*(const Mat2Big& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
};

}  // namespace

bool Substitution2::primitive() const {
  // 2x2 nonnegative: primitive iff S or S^2 is strictly positive.
  auto positive = [](long long w, long long x, long long y, long long z) {
    return w > 0 && x > 0 && y > 0 && z > 0;
  };
  if (positive(a, b, c, d)) return true;
  long long a2 = a * a + b * c, b2 = a * b + b * d;
  long long c2 = c * a + d * c, d2 = c * b + d * d;
  return positive(a2, b2, c2, d2);
}

Substitution2 parse_substitution(const std::string& text) {
  std::string t = strip_spaces(text);
  auto semi = t.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("substitution text must be \"0->w0;1->w1\"");
  std::string r0 = t.substr(0, semi), r1 = t.substr(semi + 1);
  if (r0.rfind("0->", 0) != 0 || r1.rfind("1->", 0) != 0)
    throw std::invalid_argument("substitution text must be \"0->w0;1->w1\"");
  Substitution2 s;
  s.word0 = r0.substr(3);
  s.word1 = r1.substr(3);
  if (s.word0.empty() || s.word1.empty())
    throw std::invalid_argument("substitution words must be nonempty");
  for (char ch : s.word0 + s.word1)
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("substitution words must be over {0,1}");
  s.a = std::count(s.word0.begin(), s.word0.end(), '0');
  s.b = std::count(s.word0.begin(), s.word0.end(), '1');
  s.c = std::count(s.word1.begin(), s.word1.end(), '0');
  s.d = std::count(s.word1.begin(), s.word1.end(), '1');
  s.constant_length = s.word0.size() == s.word1.size();
  s.q = s.constant_length ? static_cast<long long>(s.word0.size()) : 0;
  return s;
}

std::array<std::array<LaurentPoly, 2>, 2> spectral_matrix_sym(const Substitution2& s) {
  std::array<std::array<LaurentPoly, 2>, 2> m{
      {{LaurentPoly(2), LaurentPoly(2)}, {LaurentPoly(2), LaurentPoly(2)}}};
  for (int row = 0; row < 2; ++row) {
    const std::string& w = row == 0 ? s.word0 : s.word1;
    LaurentPoly::Exponent prefix(2, 0);
    for (char ch : w) {
      int col = ch - '0';
      m[row][col].add_term(prefix, 1);
      ++prefix[col];
    }
  }
  return m;
}

Eigen::Matrix2cd spectral_matrix(const Substitution2& s, double zeta0, double zeta1) {
  auto sym = spectral_matrix_sym(s);
  std::vector<std::complex<double>> z = {
      {std::cos(2 * std::numbers::pi * zeta0), std::sin(2 * std::numbers::pi * zeta0)},
      {std::cos(2 * std::numbers::pi * zeta1), std::sin(2 * std::numbers::pi * zeta1)}};
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = sym[i][j].eval(z);
  return m;
}

LaurentPoly build_P(const Substitution2& s) {
  auto sym = spectral_matrix_sym(s);
  const LaurentPoly& pa = sym[0][0];
  const LaurentPoly& pc = sym[1][0];
  LaurentPoly m0 = LaurentPoly::monomial({static_cast<int>(s.a), static_cast<int>(s.b)});
  LaurentPoly m1 = LaurentPoly::monomial({static_cast<int>(s.c), static_cast<int>(s.d)});
  return pa + m0 * pc - pc - m1 * pa;
}

namespace {

// Exact rational bounds for the Perron root lambda = (t + sqrt(disc)) / 2.
struct PerronBounds {
  Rational lo, hi;
};

PerronBounds perron_bounds(long long t, long long disc, int precision_bits) {
  BigInt scale = BigInt(1) << precision_bits;
  BigInt scaled = BigInt(disc) * scale * scale;
  BigInt root = boost::multiprecision::sqrt(scaled);  // floor sqrt
  Rational lo(BigInt(t) * scale + root, 2 * scale);
  Rational hi(BigInt(t) * scale + root + 1, 2 * scale);
  return {lo, hi};
}

Rational rational_pow(const Rational& x, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

SingularityCertificate certify(const Substitution2& s, int n_max) {
  if (!s.primitive())
    throw std::domain_error("substitution matrix is not primitive");
  SingularityCertificate cert;
  cert.rule = "0->" + s.word0 + ";1->" + s.word1;

  const long long t = s.a + s.d;
  const long long det = s.a * s.d - s.b * s.c;
  const long long disc = t * t - 4 * det;
  const double lambda = (t + std::sqrt(static_cast<double>(disc))) / 2.0;
  cert.perron = lambda;
  cert.threshold = 0.5 * std::log(lambda);

  LaurentPoly P = build_P(s);
  MahlerResult mp = mahler_bivariate(P);
  cert.chi_plus = mp.value;
  cert.chi_plus_error = mp.error_bound;
  cert.margin = cert.threshold - cert.chi_plus;

  if (s.constant_length) {
    cert.branch = CertBranch::constant_length;
    cert.q = s.q;
    auto sym = spectral_matrix_sym(s);
    std::vector<long long> coeffs = (sym[0][0] - sym[1][0]).collapse_univariate().first;
    cert.diag_poly = coeffs;
    if (coeffs.empty())
      throw std::domain_error("a(z,z) - c(z,z) vanishes identically");
    cert.chi_plus_diag = mahler_univariate_int(coeffs);
    long long sq = 0;
    for (long long cc : coeffs) sq += cc * cc;
    cert.l2_bound = 0.5 * std::log(static_cast<double>(sq));
    // lambda = q for constant length; the strict inequality proved is
    // m(a(z,z)-c(z,z)) <= (1/2) log(sum coeff^2) <= (1/2) log q, strict
    // unless the polynomial uses all q coefficients and is a monomial,
    // which cannot happen together for q >= 2.
    const double err = 1e-9;
    cert.certified = cert.chi_plus_diag + err < 0.5 * std::log(static_cast<double>(s.q));
    return cert;
  }

  // Irreducible-trace branch: char poly x^2 - t x + det irreducible over Q
  // iff the discriminant is not a perfect square.
  BigInt disc_big = disc;
  BigInt r = boost::multiprecision::sqrt(disc_big);
  const bool irreducible = disc > 0 && r * r != disc_big;
  if (!irreducible) {
    cert.branch = CertBranch::none;
    cert.certified = false;
    return cert;
  }
  cert.branch = CertBranch::irreducible_trace;

  Mat2Big sn{1, 0, 0, 1};
  const Mat2Big step{s.a, s.b, s.c, s.d};
  double best_ratio = 0;
  for (int n = 1; n <= n_max; ++n) {
    sn = sn * step;
    BigInt col0 = sn.a + sn.c, col1 = sn.b + sn.d;
    BigInt bound = 2 * (col0 < col1 ? col0 : col1);
    for (int bits = 32; bits <= 256; bits *= 2) {
      auto pb = perron_bounds(t, disc, bits);
      Rational lo_n = rational_pow(pb.lo, n);
      Rational hi_n = rational_pow(pb.hi, n);
      double ratio = to_double(lo_n / Rational(bound));
      if (lo_n > Rational(bound)) {
        best_ratio = std::max(best_ratio, ratio);
        cert.certified = true;
        cert.witness_n = n;
        std::ostringstream lo_str, b_str;
        lo_str << lo_n;
        b_str << bound;
        cert.lambda_n_lower = lo_str.str();
        cert.column_bound = b_str.str();
        cert.best_ratio = best_ratio;
        return cert;
      }
      if (hi_n <= Rational(bound)) {
        best_ratio = std::max(best_ratio, ratio);
        break;  // definitively fails at this n
      }
      // Bounds straddle the threshold: refine.
    }
  }
  cert.certified = false;
  cert.best_ratio = best_ratio;
  return cert;
}

bool revalidate(const SingularityCertificate& cert) {
  Substitution2 s = parse_substitution(cert.rule);
  if (!cert.certified) return true;  // nothing claimed
  if (cert.branch == CertBranch::constant_length) {
    if (!s.constant_length || s.q != cert.q || s.q < 2) return false;
    auto sym = spectral_matrix_sym(s);
    auto diag = (sym[0][0] - sym[1][0]).collapse_univariate();
    return diag.first == cert.diag_poly;
  }
  if (cert.branch == CertBranch::irreducible_trace) {
    const long long t = s.a + s.d;
    const long long det = s.a * s.d - s.b * s.c;
    const long long disc = t * t - 4 * det;
    BigInt r = boost::multiprecision::sqrt(BigInt(disc));
    if (disc <= 0 || r * r == disc) return false;
    Mat2Big sn{1, 0, 0, 1};
    const Mat2Big step{s.a, s.b, s.c, s.d};
    for (int n = 0; n < cert.witness_n; ++n) sn = sn * step;
    BigInt col0 = sn.a + sn.c, col1 = sn.b + sn.d;
    BigInt bound = 2 * (col0 < col1 ? col0 : col1);
    std::ostringstream b_str;
    b_str << bound;
    if (b_str.str() != cert.column_bound) return false;
    auto pb = perron_bounds(t, disc, 256);
    return rational_pow(pb.lo, cert.witness_n) > Rational(bound);
  }
  return false;
}

ChiPlusEstimate chi_plus_direct(const Substitution2& s, long long samples,
                                int seeds, bool diagonal, std::uint64_t seed) {
  auto sym = spectral_matrix_sym(s);
  std::vector<double> batch_means;
  long long per_batch = std::max<long long>(1, samples / seeds);
  for (int b = 0; b < seeds; ++b) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (b + 1));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double acc = 0;
    long long kept = 0;
    long long attempts = 0;
    while (kept < per_batch && attempts < 2 * per_batch + 100) {
      ++attempts;
      double t0 = u(rng);
      double t1 = diagonal ? t0 : u(rng);
      std::vector<double> theta = {t0, t1};
      std::complex<double> det = sym[0][0].eval_unit(theta) * sym[1][1].eval_unit(theta) -
                                 sym[0][1].eval_unit(theta) * sym[1][0].eval_unit(theta);
      double v = std::log(std::abs(det));
      if (!std::isfinite(v)) continue;
      acc += v;
      ++kept;
    }
    if (kept == 0) throw std::runtime_error("no finite samples");
    batch_means.push_back(acc / kept);
  }
  double mean = 0;
  for (double v : batch_means) mean += v;
  mean /= batch_means.size();
  double var = 0;
  for (double v : batch_means) var += (v - mean) * (v - mean);
  var /= std::max<size_t>(1, batch_means.size() - 1);
  ChiPlusEstimate est;
  est.value = mean;
  est.stderr_ = std::sqrt(var / batch_means.size());
  est.samples = per_batch * seeds;
  return est;
}

}  // namespace twc
