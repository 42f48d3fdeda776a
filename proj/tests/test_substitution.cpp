#include <doctest.h>

#include <random>

#include "twc/substitution.hpp"

using namespace twc;

TEST_CASE("parsing and abelianization") {
  Substitution2 fib = parse_substitution("0->01;1->0");
  CHECK(fib.a == 1);
  CHECK(fib.b == 1);
  CHECK(fib.c == 1);
  CHECK(fib.d == 0);
  CHECK_FALSE(fib.constant_length);

  Substitution2 tm = parse_substitution("0->01;1->10");
  CHECK(tm.a == 1);
  CHECK(tm.b == 1);
  CHECK(tm.c == 1);
  CHECK(tm.d == 1);
  CHECK(tm.constant_length);
  CHECK(tm.q == 2);

  Substitution2 pd = parse_substitution("0->01;1->00");
  CHECK(pd.a == 1);
  CHECK(pd.b == 1);
  CHECK(pd.c == 2);
  CHECK(pd.d == 0);
  CHECK(pd.constant_length);

  CHECK_THROWS_AS(parse_substitution("0->01"), std::invalid_argument);
  CHECK_THROWS_AS(parse_substitution("0->01;1->"), std::invalid_argument);
  CHECK_THROWS_AS(parse_substitution("0->012;1->0"), std::invalid_argument);
}

TEST_CASE("spectral matrix conventions") {
  Substitution2 tm = parse_substitution("0->01;1->10");
  SUBCASE("Thue-Morse matrix is ((1, z0), (z1, 1))") {
    auto sym = spectral_matrix_sym(tm);
    CHECK(sym[0][0] == LaurentPoly::constant(2, 1));
    CHECK(sym[0][1] == LaurentPoly::monomial({1, 0}));
    CHECK(sym[1][0] == LaurentPoly::monomial({0, 1}));
    CHECK(sym[1][1] == LaurentPoly::constant(2, 1));
  }
  SUBCASE("zeta = 0 gives the count matrix") {
    for (const char* rule : {"0->01;1->0", "0->01;1->10", "0->01;1->00"}) {
      Substitution2 s = parse_substitution(rule);
      Eigen::Matrix2cd m = spectral_matrix(s, 0.0, 0.0);
      CHECK(std::abs(m(0, 0) - std::complex<double>(s.a)) < 1e-14);
      CHECK(std::abs(m(0, 1) - std::complex<double>(s.b)) < 1e-14);
      CHECK(std::abs(m(1, 0) - std::complex<double>(s.c)) < 1e-14);
      CHECK(std::abs(m(1, 1) - std::complex<double>(s.d)) < 1e-14);
    }
  }
  SUBCASE("invariant section identity, symbolically and numerically") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* rule : {"0->01;1->0", "0->01;1->10", "0->01;1->00",
                             "0->0001;1->01", "0->011;1->10"}) {
      Substitution2 s = parse_substitution(rule);
      auto sym = spectral_matrix_sym(s);
      // row alpha: a(1-z0) + b(1-z1) = 1 - z0^.. z1^.. symbolically
      LaurentPoly one = LaurentPoly::constant(2, 1);
      LaurentPoly s0 = one - LaurentPoly::monomial({1, 0});
      LaurentPoly s1 = one - LaurentPoly::monomial({0, 1});
      LaurentPoly row0 = sym[0][0] * s0 + sym[0][1] * s1;
      LaurentPoly row1 = sym[1][0] * s0 + sym[1][1] * s1;
      CHECK((row0 - (one - LaurentPoly::monomial({int(s.a), int(s.b)}))).is_zero());
      CHECK((row1 - (one - LaurentPoly::monomial({int(s.c), int(s.d)}))).is_zero());
      for (int rep = 0; rep < 1000; ++rep) {
        double t0 = u(rng), t1 = u(rng);
        Eigen::Matrix2cd m = spectral_matrix(s, t0, t1);
        Eigen::Vector2cd sz(1.0 - std::polar(1.0, 2 * M_PI * t0),
                            1.0 - std::polar(1.0, 2 * M_PI * t1));
        Eigen::Vector2cd target(
            1.0 - std::polar(1.0, 2 * M_PI * (s.a * t0 + s.b * t1)),
            1.0 - std::polar(1.0, 2 * M_PI * (s.c * t0 + s.d * t1)));
        CHECK((m * sz - target).norm() < 1e-13);
      }
    }
  }
}

TEST_CASE("the determinant polynomial P") {
  SUBCASE("Thue-Morse expansion") {
    LaurentPoly p = build_P(parse_substitution("0->01;1->10"));
    LaurentPoly expect(2);
    expect.add_term({0, 0}, 1);
    expect.add_term({0, 1}, -1);
    expect.add_term({1, 2}, 1);
    expect.add_term({1, 1}, -1);
    CHECK((p - expect).is_zero());
  }
  SUBCASE("P(1,1) = 0 and the L2 bound") {
    std::mt19937_64 rng(8);
    const char* rules[] = {"0->01;1->0", "0->01;1->10", "0->01;1->00",
                           "0->0001;1->01", "0->00001;1->001", "0->0110;1->0011"};
    for (const char* rule : rules) {
      Substitution2 s = parse_substitution(rule);
      LaurentPoly p = build_P(s);
      std::vector<std::complex<double>> ones = {1.0, 1.0};
      CHECK(std::abs(p.eval(ones)) < 1e-14);
      CHECK(p.sum_coeff_sq() <= 2 * (s.a + s.c));
      if (!p.is_zero()) {
        MahlerResult r = mahler_bivariate(p, 128, 100000);
        CHECK(r.value <= 0.5 * std::log(double(p.sum_coeff_sq())) + 1e-9);
        CHECK(r.value <= 0.5 * std::log(2.0 * (s.a + s.c)) + 1e-9);
      }
    }
  }
}

TEST_CASE("certificates") {
  SUBCASE("Thue-Morse certifies through the constant-length branch") {
    SingularityCertificate cert = certify(parse_substitution("0->01;1->10"), 60);
    CHECK(cert.branch == CertBranch::constant_length);
    CHECK(cert.certified);
    CHECK(cert.q == 2);
    CHECK(std::abs(cert.chi_plus_diag) < 1e-10);  // m(1 - z) = 0
    CHECK(cert.chi_plus_diag < 0.5 * std::log(2.0));
    CHECK(std::abs(cert.chi_plus) < 2e-3);  // m(P) = 0 as well
    CHECK(revalidate(cert));
  }
  SUBCASE("period doubling certifies") {
    SingularityCertificate cert = certify(parse_substitution("0->01;1->00"), 60);
    CHECK(cert.branch == CertBranch::constant_length);
    CHECK(cert.certified);
    CHECK(std::abs(cert.chi_plus_diag) < 1e-10);  // m(-z) = 0
    CHECK(revalidate(cert));
  }
  SUBCASE("Fibonacci fails the trace inequality for every n") {
    SingularityCertificate cert = certify(parse_substitution("0->01;1->0"), 60);
    CHECK(cert.branch == CertBranch::irreducible_trace);
    CHECK_FALSE(cert.certified);
    CHECK(cert.best_ratio < 1.0);
    CHECK(cert.best_ratio > 0.5);  // the ratio tends to sqrt(5)/(2 phi)
    CHECK(revalidate(cert));
  }
  SUBCASE("an irreducible-branch certificate") {
    SingularityCertificate cert = certify(parse_substitution("0->00001;1->001"), 10);
    CHECK(cert.branch == CertBranch::irreducible_trace);
    CHECK(cert.certified);
    CHECK(cert.witness_n == 1);
    CHECK(cert.margin > 0);
    CHECK(revalidate(cert));
    SUBCASE("tampered witnesses fail revalidation") {
      SingularityCertificate bad = cert;
      bad.column_bound = "3";
      CHECK_FALSE(revalidate(bad));
    }
  }
  SUBCASE("imprimitive substitutions are rejected") {
    CHECK_THROWS_AS(certify(parse_substitution("0->1;1->0"), 10), std::domain_error);
  }
}

TEST_CASE("direct chi+ estimates") {
  SUBCASE("Thue-Morse is flat") {
    ChiPlusEstimate e = chi_plus_direct(parse_substitution("0->01;1->10"), 200000);
    CHECK(std::abs(e.value) < std::max(2 * e.stderr_, 5e-3));
  }
  SUBCASE("agrees with m(P)") {
    for (const char* rule : {"0->01;1->00", "0->00001;1->001"}) {
      Substitution2 s = parse_substitution(rule);
      ChiPlusEstimate e = chi_plus_direct(s, 400000);
      MahlerResult mp = mahler_bivariate(build_P(s), 512, 400000);
      CHECK(std::abs(e.value - mp.value) < 3 * e.stderr_ + mp.error_bound + 2e-3);
    }
  }
  SUBCASE("diagonal sampling matches the univariate reduction") {
    for (const char* rule : {"0->01;1->10", "0->01;1->00"}) {
      Substitution2 s = parse_substitution(rule);
      auto sym = spectral_matrix_sym(s);
      auto diag = (sym[0][0] - sym[1][0]).collapse_univariate();
      double m_univ = mahler_univariate_int(diag.first);
      ChiPlusEstimate e = chi_plus_direct(s, 200000, 8, true);
      CHECK(std::abs(e.value - m_univ) < std::max(3 * e.stderr_, 5e-3));
    }
  }
}
