#include <doctest.h>

#include "twc/combinatorics.hpp"
#include "twc/lyapunov.hpp"

using namespace twc;

TEST_CASE("samplers honor their contracts") {
  SUBCASE("lebesgue full torus") {
    Permutation p = Permutation::parse("ABC/CBA");
    MeasureSpec m{MeasureKind::lebesgue_full_torus, 0, 9};
    for (int i = 0; i < 20; ++i) {
      PointD x = sample_initial_dense(p, m, i);
      CHECK(x.lambda.minCoeff() > 0);
      CHECK(x.lambda.sum() == doctest::Approx(1.0));
      CHECK(x.zeta.minCoeff() >= 0);
      CHECK(x.zeta.maxCoeff() < 1.0);
    }
  }

  SUBCASE("H(pi) subtorus membership") {
    Permutation p = Permutation::parse("ABC/CBA");
    MeasureSpec m{MeasureKind::lebesgue_H_subtorus, 0, 10};
    // ker Omega is spanned by (1,-1,1); on the subtorus the pairing with it
    // is an integer after the mod-1 reduction.
    for (int i = 0; i < 20; ++i) {
      PointD x = sample_initial_dense(p, m, i);
      double pairing = x.zeta(0) - x.zeta(1) + x.zeta(2);
      CHECK(std::abs(pairing - std::round(pairing)) < 1e-12);
    }
  }

  SUBCASE("Q_k points") {
    Permutation p = Permutation::parse("AB/BA");
    MeasureSpec m{MeasureKind::rational_Qk, 5, 11};
    for (int i = 0; i < 50; ++i) {
      PointQK x = sample_initial_qk(p, m, i);
      CHECK(x.zeta.k == 5);
      CHECK_FALSE(x.zeta.is_zero());
      for (long long v : x.zeta.num) {
        CHECK(v >= 0);
        CHECK(v < 5);
      }
    }
    MeasureSpec bad{MeasureKind::rational_Qk, 1, 0};
    CHECK_THROWS_AS(sample_initial_qk(p, bad, 0), std::invalid_argument);
  }

  SUBCASE("Q_k subtorus points stay in the lattice image") {
    Permutation p = Permutation::parse("ABC/CBA");
    MeasureSpec m{MeasureKind::rational_Qk_subtorus, 7, 12};
    for (int i = 0; i < 30; ++i) {
      PointQK x = sample_initial_qk(p, m, i);
      long long pairing = x.zeta.num[0] - x.zeta.num[1] + x.zeta.num[2];
      CHECK((pairing % 7 + 7) % 7 == 0);
      CHECK_FALSE(x.zeta.is_zero());
    }
  }
}

TEST_CASE("spectrum estimation at reduced scale") {
  SUBCASE("rotation type: all exponents near zero") {
    Permutation p = Permutation::parse("AB/BA");
    MeasureSpec m{MeasureKind::lebesgue_full_torus, 0, 7};
    SpectrumEstimate est = benettin_spectrum(p, m, 20000, 8);
    REQUIRE(est.exponents.size() == 2);
    CHECK(std::abs(est.exponents[0]) < 0.05);
    CHECK(std::abs(est.exponents[1]) < 0.05);
    CHECK(est.zero_count == 2);
    CHECK(est.kappa == 1);
  }

  SUBCASE("reproducibility is bitwise, independent of threading") {
    Permutation p = Permutation::parse("ABC/CBA");
    MeasureSpec m{MeasureKind::lebesgue_H_subtorus, 0, 3};
    SpectrumEstimate a = benettin_spectrum(p, m, 2000, 4, 1, false, 1);
    SpectrumEstimate b = benettin_spectrum(p, m, 2000, 4, 1, false, 4);
    CHECK(a.exponents == b.exponents);
    CHECK(a.stderrs == b.stderrs);
    CHECK(a.per_seed == b.per_seed);
  }

  SUBCASE("QR cadence is not a bias source") {
    Permutation p = Permutation::parse("ABCD/DCBA");
    MeasureSpec m{MeasureKind::lebesgue_H_subtorus, 0, 5};
    SpectrumEstimate a = benettin_spectrum(p, m, 30000, 8, 1);
    SpectrumEstimate b = benettin_spectrum(p, m, 30000, 8, 2);
    for (int i = 0; i < 4; ++i) {
      double combined = std::hypot(a.stderrs[i], b.stderrs[i]);
      CHECK(std::abs(a.exponents[i] - b.exponents[i]) < 3 * std::max(combined, 1e-3));
    }
  }

  SUBCASE("dual spectrum is sorted and symmetric to the primal") {
    Permutation p = Permutation::parse("ABCD/DCBA");
    MeasureSpec m{MeasureKind::lebesgue_H_subtorus, 0, 6};
    SpectrumEstimate pr = benettin_spectrum(p, m, 30000, 8, 1, false);
    SpectrumEstimate du = benettin_spectrum(p, m, 30000, 8, 1, true);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(pr.exponents[i] - du.exponents[i]) <
            3 * std::hypot(pr.stderrs[i], du.stderrs[i]) + 0.01);
      if (i + 1 < 4) CHECK(pr.exponents[i] >= pr.exponents[i + 1]);
    }
  }

  SUBCASE("parameter validation") {
    Permutation p = Permutation::parse("AB/BA");
    MeasureSpec m{MeasureKind::lebesgue_full_torus, 0, 1};
    CHECK_THROWS_AS(benettin_spectrum(p, m, 100, 8), std::invalid_argument);
    CHECK_THROWS_AS(benettin_spectrum(p, m, 2000, 8, 0), std::invalid_argument);
    CHECK_THROWS_AS(benettin_spectrum(p, m, 2000, 1), std::invalid_argument);
  }
}

TEST_CASE("symmetry report") {
  Permutation p = Permutation::parse("ABC/CBA");
  MeasureSpec m{MeasureKind::lebesgue_H_subtorus, 0, 8};
  SpectrumEstimate est = benettin_spectrum(p, m, 20000, 8);
  SymmetryReport rep = symmetry_report(est);
  CHECK(rep.expected_zero_multiplicity == 3);
  CHECK(rep.pairs.size() == 2);
  for (const auto& pr : rep.pairs) CHECK(pr.defect >= 0);
  CHECK(rep.zero_count == est.zero_count);
}
