#include <doctest.h>

#include <random>

#include "twc/combinatorics.hpp"
#include "twc/structures.hpp"

using namespace twc;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(42);
  return r;
}

Eigen::VectorXd random_simplex(int d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = -std::log(std::max(1e-300, u(rng())));
  return v / v.sum();
}

/// Random lift in H(pi), bounded away from the lattice.
Eigen::VectorXd random_h_lift(const Permutation& p) {
  Eigen::MatrixXd basis = h_lattice_basis(omega_pi(p)).cast<double>();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    Eigen::VectorXd coeff(basis.cols());
    for (int i = 0; i < coeff.size(); ++i) coeff(i) = u(rng());
    Eigen::VectorXd lift = basis * coeff;
    Eigen::VectorXd fr = lift.array() - lift.array().round();
    if (fr.norm() > 1e-3) return lift;
  }
}

int svd_kernel_dim(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-8 * sv(0)) ++k;
  return k;
}

}  // namespace

TEST_CASE("omega_twisted degenerations and identities") {
  SUBCASE("zeta = 0 gives -Omega_pi") {
    for (const char* text : {"AB/BA", "ABC/CBA", "ABCD/DCBA"}) {
      Permutation p = Permutation::parse(text);
      Eigen::MatrixXcd tw = omega_twisted(p, Eigen::VectorXd::Zero(p.size()));
      Eigen::MatrixXcd neg = (-omega_pi(p)).cast<double>().cast<std::complex<double>>();
      CHECK((tw - neg).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
  }

  SUBCASE("Omega + Omega* = J - z z*") {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* text : {"ABC/CBA", "ABCD/DCBA", "ABCDE/EDCBA"}) {
      Permutation p = Permutation::parse(text);
      const int d = p.size();
      for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd zeta(d);
        for (int i = 0; i < d; ++i) zeta(i) = u(rng());
        Eigen::MatrixXcd om = omega_twisted(p, zeta);
        Eigen::VectorXcd z(d);
        for (int i = 0; i < d; ++i) z(i) = std::polar(1.0, 2 * M_PI * zeta(i));
        Eigen::MatrixXcd rhs =
            Eigen::MatrixXcd::Ones(d, d) - z * z.adjoint();
        CHECK((om + om.adjoint() - rhs).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }

  SUBCASE("kernel dimension is kappa - 1") {
    Permutation p2 = Permutation::parse("AB/BA");
    Eigen::VectorXd zeta2(2);
    zeta2 << 1.0 / 3.0, 1.0 / 7.0;
    CHECK(svd_kernel_dim(omega_twisted(p2, zeta2)) == 0);

    for (const char* text : {"ABC/CBA", "ABCD/DCBA", "ABCDE/EDCBA"}) {
      Permutation p = Permutation::parse(text);
      auto gk = genus_kappa(p);
      for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd lift = random_h_lift(p);
        CHECK(svd_kernel_dim(omega_twisted(p, lift)) == gk.kappa - 1);
      }
    }
  }
}

TEST_CASE("solve_eta") {
  Permutation p = Permutation::parse("ABC/CBA");
  Eigen::MatrixXd momega = (-omega_pi(p)).cast<double>();

  SUBCASE("round trip") {
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXd eta0 = Eigen::VectorXd::Random(3);
      Eigen::VectorXd zeta = momega * eta0;
      if (zeta.norm() < 1e-3) continue;
      Eigen::VectorXd eta = solve_eta(p, zeta);
      CHECK((momega * eta - zeta).norm() < 1e-10);
    }
  }

  SUBCASE("kernel translate changes sections by unit scalars") {
    Eigen::VectorXd lift = random_h_lift(p);
    Eigen::VectorXd eta = solve_eta(p, lift);
    Eigen::VectorXd ker(3);
    ker << 1, -1, 1;  // ker Omega_pi
    Eigen::VectorXd eta2 = eta + 0.3721 * ker;
    SectionData s1 = sections(p, lift);
    SectionData s2 = sections(p, lift, eta2);
    for (size_t ci = 0; ci < s1.v.size(); ++ci) {
      // v and v' are proportional by a unit scalar
      int i0 = 0;
      while (std::abs(s1.v[ci](i0)) < 1e-12) ++i0;
      std::complex<double> ratio = s2.v[ci](i0) / s1.v[ci](i0);
      CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);
      CHECK((s2.v[ci] - ratio * s1.v[ci]).norm() < 1e-12);
    }
    // the distinguished section is invariant outright
    CHECK((s2.v[0] - s1.v[0]).norm() < 1e-12);
  }

  SUBCASE("lattice points are rejected") {
    Eigen::VectorXd zeta(3);
    zeta << 1, 0, 2;
    CHECK_THROWS_AS(solve_eta(p, zeta), std::domain_error);
  }

  SUBCASE("lifts outside H(pi) are rejected") {
    Eigen::VectorXd zeta(3);
    zeta << 0.3, -0.3, 0.3;  // along ker Omega, orthogonal to H
    CHECK_THROWS_AS(solve_eta(p, zeta), std::domain_error);
  }
}

TEST_CASE("sections invariants") {
  for (const char* text : {"ABC/CBA", "ABCD/DCBA", "ABCDE/EDCBA"}) {
    Permutation p = Permutation::parse(text);
    auto gk = genus_kappa(p);
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXd lift = random_h_lift(p);
      SectionData sec = sections(p, lift);  // internal contract checks throw
      CHECK(static_cast<int>(sec.v.size()) == gk.kappa);
      Eigen::MatrixXcd om = omega_twisted(p, lift);
      CHECK((om * sec.v[0] - sec.s).norm() < 1e-12);
      for (const auto& v : sec.v) CHECK(std::abs(sec.s.dot(v)) < 1e-12);
      for (int i = 0; i <= p.size(); ++i)
        CHECK(std::abs(std::abs(sec.c[i]) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("sections on the genus-one subtorus match the printed pattern") {
  // On z_a z_c = z_b the secondary covariant section is proportional to
  // (1, -1, z_a^{-1}).
  Permutation p = Permutation::parse("ABC/CBA");
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int rep = 0; rep < 10; ++rep) {
    double za = u(rng()), zc = u(rng());
    Eigen::VectorXd lift(3);
    lift << za, za + zc, zc;
    SectionData sec = sections(p, lift);
    REQUIRE(sec.v.size() == 2);
    Eigen::VectorXcd pattern(3);
    pattern << 1.0, -1.0, std::polar(1.0, -2 * M_PI * za);
    std::complex<double> ratio = sec.v[1](0) / pattern(0);
    CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);
    CHECK((sec.v[1] - ratio * pattern).norm() < 1e-12);
  }
}

TEST_CASE("degenerate twists are rejected") {
  Permutation p = Permutation::parse("ABC/CBA");
  Eigen::VectorXd lift(3);
  lift << 1e-10, 2e-10, 1e-10;
  CHECK_THROWS_WITH_AS(sections(p, lift), "degenerate twist", std::domain_error);
}

TEST_CASE("frames dimensions and forms") {
  SUBCASE("genus two, one singularity") {
    Permutation p = Permutation::parse("ABCD/DCBA");
    Eigen::VectorXd lift = random_h_lift(p);
    FrameBundle fb = frames(p, lift);
    CHECK(fb.N.size() == 0);
    CHECK(fb.Ntilde.size() == 1);
    CHECK(fb.Htilde.cols() == 3);
    CHECK(fb.quotient_rank_complex == 2);
    CHECK(fb.quotient_rank_real == 4);
  }
  SUBCASE("genus one, two singularities") {
    Permutation p = Permutation::parse("ABC/CBA");
    Eigen::VectorXd lift = random_h_lift(p);
    FrameBundle fb = frames(p, lift);
    CHECK(fb.N.size() == 1);
    CHECK(fb.Ntilde.size() == 2);
    CHECK(fb.Htilde.cols() == 1);
    // Htilde is the line spanned by s.
    Eigen::VectorXcd shat = fb.sec.s / fb.sec.s.norm();
    std::complex<double> ip = shat.dot(fb.Htilde.col(0));
    CHECK(std::abs(std::abs(ip) - 1.0) < 1e-12);
    CHECK(fb.quotient_rank_complex == 0);
    CHECK(fb.quotient_rank_real == 0);
  }
  SUBCASE("omega is conjugate-symmetric and omega_R antisymmetric") {
    Permutation p = Permutation::parse("ABCDE/EDCBA");
    Eigen::VectorXd lift = random_h_lift(p);
    FrameBundle fb = frames(p, lift);
    CHECK((fb.hermitian - fb.hermitian.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((fb.symplectic_real + fb.symplectic_real.transpose())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(fb.quotient_rank_complex == 2 * fb.genus - 2);
    CHECK(fb.quotient_rank_real == 2 * (2 * fb.genus - 2));
    // Ntilde is orthogonal to Htilde
    for (const auto& nv : fb.Ntilde)
      for (int j = 0; j < fb.Htilde.cols(); ++j)
        CHECK(std::abs(fb.Htilde.col(j).dot(nv)) < 1e-10);
  }
}

TEST_CASE("skew symmetry restricted to W") {
  Permutation p = Permutation::parse("ABCD/DCBA");
  Eigen::VectorXd lift = random_h_lift(p);
  FrameBundle fb = frames(p, lift);
  Eigen::MatrixXcd om = omega_twisted(p, lift);
  Eigen::VectorXcd shat = fb.sec.s / fb.sec.s.norm();
  for (int i = 0; i < fb.W.cols(); ++i) {
    Eigen::VectorXcd w = fb.W.col(i);
    Eigen::VectorXcd img = (om + om.adjoint()) * w;
    Eigen::VectorXcd residual = img - shat.dot(img) * shat;
    CHECK(residual.norm() < 1e-10);
    // and the component is (sum w) itself
    std::complex<double> total = w.sum();
    CHECK((img - total * fb.sec.s).norm() < 1e-10);
  }
}

TEST_CASE("one-step identities on random orbits") {
  for (const char* text : {"ABC/CBA", "ABCD/DCBA", "ABCDE/EDCBA"}) {
    Permutation p0 = Permutation::parse(text);
    PointD x{random_simplex(p0.size()), p0, Eigen::VectorXd()};
    for (int n = 0; n < 40; ++n) {
      Eigen::VectorXd lift = random_h_lift(x.perm);
      StepIdentityReport rep = verify_step_identities(x.lambda, x.perm, lift, 1e-9);
      CHECK(rep.pass);
      CHECK(rep.max_residual < 1e-9);
      rauzy_step(x);
    }
  }
}

TEST_CASE("block form normal shape") {
  SUBCASE("d = 2 reduces to diag(1, psi)") {
    Permutation p = Permutation::parse("AB/BA");
    std::uniform_real_distribution<double> u(0.1, 0.9);
    Eigen::VectorXd lambda(2);
    lambda << 0.3, 0.7;
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXd lift(2);
      lift << u(rng()), u(rng());
      BlockFormReport bf = verify_block_form(lambda, p, lift, 1e-9);
      CHECK(bf.pass);
      CHECK(bf.psi > 0);
    }
  }
  SUBCASE("random points of the three-letter class") {
    Permutation p = Permutation::parse("ABC/CBA");
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd lift = random_h_lift(p);
      BlockFormReport bf = verify_block_form(random_simplex(3), p, lift, 1e-9);
      CHECK(bf.pass);
      CHECK(bf.psi_residual < 1e-10);
      CHECK(bf.unit_modulus_defect < 1e-10);
    }
  }
}

TEST_CASE("real doubling") {
  Permutation p = Permutation::parse("ABCD/DCBA");
  Eigen::VectorXd lift = random_h_lift(p);
  PointD x{random_simplex(4), p, Eigen::VectorXd::Zero(4)};
  StepRecord rec = rauzy_step(x);
  rec.phase = lift(rec.phase_letter);
  Eigen::MatrixXcd b = step_matrix_twisted(rec, 4);
  Eigen::MatrixXcd br = real_double(b);

  SUBCASE("commutes with the doubling map and preserves norm ratios") {
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Random(4);
      Eigen::VectorXcd dv(8);
      dv << v, v.conjugate();
      Eigen::VectorXcd img = br * dv;
      Eigen::VectorXcd expect(8);
      expect << b * v, (b * v).conjugate();
      CHECK((img - expect).norm() < 1e-13);
      CHECK(img.norm() / dv.norm() ==
            doctest::Approx((b * v).norm() / v.norm()).epsilon(1e-12));
    }
  }

  SUBCASE("zeta = 0 acts identically on both blocks") {
    StepRecord rec0 = rec;
    rec0.phase = 0;
    Eigen::MatrixXcd b0 = step_matrix_twisted(rec0, 4);
    Eigen::MatrixXcd br0 = real_double(b0);
    CHECK((br0.topLeftCorner(4, 4) - br0.bottomRightCorner(4, 4)).cwiseAbs().maxCoeff() <
          1e-15);
  }

  SUBCASE("omega_R is invariant under one doubled step") {
    // omega_R(i x, i y) = -Im omega(x, y); invariance follows from the
    // omega-invariance, checked here through the doubled representative.
    FrameBundle fb0 = frames(p, lift);
    Eigen::VectorXd lift1 = lift;
    lift1(rec.loser) += lift(rec.winner);
    Permutation p1 = x.perm;
    Eigen::MatrixXcd om0 = omega_twisted(p, lift);
    Eigen::MatrixXcd om1 = omega_twisted(p1, lift1);
    Eigen::MatrixXcd dual = step_matrix_twisted_dual(rec, 4);
    auto omega_at = [](const Eigen::MatrixXcd& om, const Eigen::VectorXcd& h1,
                       const Eigen::VectorXcd& h2) {
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(om);
      Eigen::VectorXcd f1 = cod.solve(h1), f2 = cod.solve(h2);
      return std::complex<double>(0, 0.5) * (f2.dot(om * f1));
    };
    for (int i = 0; i < fb0.Htilde.cols(); ++i)
      for (int j = 0; j < fb0.Htilde.cols(); ++j) {
        Eigen::VectorXcd h1 = fb0.Htilde.col(i), h2 = fb0.Htilde.col(j);
        std::complex<double> before = omega_at(om0, h1, h2);
        std::complex<double> after = omega_at(om1, b * h1, b * h2);
        CHECK(std::abs(before - after) < 1e-10);
        // the real symplectic pairing agrees
        CHECK(std::abs(-before.imag() + after.imag()) < 1e-10);
      }
  }
}

TEST_CASE("lattice translate lifts: measured, not asserted") {
  // Open question: sections from two lattice-translate lifts of the same
  // torus point. Measure the deviation from a per-cycle unit scalar and
  // report; the distinguished section is compared directly.
  Permutation p = Permutation::parse("ABCD/DCBA");
  Eigen::VectorXd lift = random_h_lift(p);
  Eigen::VectorXd lift2 = lift;
  lift2(1) += 1.0;  // e_B translate stays in H(pi) here (H = R^4)
  SectionData s1 = sections(p, lift);
  SectionData s2 = sections(p, lift2);
  double worst = 0;
  for (size_t ci = 0; ci < s1.v.size(); ++ci) {
    int i0 = 0;
    while (std::abs(s1.v[ci](i0)) < 1e-12) ++i0;
    std::complex<double> ratio = s2.v[ci](i0) / s1.v[ci](i0);
    worst = std::max(worst, (s2.v[ci] - ratio * s1.v[ci]).norm());
    worst = std::max(worst, std::abs(std::abs(ratio) - 1.0));
  }
  MESSAGE("lattice-translate unit-scalar deviation: ", worst);
}

TEST_CASE("step cycle map is a bijection over whole classes") {
  for (const char* text : {"ABC/CBA", "ABCD/DCBA", "ABCDE/EDCBA"}) {
    RauzyClass rc = rauzy_class(Permutation::parse(text));
    for (const auto& q : rc.members)
      for (StepKind kind : {StepKind::top, StepKind::bottom}) {
        auto map = step_cycle_map(q, kind);  // throws if ill-defined
        std::vector<bool> hit(map.size(), false);
        for (int m : map) {
          CHECK(m >= 0);
          CHECK_FALSE(hit[m]);
          hit[m] = true;
        }
        CHECK(map[0] == 0);  // marked cycle goes to marked cycle
      }
  }
}
