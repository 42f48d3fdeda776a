#include "twc/fixtures.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "twc/exact.hpp"
#include "twc/structures.hpp"

namespace twc {

namespace {

LaurentPoly mono(std::vector<int> e, long long c = 1) {
  return LaurentPoly::monomial(std::move(e), c);
}

std::vector<std::vector<LaurentPoly>> conj_transpose(
    const std::vector<std::vector<LaurentPoly>>& m) {
  const int d = static_cast<int>(m.size());
  std::vector<std::vector<LaurentPoly>> out(d, std::vector<LaurentPoly>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[i][j] = m[j][i].unit_conj();
  return out;
}

std::vector<LaurentPoly> mat_vec(const std::vector<std::vector<LaurentPoly>>& m,
                                 const std::vector<LaurentPoly>& x) {
  const int d = static_cast<int>(m.size());
  std::vector<LaurentPoly> y(d, LaurentPoly(static_cast<int>(x[0].nvars())));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) y[i] = y[i] + m[i][j] * x[j];
  return y;
}

std::vector<LaurentPoly::Exponent> matrix_rows(const Eigen::MatrixXi& b) {
  std::vector<LaurentPoly::Exponent> rows(b.rows(), LaurentPoly::Exponent(b.cols()));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) rows[i][j] = b(i, j);
  return rows;
}

}  // namespace

const Fixture& fixture_example_51() {
  static const Fixture fx = [] {
    Fixture f("example-5.1", Permutation::parse("ABC/CBA"));
    f.winners = parse_moves(f.perm, "C,B,C,A,B,A");
    f.b = Eigen::MatrixXi(3, 3);
    f.b << 1, 2, 2, 1, 4, 3, 1, 1, 2;
    auto one = LaurentPoly::constant(3, 1);
    f.twisted = {
        {one, mono({1, 0, 1}) + mono({1, 1, 1}), mono({1, 0, 0}) + mono({1, 2, 1})},
        {one,
         mono({1, 0, 1}) + mono({1, 1, 1}) + mono({1, 2, 2}) + mono({1, 3, 2}),
         mono({1, 0, 0}) + mono({1, 2, 1}) + mono({1, 4, 2})},
        {one, mono({1, 0, 1}), mono({1, 0, 0}) + mono({1, 1, 1})}};
    f.v_distinguished = {LaurentPoly::constant(3, -1), mono({0, 0, 1}),
                         mono({0, 0, 1}, -1)};
    f.v_secondary = {one, LaurentPoly::constant(3, -1), mono({-1, 0, 0})};
    f.v_secondary_scalar = {-1, -2, -2};
    f.subtorus_var = 1;            // z_b = z_a z_c on the H(pi) subtorus
    f.subtorus_rel = {1, 0, 1};
    f.lambda_fixed.resize(3);
    const double r2 = std::sqrt(2.0);
    f.lambda_fixed << 3.0 - 2.0 * r2, r2 - 1.0, r2 - 1.0;
    return f;
  }();
  return fx;
}

const Fixture& fixture_example_52() {
  static const Fixture fx = [] {
    Fixture f("example-5.2", Permutation::parse("ABCD/DCBA"));
    f.winners = parse_moves(f.perm, "D,D,C,D,A,A,B,A");
    f.b = Eigen::MatrixXi(4, 4);
    f.b << 1, 1, 0, 2, 1, 2, 0, 3, 1, 0, 2, 2, 1, 0, 1, 2;
    auto one = LaurentPoly::constant(4, 1);
    auto zero = LaurentPoly(4);
    f.twisted = {
        {one, mono({1, 0, 0, 1}), zero, mono({1, 0, 0, 0}) + mono({1, 1, 0, 1})},
        {one, mono({1, 0, 0, 1}) + mono({1, 1, 0, 2}), zero,
         mono({1, 0, 0, 0}) + mono({1, 1, 0, 1}) + mono({1, 2, 0, 2})},
        {one, zero, mono({1, 0, 0, 1}) + mono({1, 0, 1, 1}),
         mono({1, 0, 0, 0}) + mono({1, 0, 2, 1})},
        {one, zero, mono({1, 0, 0, 1}), mono({1, 0, 0, 0}) + mono({1, 0, 1, 1})}};
    f.v_distinguished = {
        mono({0, 1, -1, 1}) - one,
        mono({-1, 1, 0, 0}) - mono({0, 1, -1, 1}),
        mono({0, 0, 0, 1}) - mono({-1, 1, 0, 0}),
        mono({-1, 1, -1, 1}) - mono({0, 0, 0, 1})};
    return f;
  }();
  return fx;
}

const Fixture& fixture_by_name(const std::string& name) {
  if (name == "example-5.1") return fixture_example_51();
  if (name == "example-5.2") return fixture_example_52();
  throw std::invalid_argument("unknown fixture: " + name);
}

namespace {

LaurentPoly on_subtorus(const Fixture& fx, const LaurentPoly& p) {
  if (fx.subtorus_var < 0) return p;
  return p.substitute(fx.subtorus_var, fx.subtorus_rel);
}

bool polys_equal_subtorus(const Fixture& fx, const LaurentPoly& a,
                          const LaurentPoly& b) {
  return on_subtorus(fx, a - b).is_zero();
}

std::vector<Rational> random_rational_zeta(const Fixture& fx, std::mt19937_64& rng,
                                           long long q, bool subtorus) {
  const int d = fx.perm.size();
  std::uniform_int_distribution<long long> ui(0, q - 1);
  std::vector<Rational> zeta(d);
  if (subtorus && fx.subtorus_var >= 0) {
    // Lift in H(pi): the subtorus variable is the sum of the related ones.
    bool nonzero = false;
    for (int i = 0; i < d; ++i)
      if (i != fx.subtorus_var) {
        zeta[i] = Rational(ui(rng), q);
        if (zeta[i] != 0) nonzero = true;
      }
    if (!nonzero) zeta[fx.subtorus_var == 0 ? 1 : 0] = Rational(1, q);
    Rational acc = 0;
    for (int i = 0; i < d; ++i)
      if (i != fx.subtorus_var) acc += Rational(fx.subtorus_rel[i]) * zeta[i];
    zeta[fx.subtorus_var] = acc;
  } else {
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      zeta[i] = Rational(ui(rng), q);
      if (zeta[i] != 0) nonzero = true;
    }
    if (!nonzero) zeta[0] = Rational(1, q);
  }
  return zeta;
}

Eigen::VectorXd power_iteration_left(const Eigen::MatrixXi& b, int iters) {
  Eigen::MatrixXd bt = b.transpose().cast<double>();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(b.rows());
  for (int i = 0; i < iters; ++i) {
    v = bt * v;
    v /= v.sum();
  }
  return v;
}

}  // namespace

FixtureReport verify_fixture(const std::string& name, bool exact,
                             std::uint64_t seed, int rational_samples) {
  const Fixture& fx = fixture_by_name(name);
  FixtureReport rep;
  rep.fixture = name;
  rep.exact = exact;
  auto add = [&rep](const std::string& n, bool ok, const std::string& detail = "") {
    rep.checks.push_back({n, ok, detail});
  };

  const int d = fx.perm.size();
  LoopProduct lp = loop_product(fx.perm, fx.winners);
  add("loop-closes", true);
  add("untwisted-matrix", lp.b == fx.b);

  bool sym_ok = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      sym_ok = sym_ok && lp.twisted[i][j] == fx.twisted[i][j];
  add("twisted-matrix-symbolic", sym_ok);

  // Invariant section, symbolically on the full torus.
  {
    std::vector<LaurentPoly> s(d), target(d);
    auto rows = matrix_rows(fx.b);
    for (int i = 0; i < d; ++i) {
      LaurentPoly::Exponent e(d, 0);
      e[i] = 1;
      s[i] = LaurentPoly::constant(d, 1) - mono(e);
      target[i] = LaurentPoly::constant(d, 1) - mono(rows[i]);
    }
    auto img = mat_vec(lp.twisted, s);
    bool ok = true;
    for (int i = 0; i < d; ++i) ok = ok && (img[i] - target[i]).is_zero();
    add("invariant-section-symbolic", ok);
  }

  // Printed covariant sections: dual product applied at the loop image.
  {
    auto star = conj_transpose(lp.twisted);
    auto rows = matrix_rows(fx.b);
    std::vector<LaurentPoly> v0_at_image(d);
    for (int i = 0; i < d; ++i)
      v0_at_image[i] = fx.v_distinguished[i].compose_linear(rows);
    auto lhs = mat_vec(star, v0_at_image);
    bool ok = true;
    for (int i = 0; i < d; ++i)
      ok = ok && polys_equal_subtorus(fx, lhs[i], fx.v_distinguished[i]);
    add("covariant-v0-printed", ok);

    if (!fx.v_secondary.empty()) {
      std::vector<LaurentPoly> v1_at_image(d);
      for (int i = 0; i < d; ++i)
        v1_at_image[i] = fx.v_secondary[i].compose_linear(rows);
      auto lhs1 = mat_vec(star, v1_at_image);
      LaurentPoly u = mono(fx.v_secondary_scalar);
      bool ok1 = true;
      for (int i = 0; i < d; ++i)
        ok1 = ok1 && polys_equal_subtorus(fx, lhs1[i], u * fx.v_secondary[i]);
      add("covariant-v1-printed", ok1);
    }
  }

  // Omega_{pi,zeta} v = -s for the printed distinguished pattern: the
  // machinery section is the negative of the printed one.
  {
    auto om = omega_twisted_sym(fx.perm);
    auto img = mat_vec(om, fx.v_distinguished);
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      LaurentPoly::Exponent e(d, 0);
      e[i] = 1;
      LaurentPoly ms = mono(e) - LaurentPoly::constant(d, 1);  // -(1 - z_i)
      ok = ok && polys_equal_subtorus(fx, img[i], ms);
    }
    add("omega-v-section", ok);
  }

  std::mt19937_64 rng(seed);
  if (exact) {
    // Twisted product at random rational zeta, exact cyclotomic compare.
    static const long long moduli[] = {12, 15, 20, 21, 24, 28, 33, 35, 36, 40, 45, 60};
    std::map<long long, CycRing> rings;
    bool ok = true;
    std::uniform_int_distribution<size_t> mi(0, std::size(moduli) - 1);
    for (int sample = 0; sample < rational_samples && ok; ++sample) {
      long long q = moduli[mi(rng)];
      auto it = rings.find(q);
      if (it == rings.end()) it = rings.emplace(q, CycRing(q)).first;
      const CycRing& ring = it->second;
      auto zeta = random_rational_zeta(fx, rng, q, false);
      for (int i = 0; i < d && ok; ++i)
        for (int j = 0; j < d && ok; ++j)
          ok = ring.equal(lp.twisted[i][j].eval_cyc(ring, zeta),
                          fx.twisted[i][j].eval_cyc(ring, zeta));
    }
    add("twisted-matrix-rational-zeta", ok);

    // Exact per-step covariance chain of the section machinery around the
    // loop, at random rational points (on the subtorus when H(pi) is proper).
    std::vector<StepKind> kinds;
    for (const auto& r : lp.records) kinds.push_back(r.kind);
    static const long long chain_moduli[] = {5, 7, 11, 13};
    bool chain_ok = true;
    std::string chain_detail;
    std::uniform_int_distribution<size_t> ci(0, std::size(chain_moduli) - 1);
    for (int sample = 0; sample < 3 && chain_ok; ++sample) {
      long long q = chain_moduli[ci(rng)];
      auto zeta = random_rational_zeta(fx, rng, q, true);
      auto r = exact_covariance_chain(fx.perm, kinds, zeta);
      chain_ok = r.ok;
      chain_detail = r.detail;
    }
    add("machinery-chain-exact", chain_ok, chain_detail);

    // Machinery distinguished section equals the negated printed pattern;
    // the secondary section matches it up to a unit scalar.
    {
      long long q = 7;
      auto zeta = random_rational_zeta(fx, rng, q, true);
      auto eta = solve_eta_exact(fx.perm, zeta);
      long long n = std::lcm(common_denominator(zeta), common_denominator(eta));
      CycRing ring(n);
      auto es = exact_sections(fx.perm, ring, zeta, eta);
      bool ok0 = true;
      for (int i = 0; i < d; ++i) {
        auto printed = on_subtorus(fx, fx.v_distinguished[i]).eval_cyc(ring, zeta);
        ok0 = ok0 && ring.equal(es.v[0][i], ring.neg(printed));
      }
      add("machinery-v0-matches-printed", ok0);
      if (!fx.v_secondary.empty()) {
        bool ok1 = true;
        std::vector<CycRing::Elem> pat(d);
        for (int i = 0; i < d; ++i)
          pat[i] = on_subtorus(fx, fx.v_secondary[i]).eval_cyc(ring, zeta);
        for (int i = 0; i < d && ok1; ++i)
          for (int j = i + 1; j < d && ok1; ++j)
            ok1 = ring.equal(ring.mul(es.v[1][i], pat[j]),
                             ring.mul(es.v[1][j], pat[i]));
        add("machinery-v1-proportional-printed", ok1);
      }
    }
  } else {
    // Floating spot check of the twisted product against the golden matrix.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double res = 0;
    for (int sample = 0; sample < 32; ++sample) {
      std::vector<std::complex<double>> z(d);
      for (int i = 0; i < d; ++i) {
        double a = 2.0 * std::numbers::pi * u(rng);
        z[i] = {std::cos(a), std::sin(a)};
      }
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          res = std::max(res, std::abs(lp.twisted[i][j].eval(z) -
                                       fx.twisted[i][j].eval(z)));
    }
    add("twisted-matrix-spot-check", res < 1e-12,
        "max residual " + std::to_string(res));
  }

  // Self-similar length vector.
  {
    Eigen::VectorXd lambda = self_similar_fixed_point(fx.perm, fx.winners);
    bool ok = true;
    std::string detail;
    if (fx.lambda_fixed.size() > 0) {
      double err = (lambda - fx.lambda_fixed).cwiseAbs().maxCoeff();
      ok = err < 1e-12;
      detail = "deviation from printed eigenvector " + std::to_string(err);
    } else {
      Eigen::VectorXd oracle = power_iteration_left(fx.b, 200);
      double err = (lambda - oracle).cwiseAbs().maxCoeff();
      ok = err < 1e-10;
      detail = "deviation from power iteration " + std::to_string(err);
    }
    // Retracing the loop returns to the same lengths.
    PointD x{lambda, fx.perm, Eigen::VectorXd()};
    for (size_t i = 0; i < fx.winners.size(); ++i) rauzy_step(x);
    ok = ok && (x.lambda - lambda).cwiseAbs().maxCoeff() < 1e-12 && x.perm == fx.perm;
    add("self-similar-fixed-point", ok, detail);
  }

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace twc
