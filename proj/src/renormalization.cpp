#include "twc/renormalization.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace twc {

namespace {

constexpr double kTieTol = 1e-14;

std::complex<double> unit_phase(double theta) {
  double a = 2.0 * std::numbers::pi * theta;
  return {std::cos(a), std::sin(a)};
}

double frac1(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;
  return f;
}

}  // namespace

Eigen::MatrixXi step_matrix_int(const StepRecord& r, int d) {
  Eigen::MatrixXi b = Eigen::MatrixXi::Identity(d, d);
  b(r.loser, r.winner) += 1;
  return b;
}

Eigen::MatrixXcd step_matrix_twisted(const StepRecord& r, int d) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(d, d);
  std::complex<double> z = unit_phase(r.phase);
  if (r.kind == StepKind::top) {
    b(r.loser, r.winner) = z;  // I + z_{alpha_b} E_{alpha_b alpha_t}
  } else {
    b(r.loser, r.winner) = 1.0;  // I + E_{alpha_t alpha_b} + (z-1) E_{alpha_t alpha_t}
    b(r.loser, r.loser) = z;
  }
  return b;
}

Eigen::MatrixXcd step_matrix_twisted_dual(const StepRecord& r, int d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  std::complex<double> z = unit_phase(r.phase);
  if (r.kind == StepKind::top) {
    m(r.winner, r.loser) = -std::conj(z);
  } else {
    m(r.loser, r.loser) = z;
    m(r.winner, r.loser) = -z;
  }
  return m;
}

void apply_step(Eigen::MatrixXcd& rows, const StepRecord& r,
                std::complex<double> z, bool dual) {
  if (!dual) {
    if (r.kind == StepKind::top)
      rows.row(r.loser) += z * rows.row(r.winner);
    else
      rows.row(r.loser) = z * rows.row(r.loser) + rows.row(r.winner);
  } else {
    if (r.kind == StepKind::top) {
      rows.row(r.winner) -= std::conj(z) * rows.row(r.loser);
    } else {
      // Uses the pre-update loser row in both assignments.
      Eigen::RowVectorXcd old_l = rows.row(r.loser);
      rows.row(r.loser) = z * old_l;
      rows.row(r.winner) -= z * old_l;
    }
  }
}

namespace {

struct StepCore {
  StepKind kind;
  int winner, loser, alpha_b;
};

template <class Scalar>
StepCore classify(const Permutation& p, const Scalar& lt, const Scalar& lb,
                  bool tied) {
  if (tied) throw std::domain_error("non-generic length vector");
  const int at = p.alpha_t(), ab = p.alpha_b();
  if (lt > lb) return {StepKind::top, at, ab, ab};
  return {StepKind::bottom, ab, at, ab};
}

}  // namespace

StepKind point_type(const PointD& x) {
  double lt = x.lambda(x.perm.alpha_t()), lb = x.lambda(x.perm.alpha_b());
  if (std::abs(lt - lb) <= kTieTol) throw std::domain_error("non-generic length vector");
  return lt > lb ? StepKind::top : StepKind::bottom;
}

StepKind point_type(const PointQK& x) {
  double lt = x.lambda(x.perm.alpha_t()), lb = x.lambda(x.perm.alpha_b());
  if (std::abs(lt - lb) <= kTieTol) throw std::domain_error("non-generic length vector");
  return lt > lb ? StepKind::top : StepKind::bottom;
}

StepKind point_type(const PointExact& x) {
  const Rational& lt = x.lambda[x.perm.alpha_t()];
  const Rational& lb = x.lambda[x.perm.alpha_b()];
  if (lt == lb) throw std::domain_error("non-generic length vector");
  return lt > lb ? StepKind::top : StepKind::bottom;
}

StepRecord rauzy_step(PointD& x) {
  const int at = x.perm.alpha_t(), ab = x.perm.alpha_b();
  double lt = x.lambda(at), lb = x.lambda(ab);
  StepCore core = classify(x.perm, lt, lb, std::abs(lt - lb) <= kTieTol);

  StepRecord rec;
  rec.kind = core.kind;
  rec.winner = core.winner;
  rec.loser = core.loser;
  rec.phase_letter = core.alpha_b;
  if (x.zeta.size() > 0) {
    rec.phase = x.zeta(core.alpha_b);
    x.zeta(rec.loser) = frac1(x.zeta(rec.loser) + x.zeta(rec.winner));
  }
  x.lambda(rec.winner) -= x.lambda(rec.loser);
  x.lambda /= x.lambda.sum();
  x.perm = x.perm.move(rec.kind);
  return rec;
}

StepRecord rauzy_step(PointQK& x) {
  const int at = x.perm.alpha_t(), ab = x.perm.alpha_b();
  double lt = x.lambda(at), lb = x.lambda(ab);
  StepCore core = classify(x.perm, lt, lb, std::abs(lt - lb) <= kTieTol);

  StepRecord rec;
  rec.kind = core.kind;
  rec.winner = core.winner;
  rec.loser = core.loser;
  rec.phase_letter = core.alpha_b;
  rec.phase = static_cast<double>(x.zeta.num[core.alpha_b]) /
              static_cast<double>(x.zeta.k);
  rec.phase_q = Rational(x.zeta.num[core.alpha_b], x.zeta.k);
  x.zeta.num[rec.loser] = (x.zeta.num[rec.loser] + x.zeta.num[rec.winner]) % x.zeta.k;
  x.lambda(rec.winner) -= x.lambda(rec.loser);
  x.lambda /= x.lambda.sum();
  x.perm = x.perm.move(rec.kind);
  return rec;
}

StepRecord rauzy_step(PointExact& x) {
  const int at = x.perm.alpha_t(), ab = x.perm.alpha_b();
  const Rational lt = x.lambda[at], lb = x.lambda[ab];
  StepCore core = classify(x.perm, lt, lb, lt == lb);

  StepRecord rec;
  rec.kind = core.kind;
  rec.winner = core.winner;
  rec.loser = core.loser;
  rec.phase_letter = core.alpha_b;
  if (!x.zeta.empty()) {
    rec.phase_q = x.zeta[core.alpha_b];
    rec.phase = to_double(rec.phase_q);
    x.zeta[rec.loser] = mod1(x.zeta[rec.loser] + x.zeta[rec.winner]);
  }
  x.lambda[rec.winner] -= x.lambda[rec.loser];
  x.perm = x.perm.move(rec.kind);
  return rec;
}

template <class Point>
std::vector<StepRecord> zorich_step(Point& x, long long cap) {
  StepKind t0 = point_type(x);
  std::vector<StepRecord> records;
  for (long long n = 0; n < cap; ++n) {
    records.push_back(rauzy_step(x));
    if (point_type(x) != t0) {
      records.front().zorich_boundary = true;
      return records;
    }
  }
  throw ZorichOverflow("Zorich time overflow");
}

template std::vector<StepRecord> zorich_step<PointD>(PointD&, long long);
template std::vector<StepRecord> zorich_step<PointQK>(PointQK&, long long);
template std::vector<StepRecord> zorich_step<PointExact>(PointExact&, long long);

std::vector<int> parse_moves(const Permutation& p, const std::string& text) {
  std::vector<int> winners;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string trimmed;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.size() != 1)
      throw std::invalid_argument("move token must be a single letter: '" + tok + "'");
    winners.push_back(p.letter_of(trimmed[0]));
  }
  if (winners.empty()) throw std::invalid_argument("empty move list");
  return winners;
}

LoopProduct loop_product(const Permutation& p, const std::vector<int>& winners) {
  const int d = p.size();
  LoopProduct out{p, {}, {p}, Eigen::MatrixXi::Identity(d, d), {}};

  // Symbolic zeta: exponent vector of each coordinate in the initial z's.
  std::vector<LaurentPoly::Exponent> zexp(d, LaurentPoly::Exponent(d, 0));
  for (int i = 0; i < d; ++i) zexp[i][i] = 1;

  out.twisted.assign(d, std::vector<LaurentPoly>(d, LaurentPoly(d)));
  for (int i = 0; i < d; ++i)
    out.twisted[i][i] = LaurentPoly::constant(d, 1);

  Permutation cur = p;
  for (int w : winners) {
    const int at = cur.alpha_t(), ab = cur.alpha_b();
    StepRecord rec;
    if (w == at) {
      rec.kind = StepKind::top;
      rec.winner = at;
      rec.loser = ab;
    } else if (w == ab) {
      rec.kind = StepKind::bottom;
      rec.winner = ab;
      rec.loser = at;
    } else {
      throw std::invalid_argument("move winner is not a competing letter");
    }
    rec.phase_letter = ab;

    LaurentPoly z = LaurentPoly::monomial(zexp[ab]);
    // Left-multiplication by the step matrix as a row operation.
    if (rec.kind == StepKind::top) {
      for (int c = 0; c < d; ++c)
        out.twisted[rec.loser][c] =
            out.twisted[rec.loser][c] + z * out.twisted[rec.winner][c];
    } else {
      for (int c = 0; c < d; ++c)
        out.twisted[rec.loser][c] =
            z * out.twisted[rec.loser][c] + out.twisted[rec.winner][c];
    }
    out.b.row(rec.loser) += out.b.row(rec.winner);
    for (int i = 0; i < d; ++i) zexp[rec.loser][i] += zexp[rec.winner][i];

    cur = cur.move(rec.kind);
    out.records.push_back(rec);
    out.states.push_back(cur);
  }
  if (cur != p) throw std::invalid_argument("moves do not return to the permutation");
  return out;
}

namespace {

bool is_primitive(const Eigen::MatrixXi& b) {
  const int d = static_cast<int>(b.rows());
  // Boolean matrix powers; primitive iff some power is strictly positive,
  // and the exponent is at most (d-1)^2 + 1 for primitive matrices.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> pos(d, d), cur(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pos(i, j) = b(i, j) > 0;
  cur = pos;
  const int cap = (d - 1) * (d - 1) + 1;
  for (int n = 1; n <= cap; ++n) {
    bool all = true;
    for (int i = 0; i < d && all; ++i)
      for (int j = 0; j < d && all; ++j) all = cur(i, j);
    if (all) return true;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> nxt(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        bool v = false;
        for (int k = 0; k < d && !v; ++k) v = cur(i, k) && pos(k, j);
        nxt(i, j) = v;
      }
    cur = nxt;
  }
  return false;
}

}  // namespace

Eigen::VectorXd self_similar_fixed_point(const Permutation& p,
                                         const std::vector<int>& winners) {
  LoopProduct lp = loop_product(p, winners);
  if (!is_primitive(lp.b))
    throw std::domain_error("loop matrix is not primitive");
  const int d = p.size();
  Eigen::MatrixXd bt = lp.b.transpose().cast<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> es(bt);
  int best = 0;
  for (int i = 1; i < d; ++i)
    if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real()) best = i;
  Eigen::VectorXd lambda = es.eigenvectors().col(best).real();
  if (lambda.sum() < 0) lambda = -lambda;
  lambda /= lambda.sum();
  for (int i = 0; i < d; ++i)
    if (!(lambda(i) > 0))
      throw std::runtime_error("Perron eigenvector is not strictly positive");

  // The fixed point must retrace the loop and return to itself.
  PointD x{lambda, p, Eigen::VectorXd()};
  for (int w : winners) {
    StepRecord rec = rauzy_step(x);
    if (rec.winner != w)
      throw std::runtime_error("length vector does not follow the loop combinatorics");
  }
  if (x.perm != p || (x.lambda - lambda).cwiseAbs().maxCoeff() > 1e-12)
    throw std::runtime_error("loop eigenvector is not a renormalization fixed point");
  return lambda;
}

}  // namespace twc
