#include "twc/exact.hpp"

#include <numeric>
#include <stdexcept>

#include "twc/structures.hpp"

namespace twc {

std::optional<std::vector<Rational>> solve_min_norm_exact(
    const Eigen::MatrixXi& m, const std::vector<Rational>& b) {
  // For antisymmetric m the minimal-norm solution of m x = b is x = -m y
  // with m^2 y = -b (ker m^2 = ker m, so the system is consistent exactly
  // when b lies in im m). Solved by rational elimination.
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXi m2 = m * m;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m2(i, j);
    a[i][n] = -b[i];
  }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    Rational pv = a[rank][col];
    for (int j = col; j <= n; ++j) a[rank][j] /= pv;
    for (int r = 0; r < n; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = col; j <= n; ++j) a[r][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < n; ++r)
    if (a[r][n] != 0) return std::nullopt;  // inconsistent
  std::vector<Rational> y(n, Rational(0));
  for (int r = 0; r < rank; ++r) y[pivot_col[r]] = a[r][n];
  std::vector<Rational> x(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) != 0) x[i] -= Rational(m(i, j)) * y[j];
  // Validate m x = b.
  for (int i = 0; i < n; ++i) {
    Rational acc = 0;
    for (int j = 0; j < n; ++j)
      if (m(i, j) != 0) acc += Rational(m(i, j)) * x[j];
    if (acc != b[i]) return std::nullopt;
  }
  return x;
}

std::vector<Rational> solve_eta_exact(const Permutation& p,
                                      const std::vector<Rational>& zeta_lift) {
  bool integral = true;
  for (const auto& q : zeta_lift)
    if (denominator(q) != 1) integral = false;
  if (integral) throw std::domain_error("zeta lies in the integer lattice");
  Eigen::MatrixXi momega = -omega_pi(p);
  auto eta = solve_min_norm_exact(momega, zeta_lift);
  if (!eta) throw std::domain_error("zeta lift is not in H(pi)");
  return *eta;
}

ExactSections exact_sections(const Permutation& p, const CycRing& ring,
                             const std::vector<Rational>& zeta_lift,
                             const std::optional<std::vector<Rational>>& eta_opt) {
  const int d = p.size();
  ExactSections out;
  out.eta = eta_opt ? *eta_opt : solve_eta_exact(p, zeta_lift);
  out.c_phase.assign(d + 1, Rational(0));
  Rational acc = 0;
  for (int j = 1; j <= d; ++j) {
    acc += out.eta[p.top_letter(j)];
    out.c_phase[j] = mod1(acc);
  }
  out.sig = sigma_decomposition(p);
  const int kappa = out.sig.kappa;
  std::vector<int> cycle_of(d + 1, -1);
  for (int ci = 0; ci < kappa; ++ci)
    for (int vtx : out.sig.cycles[ci]) cycle_of[vtx] = ci;
  out.v.assign(kappa, std::vector<CycRing::Elem>(d, ring.zero()));
  for (int a = 0; a < d; ++a) {
    const int right = p.pi_t(a);
    const int left = right - 1;
    out.v[cycle_of[left]][a] =
        ring.add(out.v[cycle_of[left]][a], ring.phase(out.c_phase[left]));
    out.v[cycle_of[right]][a] =
        ring.sub(out.v[cycle_of[right]][a], ring.phase(out.c_phase[right]));
  }
  out.s.assign(d, ring.zero());
  for (int a = 0; a < d; ++a)
    out.s[a] = ring.sub(ring.one(), ring.phase(zeta_lift[a]));
  return out;
}

std::vector<std::vector<CycRing::Elem>> step_matrix_cyc(const CycRing& ring,
                                                        const StepRecord& r,
                                                        int d, bool dual) {
  std::vector<std::vector<CycRing::Elem>> m(
      d, std::vector<CycRing::Elem>(d, ring.zero()));
  for (int i = 0; i < d; ++i) m[i][i] = ring.one();
  CycRing::Elem z = ring.phase(r.phase_q);
  if (!dual) {
    if (r.kind == StepKind::top) {
      m[r.loser][r.winner] = z;
    } else {
      m[r.loser][r.winner] = ring.one();
      m[r.loser][r.loser] = z;
    }
  } else {
    if (r.kind == StepKind::top) {
      m[r.winner][r.loser] = ring.neg(ring.conj(z));
    } else {
      m[r.loser][r.loser] = z;
      m[r.winner][r.loser] = ring.neg(z);
    }
  }
  return m;
}

std::vector<CycRing::Elem> mat_vec_cyc(
    const CycRing& ring, const std::vector<std::vector<CycRing::Elem>>& m,
    const std::vector<CycRing::Elem>& x) {
  const int d = static_cast<int>(x.size());
  std::vector<CycRing::Elem> y(d, ring.zero());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      y[i] = ring.add(y[i], ring.mul(m[i][j], x[j]));
  return y;
}

bool vec_equal_cyc(const CycRing& ring, const std::vector<CycRing::Elem>& a,
                   const std::vector<CycRing::Elem>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ring.equal(a[i], b[i])) return false;
  return true;
}

long long common_denominator(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& q : v) l = boost::multiprecision::lcm(l, denominator(q));
  return l.convert_to<long long>();
}

ExactChainReport exact_covariance_chain(const Permutation& p,
                                        const std::vector<StepKind>& kinds,
                                        const std::vector<Rational>& zeta_lift) {
  ExactChainReport rep;
  std::vector<Rational> eta = solve_eta_exact(p, zeta_lift);
  long long n = std::lcm(common_denominator(zeta_lift), common_denominator(eta));
  CycRing ring(n);

  Permutation perm = p;
  std::vector<Rational> lift = zeta_lift;
  ExactSections cur = exact_sections(perm, ring, lift, eta);

  for (StepKind kind : kinds) {
    const int at = perm.alpha_t(), ab = perm.alpha_b();
    StepRecord rec;
    rec.kind = kind;
    rec.winner = kind == StepKind::top ? at : ab;
    rec.loser = kind == StepKind::top ? ab : at;
    rec.phase_letter = ab;
    rec.phase_q = lift[ab];

    auto bmat = step_matrix_cyc(ring, rec, perm.size(), false);
    auto dual = step_matrix_cyc(ring, rec, perm.size(), true);
    auto cmap = step_cycle_map(perm, kind);

    std::vector<Rational> lift1 = lift;
    lift1[rec.loser] += lift[rec.winner];
    std::vector<Rational> eta1 = eta;
    eta1[rec.winner] -= eta[rec.loser];
    Permutation perm1 = perm.move(kind);
    ExactSections nxt = exact_sections(perm1, ring, lift1, eta1);

    if (!vec_equal_cyc(ring, mat_vec_cyc(ring, bmat, cur.s), nxt.s)) {
      rep.detail = "invariant section failed at step " + std::to_string(rep.steps);
      return rep;
    }
    for (size_t ci = 0; ci < cur.v.size(); ++ci) {
      if (!vec_equal_cyc(ring, mat_vec_cyc(ring, dual, cur.v[ci]),
                         nxt.v[cmap[ci]])) {
        rep.detail = "covariant section failed at step " + std::to_string(rep.steps);
        return rep;
      }
    }
    perm = perm1;
    lift = lift1;
    eta = eta1;
    cur = nxt;
    ++rep.steps;
  }
  rep.ok = true;
  return rep;
}

}  // namespace twc
