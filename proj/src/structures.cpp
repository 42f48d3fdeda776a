#include "twc/structures.hpp"

#include <cmath>
#include <numbers>

namespace twc {

namespace {

using Cplx = std::complex<double>;

Cplx unit_phase(double theta) {
  double a = 2.0 * std::numbers::pi * theta;
  return {std::cos(a), std::sin(a)};
}

int numeric_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

int numeric_rank_real(const Eigen::MatrixXd& m, double rel_tol = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

}  // namespace

Eigen::MatrixXcd omega_twisted(const Permutation& p, const Eigen::VectorXd& zeta) {
  const int d = p.size();
  Eigen::VectorXcd z(d);
  for (int i = 0; i < d; ++i) z(i) = unit_phase(zeta(i));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == b) continue;
      const bool t_less = p.pi_t(b) < p.pi_t(a);
      const bool b_less = p.pi_b(b) < p.pi_b(a);
      if (t_less && !b_less)
        m(a, b) = 1.0;
      else if (!t_less && b_less)
        m(a, b) = -z(a) * std::conj(z(b));
      else if (t_less && b_less)
        m(a, b) = 1.0 - z(a) * std::conj(z(b));
    }
  return m;
}

std::vector<std::vector<LaurentPoly>> omega_twisted_sym(const Permutation& p) {
  const int d = p.size();
  std::vector<std::vector<LaurentPoly>> m(d, std::vector<LaurentPoly>(d, LaurentPoly(d)));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == b) continue;
      const bool t_less = p.pi_t(b) < p.pi_t(a);
      const bool b_less = p.pi_b(b) < p.pi_b(a);
      LaurentPoly::Exponent e(d, 0);
      e[a] = 1;
      e[b] = -1;
      if (t_less && !b_less)
        m[a][b] = LaurentPoly::constant(d, 1);
      else if (!t_less && b_less)
        m[a][b] = LaurentPoly::monomial(e, -1);
      else if (t_less && b_less)
        m[a][b] = LaurentPoly::constant(d, 1) + LaurentPoly::monomial(e, -1);
    }
  return m;
}

Eigen::VectorXd solve_eta(const Permutation& p, const Eigen::VectorXd& zeta_lift) {
  const int d = p.size();
  bool integral = true;
  for (int i = 0; i < d; ++i) {
    double fr = zeta_lift(i) - std::round(zeta_lift(i));
    if (std::abs(fr) > 1e-9) integral = false;
  }
  if (integral)
    throw std::domain_error("zeta lies in the integer lattice");
  Eigen::MatrixXd m = (-omega_pi(p)).cast<double>();
  Eigen::VectorXd eta =
      m.completeOrthogonalDecomposition().solve(zeta_lift);
  double residual = (m * eta - zeta_lift).norm();
  if (residual >= 1e-10)
    throw std::domain_error("zeta lift is not in H(pi)");
  return eta;
}

SectionData sections(const Permutation& p, const Eigen::VectorXd& zeta_lift,
                     const std::optional<Eigen::VectorXd>& eta_opt) {
  const int d = p.size();
  SectionData out;
  out.s.resize(d);
  for (int i = 0; i < d; ++i) out.s(i) = 1.0 - unit_phase(zeta_lift(i));
  if (out.s.norm() < 1e-8) throw std::domain_error("degenerate twist");

  out.eta = eta_opt ? *eta_opt : solve_eta(p, zeta_lift);
  out.w.resize(d);
  for (int i = 0; i < d; ++i) out.w(i) = unit_phase(-out.eta(i));

  // Vertex weights c_j = prod_{i<=j} w_{t(i)}^{-1}, via phase accumulation.
  out.c.assign(d + 1, Cplx(1.0, 0.0));
  double acc = 0.0;
  for (int j = 1; j <= d; ++j) {
    acc += out.eta(p.top_letter(j));
    out.c[j] = unit_phase(acc);
  }

  out.sig = sigma_decomposition(p);
  const int kappa = out.sig.kappa;
  std::vector<int> cycle_of(d + 1, -1);
  for (int ci = 0; ci < kappa; ++ci)
    for (int vtx : out.sig.cycles[ci]) cycle_of[vtx] = ci;

  out.v.assign(kappa, Eigen::VectorXcd::Zero(d));
  for (int a = 0; a < d; ++a) {
    const int right = p.pi_t(a);
    const int left = right - 1;
    out.v[cycle_of[left]](a) += out.c[left];
    out.v[cycle_of[right]](a) -= out.c[right];
  }

  // Contract checks: every v^S is orthogonal to s, Omega v^S vanishes off
  // the marked cycle, and Omega v_{pi,zeta} = s.
  Eigen::MatrixXcd om = omega_twisted(p, zeta_lift);
  const double scale = std::max(1.0, out.s.norm());
  for (int ci = 0; ci < kappa; ++ci) {
    if (std::abs(out.s.dot(out.v[ci])) > 1e-9 * scale)
      throw std::runtime_error("covariant section is not orthogonal to s");
    Eigen::VectorXcd image = om * out.v[ci];
    if (ci > 0 && image.norm() > 1e-9 * scale)
      throw std::runtime_error("covariant section is not in ker Omega");
    if (ci == 0 && (image - out.s).norm() > 1e-9 * scale)
      throw std::runtime_error("Omega v_{pi,zeta} != s_zeta");
  }
  Eigen::MatrixXcd vm(d, kappa);
  for (int ci = 0; ci < kappa; ++ci) vm.col(ci) = out.v[ci];
  if (numeric_rank(vm) != kappa)
    throw std::runtime_error("covariant sections are not independent");
  return out;
}

FrameBundle frames(const Permutation& p, const Eigen::VectorXd& zeta_lift) {
  const int d = p.size();
  FrameBundle fb;
  fb.sec = sections(p, zeta_lift);
  auto gk = genus_kappa(p);
  fb.genus = gk.genus;
  fb.kappa = gk.kappa;
  const int g = fb.genus, kappa = fb.kappa;
  const int hdim = 2 * g - 1;  // = d - kappa

  fb.Ntilde.push_back(fb.sec.v[0]);
  for (int ci = 1; ci < kappa; ++ci) {
    fb.N.push_back(fb.sec.v[ci]);
    fb.Ntilde.push_back(fb.sec.v[ci]);
  }

  // Orthonormal basis of W = <s>^perp from a Householder frame.
  Eigen::MatrixXcd smat(d, 1);
  smat.col(0) = fb.sec.s;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(smat);
  Eigen::MatrixXcd full = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  fb.W = full.rightCols(d - 1);

  Eigen::MatrixXcd om = omega_twisted(p, zeta_lift);

  // Htilde = Omega W, thinned to 2g-1 orthonormal columns with s first.
  // Preimages in W are carried through the same row operations so that
  // Omega * Htilde_pre = Htilde holds columnwise.
  const double snorm = fb.sec.s.norm();
  std::vector<Eigen::VectorXcd> hcols, pcols;
  hcols.push_back(fb.sec.s / snorm);
  pcols.push_back(fb.sec.v[0] / snorm);
  for (int i = 0; i < d - 1 && static_cast<int>(hcols.size()) < hdim; ++i) {
    Eigen::VectorXcd pre = fb.W.col(i);
    Eigen::VectorXcd h = om * pre;
    const double base = h.norm();
    for (size_t j = 0; j < hcols.size(); ++j) {
      Cplx coef = hcols[j].dot(h);  // <hcols_j, h> conjugating hcols_j
      h -= coef * hcols[j];
      pre -= coef * pcols[j];
    }
    if (h.norm() > 1e-8 * std::max(base, 1.0)) {
      double n = h.norm();
      hcols.push_back(h / n);
      pcols.push_back(pre / n);
    }
  }
  if (static_cast<int>(hcols.size()) != hdim)
    throw std::runtime_error("kernel dimension mismatch");
  fb.Htilde.resize(d, hdim);
  fb.Htilde_pre.resize(d, hdim);
  for (int j = 0; j < hdim; ++j) {
    fb.Htilde.col(j) = hcols[j];
    fb.Htilde_pre.col(j) = pcols[j];
  }

  // Ntilde is the orthogonal complement of Htilde.
  for (const auto& nv : fb.Ntilde)
    for (int j = 0; j < hdim; ++j)
      if (std::abs(fb.Htilde.col(j).dot(nv)) > 1e-9 * std::max(1.0, nv.norm()))
        throw std::runtime_error("Ntilde is not orthogonal to Htilde");

  // omega(h_j, h_k) = (i/2) <Omega f_j, f_k> on the Htilde basis.
  fb.hermitian.resize(hdim, hdim);
  for (int j = 0; j < hdim; ++j)
    for (int k = 0; k < hdim; ++k)
      fb.hermitian(j, k) =
          Cplx(0, 0.5) * (fb.Htilde_pre.col(k).dot(fb.Htilde.col(j)));
  double herm_defect =
      (fb.hermitian - fb.hermitian.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-9)
    throw std::runtime_error("omega is not Hermitian on Htilde");

  // Real doubled form on the basis {i(h_j)} u {i(i h_j)}.
  fb.symplectic_real.resize(2 * hdim, 2 * hdim);
  for (int j = 0; j < hdim; ++j)
    for (int k = 0; k < hdim; ++k) {
      Cplx wjk = fb.hermitian(j, k);
      fb.symplectic_real(j, k) = -wjk.imag();
      fb.symplectic_real(j, hdim + k) = wjk.real();
      fb.symplectic_real(hdim + j, k) = -wjk.real();
      fb.symplectic_real(hdim + j, hdim + k) = -wjk.imag();
    }

  // The s-direction is column 0; the quotient forms live on the rest.
  fb.quotient_rank_complex =
      numeric_rank(fb.hermitian.block(1, 1, hdim - 1, hdim - 1));
  Eigen::MatrixXd sub(2 * (hdim - 1), 2 * (hdim - 1));
  for (int j = 1; j < hdim; ++j)
    for (int k = 1; k < hdim; ++k) {
      sub(j - 1, k - 1) = fb.symplectic_real(j, k);
      sub(j - 1, hdim - 2 + k) = fb.symplectic_real(j, hdim + k);
      sub(hdim - 2 + j, k - 1) = fb.symplectic_real(hdim + j, k);
      sub(hdim - 2 + j, hdim - 2 + k) = fb.symplectic_real(hdim + j, hdim + k);
    }
  fb.quotient_rank_real = numeric_rank_real(sub);

  if (static_cast<int>(fb.N.size()) != kappa - 1 ||
      static_cast<int>(fb.Ntilde.size()) != kappa)
    throw std::runtime_error("kernel dimension mismatch");
  return fb;
}

std::vector<int> step_vertex_old_map(const Permutation& before, StepKind kind) {
  const int d = before.size();
  const int at = before.alpha_t(), ab = before.alpha_b();
  Permutation after = before.move(kind);
  std::vector<int> old_of(d + 1, 0);
  for (int a = 0; a < d; ++a) {
    int nv = after.pi_t(a);
    int ov;
    if (kind == StepKind::top)
      ov = (a == at) ? before.pi_t(ab) - 1 : before.pi_t(a);
    else {
      if (a == ab)
        ov = before.pi_t(at) - 1;
      else if (a == at)
        ov = before.pi_t(ab);
      else
        ov = before.pi_t(a);
    }
    old_of[nv] = ov;
  }
  old_of[0] = 0;
  return old_of;
}

std::vector<int> step_cycle_map(const Permutation& before, StepKind kind) {
  Permutation after = before.move(kind);
  auto sig0 = sigma_decomposition(before);
  auto sig1 = sigma_decomposition(after);
  const int d = before.size();
  std::vector<int> old_cycle_of(d + 1, -1);
  for (size_t ci = 0; ci < sig0.cycles.size(); ++ci)
    for (int v : sig0.cycles[ci]) old_cycle_of[v] = static_cast<int>(ci);
  auto old_of = step_vertex_old_map(before, kind);
  std::vector<int> map(sig0.cycles.size(), -1);
  for (size_t nc = 0; nc < sig1.cycles.size(); ++nc) {
    int oc = -1;
    for (int nv : sig1.cycles[nc]) {
      int cand = old_cycle_of[old_of[nv]];
      if (oc < 0) oc = cand;
      if (cand != oc)
        throw std::runtime_error("cycle correspondence is not well defined");
    }
    if (map[oc] != -1)
      throw std::runtime_error("cycle correspondence is not injective");
    map[oc] = static_cast<int>(nc);
  }
  return map;
}

StepIdentityReport verify_step_identities(const Eigen::VectorXd& lambda,
                                          const Permutation& p,
                                          const Eigen::VectorXd& zeta_lift,
                                          double tol) {
  const int d = p.size();
  StepIdentityReport rep;
  rep.tol = tol;

  SectionData sec0 = sections(p, zeta_lift);
  Eigen::MatrixXcd om0 = omega_twisted(p, zeta_lift);

  PointD x{lambda, p, Eigen::VectorXd::Zero(d)};
  // Step with an explicit lift: advance the lift by B, not mod 1.
  PointD probe = x;
  StepRecord rec = rauzy_step(probe);
  rec.phase = zeta_lift(rec.phase_letter);
  Eigen::VectorXd lift1 = zeta_lift;
  lift1(rec.loser) += zeta_lift(rec.winner);
  Permutation p1 = probe.perm;

  Eigen::MatrixXcd bmat = step_matrix_twisted(rec, d);
  Eigen::MatrixXcd dual = step_matrix_twisted_dual(rec, d);

  // eta transported by tB^{-1}: only the winner coordinate changes.
  Eigen::VectorXd eta1 = sec0.eta;
  eta1(rec.winner) -= sec0.eta(rec.loser);
  SectionData sec1 = sections(p1, lift1, eta1);
  Eigen::MatrixXcd om1 = omega_twisted(p1, lift1);

  // (a) invariant section.
  rep.invariant_section = (bmat * sec0.s - sec1.s).cwiseAbs().maxCoeff();

  // (b) covariant sections, cycles paired through the step.
  auto cmap = step_cycle_map(p, rec.kind);
  double res_b = 0;
  for (size_t ci = 0; ci < sec0.v.size(); ++ci) {
    Eigen::VectorXcd lhs = dual * sec0.v[ci];
    res_b = std::max(res_b,
                     (lhs - sec1.v[cmap[ci]]).cwiseAbs().maxCoeff());
  }
  rep.covariant_sections = res_b;

  // (c) exact rank-one defect.
  int defect_letter = rec.kind == StepKind::top ? p.alpha_b() : p.alpha_t();
  std::complex<double> zb = unit_phase(zeta_lift(p.alpha_b()));
  Eigen::MatrixXcd defect = bmat * om0 * bmat.adjoint() - om1;
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(d, d);
  expected.row(defect_letter) = zb * sec1.s.adjoint();
  rep.rank_one_defect = (defect - expected).cwiseAbs().maxCoeff();

  // (d) omega invariance: for f,g in W_zeta,
  // (i/2)<Om1 (B*)^{-1} f, (B*)^{-1} g> = (i/2)<Om0 f, g>.
  FrameBundle fb0 = frames(p, zeta_lift);
  double res_d = 0;
  const int wcols = static_cast<int>(fb0.W.cols());
  for (int a = 0; a < wcols; ++a)
    for (int b = 0; b < wcols; ++b) {
      Eigen::VectorXcd f = fb0.W.col(a), g = fb0.W.col(b);
      Eigen::VectorXcd f1 = dual * f, g1 = dual * g;
      Cplx lhs = Cplx(0, 0.5) * (g1.dot(om1 * f1));
      Cplx rhs = Cplx(0, 0.5) * (g.dot(om0 * f));
      res_d = std::max(res_d, std::abs(lhs - rhs));
    }
  rep.omega_invariance = res_d;

  // (e) W covariance: B^* maps W_{zeta1} into W_zeta.
  Eigen::MatrixXcd smat(d, 1);
  smat.col(0) = sec1.s;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(smat);
  Eigen::MatrixXcd full = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd w1 = full.rightCols(d - 1);
  Eigen::VectorXcd shat = sec0.s / sec0.s.norm();
  double res_e = 0;
  for (int i = 0; i < d - 1; ++i) {
    Eigen::VectorXcd img = bmat.adjoint() * w1.col(i);
    res_e = std::max(res_e, std::abs(shat.dot(img)));
  }
  rep.w_covariance = res_e;

  rep.max_residual = std::max({rep.invariant_section, rep.covariant_sections,
                               rep.rank_one_defect, rep.omega_invariance,
                               rep.w_covariance});
  rep.pass = rep.max_residual < tol;
  return rep;
}

Eigen::MatrixXcd real_double(const Eigen::MatrixXcd& m) {
  const int d = static_cast<int>(m.rows());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = m;
  out.bottomRightCorner(d, d) = m.conjugate();
  return out;
}

BlockFormReport verify_block_form(const Eigen::VectorXd& lambda,
                                  const Permutation& p,
                                  const Eigen::VectorXd& zeta_lift, double tol) {
  const int d = p.size();
  BlockFormReport rep;
  rep.tol = tol;

  FrameBundle fb0 = frames(p, zeta_lift);
  const int kappa = fb0.kappa;

  PointD probe{lambda, p, Eigen::VectorXd::Zero(d)};
  StepRecord rec = rauzy_step(probe);
  rec.phase = zeta_lift(rec.phase_letter);
  Eigen::VectorXd lift1 = zeta_lift;
  lift1(rec.loser) += zeta_lift(rec.winner);
  Permutation p1 = probe.perm;
  FrameBundle fb1 = frames(p1, lift1);

  auto cmap = step_cycle_map(p, rec.kind);

  auto assemble = [d, kappa](const FrameBundle& fb,
                             const std::vector<int>* order) {
    Eigen::MatrixXcd c(d, d);
    for (int ci = 0; ci < kappa; ++ci) {
      int col = order ? (*order)[ci] : ci;
      c.col(col) = fb.sec.v[ci];
    }
    // Htilde columns are orthonormal with s/|s| first; the block form wants
    // the raw s at position kappa+1 so that psi emerges on the diagonal.
    c.col(kappa) = fb.sec.s;
    for (int j = 1; j < fb.Htilde.cols(); ++j)
      c.col(kappa + j) = fb.Htilde.col(j);
    return c;
  };

  // Columns of the far frame are ordered so that cycle i sits at the same
  // index on both sides.
  Eigen::MatrixXcd c0 = assemble(fb0, nullptr);
  Eigen::MatrixXcd c1 = assemble(fb1, &cmap);

  Eigen::MatrixXcd dual = step_matrix_twisted_dual(rec, d);
  Eigen::MatrixXcd m = c1.partialPivLu().solve(dual * c0);

  double off = 0, unit = 0;
  // v-block diagonal with unit-modulus entries; entry (0,0) is exactly 1.
  for (int i = 0; i < kappa; ++i) {
    unit = std::max(unit, std::abs(std::abs(m(i, i)) - 1.0));
    for (int j = 0; j < kappa; ++j)
      if (i != j) off = std::max(off, std::abs(m(i, j)));
  }
  off = std::max(off, std::abs(m(0, 0) - 1.0));
  // Rows kappa..d-1 vanish on the first kappa columns.
  for (int i = kappa; i < d; ++i)
    for (int j = 0; j < kappa; ++j) off = std::max(off, std::abs(m(i, j)));
  // Row kappa is (0,...,0, psi, 0,...,0).
  for (int j = 0; j < d; ++j)
    if (j != kappa) off = std::max(off, std::abs(m(kappa, j)));

  double s0 = fb0.sec.s.squaredNorm();
  Eigen::VectorXcd s1v(d);
  s1v = fb1.sec.s;
  double psi_expected = s0 / s1v.squaredNorm();
  rep.psi = m(kappa, kappa).real();
  rep.psi_residual = std::abs(m(kappa, kappa) - psi_expected);
  rep.unit_modulus_defect = unit;
  rep.off_block_residual = off;
  rep.pass = std::max({unit, off, rep.psi_residual}) < tol;
  return rep;
}

}  // namespace twc
