#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "twc/combinatorics.hpp"
#include "twc/laurent.hpp"
#include "twc/permutation.hpp"
#include "twc/renormalization.hpp"

namespace twc {

/// The twisted matrix Omega_{pi,zeta}; degenerates to -Omega_pi at zeta = 0.
Eigen::MatrixXcd omega_twisted(const Permutation& p, const Eigen::VectorXd& zeta);

/// Omega_{pi,zeta} with symbolic unit phases, entries in Z[z^{+-1}].
std::vector<std::vector<LaurentPoly>> omega_twisted_sym(const Permutation& p);

/// Minimal-norm solution of -Omega_pi eta = zeta_lift. The minimal-norm
/// solution is exactly the one lying in H(pi) = im Omega_pi. Throws when the
/// lift is not in H(pi) (residual >= 1e-10) or lies in the integer lattice.
Eigen::VectorXd solve_eta(const Permutation& p, const Eigen::VectorXd& zeta_lift);

/// Invariant section s_zeta, the unit weights w and vertex weights c built
/// from eta, and one covariant section v^S per sigma cycle (the cycle order
/// of SigmaDecomposition; v[0] is the distinguished section v_{pi,zeta}).
struct SectionData {
  Eigen::VectorXcd s;
  Eigen::VectorXd eta;
  Eigen::VectorXcd w;                       // w_beta = exp(-2 pi i eta_beta)
  std::vector<std::complex<double>> c;      // vertex weights c_0..c_d
  std::vector<Eigen::VectorXcd> v;          // per cycle
  SigmaDecomposition sig;
};

SectionData sections(const Permutation& p, const Eigen::VectorXd& zeta_lift,
                     const std::optional<Eigen::VectorXd>& eta = std::nullopt);

/// Pointwise frame of the invariant decomposition
/// C^A = (N + C v) + Htilde with the Hermitian form on Htilde and the
/// doubled real symplectic form.
struct FrameBundle {
  std::vector<Eigen::VectorXcd> N;       // kappa-1 vectors
  std::vector<Eigen::VectorXcd> Ntilde;  // [v0, v^S...], kappa vectors
  Eigen::MatrixXcd W;                    // d x (d-1), orthonormal, = <s>^perp
  Eigen::MatrixXcd Htilde;               // d x (2g-1); column 0 = s/|s|
  Eigen::MatrixXcd Htilde_pre;           // preimages in W: Omega*pre = Htilde
  Eigen::MatrixXcd hermitian;            // omega on the Htilde basis
  Eigen::MatrixXd symplectic_real;       // omega_R on {i(h_j), i(i h_j)}
  int genus = 0, kappa = 0;
  int quotient_rank_complex = 0;  // rank of omega mod the s-direction
  int quotient_rank_real = 0;     // rank of omega_R mod the s-direction
  SectionData sec;
};

FrameBundle frames(const Permutation& p, const Eigen::VectorXd& zeta_lift);

/// Vertex correspondence across one Rauzy move: maps the new vertex index
/// j in {0..d} to the old vertex it is glued to.
std::vector<int> step_vertex_old_map(const Permutation& before, StepKind kind);

/// Induced bijection on sigma cycles: result[old cycle index] = new cycle
/// index; asserts each new cycle sits over exactly one old cycle.
std::vector<int> step_cycle_map(const Permutation& before, StepKind kind);

/// Residuals of the one-step identities at (lambda, pi, zeta_lift):
///  a) B s_zeta = s_zeta1
///  b) (B*)^{-1} v^S_eta = v^{S1}_{eta1}, eta1 = tB^{-1} eta
///  c) B Omega B* - Omega1 = z_{alpha_b} e_{alpha_eps'} s*_{zeta1}
///  d) omega invariance on Htilde pairs
///  e) W covariance B* W_{zeta1} = W_zeta
struct StepIdentityReport {
  double invariant_section = 0;  // (a)
  double covariant_sections = 0; // (b)
  double rank_one_defect = 0;    // (c)
  double omega_invariance = 0;   // (d)
  double w_covariance = 0;       // (e)
  double max_residual = 0;
  bool pass = false;
  double tol = 0;
};

StepIdentityReport verify_step_identities(const Eigen::VectorXd& lambda,
                                          const Permutation& p,
                                          const Eigen::VectorXd& zeta_lift,
                                          double tol);

/// Doubled real-structure matrix acting on pairs (f, conj f):
/// block diag(m, conj m).
Eigen::MatrixXcd real_double(const Eigen::MatrixXcd& m);

/// Conjugates the one-step dual matrix into the basis
/// [v_0,...,v_{kappa-1}, s, w_1,...,w_{2g-2}] at both ends of the step and
/// checks the block-triangular normal form, including the Birkhoff weight
/// psi = |s_zeta|^2 / |s_zeta1|^2 at position (kappa+1, kappa+1).
struct BlockFormReport {
  double unit_modulus_defect = 0;  // max | |u_i| - 1 |
  double off_block_residual = 0;   // entries required to vanish
  double psi_residual = 0;
  double psi = 0;
  bool pass = false;
  double tol = 0;
};

BlockFormReport verify_block_form(const Eigen::VectorXd& lambda,
                                  const Permutation& p,
                                  const Eigen::VectorXd& zeta_lift, double tol);

}  // namespace twc
