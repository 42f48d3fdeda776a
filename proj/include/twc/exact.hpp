#pragma once

#include <optional>
#include <vector>

#include "twc/combinatorics.hpp"
#include "twc/cyclotomic.hpp"
#include "twc/permutation.hpp"
#include "twc/renormalization.hpp"

namespace twc {

/// Exact rational linear algebra: solve m x = b over Q. Returns the
/// minimal-norm solution (the one in the row space) or nullopt when the
/// system is inconsistent.
std::optional<std::vector<Rational>> solve_min_norm_exact(
    const Eigen::MatrixXi& m, const std::vector<Rational>& b);

/// Exact eta for -Omega_pi eta = zeta_lift; throws outside H(pi) or on
/// lattice points.
std::vector<Rational> solve_eta_exact(const Permutation& p,
                                      const std::vector<Rational>& zeta_lift);

/// Covariant sections with entries in Z[x]/(x^N - 1); component i of v^S is
/// a difference of at most two roots of unity.
struct ExactSections {
  std::vector<Rational> eta;
  std::vector<Rational> c_phase;           // vertex phases, c_j = e(c_phase_j)
  std::vector<std::vector<CycRing::Elem>> v;  // per cycle, like SectionData
  std::vector<CycRing::Elem> s;
  SigmaDecomposition sig;
};

ExactSections exact_sections(const Permutation& p, const CycRing& ring,
                             const std::vector<Rational>& zeta_lift,
                             const std::optional<std::vector<Rational>>& eta =
                                 std::nullopt);

/// Exact twisted step matrix and its dual at a rational phase.
std::vector<std::vector<CycRing::Elem>> step_matrix_cyc(const CycRing& ring,
                                                        const StepRecord& r,
                                                        int d, bool dual);

std::vector<CycRing::Elem> mat_vec_cyc(const CycRing& ring,
                                       const std::vector<std::vector<CycRing::Elem>>& m,
                                       const std::vector<CycRing::Elem>& x);

bool vec_equal_cyc(const CycRing& ring, const std::vector<CycRing::Elem>& a,
                   const std::vector<CycRing::Elem>& b);

/// All denominators appearing in a rational vector, folded into one lcm.
long long common_denominator(const std::vector<Rational>& v);

/// Exact verification of the one-step section identities along a prescribed
/// sequence of step kinds: B s = s', (B*)^{-1} v^S = v^{S'} with eta
/// transported by tB^{-1}, every comparison in Z[x]/(x^N - 1) mod Phi_N.
struct ExactChainReport {
  bool ok = false;
  int steps = 0;
  std::string detail;
};

ExactChainReport exact_covariance_chain(const Permutation& p,
                                        const std::vector<StepKind>& kinds,
                                        const std::vector<Rational>& zeta_lift);

}  // namespace twc
