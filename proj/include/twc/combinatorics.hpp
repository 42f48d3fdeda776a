#pragma once

#include <Eigen/Dense>

#include <vector>

#include "twc/permutation.hpp"
#include "twc/rational.hpp"

namespace twc {

/// Cycle structure of the sigma permutation on the vertex set {0,..,d}.
/// Cycles are in one-to-one correspondence with the singularities Sigma(pi);
/// cycles[0] is the marked cycle S_0 containing vertex 0, the rest are
/// ordered by smallest element. The formula for sigma(d) printed in the
/// source material is not always a bijection; when it fails (or disagrees
/// with the kernel oracle) the i=d branch is replaced by sigma(d) =
/// pi^{-1}(d), which is the convention the kernel identity
/// kappa = 1 + dim ker Omega reconciles.
struct SigmaDecomposition {
  std::vector<int> sigma;                // arbitrated map on {0..d}
  std::vector<std::vector<int>> cycles;  // partition of {0..d}
  int kappa = 0;
  bool used_literal_formula = true;
  std::vector<int> sigma_literal;  // the literal map, for inspection
};

SigmaDecomposition sigma_decomposition(const Permutation& p);

/// The antisymmetric intersection matrix Omega_pi with entries in {-1,0,1}:
/// +1 where pi_b(beta) < pi_b(alpha) and pi_t(beta) > pi_t(alpha), -1 on the
/// transposed condition, 0 otherwise. Rows/columns are indexed by letters.
Eigen::MatrixXi omega_pi(const Permutation& p);

struct GenusKappa {
  int genus = 0;
  int kappa = 0;
};

/// kappa from the sigma cycles, cross-checked against 1 + dim ker Omega_pi;
/// genus from d = 2g + kappa - 1.
GenusKappa genus_kappa(const Permutation& p);

/// Exact rank of an integer matrix over Q.
int rank_exact(const Eigen::MatrixXi& m);

/// Exact kernel basis over Q, scaled to primitive integer vectors.
std::vector<Eigen::VectorXi> kernel_basis_exact(const Eigen::MatrixXi& m);

/// Integer basis (columns) of the lattice H(pi) n Z^d, where H(pi) is the
/// column space of Omega_pi. Computed through the Smith normal form.
Eigen::MatrixXi h_lattice_basis(const Eigen::MatrixXi& omega);

struct RauzyEdge {
  int from = 0, to = 0;
  StepKind kind = StepKind::top;
  int winner = 0, loser = 0;  // letter ids
};

struct RauzyClass {
  std::vector<Permutation> members;  // BFS discovery order, members[0] = seed
  std::vector<RauzyEdge> edges;      // two per member
  int genus = 0, kappa = 0;
};

/// Breadth-first closure of the permutation under both Rauzy moves.
/// Throws on reducible input. Asserts that irreducibility and (g, kappa)
/// are constant along the class.
RauzyClass rauzy_class(const Permutation& p);

}  // namespace twc
