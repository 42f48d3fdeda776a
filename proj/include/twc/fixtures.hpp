#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twc/laurent.hpp"
#include "twc/permutation.hpp"
#include "twc/renormalization.hpp"

namespace twc {

/// Golden data for the two worked self-similar loops: the loop moves, the
/// integer renormalization matrix, the twisted loop matrix as Laurent
/// polynomials in the letter phases, and the covariant-section patterns.
struct Fixture {
  Fixture(std::string fixture_name, Permutation p)
      : name(std::move(fixture_name)), perm(std::move(p)) {}
  std::string name;
  Permutation perm;
  std::vector<int> winners;
  Eigen::MatrixXi b;
  std::vector<std::vector<LaurentPoly>> twisted;
  std::vector<LaurentPoly> v_distinguished;   // pattern of v_{pi,zeta}
  std::vector<LaurentPoly> v_secondary;       // pattern of v^{S_1} (empty if kappa=1)
  LaurentPoly::Exponent v_secondary_scalar;   // exponent of the covariance unit
  int subtorus_var = -1;                      // variable eliminated on H(pi)
  LaurentPoly::Exponent subtorus_rel;         // z_var := z^rel
  Eigen::VectorXd lambda_fixed;               // printed Perron length vector
};

const Fixture& fixture_example_51();
const Fixture& fixture_example_52();
const Fixture& fixture_by_name(const std::string& name);

struct FixtureCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FixtureReport {
  std::string fixture;
  bool exact = false;
  std::vector<FixtureCheck> checks;
  bool pass = false;
};

/// Verifies the printed loop data: the integer and symbolic twisted
/// products, evaluation agreement at random rational points in exact
/// cyclotomic arithmetic, the invariant-section identity, the printed
/// covariant-section identities (restricted to the invariant subtorus for
/// the genus-one loop), the exact per-step covariance chain of the section
/// machinery, and the self-similar length vector.
FixtureReport verify_fixture(const std::string& name, bool exact,
                             std::uint64_t seed = 7, int rational_samples = 100);

}  // namespace twc
