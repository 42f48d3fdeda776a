#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twc/laurent.hpp"
#include "twc/permutation.hpp"
#include "twc/rational.hpp"

namespace twc {

struct ZorichOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Toral coordinate stored as numerators over a fixed denominator k,
/// reduced to {0..k-1}. Step matrices have determinant one, so an orbit
/// started at a nonzero point never reaches zero.
struct ZetaModK {
  long long k = 0;
  std::vector<long long> num;
  bool is_zero() const {
    for (long long n : num)
      if (n != 0) return false;
    return true;
  }
};

/// Renormalization state with double-precision lengths. zeta is optional
/// machinery: a dense torus coordinate (reduced mod 1), an exact mod-k
/// coordinate, or both absent for untwisted work.
struct PointD {
  Eigen::VectorXd lambda;  // positive, sum 1
  Permutation perm;
  Eigen::VectorXd zeta;  // dense torus coordinate in [0,1); size 0 if unused
};

struct PointQK {
  Eigen::VectorXd lambda;
  Permutation perm;
  ZetaModK zeta;
};

/// Exact-rational state. Lengths are kept unnormalized (renormalization
/// only rescales, which affects neither comparisons nor the combinatorics).
struct PointExact {
  std::vector<Rational> lambda;
  Permutation perm;
  std::vector<Rational> zeta;  // torus coordinate reduced to [0,1)
};

struct StepRecord {
  StepKind kind = StepKind::top;
  int winner = 0, loser = 0;  // letter ids; B = I + E_{loser,winner}
  int phase_letter = 0;       // alpha_b before the step
  double phase = 0.0;         // zeta_{alpha_b} before the step
  Rational phase_q;           // exact phase when stepping exactly
  bool zorich_boundary = false;
};

Eigen::MatrixXi step_matrix_int(const StepRecord& r, int d);
Eigen::MatrixXcd step_matrix_twisted(const StepRecord& r, int d);
/// (B^*)^{-1} of the twisted step matrix, in closed form.
Eigen::MatrixXcd step_matrix_twisted_dual(const StepRecord& r, int d);

/// In-place frame updates Q <- B Q (or the dual), one O(d) row operation.
void apply_step(Eigen::MatrixXcd& rows, const StepRecord& r,
                std::complex<double> z, bool dual);

/// One step of Rauzy induction. Throws on a tie ("non-generic length
/// vector"). The length vector is renormalized back to the simplex and
/// zeta is advanced by zeta -> B zeta (mod 1, or mod k).
StepRecord rauzy_step(PointD& x);
StepRecord rauzy_step(PointQK& x);
StepRecord rauzy_step(PointExact& x);

StepKind point_type(const PointD& x);
StepKind point_type(const PointQK& x);
StepKind point_type(const PointExact& x);

/// Rauzy steps grouped until the first type change (Zorich acceleration).
/// records[0] carries zorich_boundary = true. Throws ZorichOverflow past
/// the step cap.
template <class Point>
std::vector<StepRecord> zorich_step(Point& x, long long cap = 1000000);

/// Ordered products along an explicitly given Rauzy loop. `moves` lists the
/// winning letter of each step; the loop must return to `p`.
struct LoopProduct {
  Permutation start;
  std::vector<StepRecord> records;
  std::vector<Permutation> states;              // length moves+1, states[0]=p
  Eigen::MatrixXi b;                            // untwisted product B_gamma
  std::vector<std::vector<LaurentPoly>> twisted;  // symbolic, vars = letters
};

LoopProduct loop_product(const Permutation& p, const std::vector<int>& winners);

/// Parse "C,B,C,A,B,A" into winner letter ids for p.
std::vector<int> parse_moves(const Permutation& p, const std::string& text);

/// Left Perron eigenvector of the loop matrix, normalized to the simplex.
/// Requires a primitive loop matrix; the result is a fixed point of the
/// loop's renormalization (validated to 1e-12).
Eigen::VectorXd self_similar_fixed_point(const Permutation& p,
                                         const std::vector<int>& winners);

}  // namespace twc
