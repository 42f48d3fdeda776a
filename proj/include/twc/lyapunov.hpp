#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "twc/permutation.hpp"
#include "twc/renormalization.hpp"

namespace twc {

enum class MeasureKind {
  lebesgue_full_torus,
  lebesgue_H_subtorus,
  rational_Qk,
  rational_Qk_subtorus,
};

const char* measure_kind_name(MeasureKind k);
MeasureKind measure_kind_from_name(const std::string& name);

struct MeasureSpec {
  MeasureKind kind = MeasureKind::lebesgue_full_torus;
  long long k = 0;        // denominator for the Q_k kinds
  std::uint64_t seed = 0;  // RNG base seed
};

/// Deterministic child seed for one orbit.
std::uint64_t orbit_seed(std::uint64_t base, int index);

/// lambda ~ Dirichlet(1,..,1); zeta per the measure kind. Dense kinds
/// reject zeta within 1e-6 of the integer lattice.
PointD sample_initial_dense(const Permutation& p, const MeasureSpec& m,
                            std::uint64_t seed_index);
PointQK sample_initial_qk(const Permutation& p, const MeasureSpec& m,
                          std::uint64_t seed_index);

struct SpectrumEstimate {
  std::string perm_text;
  int d = 0, genus = 0, kappa = 0;
  MeasureSpec measure;
  long long steps = 0;  // Zorich steps per orbit, after burn-in
  int seeds = 0;
  int qr_interval = 1;
  bool dual = false;
  std::vector<double> exponents;  // sorted descending, mean across seeds
  std::vector<double> stderrs;
  std::vector<std::vector<double>> per_seed;  // [seed][exponent]
  std::vector<double> zero_tol;               // max(0.01, 3 stderr) each
  double symmetry_defect = 0;  // max |chi_i + chi_{d+1-i}|
  int zero_count = 0;
};

/// Benettin QR estimate of the twisted (or dual twisted) Zorich cocycle
/// spectrum: evolve a d-frame, re-orthonormalize every qr_interval Zorich
/// steps, accumulate log |diag R|, normalize per Zorich step.
/// Burn-in of 1000 Zorich steps precedes accumulation. On a non-finite
/// accumulator the run retries once with qr_interval halved.
SpectrumEstimate benettin_spectrum(const Permutation& p, const MeasureSpec& m,
                                   long long steps, int seeds,
                                   int qr_interval = 1, bool dual = false,
                                   int threads = 0,
                                   long long zorich_cap = 1000000);

struct PairSymmetry {
  int i = 0, j = 0;
  double defect = 0;
  double combined_stderr = 0;
};

struct SymmetryReport {
  std::vector<PairSymmetry> pairs;
  double max_defect = 0;
  int zero_count = 0;
  int expected_zero_multiplicity = 0;  // kappa + 1
  bool zero_block_matches = false;
};

SymmetryReport symmetry_report(const SpectrumEstimate& e);

}  // namespace twc
