#include "twc/lyapunov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "twc/combinatorics.hpp"

namespace twc {

const char* measure_kind_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::lebesgue_full_torus: return "lebesgue";
    case MeasureKind::lebesgue_H_subtorus: return "hpi";
    case MeasureKind::rational_Qk: return "qk";
    case MeasureKind::rational_Qk_subtorus: return "qk-hpi";
  }
  return "?";
}

MeasureKind measure_kind_from_name(const std::string& name) {
  if (name == "lebesgue") return MeasureKind::lebesgue_full_torus;
  if (name == "hpi") return MeasureKind::lebesgue_H_subtorus;
  if (name == "qk") return MeasureKind::rational_Qk;
  if (name == "qk-hpi") return MeasureKind::rational_Qk_subtorus;
  throw std::invalid_argument("unknown measure kind: " + name);
}

std::uint64_t orbit_seed(std::uint64_t base, int index) {
  // splitmix64 over (base, index)
  std::uint64_t x = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

Eigen::VectorXd dirichlet_uniform(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) {
    double x;
    do {
      x = u(rng);
    } while (x <= 0.0);
    v(i) = -std::log(x);
  }
  return v / v.sum();
}

bool near_lattice(const Eigen::VectorXd& zeta, double tol) {
  for (int i = 0; i < zeta.size(); ++i) {
    double fr = zeta(i) - std::round(zeta(i));
    if (std::abs(fr) > tol) return false;
  }
  return true;
}

double frac1(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;
  return f;
}

}  // namespace

PointD sample_initial_dense(const Permutation& p, const MeasureSpec& m,
                            std::uint64_t seed_index) {
  std::mt19937_64 rng(orbit_seed(m.seed, static_cast<int>(seed_index)));
  const int d = p.size();
  Eigen::VectorXd lambda = dirichlet_uniform(d, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd zeta(d);
  if (m.kind == MeasureKind::lebesgue_full_torus) {
    do {
      for (int i = 0; i < d; ++i) zeta(i) = u(rng);
    } while (near_lattice(zeta, 1e-6));
  } else if (m.kind == MeasureKind::lebesgue_H_subtorus) {
    Eigen::MatrixXi basis = h_lattice_basis(omega_pi(p));
    if (basis.cols() == 0) throw std::domain_error("degenerate subtorus basis");
    Eigen::VectorXd coeff(basis.cols());
    do {
      for (int i = 0; i < coeff.size(); ++i) coeff(i) = u(rng);
      zeta = basis.cast<double>() * coeff;
      for (int i = 0; i < d; ++i) zeta(i) = frac1(zeta(i));
    } while (near_lattice(zeta, 1e-6));
  } else {
    throw std::invalid_argument("rational measure kinds sample mod-k points");
  }
  return PointD{lambda, p, zeta};
}

PointQK sample_initial_qk(const Permutation& p, const MeasureSpec& m,
                          std::uint64_t seed_index) {
  if (m.k < 2) throw std::invalid_argument("Q_k needs k >= 2");
  std::mt19937_64 rng(orbit_seed(m.seed, static_cast<int>(seed_index)));
  const int d = p.size();
  Eigen::VectorXd lambda = dirichlet_uniform(d, rng);
  std::uniform_int_distribution<long long> ui(0, m.k - 1);
  ZetaModK zeta;
  zeta.k = m.k;
  zeta.num.assign(d, 0);
  if (m.kind == MeasureKind::rational_Qk) {
    do {
      for (int i = 0; i < d; ++i) zeta.num[i] = ui(rng);
    } while (zeta.is_zero());
  } else if (m.kind == MeasureKind::rational_Qk_subtorus) {
    Eigen::MatrixXi basis = h_lattice_basis(omega_pi(p));
    if (basis.cols() == 0) throw std::domain_error("degenerate subtorus basis");
    do {
      for (int i = 0; i < d; ++i) zeta.num[i] = 0;
      for (int j = 0; j < basis.cols(); ++j) {
        long long nj = ui(rng);
        for (int i = 0; i < d; ++i) {
          long long v = (zeta.num[i] + nj * basis(i, j)) % m.k;
          zeta.num[i] = v < 0 ? v + m.k : v;
        }
      }
    } while (zeta.is_zero());
  } else {
    throw std::invalid_argument("dense measure kinds sample real points");
  }
  return PointQK{lambda, p, zeta};
}

namespace {

struct BenettinOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::complex<double> unit_phase(double theta) {
  double a = 2.0 * std::numbers::pi * theta;
  return {std::cos(a), std::sin(a)};
}

template <class Point>
std::vector<double> run_orbit(Point x, long long steps, int qr_interval,
                              bool dual, long long cap) {
  const int d = x.lambda.size();
  for (int i = 0; i < 1000; ++i) zorich_step(x, cap);  // burn-in

  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(d, d);
  Eigen::VectorXd accum = Eigen::VectorXd::Zero(d);
  long long since_qr = 0;
  auto orthonormalize = [&]() {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(q);
    Eigen::MatrixXcd r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
      double mag = std::abs(r(i, i));
      if (!(mag > 0) || !std::isfinite(mag))
        throw BenettinOverflow("frame collapsed between QR passes");
      accum(i) += std::log(mag);
    }
    q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  };

  for (long long n = 0; n < steps; ++n) {
    auto records = zorich_step(x, cap);
    if constexpr (std::is_same_v<Point, PointQK>) {
      if (x.zeta.is_zero())
        throw std::runtime_error("Q_k orbit reached the zero point");
    }
    for (const auto& rec : records)
      apply_step(q, rec, unit_phase(rec.phase), dual);
    if (!q.allFinite()) throw BenettinOverflow("non-finite accumulator");
    if (++since_qr >= qr_interval) {
      orthonormalize();
      since_qr = 0;
    }
  }
  if (since_qr > 0) orthonormalize();

  std::vector<double> expo(d);
  for (int i = 0; i < d; ++i) expo[i] = accum(i) / static_cast<double>(steps);
  std::sort(expo.begin(), expo.end(), std::greater<double>());
  return expo;
}

}  // namespace

SpectrumEstimate benettin_spectrum(const Permutation& p, const MeasureSpec& m,
                                   long long steps, int seeds, int qr_interval,
                                   bool dual, int threads, long long zorich_cap) {
  if (steps < 1000) throw std::invalid_argument("need at least 10^3 Zorich steps");
  if (qr_interval < 1) throw std::invalid_argument("qr_interval must be >= 1");
  if (seeds < 2) throw std::invalid_argument("need at least 2 seeds");

  const bool dense = m.kind == MeasureKind::lebesgue_full_torus ||
                     m.kind == MeasureKind::lebesgue_H_subtorus;
  const int d = p.size();
  auto gk = genus_kappa(p);

  SpectrumEstimate est;
  est.perm_text = p.text();
  est.d = d;
  est.genus = gk.genus;
  est.kappa = gk.kappa;
  est.measure = m;
  est.steps = steps;
  est.seeds = seeds;
  est.qr_interval = qr_interval;
  est.dual = dual;
  est.per_seed.assign(seeds, {});

  auto run_all = [&](int interval) {
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= seeds) return;
        try {
          if (dense)
            est.per_seed[i] = run_orbit(sample_initial_dense(p, m, i), steps,
                                        interval, dual, zorich_cap);
          else
            est.per_seed[i] = run_orbit(sample_initial_qk(p, m, i), steps,
                                        interval, dual, zorich_cap);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    int n = threads > 0 ? threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, std::min(n, seeds));
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  };

  try {
    run_all(qr_interval);
  } catch (const BenettinOverflow&) {
    est.qr_interval = std::max(1, qr_interval / 2);
    run_all(est.qr_interval);  // retry once with a tighter QR cadence
  }

  est.exponents.assign(d, 0.0);
  est.stderrs.assign(d, 0.0);
  for (int i = 0; i < d; ++i) {
    double mean = 0;
    for (int s = 0; s < seeds; ++s) mean += est.per_seed[s][i];
    mean /= seeds;
    double var = 0;
    for (int s = 0; s < seeds; ++s) {
      double dev = est.per_seed[s][i] - mean;
      var += dev * dev;
    }
    var /= (seeds - 1);
    est.exponents[i] = mean;
    est.stderrs[i] = std::sqrt(var / seeds);
  }
  est.zero_tol.assign(d, 0.0);
  est.zero_count = 0;
  for (int i = 0; i < d; ++i) {
    est.zero_tol[i] = std::max(0.01, 3.0 * est.stderrs[i]);
    if (std::abs(est.exponents[i]) < est.zero_tol[i]) ++est.zero_count;
  }
  est.symmetry_defect = 0;
  for (int i = 0; i < d; ++i)
    est.symmetry_defect = std::max(
        est.symmetry_defect, std::abs(est.exponents[i] + est.exponents[d - 1 - i]));
  return est;
}

SymmetryReport symmetry_report(const SpectrumEstimate& e) {
  SymmetryReport rep;
  const int d = e.d;
  for (int i = 0; i < (d + 1) / 2; ++i) {
    PairSymmetry ps;
    ps.i = i;
    ps.j = d - 1 - i;
    ps.defect = std::abs(e.exponents[i] + e.exponents[ps.j]);
    ps.combined_stderr = std::hypot(e.stderrs[i], e.stderrs[ps.j]);
    rep.max_defect = std::max(rep.max_defect, ps.defect);
    rep.pairs.push_back(ps);
  }
  rep.zero_count = e.zero_count;
  rep.expected_zero_multiplicity = e.kappa + 1;
  rep.zero_block_matches = rep.zero_count == rep.expected_zero_multiplicity;
  return rep;
}

}  // namespace twc
