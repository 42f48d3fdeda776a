#include "twc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "twc/combinatorics.hpp"
#include "twc/exact.hpp"
#include "twc/fixtures.hpp"
#include "twc/lyapunov.hpp"
#include "twc/structures.hpp"
#include "twc/substitution.hpp"

namespace twc {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kParse = 2;
constexpr int kReducible = 3;
constexpr int kOverflow = 4;
constexpr int kIdentity = 5;
constexpr int kNotCertified = 6;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << j.dump(2) << "\n";
  }
}

int default_threads() {
  if (const char* env = std::getenv("TWC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library default: hardware concurrency
}

json measure_json(const MeasureSpec& m) {
  json j;
  j["kind"] = measure_kind_name(m.kind);
  if (m.kind == MeasureKind::rational_Qk || m.kind == MeasureKind::rational_Qk_subtorus)
    j["k"] = m.k;
  j["seed"] = m.seed;
  return j;
}

int cmd_rauzy_class(const std::string& perm_text, const std::string& out_path) {
  Permutation p = Permutation::parse(perm_text);
  if (!p.irreducible()) {
    emit(json{{"error", "reducible"}, {"permutation", p.text()}}, out_path);
    return kReducible;
  }
  RauzyClass rc = rauzy_class(p);
  auto sig = sigma_decomposition(p);
  json members = json::array();
  for (const auto& q : rc.members) members.push_back(q.text());
  json edges = json::array();
  for (const auto& e : rc.edges) {
    edges.push_back(json{{"from", e.from},
                         {"to", e.to},
                         {"type", step_kind_name(e.kind)},
                         {"winner", std::string(1, p.label(e.winner))},
                         {"loser", std::string(1, p.label(e.loser))}});
  }
  json j;
  j["permutation"] = p.text();
  j["genus"] = rc.genus;
  j["kappa"] = rc.kappa;
  j["size"] = rc.members.size();
  j["members"] = members;
  j["edges"] = edges;
  j["sigma"] = json{{"cycles", sig.cycles},
                    {"convention", sig.used_literal_formula ? "literal" : "reconciled"}};
  emit(j, out_path);
  return kOk;
}

int cmd_spectrum(const std::string& perm_text, const std::string& measure_name,
                 long long k, std::uint64_t seed, long long steps, int seeds,
                 int qr_interval, bool dual, int threads,
                 const std::string& csv_path, const std::string& out_path) {
  Permutation p = Permutation::parse(perm_text);
  if (!p.irreducible()) {
    emit(json{{"error", "reducible"}, {"permutation", p.text()}}, out_path);
    return kReducible;
  }
  MeasureSpec m;
  m.kind = measure_kind_from_name(measure_name);
  m.k = k;
  m.seed = seed;
  SpectrumEstimate est;
  try {
    est = benettin_spectrum(p, m, steps, seeds, qr_interval, dual, threads);
  } catch (const ZorichOverflow& e) {
    emit(json{{"error", e.what()}, {"permutation", p.text()}, {"measure", measure_json(m)}},
         out_path);
    return kOverflow;
  }
  SymmetryReport sym = symmetry_report(est);
  json pairs = json::array();
  for (const auto& pr : sym.pairs)
    pairs.push_back(json{{"i", pr.i},
                         {"j", pr.j},
                         {"defect", pr.defect},
                         {"combined_stderr", pr.combined_stderr}});
  json j;
  j["permutation"] = est.perm_text;
  j["measure"] = measure_json(m);
  j["steps"] = est.steps;
  j["seeds"] = est.seeds;
  j["qr_interval"] = est.qr_interval;
  j["dual"] = est.dual;
  j["exponents"] = est.exponents;
  j["stderr"] = est.stderrs;
  j["zero_tol"] = est.zero_tol;
  j["symmetry_defect"] = est.symmetry_defect;
  j["zero_count"] = est.zero_count;
  j["expected_zero_multiplicity"] = sym.expected_zero_multiplicity;
  j["kappa"] = est.kappa;
  j["genus"] = est.genus;
  j["symmetry_pairs"] = pairs;
  if (!csv_path.empty()) {
    std::ofstream cs(csv_path);
    if (!cs) throw std::runtime_error("cannot open csv file: " + csv_path);
    cs << "seed";
    for (int i = 0; i < est.d; ++i) cs << ",chi_" << (i + 1);
    cs << "\n";
    for (int s = 0; s < est.seeds; ++s) {
      cs << s;
      for (int i = 0; i < est.d; ++i) cs << "," << est.per_seed[s][i];
      cs << "\n";
    }
  }
  emit(j, out_path);
  return kOk;
}

int cmd_verify(const std::string& perm_text, const std::string& fixture_name,
               bool exact, long long steps, double tol, std::uint64_t seed,
               const std::string& out_path) {
  if (!fixture_name.empty()) {
    FixtureReport rep = verify_fixture(fixture_name, exact, seed);
    json checks = json::array();
    std::string failed;
    for (const auto& c : rep.checks) {
      checks.push_back(json{{"identity_name", c.name},
                            {"pass", c.pass},
                            {"detail", c.detail}});
      if (!c.pass && failed.empty()) failed = c.name;
    }
    json j;
    j["fixture"] = rep.fixture;
    j["exact"] = rep.exact;
    j["checks"] = checks;
    j["pass"] = rep.pass;
    if (!rep.pass) j["failed_identity"] = failed;
    emit(j, out_path);
    return rep.pass ? kOk : kIdentity;
  }

  Permutation p = Permutation::parse(perm_text);
  if (!p.irreducible()) {
    emit(json{{"error", "reducible"}, {"permutation", p.text()}}, out_path);
    return kReducible;
  }
  // Walk a random orbit; at each point verify the one-step identities and
  // the block form at a fresh random zeta lift in H(pi).
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int d = p.size();
  Eigen::VectorXd lambda(d);
  {
    double sum = 0;
    for (int i = 0; i < d; ++i) {
      lambda(i) = -std::log(std::max(1e-300, u(rng)));
      sum += lambda(i);
    }
    lambda /= sum;
  }
  PointD x{lambda, p, Eigen::VectorXd()};
  StepIdentityReport worst;
  BlockFormReport worst_bf;
  long long samples = 0;
  for (long long n = 0; n < steps; ++n) {
    Eigen::MatrixXi basis = h_lattice_basis(omega_pi(x.perm));
    Eigen::VectorXd lift(d);
    for (;;) {
      Eigen::VectorXd coeff(basis.cols());
      for (int i = 0; i < coeff.size(); ++i) coeff(i) = u(rng);
      lift = basis.cast<double>() * coeff;
      Eigen::VectorXd fr = lift.array() - lift.array().round();
      if (fr.norm() > 1e-6) break;
    }
    StepIdentityReport rep = verify_step_identities(x.lambda, x.perm, lift, tol);
    BlockFormReport bf = verify_block_form(x.lambda, x.perm, lift, tol);
    ++samples;
    if (rep.max_residual > worst.max_residual) worst = rep;
    double bf_res = std::max({bf.off_block_residual, bf.psi_residual,
                              bf.unit_modulus_defect});
    double worst_res = std::max({worst_bf.off_block_residual, worst_bf.psi_residual,
                                 worst_bf.unit_modulus_defect});
    if (bf_res > worst_res) worst_bf = bf;
    rauzy_step(x);
  }
  json identities = json::array();
  auto one = [&](const std::string& name, double residual) {
    identities.push_back(json{{"identity_name", name},
                              {"max_residual", residual},
                              {"samples", samples},
                              {"tolerance", tol},
                              {"pass", residual < tol}});
  };
  one("invariant_section", worst.invariant_section);
  one("covariant_sections", worst.covariant_sections);
  one("rank_one_defect", worst.rank_one_defect);
  one("omega_invariance", worst.omega_invariance);
  one("w_covariance", worst.w_covariance);
  one("block_form", std::max(worst_bf.off_block_residual, worst_bf.unit_modulus_defect));
  one("block_form_psi", worst_bf.psi_residual);
  bool pass = true;
  std::string failed;
  for (const auto& item : identities)
    if (!item["pass"].get<bool>()) {
      pass = false;
      if (failed.empty()) failed = item["identity_name"].get<std::string>();
    }
  json j;
  j["permutation"] = p.text();
  j["steps"] = steps;
  j["tol"] = tol;
  j["identities"] = identities;
  j["pass"] = pass;
  if (!pass) j["failed_identity"] = failed;
  emit(j, out_path);
  return pass ? kOk : kIdentity;
}

int cmd_certify_sub(const std::string& rule, int n_max, long long samples,
                    const std::string& csv_path, const std::string& out_path) {
  Substitution2 s = parse_substitution(rule);
  SingularityCertificate cert = certify(s, n_max);
  ChiPlusEstimate direct = chi_plus_direct(s, samples);
  json j;
  j["rule"] = cert.rule;
  j["matrix"] = json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}};
  j["constant_length"] = s.constant_length;
  switch (cert.branch) {
    case CertBranch::constant_length: j["branch"] = "constant_length"; break;
    case CertBranch::irreducible_trace: j["branch"] = "irreducible_trace"; break;
    case CertBranch::none: j["branch"] = "none"; break;
  }
  j["verdict"] = cert.certified ? "certified" : "not_certified";
  j["perron"] = cert.perron;
  j["threshold"] = cert.threshold;
  j["chi_plus"] = cert.chi_plus;
  j["chi_plus_error"] = cert.chi_plus_error;
  j["margin"] = cert.margin;
  j["chi_plus_direct"] = json{{"value", direct.value},
                              {"stderr", direct.stderr_},
                              {"samples", direct.samples}};
  if (cert.branch == CertBranch::constant_length) {
    j["witness"] = json{{"q", cert.q},
                        {"diag_poly", cert.diag_poly},
                        {"chi_plus_diag", cert.chi_plus_diag},
                        {"l2_bound", cert.l2_bound}};
  } else if (cert.branch == CertBranch::irreducible_trace) {
    j["witness"] = json{{"n", cert.witness_n},
                        {"lambda_n_lower", cert.lambda_n_lower},
                        {"column_bound", cert.column_bound},
                        {"best_ratio", cert.best_ratio}};
  }
  j["revalidated"] = revalidate(cert);
  if (!csv_path.empty()) {
    std::ofstream cs(csv_path);
    if (!cs) throw std::runtime_error("cannot open csv file: " + csv_path);
    cs << "zeta0,zeta1,log_abs_det\n";
    std::mt19937_64 rng(0x637376ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2048; ++i) {
      double t0 = u(rng), t1 = u(rng);
      Eigen::Matrix2cd m = spectral_matrix(s, t0, t1);
      double v = std::log(std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)));
      if (!std::isfinite(v)) continue;
      cs << t0 << "," << t1 << "," << v << "\n";
    }
  }
  emit(j, out_path);
  return cert.certified ? kOk : kNotCertified;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Twisted cocycles over Rauzy-Veech renormalization"};
  app.require_subcommand(1);

  std::string perm_text, out_path, csv_path, measure_name = "lebesgue";
  std::string rule, fixture_name;
  long long steps = 1000, k = 0, samples = 1000000;
  int seeds = 16, qr_interval = 1, n_max = 60;
  int threads = default_threads();
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool dual = false, exact = false;

  auto* rc = app.add_subcommand("rauzy-class", "Enumerate a Rauzy class");
  rc->add_option("--perm", perm_text, "Permutation \"TOP/BOTTOM\"")->required();
  rc->add_option("--out", out_path, "Output JSON path (default stdout)");

  auto* sp = app.add_subcommand("spectrum", "Estimate the twisted Lyapunov spectrum");
  sp->add_option("--perm", perm_text)->required();
  sp->add_option("--measure", measure_name, "lebesgue | hpi | qk | qk-hpi");
  sp->add_option("--k", k, "Denominator for the Q_k measures");
  sp->add_option("--steps", steps, "Zorich steps per orbit")->required();
  sp->add_option("--seeds", seeds, "Independent orbits");
  sp->add_option("--qr-interval", qr_interval);
  sp->add_flag("--dual", dual, "Estimate the dual cocycle (B*)^{-1}");
  sp->add_option("--seed", seed);
  sp->add_option("--threads", threads);
  sp->add_option("--csv", csv_path, "Per-seed exponent CSV");
  sp->add_option("--out", out_path);

  auto* vf = app.add_subcommand("verify", "Verify the one-step invariant structure identities");
  vf->add_option("--perm", perm_text);
  vf->add_option("--fixture", fixture_name, "example-5.1 or example-5.2");
  vf->add_flag("--exact", exact, "Exact cyclotomic arithmetic for fixtures");
  vf->add_option("--steps", steps);
  vf->add_option("--tol", tol);
  vf->add_option("--seed", seed);
  vf->add_option("--out", out_path);

  auto* cs = app.add_subcommand("certify-sub", "Certify pure singular spectrum of a 2-letter substitution");
  cs->add_option("--rule", rule, "Substitution \"0->w0;1->w1\"")->required();
  cs->add_option("--nmax", n_max);
  cs->add_option("--samples", samples, "Monte Carlo samples for chi+");
  cs->add_option("--csv", csv_path, "Samples of (zeta, log|det B|)");
  cs->add_option("--out", out_path);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  }

  try {
    if (rc->parsed()) return cmd_rauzy_class(perm_text, out_path);
    if (sp->parsed())
      return cmd_spectrum(perm_text, measure_name, k, seed, steps, seeds,
                          qr_interval, dual, threads, csv_path, out_path);
    if (vf->parsed()) {
      if (fixture_name.empty() && perm_text.empty())
        throw std::invalid_argument("verify needs --perm or --fixture");
      return cmd_verify(perm_text, fixture_name, exact, steps, tol, seed, out_path);
    }
    if (cs->parsed()) return cmd_certify_sub(rule, n_max, samples, csv_path, out_path);
    return kParse;
  } catch (const ZorichOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOverflow;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace twc
