#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twc/combinatorics.hpp"
#include "twc/exact.hpp"
#include "twc/fixtures.hpp"
#include "twc/lyapunov.hpp"
#include "twc/mahler.hpp"
#include "twc/structures.hpp"
#include "twc/substitution.hpp"

namespace py = pybind11;
using namespace twc;

namespace {

py::dict spectrum_dict(const SpectrumEstimate& est) {
  SymmetryReport sym = symmetry_report(est);
  py::dict d;
  d["permutation"] = est.perm_text;
  d["measure"] = measure_kind_name(est.measure.kind);
  d["k"] = est.measure.k;
  d["seed"] = est.measure.seed;
  d["steps"] = est.steps;
  d["seeds"] = est.seeds;
  d["qr_interval"] = est.qr_interval;
  d["dual"] = est.dual;
  d["exponents"] = est.exponents;
  d["stderr"] = est.stderrs;
  d["zero_tol"] = est.zero_tol;
  d["symmetry_defect"] = est.symmetry_defect;
  d["zero_count"] = est.zero_count;
  d["expected_zero_multiplicity"] = sym.expected_zero_multiplicity;
  d["kappa"] = est.kappa;
  d["genus"] = est.genus;
  d["per_seed"] = est.per_seed;
  return d;
}

py::dict certificate_dict(const SingularityCertificate& c) {
  py::dict d;
  d["rule"] = c.rule;
  d["certified"] = c.certified;
  switch (c.branch) {
    case CertBranch::constant_length: d["branch"] = "constant_length"; break;
    case CertBranch::irreducible_trace: d["branch"] = "irreducible_trace"; break;
    case CertBranch::none: d["branch"] = "none"; break;
  }
  d["q"] = c.q;
  d["diag_poly"] = c.diag_poly;
  d["chi_plus_diag"] = c.chi_plus_diag;
  d["l2_bound"] = c.l2_bound;
  d["witness_n"] = c.witness_n;
  d["lambda_n_lower"] = c.lambda_n_lower;
  d["column_bound"] = c.column_bound;
  d["chi_plus"] = c.chi_plus;
  d["chi_plus_error"] = c.chi_plus_error;
  d["threshold"] = c.threshold;
  d["margin"] = c.margin;
  d["perron"] = c.perron;
  d["revalidated"] = revalidate(c);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Twisted cocycles over Rauzy-Veech renormalization";

  py::class_<Permutation>(m, "Permutation")
      .def(py::init(&Permutation::parse), py::arg("text"))
      .def("text", &Permutation::text)
      .def("size", &Permutation::size)
      .def("irreducible", &Permutation::irreducible)
      .def("top_move", &Permutation::top_move)
      .def("bottom_move", &Permutation::bottom_move)
      .def("__repr__",
           [](const Permutation& p) { return "Permutation(\"" + p.text() + "\")"; });

  m.def("genus_kappa", [](const std::string& text) {
    auto gk = genus_kappa(Permutation::parse(text));
    return py::make_tuple(gk.genus, gk.kappa);
  });
  m.def("omega_pi",
        [](const std::string& text) { return omega_pi(Permutation::parse(text)); });
  m.def("sigma", [](const std::string& text) {
    auto s = sigma_decomposition(Permutation::parse(text));
    py::dict d;
    d["sigma"] = s.sigma;
    d["cycles"] = s.cycles;
    d["kappa"] = s.kappa;
    d["convention"] = s.used_literal_formula ? "literal" : "reconciled";
    return d;
  });
  m.def("rauzy_class", [](const std::string& text) {
    Permutation p = Permutation::parse(text);
    RauzyClass rc = rauzy_class(p);
    py::list members, edges;
    for (const auto& q : rc.members) members.append(q.text());
    for (const auto& e : rc.edges) {
      py::dict ed;
      ed["from"] = e.from;
      ed["to"] = e.to;
      ed["type"] = step_kind_name(e.kind);
      ed["winner"] = std::string(1, p.label(e.winner));
      ed["loser"] = std::string(1, p.label(e.loser));
      edges.append(ed);
    }
    py::dict d;
    d["members"] = members;
    d["edges"] = edges;
    d["genus"] = rc.genus;
    d["kappa"] = rc.kappa;
    return d;
  });

  m.def("loop_b", [](const std::string& text, const std::string& moves) {
    Permutation p = Permutation::parse(text);
    return loop_product(p, parse_moves(p, moves)).b;
  });
  m.def("loop_twisted_at",
        [](const std::string& text, const std::string& moves,
           const std::vector<double>& zeta) {
          Permutation p = Permutation::parse(text);
          LoopProduct lp = loop_product(p, parse_moves(p, moves));
          const int d = p.size();
          std::vector<std::complex<double>> z(d);
          for (int i = 0; i < d; ++i)
            z[i] = std::polar(1.0, 2.0 * M_PI * zeta[i]);
          Eigen::MatrixXcd out(d, d);
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out(i, j) = lp.twisted[i][j].eval(z);
          return out;
        });
  m.def("self_similar_fixed_point",
        [](const std::string& text, const std::string& moves) {
          Permutation p = Permutation::parse(text);
          return self_similar_fixed_point(p, parse_moves(p, moves));
        });

  m.def("omega_twisted", [](const std::string& text, const Eigen::VectorXd& zeta) {
    return omega_twisted(Permutation::parse(text), zeta);
  });
  m.def("solve_eta", [](const std::string& text, const Eigen::VectorXd& lift) {
    return solve_eta(Permutation::parse(text), lift);
  });
  m.def("sections", [](const std::string& text, const Eigen::VectorXd& lift) {
    SectionData s = sections(Permutation::parse(text), lift);
    py::dict d;
    d["s"] = s.s;
    d["eta"] = s.eta;
    d["v"] = s.v;
    d["cycles"] = s.sig.cycles;
    return d;
  });
  m.def("frames", [](const std::string& text, const Eigen::VectorXd& lift) {
    FrameBundle fb = frames(Permutation::parse(text), lift);
    py::dict d;
    d["dim_N"] = fb.N.size();
    d["dim_Ntilde"] = fb.Ntilde.size();
    d["dim_Htilde"] = fb.Htilde.cols();
    d["genus"] = fb.genus;
    d["kappa"] = fb.kappa;
    d["quotient_rank_complex"] = fb.quotient_rank_complex;
    d["quotient_rank_real"] = fb.quotient_rank_real;
    d["hermitian"] = fb.hermitian;
    d["symplectic_real"] = fb.symplectic_real;
    return d;
  });
  m.def("verify_step_identities",
        [](const std::string& text, const Eigen::VectorXd& lambda,
           const Eigen::VectorXd& lift, double tol) {
          auto r = verify_step_identities(lambda, Permutation::parse(text), lift, tol);
          py::dict d;
          d["invariant_section"] = r.invariant_section;
          d["covariant_sections"] = r.covariant_sections;
          d["rank_one_defect"] = r.rank_one_defect;
          d["omega_invariance"] = r.omega_invariance;
          d["w_covariance"] = r.w_covariance;
          d["max_residual"] = r.max_residual;
          d["pass"] = r.pass;
          return d;
        },
        py::arg("perm"), py::arg("lambda_"), py::arg("zeta_lift"),
        py::arg("tol") = 1e-9);
  m.def("verify_block_form",
        [](const std::string& text, const Eigen::VectorXd& lambda,
           const Eigen::VectorXd& lift, double tol) {
          auto r = verify_block_form(lambda, Permutation::parse(text), lift, tol);
          py::dict d;
          d["unit_modulus_defect"] = r.unit_modulus_defect;
          d["off_block_residual"] = r.off_block_residual;
          d["psi"] = r.psi;
          d["psi_residual"] = r.psi_residual;
          d["pass"] = r.pass;
          return d;
        },
        py::arg("perm"), py::arg("lambda_"), py::arg("zeta_lift"),
        py::arg("tol") = 1e-9);

  m.def("spectrum",
        [](const std::string& text, const std::string& measure, long long k,
           long long steps, int seeds, int qr_interval, bool dual,
           std::uint64_t seed, int threads) {
          MeasureSpec ms;
          ms.kind = measure_kind_from_name(measure);
          ms.k = k;
          ms.seed = seed;
          return spectrum_dict(benettin_spectrum(Permutation::parse(text), ms,
                                                 steps, seeds, qr_interval, dual,
                                                 threads));
        },
        py::arg("perm"), py::arg("measure") = "lebesgue", py::arg("k") = 0,
        py::arg("steps") = 10000, py::arg("seeds") = 8,
        py::arg("qr_interval") = 1, py::arg("dual") = false, py::arg("seed") = 1,
        py::arg("threads") = 0);

  m.def("parse_substitution", [](const std::string& rule) {
    Substitution2 s = parse_substitution(rule);
    py::dict d;
    d["word0"] = s.word0;
    d["word1"] = s.word1;
    d["matrix"] = py::make_tuple(s.a, s.b, s.c, s.d);
    d["constant_length"] = s.constant_length;
    d["q"] = s.q;
    return d;
  });
  m.def("spectral_matrix", [](const std::string& rule, double z0, double z1) {
    return Eigen::Matrix2cd(spectral_matrix(parse_substitution(rule), z0, z1));
  });
  m.def("certify", [](const std::string& rule, int n_max) {
    return certificate_dict(certify(parse_substitution(rule), n_max));
  }, py::arg("rule"), py::arg("n_max") = 60);
  m.def("chi_plus_direct",
        [](const std::string& rule, long long samples, bool diagonal) {
          auto e = chi_plus_direct(parse_substitution(rule), samples, 8, diagonal);
          return py::make_tuple(e.value, e.stderr_);
        },
        py::arg("rule"), py::arg("samples") = 200000, py::arg("diagonal") = false);
  m.def("mahler_univariate", [](const std::vector<std::complex<double>>& coeffs) {
    return mahler_univariate(coeffs);
  });
  m.def("mahler_bivariate",
        [](const std::vector<std::pair<std::pair<int, int>, long long>>& terms,
           int gl_nodes, long long mc_samples) {
          LaurentPoly p(2);
          for (const auto& [e, c] : terms) p.add_term({e.first, e.second}, c);
          MahlerResult r = mahler_bivariate(p, gl_nodes, mc_samples);
          py::dict d;
          d["value"] = r.value;
          d["error_bound"] = r.error_bound;
          d["quadrature"] = r.quadrature;
          d["monte_carlo"] = r.monte_carlo;
          d["mc_stderr"] = r.mc_stderr;
          return d;
        },
        py::arg("terms"), py::arg("gl_nodes") = 512,
        py::arg("mc_samples") = 1000000);

  m.def("verify_fixture",
        [](const std::string& name, bool exact) {
          FixtureReport rep = verify_fixture(name, exact);
          py::dict d;
          d["fixture"] = rep.fixture;
          d["pass"] = rep.pass;
          py::list checks;
          for (const auto& c : rep.checks) {
            py::dict cd;
            cd["name"] = c.name;
            cd["pass"] = c.pass;
            cd["detail"] = c.detail;
            checks.append(cd);
          }
          d["checks"] = checks;
          return d;
        },
        py::arg("name"), py::arg("exact") = true);
}
