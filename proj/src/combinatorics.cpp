#include "twc/combinatorics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace twc {

namespace {

std::vector<std::vector<int>> cycles_of(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cyc;
    int j = start;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = sigma[j];
    }
    cycles.push_back(std::move(cyc));
  }
  // Marked cycle (containing 0) first, others by smallest element. BFS above
  // already yields that order because starts increase.
  return cycles;
}

bool is_bijection(const std::vector<int>& sigma) {
  std::vector<bool> hit(sigma.size(), false);
  for (int v : sigma) {
    if (v < 0 || v >= static_cast<int>(sigma.size()) || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace

SigmaDecomposition sigma_decomposition(const Permutation& p) {
  if (!p.irreducible())
    throw std::invalid_argument("sigma decomposition needs an irreducible permutation");
  const int d = p.size();
  // pi = pi_b o pi_t^{-1} as a 1-based map on positions.
  std::vector<int> pi(d + 1, 0), pinv(d + 1, 0);
  for (int i = 1; i <= d; ++i) {
    pi[i] = p.pi_b(p.top_letter(i));
    pinv[pi[i]] = i;
  }

  std::vector<int> literal(d + 1, -1);
  for (int i = 0; i < d; ++i)
    literal[i] = (pi[i + 1] == 1) ? 0 : pinv[pi[i + 1] - 1];
  // Literal i=d branch: pi^{-1}(pi(d)+1) - 1. Irreducibility keeps
  // pi(d)+1 <= d in range.
  literal[d] = pinv[pi[d] + 1] - 1;

  const int dim_ker = d - rank_exact(omega_pi(p));

  SigmaDecomposition out;
  out.sigma_literal = literal;
  out.sigma = literal;
  out.used_literal_formula = true;
  if (!is_bijection(out.sigma) ||
      static_cast<int>(cycles_of(out.sigma).size()) != 1 + dim_ker) {
    out.sigma[d] = pinv[d];  // reconciled convention
    out.used_literal_formula = false;
  }
  if (!is_bijection(out.sigma))
    throw std::runtime_error("sigma is not a bijection under either convention");
  out.cycles = cycles_of(out.sigma);
  out.kappa = static_cast<int>(out.cycles.size());
  if (out.kappa != 1 + dim_ker)
    throw std::runtime_error("sigma cycle count disagrees with 1 + dim ker Omega");
  return out;
}

Eigen::MatrixXi omega_pi(const Permutation& p) {
  const int d = p.size();
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == b) continue;
      if (p.pi_b(b) < p.pi_b(a) && p.pi_t(b) > p.pi_t(a))
        m(a, b) = 1;
      else if (p.pi_b(b) > p.pi_b(a) && p.pi_t(b) < p.pi_t(a))
        m(a, b) = -1;
    }
  return m;
}

GenusKappa genus_kappa(const Permutation& p) {
  auto sig = sigma_decomposition(p);
  const int d = p.size();
  const int dim_ker = d - rank_exact(omega_pi(p));
  if (sig.kappa != 1 + dim_ker)
    throw std::runtime_error("kappa mismatch between sigma cycles and kernel oracle");
  const int num = d + 1 - sig.kappa;
  if (num % 2 != 0) throw std::runtime_error("d = 2g + kappa - 1 has no integer genus");
  return GenusKappa{num / 2, sig.kappa};
}

int rank_exact(const Eigen::MatrixXi& m) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m(i, j);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (int j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<Eigen::VectorXi> kernel_basis_exact(const Eigen::MatrixXi& m) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m(i, j);
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    Rational pv = a[rank][col];
    for (int j = 0; j < cols; ++j) a[rank][j] /= pv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = 0; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Eigen::VectorXi> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free];
    BigInt lcm = 1;
    for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, denominator(q));
    Eigen::VectorXi iv(cols);
    BigInt g = 0;
    std::vector<BigInt> scaled(cols);
    for (int j = 0; j < cols; ++j) {
      scaled[j] = numerator(v[j]) * (lcm / denominator(v[j]));
      g = boost::multiprecision::gcd(g, scaled[j]);
    }
    if (g == 0) g = 1;
    for (int j = 0; j < cols; ++j)
      iv(j) = static_cast<int>(scaled[j] / g);
    basis.push_back(iv);
  }
  return basis;
}

Eigen::MatrixXi h_lattice_basis(const Eigen::MatrixXi& omega) {
  // Smith normal form U * omega * V = D, tracking W = U^{-1}. The saturated
  // column-space lattice is spanned by the first r columns of W.
  const int n = static_cast<int>(omega.rows());
  std::vector<std::vector<BigInt>> d(n, std::vector<BigInt>(n)),
      w(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i][j] = omega(i, j);
    w[i][i] = 1;
  }
  auto row_swap = [&](int i, int j) {
    std::swap(d[i], d[j]);
    for (int c = 0; c < n; ++c) std::swap(w[c][i], w[c][j]);  // W columns
  };
  auto row_add = [&](int dst, int src, const BigInt& f) {
    // d_dst += f * d_src  ==>  W col_src -= f * col_dst
    for (int c = 0; c < n; ++c) d[dst][c] += f * d[src][c];
    for (int c = 0; c < n; ++c) w[c][src] -= f * w[c][dst];
  };
  auto row_neg = [&](int i) {
    for (int c = 0; c < n; ++c) d[i][c] = -d[i][c];
    for (int c = 0; c < n; ++c) w[c][i] = -w[c][i];
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(d[r][i], d[r][j]);
  };
  auto col_add = [&](int dst, int src, const BigInt& f) {
    for (int r = 0; r < n; ++r) d[r][dst] += f * d[r][src];
  };

  int t = 0;
  while (t < n) {
    // Find a pivot in the remaining block.
    int pr = -1, pc = -1;
    for (int i = t; i < n && pr < 0; ++i)
      for (int j = t; j < n; ++j)
        if (d[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    row_swap(t, pr);
    col_swap(t, pc);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (d[i][t] == 0) continue;
        BigInt q = d[i][t] / d[t][t];
        row_add(i, t, -q);
        if (d[i][t] != 0) {
          row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        BigInt q = d[t][j] / d[t][t];
        col_add(j, t, -q);
        if (d[t][j] != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
    }
    if (d[t][t] < 0) row_neg(t);
    ++t;
  }
  const int rank = t;
  Eigen::MatrixXi basis(n, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < n; ++i) basis(i, j) = static_cast<int>(w[i][j]);
  return basis;
}

RauzyClass rauzy_class(const Permutation& p) {
  if (!p.irreducible()) throw std::invalid_argument("reducible permutation");
  RauzyClass rc;
  auto gk = genus_kappa(p);
  rc.genus = gk.genus;
  rc.kappa = gk.kappa;

  std::map<std::string, int> index;
  std::deque<int> work;
  rc.members.push_back(p);
  index[p.text()] = 0;
  work.push_back(0);
  while (!work.empty()) {
    int cur = work.front();
    work.pop_front();
    Permutation q = rc.members[cur];
    for (StepKind kind : {StepKind::top, StepKind::bottom}) {
      Permutation nxt = q.move(kind);
      if (!nxt.irreducible())
        throw std::runtime_error("Rauzy move produced a reducible permutation");
      auto [it, inserted] = index.try_emplace(nxt.text(),
                                              static_cast<int>(rc.members.size()));
      if (inserted) {
        auto ngk = genus_kappa(nxt);
        if (ngk.genus != rc.genus || ngk.kappa != rc.kappa)
          throw std::runtime_error("genus/kappa not constant along the Rauzy class");
        rc.members.push_back(nxt);
        work.push_back(it->second);
      }
      RauzyEdge e;
      e.from = cur;
      e.to = it->second;
      e.kind = kind;
      e.winner = kind == StepKind::top ? q.alpha_t() : q.alpha_b();
      e.loser = kind == StepKind::top ? q.alpha_b() : q.alpha_t();
      rc.edges.push_back(e);
    }
  }
  return rc;
}

}  // namespace twc
