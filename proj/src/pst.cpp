#include "pstlab/pst.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

#include "pstlab/exception.hpp"

namespace pstlab {

namespace {

struct ComplexLess {
  bool operator()(const Complex& x, const Complex& y) const {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  }
};

class InvolutionSearch {
 public:
  InvolutionSearch(const Eigen::MatrixXcd& m, std::uint64_t budget) : m_(m), n_(static_cast<int>(m.rows())) {
    unlimited_ = n_ <= kExhaustiveSymmetryLimit;
    budget_ = budget;
    signature_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      std::vector<Complex> row;
      for (int j = 0; j < n_; ++j) {
        if (j != i && m_(i, j) != Complex(0.0)) row.push_back(m_(i, j));
      }
      std::sort(row.begin(), row.end(), ComplexLess{});
      row.push_back(m_(i, i));
      signature_[i] = std::move(row);
    }
  }

  SymmetrySearch run(int a, int b) {
    SymmetrySearch result;
    perm_.assign(n_, -1);
    order_ = visit_order(a);
    if (!compatible(a, b) || !assign(a, b)) {
      result.status = SearchStatus::kNone;
      return result;
    }
    const bool found = descend(0);
    result.nodes = nodes_;
    if (found) {
      result.status = SearchStatus::kFound;
      result.witness = SymmetryWitness{perm_, a, b};
    } else {
      result.status = exhausted_ ? SearchStatus::kInconclusive : SearchStatus::kNone;
    }
    return result;
  }

 private:
  bool compatible(int u, int v) const {
    const auto& x = signature_[u];
    const auto& y = signature_[v];
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin());
  }

  // Breadth-first order from a, so each new vertex is adjacent to assigned ones
  // and inconsistencies surface early.
  std::vector<int> visit_order(int a) const {
    std::vector<int> order;
    std::vector<char> seen(n_, 0);
    for (int start : {a}) {
      std::queue<int> q;
      q.push(start);
      seen[start] = 1;
      while (!q.empty()) {
        const int v = q.front();
        q.pop();
        order.push_back(v);
        for (int w = 0; w < n_; ++w) {
          if (!seen[w] && w != v && m_(v, w) != Complex(0.0)) {
            seen[w] = 1;
            q.push(w);
          }
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (!seen[v]) order.push_back(v);
    }
    return order;
  }

  bool consistent(int u) const {
    const int pu = perm_[u];
    for (int w = 0; w < n_; ++w) {
      if (perm_[w] < 0) continue;
      if (m_(u, w) != m_(pu, perm_[w])) return false;
    }
    return true;
  }

  bool assign(int u, int v) {
    perm_[u] = v;
    perm_[v] = u;
    if (consistent(u) && consistent(v)) return true;
    perm_[u] = -1;
    perm_[v] = -1;
    return false;
  }

  bool descend(std::size_t pos) {
    while (pos < order_.size() && perm_[order_[pos]] >= 0) ++pos;
    if (pos == order_.size()) return true;
    const int u = order_[pos];
    for (int v = 0; v < n_; ++v) {
      if (perm_[v] >= 0 || !compatible(u, v)) continue;
      if (!unlimited_ && ++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (unlimited_) ++nodes_;
      if (assign(u, v)) {
        if (descend(pos + 1)) return true;
        if (exhausted_) return false;
        perm_[u] = -1;
        perm_[v] = -1;
      }
    }
    return false;
  }

  const Eigen::MatrixXcd& m_;
  int n_;
  bool unlimited_ = true;
  bool exhausted_ = false;
  std::uint64_t budget_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Complex>> signature_;
  std::vector<int> perm_;
  std::vector<int> order_;
};

SymmetrySearch search_matrix(const Eigen::MatrixXcd& m, int a, int b, std::uint64_t budget) {
  const int n = static_cast<int>(m.rows());
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::kIndex, "vertex out of range");
  SymmetryWitness reversal;
  reversal.permutation.resize(n);
  for (int i = 0; i < n; ++i) reversal.permutation[i] = n - 1 - i;
  reversal.a = a;
  reversal.b = b;
  if (reversal.permutation[a] == b && is_mirror_witness(m, reversal)) {
    return {SearchStatus::kFound, reversal, 0};
  }
  return InvolutionSearch(m, budget).run(a, b);
}

}  // namespace

bool is_mirror_witness(const Eigen::MatrixXcd& m, const SymmetryWitness& w) {
  const int n = static_cast<int>(m.rows());
  const auto& p = w.permutation;
  if (static_cast<int>(p.size()) != n) return false;
  if (p[w.a] != w.b || p[w.b] != w.a) return false;
  for (int i = 0; i < n; ++i) {
    if (p[i] < 0 || p[i] >= n || p[p[i]] != i) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(p[i], p[j]) != m(i, j)) return false;
    }
  }
  return true;
}

SymmetrySearch find_mirror_symmetry(const Graph& g, int a, int b, std::uint64_t node_budget) {
  if (!g.connected()) throw Error(ErrorKind::kPrecondition, "symmetry search needs a connected graph");
  return search_matrix(g.adjacency().cast<Complex>(), a, b, node_budget);
}

SymmetrySearch find_mirror_symmetry(const Hamiltonian& h, int a, int b, std::uint64_t node_budget) {
  return search_matrix(h.matrix(), a, b, node_budget);
}

Fraction best_convergent(double x, double tol, std::int64_t q_max) {
  if (!std::isfinite(x)) throw Error(ErrorKind::kDomain, "cannot approximate a non-finite value");
  if (q_max < 1) throw Error(ErrorKind::kDomain, "q_max must be at least 1");
  const long double ax = std::abs(static_cast<long double>(x));
  long double y = ax;
  std::int64_t h_prev = 0, h = 1;
  std::int64_t k_prev = 1, k = 0;
  Fraction best{0, 1};
  bool have = false;
  for (int it = 0; it < 64; ++it) {
    const long double fl = std::floor(y);
    if (fl > 9.0e15L) break;
    const auto term = static_cast<std::int64_t>(fl);
    const std::int64_t h_next = term * h + h_prev;
    const std::int64_t k_next = term * k + k_prev;
    if (k_next > q_max || k_next <= 0 || h_next < 0) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    best = {h, k};
    have = true;
    const long double err = std::abs(ax - static_cast<long double>(h) / static_cast<long double>(k));
    if (err <= tol) break;
    const long double frac = y - fl;
    if (frac <= 0.0L) break;
    y = 1.0L / frac;
  }
  if (!have) best = {static_cast<std::int64_t>(std::llround(ax)), 1};
  if (x < 0) best.p = -best.p;
  return best;
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible: return "feasible";
    case Feasibility::kInfeasible: return "infeasible";
    case Feasibility::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPerfect: return "perfect";
    case Verdict::kImperfect: return "imperfect";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RationalityReport rational_ratio_test(std::span<const double> values, double tol, std::int64_t q_max) {
  if (!(tol > 0.0)) throw Error(ErrorKind::kDomain, "tol must be positive");
  if (q_max < 1) throw Error(ErrorKind::kDomain, "q_max must be at least 1");
  if (values.empty()) throw Error(ErrorKind::kDegenerateSpectrum, "empty spectrum");
  if (!std::is_sorted(values.begin(), values.end())) throw Error(ErrorKind::kPrecondition, "values must be sorted");
  const double lo = values.front();
  const double hi = values.back();
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  if (hi - lo <= 1e-12 * scale) throw Error(ErrorKind::kDegenerateSpectrum, "all eigenvalues are equal");

  RationalityReport report;
  report.tol = tol;
  report.q_max = q_max;
  bool all_rational = true;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    RatioVerdict v;
    v.i = static_cast<int>(i);
    v.ratio = (values[i] - lo) / (hi - lo);
    v.approx = best_convergent(v.ratio, tol, q_max);
    v.residual = std::abs(v.ratio - static_cast<double>(v.approx.p) / static_cast<double>(v.approx.q));
    v.rational = v.residual <= tol;
    all_rational = all_rational && v.rational;
    report.pairs.push_back(v);
  }
  report.overall = all_rational ? Feasibility::kFeasible : Feasibility::kInfeasible;
  return report;
}

namespace {

// Distinct eigenvalues whose eigenspaces overlap |a>; only these enter the
// periodicity condition for the state started at a.
std::vector<double> supported_levels(const Spectrum& spec, int a) {
  std::vector<double> levels;
  const double scale = 1.0 + spec.values.cwiseAbs().maxCoeff();
  int k = 0;
  while (k < spec.dim()) {
    int end = k;
    double weight = 0.0;
    while (end < spec.dim() && spec.values[end] - spec.values[k] <= 1e-9 * scale) {
      weight += std::norm(spec.vectors(a, end));
      ++end;
    }
    if (weight > 1e-12) levels.push_back(spec.values[k]);
    k = end;
  }
  return levels;
}

}  // namespace

PstCertificate pst_certificate(const Hamiltonian& h, int a, int b, double t_max, int grid, double tol) {
  const Spectrum spec = diagonalize(h);
  const TransferPeak peak = find_transfer_peak(spec, a, b, t_max, grid);

  PstCertificate cert;
  cert.t0 = peak.time;
  cert.magnitude = peak.magnitude;
  cert.phase = std::arg(peak.amplitude);
  // Report phases in (-pi, pi]; arg returns -pi for -1 - 0i.
  if (cert.phase <= -std::numbers::pi + 1e-12) cert.phase += 2.0 * std::numbers::pi;
  const bool reached = 1.0 - peak.magnitude < tol;
  cert.verdict = reached ? Verdict::kPerfect : Verdict::kImperfect;

  const auto sym = find_mirror_symmetry(h, a, b);
  cert.symmetry = sym.status;
  const auto levels = supported_levels(spec, a);
  if (sym.status == SearchStatus::kFound) {
    if (levels.size() >= 2) {
      cert.rationality = rational_ratio_test(levels);
      const bool rational = cert.rationality->overall == Feasibility::kFeasible;
      if (reached && !rational) {
        cert.verdict = Verdict::kInconclusive;
        cert.note = "transfer peak reached but eigenvalue-difference ratios look irrational";
      } else if (!reached && rational) {
        cert.note = "ratios look rational; a longer horizon may reach perfect transfer";
      }
    }
  } else {
    // The ratio condition is only necessary for mirror-symmetric systems, so
    // the table is reported without a verdict.
    if (levels.size() >= 2) {
      cert.rationality = rational_ratio_test(levels);
      cert.rationality->overall = Feasibility::kInconclusive;
    }
    cert.note = "no mirror symmetry established; rationality verdict withheld";
  }
  return cert;
}

PstCertificate pst_certificate(const Hamiltonian& h, int a, int b, double t_max, double tol) {
  return pst_certificate(h, a, b, t_max, default_grid(t_max), tol);
}

PeriodicityReport periodicity_check(const Spectrum& spec, int a, double t0, double tol, std::optional<int> b) {
  if (!(t0 > 0.0)) throw Error(ErrorKind::kDomain, "t0 must be positive");
  PeriodicityReport report;
  report.return_modulus = std::abs(transfer_amplitude(spec, a, a, 2.0 * t0));
  report.periodic = std::abs(report.return_modulus - 1.0) <= tol;
  if (b) {
    for (int n = 1; n <= 2; ++n) {
      const double m = std::abs(transfer_amplitude(spec, a, *b, (2 * n + 1) * t0));
      report.recurrence.push_back(m);
      report.periodic = report.periodic && std::abs(m - 1.0) <= tol;
    }
  }
  return report;
}

}  // namespace pstlab
