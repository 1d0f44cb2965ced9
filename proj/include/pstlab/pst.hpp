#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pstlab/dynamics.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"

namespace pstlab {

// Adjacency-preserving involution P with P(a) = b.
struct SymmetryWitness {
  std::vector<int> permutation;
  int a = 0;
  int b = 0;
};

enum class SearchStatus { kFound, kNone, kInconclusive };

struct SymmetrySearch {
  SearchStatus status = SearchStatus::kNone;
  std::optional<SymmetryWitness> witness;
  std::uint64_t nodes = 0;  // backtracking nodes visited
};

inline constexpr int kExhaustiveSymmetryLimit = 10;
inline constexpr std::uint64_t kSymmetryNodeBudget = 1'000'000;

// Tries the index reversal i -> n-1-i first (this is the mirror of a path and
// the antipodal map of a row-major hypercube), then a backtracking search over
// degree-compatible involutions. Graphs larger than kExhaustiveSymmetryLimit
// are searched with a node budget; running out yields kInconclusive.
SymmetrySearch find_mirror_symmetry(const Graph& g, int a, int b,
                                    std::uint64_t node_budget = kSymmetryNodeBudget);

// Same search on a Hamiltonian matrix: P H P^T == H entrywise.
SymmetrySearch find_mirror_symmetry(const Hamiltonian& h, int a, int b,
                                    std::uint64_t node_budget = kSymmetryNodeBudget);

bool is_mirror_witness(const Eigen::MatrixXcd& m, const SymmetryWitness& w);

struct Fraction {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

// Smallest-denominator continued-fraction convergent of x within tol, or the
// last convergent with q <= q_max when none is that close.
Fraction best_convergent(double x, double tol, std::int64_t q_max);

enum class Feasibility { kFeasible, kInfeasible, kInconclusive };

std::string to_string(Feasibility f);

struct RatioVerdict {
  int i = 0;  // numerator (E_i - E_min), denominator (E_max - E_min)
  double ratio = 0.0;
  Fraction approx;
  double residual = 0.0;
  bool rational = false;
};

struct RationalityReport {
  std::vector<RatioVerdict> pairs;
  Feasibility overall = Feasibility::kInconclusive;
  double tol = 0.0;
  std::int64_t q_max = 0;
  // Verdicts come from floating-point continued fractions: evidence, not proof.
  static constexpr const char* kCaveat = "numerical, not a proof";
};

inline constexpr double kDefaultRatioTol = 1e-9;
inline constexpr std::int64_t kDefaultRatioQMax = 1000;

RationalityReport rational_ratio_test(std::span<const double> sorted_values, double tol = kDefaultRatioTol,
                                      std::int64_t q_max = kDefaultRatioQMax);

enum class Verdict { kPerfect, kImperfect, kInconclusive };

std::string to_string(Verdict v);

struct PstCertificate {
  Verdict verdict = Verdict::kInconclusive;
  double t0 = 0.0;        // time of the best transfer found
  double magnitude = 0.0; // |f_ab(t0)|
  double phase = 0.0;     // arg f_ab(t0)
  SearchStatus symmetry = SearchStatus::kInconclusive;
  // Ratio table over the levels supported on |a>; overall is kInconclusive
  // unless a mirror symmetry was found.
  std::optional<RationalityReport> rationality;
  std::string note;
};

inline constexpr double kDefaultPeakTol = 1e-9;

PstCertificate pst_certificate(const Hamiltonian& h, int a, int b, double t_max, double tol = kDefaultPeakTol);
PstCertificate pst_certificate(const Hamiltonian& h, int a, int b, double t_max, int grid, double tol);

struct PeriodicityReport {
  double return_modulus = 0.0;        // |<a| e^{-i H 2 t0} |a>|
  std::vector<double> recurrence;     // |f_ab((2n+1) t0)| for n = 1, 2, when b is given
  bool periodic = false;
};

PeriodicityReport periodicity_check(const Spectrum& spec, int a, double t0, double tol,
                                    std::optional<int> b = std::nullopt);

}  // namespace pstlab
