#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "casaskit/localize.hpp"
#include "casaskit/polynomial.hpp"

namespace casaskit {

// --- exact certification ---------------------------------------------------

enum class CAVerdict { trivial, ca_nontrivial_candidate, not_ca };

const char* to_string(CAVerdict v);

struct OrderEvidence {
  int order = 0;
  bool shared = false;
  Polynomial witness;  // monic gcd(f, f^{(m)}); constant when not shared
};

struct CACertificate {
  std::vector<OrderEvidence> orders;  // m = 1..n-1
  CAVerdict verdict = CAVerdict::not_ca;
};

CACertificate certify_ca(const Polynomial& p);

struct UnitDiscScaling {
  Polynomial polynomial;  // alpha^n p(z / alpha): roots multiplied by alpha
  Rational alpha;
};

/// alpha = 1 when every supplied root already lies in the open unit disc
/// (or all are zero); otherwise alpha = 2^-e with the least e such that
/// 2^e >= 2 max |z|, so the scaled roots have modulus at most 1/2.
UnitDiscScaling normalize_unit_disc(const Polynomial& p, const std::vector<GaussianRational>& common_roots);

/// The polynomial with roots alpha * lambda: coefficient a_i becomes a_i alpha^(n-i).
Polynomial scale_roots(const Polynomial& p, const GaussianRational& alpha);

struct ChainVerdict {
  bool preconditions_ok = false;
  std::string note;
  /// f^{(s+nu)}(x_nu) >= 0 for every chain entry and s = 1..n-nu-1.
  bool sign_condition = false;
  bool non_increasing = false;
  bool stationary = false;
  /// Per entry: x_nu is the largest real root of f^{(nu)}.
  std::vector<bool> maximal;
  /// A complete chain on a real-rooted polynomial meeting the sign or
  /// ordering condition without being stationary. Never expected.
  bool contradiction = false;
};

/// Checks a (possibly partial) chain x_0, x_1, ... of real rational common
/// roots, f(x_nu) = f^{(nu)}(x_nu) = 0.
ChainVerdict maximal_chain_check(const Polynomial& p, const std::vector<GaussianRational>& chain);

// --- patterns and filters --------------------------------------------------

struct MultiplicityPattern {
  std::vector<int> r;

  int n() const;
  int k() const { return static_cast<int>(r.size()); }
  int max() const;
  int min() const;
  std::string to_string() const;
};

/// All compositions of n in lexicographic order.
std::vector<MultiplicityPattern> compositions(int n);

/// Filter names accepted by FilterSet: "corollary11", "corollary3",
/// "corollary4", "multiple_root", "corollary7", "lemma11", "eq43",
/// "proposition3", "proposition4", "proposition5".
struct FilterSet {
  std::set<std::string> enabled;

  static FilterSet all();
  static FilterSet none();
  /// "on", "off", or a comma-separated list of filter names.
  static FilterSet parse(const std::string& text);
  bool has(const std::string& name) const { return enabled.count(name) > 0; }
};

struct FilterVerdict {
  bool admissible = true;
  std::string filter;  // provenance, e.g. "Corollary 11"
  std::string reason;
  std::vector<std::string> skipped;  // filters whose inputs were missing
};

/// Pattern-level filters in order: trivial class (k = 1), at least five
/// distinct roots (k <= 4), the two- and three-root exclusions (used when the
/// five-root filter is off), the multiple-root requirement (r = 1), and the
/// derivative-window filter, which only disables itself here (it needs
/// candidate roots). `filter` carries the provenance string of the one that fired.
FilterVerdict pattern_admissible(const MultiplicityPattern& pattern, const FilterSet& filters = FilterSet::all());

/// Bookkeeping the candidate-level filters consume.
struct CandidateStats {
  int n = 0, k = 0, r = 0, r0 = 0;
  std::optional<int> r1;  // multiplicity of the centroid root
  std::optional<int> r2;  // multiplicity of the shared x_{n-2}
  int r_star = 0;         // multiplicity of the extreme root where D is attained
  double D = 0.0, d = 0.0, span = 0.0, gap = 0.0;
  std::vector<double> D_m;  // m = 0..n-1
  std::vector<int> l;       // m = 0..n-1, shared roots other than the centroid
  /// [m]: every root of f^{(m)} is a root of f.
  std::vector<bool> all_derivative_roots_shared;
};

CandidateStats candidate_stats(const RealRootProfile& f);

/// Necessary conditions for a real-rooted CA-polynomial on the shared-root
/// counts l(m), the extremal distances and the derivative window. A violated
/// condition prunes.
FilterVerdict prune_inequalities(const CandidateStats& stats, const FilterSet& filters = FilterSet::all());

struct SharedRootCounts {
  std::vector<int> l;  // m = 0..n-1
  bool centroid_is_root = false;
  /// m in [r, n-2] with l(m) = l(m+1) = 0.
  std::vector<int> zero_pairs;
};

SharedRootCounts shared_root_counts(const Polynomial& p);

// --- search ----------------------------------------------------------------

/// root_of_order[m] = index j of the root assigned to f^{(m)}, or -1 when
/// the order is left free (m < r is met by the root of largest multiplicity).
struct Assignment {
  std::vector<int> root_of_order;
  std::string to_string() const;
};

/// sum over assigned m of |f^{(m)}(lambda_{j(m)})|^2 with f monic from
/// (pattern, roots). With constraints enforced, orders m >= r must be
/// assigned to interior roots, consecutive orders to different roots, and
/// the roots must increase strictly; violations throw DomainError.
double assignment_residual(const MultiplicityPattern& pattern, const std::vector<double>& roots,
                           const Assignment& assignment, bool enforce_constraints = true);

struct SearchConfig {
  int degree = 4;
  FilterSet filters = FilterSet::all();
  int multistarts = 32;
  int max_iterations = 100;
  double theta = 1e-16;
  std::uint64_t seed = 1;
  int precision_digits = 50;
  /// Per-pattern cap on assignments; 0 means unlimited.
  std::size_t assignment_budget = 0;
  bool complex_roots = false;
  /// Re-run every pattern pruned by a filter over all k^(n-1) unconstrained
  /// assignments (only for degree <= 5).
  bool brute_force_check = true;
  /// Worker threads; 0 reads CASASKIT_THREADS, falling back to hardware.
  int threads = 0;
};

struct PatternRecord {
  MultiplicityPattern pattern;
  std::optional<std::string> pruned_by;
  std::string reason;
  std::size_t assignments = 0;
  std::optional<Assignment> best_assignment;
  std::optional<double> best_residual;
  std::vector<double> minimizer;  // real parts in real mode
  std::vector<double> minimizer_imag;
  /// Brute-force minimum over all unconstrained assignments, when run.
  std::optional<double> brute_force_min;
  std::optional<bool> brute_force_agrees;
  bool budget_exhausted = false;
};

struct Candidate {
  MultiplicityPattern pattern;
  Assignment assignment;
  double residual = 0.0;
  std::string high_precision_residual;
  /// High-precision residual below 10^-precision_digits.
  bool verified = false;
  std::vector<double> roots;
  std::vector<double> roots_imag;
};

struct SearchReport {
  SearchConfig config;
  std::vector<PatternRecord> patterns;
  std::vector<Candidate> candidates;
  bool incomplete = false;
  std::string verdict;
  std::string note;
};

SearchReport search(const SearchConfig& config);

// --- constructed instances -------------------------------------------------

/// x^{r1} (x - w)^{r2} (x^2 - S x + P)^{rho} prod (x - c_i)^{rho_i} with S, P
/// rational and chosen so that the centroid is 0 and 0 +- w are the roots of
/// f^{(n-2)}. Returns nothing when the quadratic factor is not real with
/// distinct roots or its roots collide with the others.
struct SharedRootFamily {
  int r1 = 1;
  int r2 = 1;
  Rational w = 1;
  int rho = 1;
  std::vector<std::pair<Rational, int>> extra;
};

std::optional<Polynomial> shared_root_instance(const SharedRootFamily& spec);

}  // namespace casaskit
