#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casaskit/polynomial.hpp"

namespace casaskit {

enum class Backend { exact, numeric };

const char* to_string(Backend b);

struct Tolerance {
  /// Relative to the magnitude of the compared quantities.
  double relative = 1e-9;
};

using InputEcho = std::vector<std::pair<std::string, std::string>>;

/// Residual of one identity. Identities with two equalities carry one exact
/// residual per equality; `residual` is the largest magnitude.
struct IdentityReport {
  std::string id;
  Backend backend = Backend::exact;
  std::vector<GaussianRational> exact_residuals;
  double residual = 0.0;
  bool pass = false;
  bool hypothesis_ok = true;
  std::string note;
  InputEcho inputs;
};

/// Verdict for lower <= value <= upper, either side optional. `slack` is the
/// smaller margin (negative when violated). `holds` is only meaningful when
/// hypothesis_ok.
struct BoundReport {
  std::string id;
  std::optional<double> lower;
  double value = 0.0;
  std::optional<double> upper;
  bool holds = false;
  bool hypothesis_ok = true;
  double slack = 0.0;
  std::string note;
  InputEcho inputs;

  /// True when value meets a present side to within tol (absolute, scaled by
  /// max(1, |value|)).
  bool attains_equality(double tol) const;
};

/// Everything the real-rooted inequalities consume. Root data are doubles;
/// the shared-root structure is decided by exact gcds when built from a
/// Polynomial and by tolerance matching when built from numeric roots.
struct RealRootProfile {
  int n = 0;
  std::vector<double> roots;  // distinct, ascending
  std::vector<int> multiplicities;
  double centroid = 0.0;        // x_{n-1}
  double gap = 0.0;             // |x_{n-1} - x_{n-2}|
  double penultimate = 0.0;     // chosen x_{n-2}; the shared root when one exists
  /// [m] = roots of f^{(m)} repeated by multiplicity, ascending, m = 0..n-1.
  std::vector<std::vector<double>> derivative_roots;
  std::optional<int> centroid_root;     // j with lambda_j = x_{n-1}
  std::optional<int> penultimate_root;  // j with lambda_j = x_{n-2}
  /// [m] = indices j with f^{(m)}(lambda_j) = 0, m = 0..n-1.
  std::vector<std::vector<int>> shared;
  /// [m] = whether x_{n-1} is a root of f^{(m)}.
  std::vector<bool> centroid_in_derivative;
  bool exact_structure = false;

  int k() const { return static_cast<int>(roots.size()); }
  int r() const;   // max multiplicity
  int r0() const;  // min multiplicity
  double span() const { return roots.back() - roots.front(); }
};

/// Requires a real-rooted polynomial of degree >= 2 (DomainError otherwise).
RealRootProfile real_root_profile(const Polynomial& p);

/// From distinct real roots and multiplicities (n = sum >= 2).
RealRootProfile real_root_profile(const std::vector<double>& roots, const std::vector<int>& multiplicities,
                                  const Tolerance& tol = {});

/// Roots of f^{(m)} from the roots of f^{(m-1)}: each root of multiplicity
/// mu >= 2 survives with mu - 1, and one simple root sits strictly between
/// consecutive distinct roots, located by bisection on the logarithmic
/// derivative.
std::vector<double> next_derivative_roots(const std::vector<double>& roots_with_multiplicity);

// --- identities ------------------------------------------------------------

/// Centroid, first and second-moment identities at z for f and f^{(m)}:
/// ids eq15, eq16, eq17. 0 <= m <= n-2.
std::array<IdentityReport, 3> sz_nagy_residuals(const Polynomial& p, const GaussianRational& z, int m,
                                                Backend backend = Backend::exact, const Tolerance& tol = {});

/// Mixed identity for a centroid root lambda_1 and a root z_m shared by f and
/// f^{(m)}, 1 <= m <= n-2. The shared root is auto-detected (excluding the
/// centroid) unless supplied. The exact backend needs a rational z_m and
/// falls back to numerics otherwise, saying so in the note.
IdentityReport lemma2_residual(const Polynomial& p, int m, const std::optional<GaussianRational>& shared = {},
                               Backend backend = Backend::exact, const Tolerance& tol = {});

// --- inequalities ----------------------------------------------------------

/// Consecutive-gap bounds eq26, eq27, eq28; n > 2, 1 <= m <= n-2.
std::array<BoundReport, 3> gap_bounds(const RealRootProfile& f, int m, const Tolerance& tol = {});

/// |lambda_j - x_{n-1}| against the multiple-root radius; 0 <= m <= r_j - 1.
/// id eq30 for m = 0, eq29 otherwise.
BoundReport laguerre_interval(const RealRootProfile& f, int j, int m, const Tolerance& tol = {});

/// max_nu |xi^{(m)}_nu - x_{n-1}| <= (n-m-1) gap; id eq31, 0 <= m <= n-2.
BoundReport derivative_root_interval(const RealRootProfile& f, int m, const Tolerance& tol = {});

/// Radius for lambda_s when the centroid is a root of f; id eq32.
BoundReport common_root_interval(const RealRootProfile& f, int s, const Tolerance& tol = {});

/// Shared-root localization for f^{(m)}, r <= m <= n-2; id eq33. Every root
/// shared by f and f^{(m)} other than the centroid is checked; the report
/// keeps the tightest one.
BoundReport ca_mth_bound(const RealRootProfile& f, int m, const Tolerance& tol = {});

struct ExtremalStats {
  std::optional<double> d, D;  // over roots of f other than x_{n-1}
  std::vector<double> d_m, D_m, span_m;  // per order m = 0..n-1
  double span = 0.0;
  double lambda_star = 0.0, lambda_low = 0.0;
  int r_star = 0, r_low = 0;
};

ExtremalStats extremal_stats(const RealRootProfile& f);

/// eq36, eq37: needs x_{n-1} = lambda_1, x_{n-2} = lambda_2 roots of f,
/// k >= 3, and D attained at a third root.
std::array<BoundReport, 2> lemma7_bounds(const RealRootProfile& f, const Tolerance& tol = {});

/// eq38: same shared roots as lemma7_bounds and r_1 + r_2 < n.
BoundReport span_lower_bound(const RealRootProfile& f, const Tolerance& tol = {});

/// eq39, eq40, eq41, eq42 for r <= m <= n-2 (eq42 needs m <= n-3); eq40 and
/// eq42 need x_{n-1} to be a root of f^{(m)}.
std::array<BoundReport, 4> lemma9_bounds(const RealRootProfile& f, int m, const Tolerance& tol = {});

}  // namespace casaskit
