#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randig/digraph.hpp"
#include "randig/estimate.hpp"
#include "randig/kernel.hpp"
#include "randig/model.hpp"
#include "randig/pmf.hpp"

namespace randig {

/// Absolute tolerance for comparisons between exact quantities.
inline constexpr double kExactTol = 1e-12;
/// Monte Carlo acceptance band, in standard errors.
inline constexpr double kSigmaBand = 4.0;

/// (1/2) sum |P1 - P2|. Both Pmfs must share n and kind.
double total_variation(const Pmf& p1, const Pmf& p2);

struct InvarianceReport {
  bool invariant = true;
  /// max - min mass inside the worst orbit.
  double worst_spread = 0.0;
  std::uint64_t worst_canonical = 0;
  /// Members of the worst orbit, ascending, with their masses.
  std::vector<Pmf::Entry> worst_orbit;
  std::uint64_t orbit_count = 0;
};

/// Orbit-by-orbit check that isomorphic digraphs carry equal mass; digraph
/// Pmfs with n <= 5.
InvarianceReport invariance_check(const Pmf& p, double tol);

/// Calls hit(d) on `n_samples` draws of `model` (replicate t uses
/// replicate_seed(seed, t)) and returns how many returned true.
std::uint64_t count_hits(const ModelSpec& model, std::uint64_t n_samples, std::uint64_t seed,
                         const std::function<bool(const Digraph&)>& hit);

/// Sample frequencies as a Pmf over digraphs (n <= 8).
Pmf empirical_pmf(const ModelSpec& model, std::uint64_t n_samples, std::uint64_t seed);

/*!
 * P(required subset of A and forbidden disjoint from A).
 *
 * Exact when the model has an exact PMF or arc decisions factor over vertex
 * pairs (Ard, Gard, Derd, Drd over Erg); otherwise a proportion over
 * `n_samples` draws. For Erg/Verg an arc (i,j) means the edge {i,j}.
 */
EstimateWithError event_probability(const ModelSpec& model, std::span<const Arc> required,
                                    std::span<const Arc> forbidden, std::uint64_t n_samples,
                                    std::uint64_t seed);

struct DerdArdParams {
  double p_d = 0.5;
  double p_a = 0.0;
  /// p_e = 1 forces p_d = 1, outside the admissible range.
  bool degenerate = false;
};

/// The unique (p_d, p_a) making Derd{n,p_e,p_d} equal in law to Ard{n,p_a}.
DerdArdParams derd_ard_params(double p_e);

/// f(u,v) g(u',v') over [0,1)^2 whose VARD on n <= 3 vertices is Derd{n,p_e,p_d}.
KernelSpec derd3_vard_kernel(double p_e, double p_d, int n);

struct MomentCheck {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  /// 0 for grid quadrature.
  double std_error = 0.0;
  std::uint64_t n_points = 0;
  bool monte_carlo = false;
  bool pass = false;
};

/// int g, int g(x,y)g(y,z), int g(x,y)g(y,z)g(z,x): a grid^2 midpoint rule for
/// the first (tolerance 1e-3), Monte Carlo with n_mc points for the others.
std::array<MomentCheck, 3> g_moment_checks(double p_d, std::uint64_t seed,
                                           std::uint64_t n_mc = 1'000'000, int grid = 1000);

struct SpectralReport {
  std::vector<double> eigenvalues;  // descending by absolute value
  double lambda4_sum = 0.0;
  double cycle_moment = 0.0;
  double abs_diff = 0.0;
};

/// Eigenvalues of sqrt(w_i) h_ij sqrt(w_j) against the weighted sum of
/// h(a,b)h(b,c)h(c,d)h(d,a). h must be symmetric.
SpectralReport spectral_cycle_moment(const FiniteKernel& h);

struct ConstancyReport {
  /// Set when the quantity is constant within tol over the checked pairs.
  std::optional<double> phi_product;
  std::optional<double> complement_product;
  std::optional<double> sum;
  /// Weighted means over the same pairs.
  double mean_phi_product = 0.0;
  double mean_complement_product = 0.0;
  double mean_sum = 0.0;
  std::uint64_t pairs_checked = 0;
  /// Continuous kernels are evaluated on a point grid: evidence only.
  bool discretized = false;
};

/*!
 * Whether phi(x,y)phi(y,x), (1-phi(x,y))(1-phi(y,x)) and phi(x,y)+phi(y,x)
 * are constant.
 *
 * Finite kernels: every atom pair with positive weight product, diagonal
 * included. Other kernels: distinct pairs of `grid` stratified points
 * (diagonal pairs are null for atomless mu).
 */
ConstancyReport kernel_product_constancy(const KernelSpec& kernel, double tol, int grid = 64);

struct PositiveDependenceReport {
  int m = 2;
  EstimateWithError lhs;  // P({(1,2),...,(1,m)} in A)
  EstimateWithError arc;  // P((1,2) in A)
  double rhs = 0.0;       // arc^(m-1)
  double tolerance = 0.0;
  bool holds = false;
  bool equality = false;
};

/// lhs >= rhs up to 4 combined standard errors (1e-12 when both are exact).
PositiveDependenceReport positive_dependence_check(const ModelSpec& model, int m,
                                                   std::uint64_t n_samples, std::uint64_t seed);

struct N2Classification {
  bool isomorphism_invariant = true;
  std::optional<double> p_a;
  double p_e = 0.0;
  double p_d = 0.5;
  bool degenerate = false;
};

/// Two-vertex law: p1 on each single-arc digraph, p2 on the two-arc digraph.
N2Classification n2_classify(double p1, double p2);

struct MassComparison {
  std::uint64_t mask = 0;
  double exact = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  bool pass = false;
};

struct EmpiricalComparison {
  std::vector<MassComparison> masses;  // every state, ascending
  double tv = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t failures = 0;
  bool pass() const noexcept { return failures == 0; }
};

/// Per-digraph comparison of sample frequencies against an exact digraph
/// Pmf: |freq - p| <= 4 sqrt(p(1-p)/N), and freq = 0 wherever p = 0.
EmpiricalComparison compare_to_exact(const ModelSpec& model, const Pmf& exact,
                                     std::uint64_t n_samples, std::uint64_t seed);

}  // namespace randig
