#pragma once

#include <cstdint>
#include <span>

#include "randig/digraph.hpp"
#include "randig/model.hpp"
#include "randig/pmf.hpp"

namespace randig {

/// Whether exact_pmf succeeds: n(n-1) <= 20, finite kernels only, and the
/// RNND only at n = 3, k = 1.
bool has_exact_pmf(const ModelSpec& model);

/*!
 * Exact distribution of a random digraph (or, for Erg/Verg, random graph).
 *
 * Vard: P(D) = sum over atom tuples x of prod(mu) * P_x(D).
 * Drd:  P(D) = P_G(U(D)) (1-p_d)^{n_as} (2p_d-1)^{n_s}.
 *
 * Throws Unsupported outside the has_exact_pmf domain.
 */
Pmf exact_pmf(const ModelSpec& model);
Pmf exact_pmf(const GraphModel& model);

/// P_x(D): product of phi(x_i,x_j) over arcs of d and (1 - phi) over non-arcs.
/// `points` holds d.n() points of kernel.dim() coordinates each.
double conditional_pattern_prob(const KernelSpec& kernel, std::span<const double> points,
                                const Digraph& d);

/// One draw; a pure function of (model, seed). Erg/Verg draws are returned
/// as symmetric digraphs; use sample_graph for the Graph form.
Digraph sample(const ModelSpec& model, std::uint64_t seed);
Graph sample_graph(const GraphModel& model, std::uint64_t seed);

/// P_G(G) = sum of P_D(D) over the fiber U(D) = G.
Pmf underlying_pmf(const Pmf& digraph_pmf);

/// Per-sample seed for replicate `index` of a Monte Carlo run.
inline std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index) {
  return Stream::derive_key(seed, tags::kSample, index);
}

}  // namespace randig
