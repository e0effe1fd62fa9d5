#pragma once

#include <cstdint>
#include <vector>

#include "randig/digraph.hpp"
#include "randig/estimate.hpp"
#include "randig/geometry.hpp"
#include "randig/model.hpp"
#include "randig/pmf.hpp"

namespace randig {

struct KnnDigraph {
  Digraph digraph;
  /// Set when equal distances decided a neighbor rank; resolved toward the
  /// smaller vertex index.
  bool ties = false;
};

/// Arc (i,j) iff x_j is the s-th nearest neighbor of x_i for some selected
/// rank s. Uses the full O(n^2) distance table.
KnnDigraph knn_digraph(const PointCloud& cloud, const NndRule& rule);

/// n i.i.d. points; point i draws from the stream (seed, "vertex", i).
PointCloud sample_point_cloud(const RnndModel& model, std::uint64_t seed);
Digraph sample_rnnd(const RnndModel& model, std::uint64_t seed);

/// True when the law is distribution-free and known exactly: n = 3, one neighbor.
bool rnnd_has_exact_pmf(const RnndModel& model);

/// Mass 1/6 on each {(i,j),(j,i),(k,i)} over distinct i,j,k in [3].
Pmf rnnd_exact_pmf_n3k1();

struct RnndStats {
  int out_degree_min = 0;
  int out_degree_max = 0;
  int in_degree_max = 0;
  /// n_s_histogram[s] = number of samples with s symmetric pairs.
  std::vector<std::uint64_t> n_s_histogram;
  /// P((1,2) in A).
  EstimateWithError arc_marginal_est;
  /// P({(1,2),(1,3)} subset A).
  EstimateWithError joint_pair_est;
  /// Vertices whose out-degree differs from the rule's |S_k|.
  std::uint64_t out_degree_violations = 0;
  /// Samples where |E(U(D))| != n |S_k| - n_s.
  std::uint64_t edge_identity_violations = 0;
  std::uint64_t tie_samples = 0;
  std::uint64_t n_samples = 0;
};

RnndStats rnnd_stats(const RnndModel& model, std::uint64_t n_samples, std::uint64_t seed);

}  // namespace randig
