#include "randig/rnnd.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "randig/error.hpp"
#include "randig/models.hpp"
#include "randig/parallel.hpp"
#include "randig/random.hpp"

namespace randig {

KnnDigraph knn_digraph(const PointCloud& cloud, const NndRule& rule) {
  const int n = cloud.n();
  rule.check_for(n);
  const auto& ranks = rule.ranks();
  // k < n-1, so ranks 1..k+1 all exist; rank k+1 is only inspected for ties.
  const auto depth = static_cast<std::size_t>(rule.k() + 1);

  std::vector<bool> selected(depth, false);  // selected[k] stays false
  for (int s : ranks) selected[static_cast<std::size_t>(s - 1)] = true;

  KnnDigraph out{Digraph(n), false};
  std::vector<std::pair<double, int>> order;
  order.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.emplace_back(cloud.distance(i, j), j);
    }
    // (distance, index) order breaks ties toward the smaller vertex.
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(depth), order.end());
    for (std::size_t p = 0; p < depth; ++p) {
      if (!selected[p]) continue;
      out.digraph.set_arc(i + 1, order[p].second + 1);
      const bool tie_before = p > 0 && !selected[p - 1] && order[p - 1].first == order[p].first;
      const bool tie_after = !selected[p + 1] && order[p + 1].first == order[p].first;
      if (tie_before || tie_after) out.ties = true;
    }
  }
  return out;
}

PointCloud sample_point_cloud(const RnndModel& model, std::uint64_t seed) {
  model.rule.check_for(model.n);
  if (model.d < 1) throw InvalidArgument("dimension d must be >= 1");
  const auto d = static_cast<std::size_t>(model.d);
  std::vector<double> coords(static_cast<std::size_t>(model.n) * d);
  for (int i = 0; i < model.n; ++i) {
    Stream s = Stream::derive(seed, tags::kVertex, static_cast<std::uint64_t>(i + 1));
    for (std::size_t c = 0; c < d; ++c) {
      coords[static_cast<std::size_t>(i) * d + c] =
          model.dist == PointDistribution::uniform_cube ? s.uniform() : s.normal();
    }
  }
  return PointCloud(model.n, model.d, std::move(coords), model.norm);
}

Digraph sample_rnnd(const RnndModel& model, std::uint64_t seed) {
  return knn_digraph(sample_point_cloud(model, seed), model.rule).digraph;
}

bool rnnd_has_exact_pmf(const RnndModel& model) {
  return model.n == 3 && model.rule.k() == 1;
}

Pmf rnnd_exact_pmf_n3k1() {
  std::vector<Pmf::Entry> entries;
  std::array<int, 3> v{1, 2, 3};
  do {
    const auto [i, j, k] = v;
    const Arc arcs[] = {{i, j}, {j, i}, {k, i}};
    entries.emplace_back(Digraph::from_arcs(3, arcs).mask(), 1.0 / 6.0);
  } while (std::next_permutation(v.begin(), v.end()));
  return Pmf::from_entries(3, PmfKind::digraph, std::move(entries));
}

RnndStats rnnd_stats(const RnndModel& model, std::uint64_t n_samples, std::uint64_t seed) {
  model.rule.check_for(model.n);
  if (n_samples == 0) throw InvalidArgument("rnnd_stats needs at least one sample");
  const int n = model.n;
  const int expected_out = model.rule.out_degree();
  const std::size_t pairs = edge_slot_count(n);

  struct Partial {
    int out_min = 1 << 30;
    int out_max = 0;
    int in_max = 0;
    std::vector<std::uint64_t> ns_hist;
    std::uint64_t arc12 = 0;
    std::uint64_t pair123 = 0;
    std::uint64_t out_violations = 0;
    std::uint64_t edge_violations = 0;
    std::uint64_t ties = 0;
    std::uint64_t count = 0;
  };
  constexpr unsigned kChunks = 64;
  std::vector<Partial> parts(kChunks);

  parallel_chunks(n_samples, kChunks, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    Partial& p = parts[c];
    p.count = end - begin;
    p.ns_hist.assign(pairs + 1, 0);
    std::vector<int> out_deg(static_cast<std::size_t>(n));
    std::vector<int> in_deg(static_cast<std::size_t>(n));
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto knn = knn_digraph(sample_point_cloud(model, replicate_seed(seed, t)), model.rule);
      const Digraph& d = knn.digraph;
      if (knn.ties) ++p.ties;
      std::fill(out_deg.begin(), out_deg.end(), 0);
      std::fill(in_deg.begin(), in_deg.end(), 0);
      std::size_t n_s = 0;
      const auto arcs = d.arcs();
      for (const auto& a : arcs) {
        ++out_deg[static_cast<std::size_t>(a.tail - 1)];
        ++in_deg[static_cast<std::size_t>(a.head - 1)];
        if (a.tail < a.head && d.has_arc(a.head, a.tail)) ++n_s;
      }
      for (int v = 0; v < n; ++v) {
        const int o = out_deg[static_cast<std::size_t>(v)];
        p.out_min = std::min(p.out_min, o);
        p.out_max = std::max(p.out_max, o);
        p.in_max = std::max(p.in_max, in_deg[static_cast<std::size_t>(v)]);
        if (o != expected_out) ++p.out_violations;
      }
      ++p.ns_hist[n_s];
      const std::size_t n_e = underlying_graph(d).edge_count();
      if (n_e != static_cast<std::size_t>(n * expected_out) - n_s) ++p.edge_violations;
      const bool a12 = d.has_arc(1, 2);
      if (a12) ++p.arc12;
      if (a12 && d.has_arc(1, 3)) ++p.pair123;
    }
  });

  RnndStats stats;
  stats.n_samples = n_samples;
  stats.out_degree_min = 1 << 30;
  stats.n_s_histogram.assign(pairs + 1, 0);
  std::uint64_t arc12 = 0;
  std::uint64_t pair123 = 0;
  for (const auto& p : parts) {
    if (p.count == 0) continue;
    stats.out_degree_min = std::min(stats.out_degree_min, p.out_min);
    stats.out_degree_max = std::max(stats.out_degree_max, p.out_max);
    stats.in_degree_max = std::max(stats.in_degree_max, p.in_max);
    for (std::size_t s = 0; s <= pairs; ++s) stats.n_s_histogram[s] += p.ns_hist[s];
    arc12 += p.arc12;
    pair123 += p.pair123;
    stats.out_degree_violations += p.out_violations;
    stats.edge_identity_violations += p.edge_violations;
    stats.tie_samples += p.ties;
  }
  stats.arc_marginal_est = EstimateWithError::proportion(arc12, n_samples);
  stats.joint_pair_est = EstimateWithError::proportion(pair123, n_samples);
  return stats;
}

}  // namespace randig
