#include <numeric>
#include <vector>

#include "randig/error.hpp"
#include "randig/models.hpp"
#include "randig/rnnd.hpp"

namespace randig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool coin(std::uint64_t seed, std::uint64_t tag, std::uint64_t index, double p) {
  return Stream::derive(seed, tag, index).uniform() < p;
}

/// x_1..x_n, point i from the stream (seed, "vertex", i).
std::vector<double> draw_labels(const KernelSpec& kernel, int n, std::uint64_t seed) {
  const std::size_t dim = kernel.dim();
  std::vector<double> x(static_cast<std::size_t>(n) * dim);
  for (int i = 1; i <= n; ++i) {
    Stream s = Stream::derive(seed, tags::kVertex, static_cast<std::uint64_t>(i));
    kernel.sample_point(s, std::span<double>(x).subspan(static_cast<std::size_t>(i - 1) * dim, dim));
  }
  return x;
}

Digraph orient(const Graph& g, double p_d, std::uint64_t seed) {
  const int n = g.n();
  Digraph d(n);
  for (const auto& e : g.edges()) {
    const double u =
        Stream::derive(seed, tags::kOrient, edge_slot(n, e.u, e.v)).uniform();
    if (u < 1.0 - p_d) {
      d.set_arc(e.u, e.v);
    } else if (u < 2.0 * (1.0 - p_d)) {
      d.set_arc(e.v, e.u);
    } else {
      d.set_arc(e.u, e.v);
      d.set_arc(e.v, e.u);
    }
  }
  return d;
}

Digraph symmetric_digraph(const Graph& g) {
  Digraph d(g.n());
  for (const auto& e : g.edges()) {
    d.set_arc(e.u, e.v);
    d.set_arc(e.v, e.u);
  }
  return d;
}

}  // namespace

Graph sample_graph(const GraphModel& model, std::uint64_t seed) {
  validate(model);
  return std::visit(Overloaded{
                        [&](const ErgModel& m) {
                          Graph g(m.n);
                          for (std::size_t s = 0; s < g.slot_count(); ++s) {
                            if (coin(seed, tags::kEdge, s, m.p_e)) {
                              const Edge e = slot_edge(m.n, s);
                              g.set_edge(e.u, e.v);
                            }
                          }
                          return g;
                        },
                        [&](const VergModel& m) {
                          const std::size_t dim = m.kernel.dim();
                          const auto x = draw_labels(m.kernel, m.n, seed);
                          std::span<const double> xs(x);
                          Graph g(m.n);
                          for (int i = 1; i <= m.n; ++i) {
                            for (int j = i + 1; j <= m.n; ++j) {
                              const double p = m.kernel.phi(
                                  xs.subspan(static_cast<std::size_t>(i - 1) * dim, dim),
                                  xs.subspan(static_cast<std::size_t>(j - 1) * dim, dim));
                              if (coin(seed, tags::kEdge, edge_slot(m.n, i, j), p)) g.set_edge(i, j);
                            }
                          }
                          return g;
                        },
                    },
                    model);
}

Digraph sample(const ModelSpec& model, std::uint64_t seed) {
  validate(model);
  return std::visit(
      Overloaded{
          [&](const UniformModel& m) {
            // Partial Fisher-Yates over the slots.
            const std::size_t slots = arc_slot_count(m.n);
            std::vector<std::uint32_t> order(slots);
            std::iota(order.begin(), order.end(), 0u);
            Stream s = Stream::derive(seed, tags::kUniform, 0);
            Digraph d(m.n);
            for (std::size_t i = 0; i < static_cast<std::size_t>(m.m); ++i) {
              const std::size_t j = i + s.below(slots - i);
              std::swap(order[i], order[j]);
              const Arc a = slot_arc(m.n, order[i]);
              d.set_arc(a.tail, a.head);
            }
            return d;
          },
          [&](const ArdModel& m) {
            Digraph d(m.n);
            for (std::size_t s = 0; s < d.slot_count(); ++s) {
              if (coin(seed, tags::kArc, s, m.p_a)) {
                const Arc a = slot_arc(m.n, s);
                d.set_arc(a.tail, a.head);
              }
            }
            return d;
          },
          [&](const GardModel& m) {
            Digraph d(m.n);
            for (std::size_t s = 0; s < d.slot_count(); ++s) {
              const Arc a = slot_arc(m.n, s);
              const double p = m.p[static_cast<std::size_t>(a.tail - 1)][static_cast<std::size_t>(a.head - 1)];
              if (coin(seed, tags::kArc, s, p)) d.set_arc(a.tail, a.head);
            }
            return d;
          },
          [&](const VardModel& m) {
            const std::size_t dim = m.kernel.dim();
            const auto x = draw_labels(m.kernel, m.n, seed);
            std::span<const double> xs(x);
            Digraph d(m.n);
            for (std::size_t s = 0; s < d.slot_count(); ++s) {
              const Arc a = slot_arc(m.n, s);
              const double p =
                  m.kernel.phi(xs.subspan(static_cast<std::size_t>(a.tail - 1) * dim, dim),
                               xs.subspan(static_cast<std::size_t>(a.head - 1) * dim, dim));
              if (coin(seed, tags::kArc, s, p)) d.set_arc(a.tail, a.head);
            }
            return d;
          },
          [&](const ErgModel& m) { return symmetric_digraph(sample_graph(GraphModel{m}, seed)); },
          [&](const VergModel& m) { return symmetric_digraph(sample_graph(GraphModel{m}, seed)); },
          [&](const DrdModel& m) { return orient(sample_graph(m.graph, seed), m.p_d, seed); },
          [&](const DerdModel& m) {
            return orient(sample_graph(ErgModel{m.n, m.p_e}, seed), m.p_d, seed);
          },
          [&](const RnndModel& m) { return sample_rnnd(m, seed); },
      },
      model);
}

}  // namespace randig
