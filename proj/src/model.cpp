#include "randig/model.hpp"

#include <cmath>

#include "randig/digraph.hpp"
#include "randig/error.hpp"

namespace randig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_n(int n, int min_n = 2) {
  if (n < min_n) {
    throw InvalidArgument("n must be >= " + std::to_string(min_n) + ", got " + std::to_string(n));
  }
}

/// Open-interval probability: endpoints are degenerate, outside [0,1] invalid.
void check_open_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in (0,1), got " + std::to_string(p));
  }
  if (p == 0.0 || p == 1.0) {
    throw DegenerateModel(std::string(what) + " = " + std::to_string(p) + " is degenerate");
  }
}

void check_edge_probability(double p_e) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) {
    throw InvalidArgument("p_e must lie in (0,1], got " + std::to_string(p_e));
  }
  if (p_e == 0.0) throw DegenerateModel("p_e = 0 is degenerate (empty graph)");
}

void check_direction_probability(double p_d) {
  if (!(p_d >= 0.5 && p_d <= 1.0)) {
    throw InvalidArgument("p_d must lie in [1/2,1), got " + std::to_string(p_d));
  }
  if (p_d == 1.0) throw DegenerateModel("p_d = 1 removes the randomness in direction");
}

}  // namespace

int vertex_count(const GraphModel& model) {
  return std::visit([](const auto& m) { return m.n; }, model);
}

int vertex_count(const ModelSpec& model) {
  return std::visit(Overloaded{
                        [](const DrdModel& m) { return vertex_count(m.graph); },
                        [](const auto& m) { return m.n; },
                    },
                    model);
}

bool is_graph_family(const ModelSpec& model) {
  return std::holds_alternative<ErgModel>(model) || std::holds_alternative<VergModel>(model);
}

std::string family_name(const ModelSpec& model) {
  return std::visit(Overloaded{
                        [](const UniformModel&) { return std::string("uniform"); },
                        [](const ArdModel&) { return std::string("ard"); },
                        [](const GardModel&) { return std::string("gard"); },
                        [](const VardModel& m) {
                          return std::string(m.kernel.is_binary() ? "vrd" : "vard");
                        },
                        [](const ErgModel&) { return std::string("erg"); },
                        [](const VergModel& m) {
                          return std::string(m.kernel.is_binary() ? "vrg" : "verg");
                        },
                        [](const DrdModel&) { return std::string("drd"); },
                        [](const DerdModel&) { return std::string("derd"); },
                        [](const RnndModel&) { return std::string("rnnd"); },
                    },
                    model);
}

void validate(const GraphModel& model) {
  std::visit(Overloaded{
                 [](const ErgModel& m) {
                   check_n(m.n);
                   check_edge_probability(m.p_e);
                 },
                 [](const VergModel& m) {
                   check_n(m.n);
                   if (!m.kernel.is_symmetric()) {
                     throw InvalidArgument("a vertex-edge random graph needs a symmetric kernel");
                   }
                 },
             },
             model);
}

void validate(const ModelSpec& model) {
  std::visit(
      Overloaded{
          [](const UniformModel& m) {
            check_n(m.n);
            const auto slots = static_cast<int>(arc_slot_count(m.n));
            if (m.m < 0 || m.m > slots) {
              throw InvalidArgument("m must lie in (0, n(n-1)), got " + std::to_string(m.m));
            }
            if (m.m == 0 || m.m == slots) {
              throw DegenerateModel("m = " + std::to_string(m.m) + " is degenerate");
            }
          },
          [](const ArdModel& m) {
            check_n(m.n);
            check_open_probability(m.p_a, "p_a");
          },
          [](const GardModel& m) {
            check_n(m.n);
            if (m.p.size() != static_cast<std::size_t>(m.n)) {
              throw InvalidArgument("GARD matrix must be n x n");
            }
            bool all_extreme = true;
            for (int i = 0; i < m.n; ++i) {
              const auto& row = m.p[static_cast<std::size_t>(i)];
              if (row.size() != static_cast<std::size_t>(m.n)) {
                throw InvalidArgument("GARD matrix must be n x n");
              }
              for (int j = 0; j < m.n; ++j) {
                if (i == j) continue;
                const double v = row[static_cast<std::size_t>(j)];
                if (!(v >= 0.0 && v <= 1.0)) {
                  throw InvalidArgument("GARD arc probabilities must lie in [0,1]");
                }
                if (v != 0.0 && v != 1.0) all_extreme = false;
              }
            }
            if (all_extreme) throw DegenerateModel("GARD with all arc probabilities in {0,1} is degenerate");
          },
          [](const VardModel& m) { check_n(m.n); },
          [](const ErgModel& m) { validate(GraphModel{m}); },
          [](const VergModel& m) { validate(GraphModel{m}); },
          [](const DrdModel& m) {
            validate(m.graph);
            check_direction_probability(m.p_d);
          },
          [](const DerdModel& m) {
            check_n(m.n);
            check_edge_probability(m.p_e);
            check_direction_probability(m.p_d);
          },
          [](const RnndModel& m) {
            m.rule.check_for(m.n);
            if (m.d < 1) throw InvalidArgument("dimension d must be >= 1");
          },
      },
      model);
}

GraphModel underlying_model(const ModelSpec& model) {
  validate(model);
  return std::visit(
      Overloaded{
          [](const ArdModel& m) -> GraphModel {
            return ErgModel{m.n, 2.0 * m.p_a - m.p_a * m.p_a};
          },
          [](const GardModel& m) -> GraphModel {
            double first = -1.0;
            for (int i = 0; i < m.n; ++i) {
              for (int j = 0; j < m.n; ++j) {
                if (i == j) continue;
                const double v = m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (first < 0.0) first = v;
                if (v != first) {
                  throw Unsupported(
                      "GARD with non-constant arc probabilities has no closed-form underlying "
                      "model; use underlying_pmf on its exact PMF");
                }
              }
            }
            return ErgModel{m.n, 2.0 * first - first * first};
          },
          [](const VardModel& m) -> GraphModel { return VergModel{m.n, m.kernel.symmetrized()}; },
          [](const DrdModel& m) -> GraphModel { return m.graph; },
          [](const DerdModel& m) -> GraphModel { return ErgModel{m.n, m.p_e}; },
          [](const auto& m) -> GraphModel {
            throw Unsupported("no closed-form underlying model for family '" +
                              family_name(ModelSpec{m}) + "'");
          },
      },
      model);
}

}  // namespace randig
