#pragma once

#include <string>
#include <variant>
#include <vector>

#include "randig/geometry.hpp"
#include "randig/kernel.hpp"

namespace randig {

/// D(n,m): uniform over digraphs with exactly m arcs, 0 < m < n(n-1).
struct UniformModel {
  int n = 2;
  int m = 1;
};
/// D(n,p_a): every arc independently with probability p_a in (0,1).
struct ArdModel {
  int n = 2;
  double p_a = 0.5;
};
/// Arc (i,j) independently with probability p[i-1][j-1]; the diagonal is ignored.
struct GardModel {
  int n = 2;
  std::vector<std::vector<double>> p;
};
/// Vertex labels x_i ~ mu i.i.d.; arc (i,j) w.p. phi(x_i,x_j). A VRD when phi is binary.
struct VardModel {
  int n = 2;
  KernelSpec kernel;
};
/// G(n,p_e). p_e = 1 (the complete graph) is admitted as a DRD generator.
struct ErgModel {
  int n = 2;
  double p_e = 0.5;
};
/// Undirected analogue of VardModel; phi must be symmetric. A VRG when binary.
struct VergModel {
  int n = 2;
  KernelSpec kernel;
};

using GraphModel = std::variant<ErgModel, VergModel>;

/// Draw G from `graph`, then orient each edge: one way w.p. 1-p_d each,
/// both ways w.p. 2p_d-1. p_d in [1/2, 1).
struct DrdModel {
  GraphModel graph;
  double p_d = 0.5;
};
/// DRD over G(n,p_e).
struct DerdModel {
  int n = 2;
  double p_e = 0.5;
  double p_d = 0.5;
};
/// kNN digraph of n i.i.d. points.
struct RnndModel {
  int n = 3;
  NndRule rule = NndRule::all(1);
  int d = 1;
  PointDistribution dist = PointDistribution::uniform_cube;
  Norm norm = Norm::l2;
};

using ModelSpec = std::variant<UniformModel, ArdModel, GardModel, VardModel, ErgModel, VergModel,
                               DrdModel, DerdModel, RnndModel>;

int vertex_count(const ModelSpec& model);
int vertex_count(const GraphModel& model);
/// True for Erg/Verg, whose outcomes are graphs rather than digraphs.
bool is_graph_family(const ModelSpec& model);
/// Serialization tag: "uniform", "ard", "gard", "vard"/"vrd", "erg", "verg"/"vrg",
/// "drd", "derd", "rnnd".
std::string family_name(const ModelSpec& model);

/// Throws InvalidArgument for out-of-range parameters and DegenerateModel for
/// parameter values that leave a single outcome.
void validate(const ModelSpec& model);
void validate(const GraphModel& model);

/// Underlying random graph family: Ard(p_a) -> Erg(2p_a - p_a^2),
/// Vard(phi) -> Verg(phi_u), Drd(G, p_d) -> G, Derd -> Erg(p_e).
/// Throws Unsupported for families without a closed form (Uniform, non-constant Gard, Rnnd).
GraphModel underlying_model(const ModelSpec& model);

}  // namespace randig
