#include "randig/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "randig/error.hpp"

namespace randig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <typename T>
T field(const Json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string(what) + ": field '" + key + "' has the wrong type (" + e.what() + ")");
  }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback, std::string_view what) {
  return j.contains(key) ? field<T>(j, key, what) : fallback;
}

std::string tag_of(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument("expected a JSON object, got " + j.dump());
  return field<std::string>(j, key, "object");
}

}  // namespace

Json to_json(const KernelSpec& kernel) {
  return std::visit(
      Overloaded{
          [](const FiniteKernel& k) {
            Json phi = Json::array();
            for (std::size_t a = 0; a < k.atoms(); ++a) {
              Json row = Json::array();
              for (std::size_t b = 0; b < k.atoms(); ++b) row.push_back(k.at(a, b));
              phi.push_back(row);
            }
            Json j{{"type", "finite"}, {"weights", k.weights}, {"phi", phi}};
            if (!k.labels.empty()) j["labels"] = k.labels;
            return j;
          },
          [](const HalfLineKernel&) { return Json{{"type", "half_line"}}; },
          [](const BallKernel& k) { return Json{{"type", "ball"}, {"r", k.r}, {"dim", k.dim}}; },
          [](const TwoValueKernel& k) { return Json{{"type", "two_value"}, {"a", k.a}, {"b", k.b}}; },
          [](const Circle38Kernel&) { return Json{{"type", "circle38"}}; },
          [](const Derd3ProductKernel& k) {
            return Json{{"type", "derd3_product"}, {"p_e", k.p_e}, {"p_d", k.p_d}};
          },
          [](const IntersectionKernel& k) { return Json{{"type", "intersection"}, {"m", k.m}, {"q", k.q}}; },
          [](const ConstantKernel& k) { return Json{{"type", "constant"}, {"p", k.p}}; },
          [](const UnionKernel& k) { return Json{{"type", "union"}, {"base", to_json(*k.base)}}; },
      },
      kernel.variant());
}

KernelSpec kernel_from_json(const Json& j) {
  // A bare {weights, phi} object is a finite kernel.
  const std::string type =
      j.is_object() && !j.contains("type") && j.contains("phi") ? "finite" : tag_of(j, "type");
  const std::string what = "kernel '" + type + "'";
  if (type == "finite") {
    FiniteKernel k;
    k.weights = field<std::vector<double>>(j, "weights", what);
    const auto rows = field<std::vector<std::vector<double>>>(j, "phi", what);
    if (rows.size() != k.weights.size()) throw InvalidArgument("finite kernel: phi must have one row per atom");
    for (const auto& row : rows) {
      if (row.size() != k.weights.size()) throw InvalidArgument("finite kernel: phi must be square");
      k.phi.insert(k.phi.end(), row.begin(), row.end());
    }
    k.labels = field_or<std::vector<std::string>>(j, "labels", {}, what);
    return KernelSpec(std::move(k));
  }
  if (type == "half_line") return KernelSpec(HalfLineKernel{});
  if (type == "ball") return KernelSpec(BallKernel{field<double>(j, "r", what), field_or<int>(j, "dim", 1, what)});
  if (type == "two_value") return KernelSpec(TwoValueKernel{field<double>(j, "a", what), field<double>(j, "b", what)});
  if (type == "circle38") return KernelSpec(Circle38Kernel{});
  if (type == "derd3_product") {
    return KernelSpec(Derd3ProductKernel{field<double>(j, "p_e", what), field<double>(j, "p_d", what)});
  }
  if (type == "intersection") {
    return KernelSpec(IntersectionKernel{field<int>(j, "m", what), field_or<double>(j, "q", 0.5, what)});
  }
  if (type == "constant") return KernelSpec(ConstantKernel{field<double>(j, "p", what)});
  if (type == "union") {
    if (!j.contains("base")) throw InvalidArgument("union kernel: missing field 'base'");
    return KernelSpec(UnionKernel{std::make_shared<const KernelSpec>(kernel_from_json(j.at("base")))});
  }
  throw InvalidArgument("unknown kernel type '" + type +
                        "' (expected finite, half_line, ball, two_value, circle38, derd3_product, "
                        "intersection, constant, union)");
}

Json to_json(const GraphModel& model) {
  return std::visit(Overloaded{
                        [](const ErgModel& m) { return Json{{"family", "erg"}, {"n", m.n}, {"p_e", m.p_e}}; },
                        [](const VergModel& m) {
                          return Json{{"family", m.kernel.is_binary() ? "vrg" : "verg"},
                                      {"n", m.n},
                                      {"kernel", to_json(m.kernel)}};
                        },
                    },
                    model);
}

Json to_json(const ModelSpec& model) {
  return std::visit(
      Overloaded{
          [](const UniformModel& m) { return Json{{"family", "uniform"}, {"n", m.n}, {"m", m.m}}; },
          [](const ArdModel& m) { return Json{{"family", "ard"}, {"n", m.n}, {"p_a", m.p_a}}; },
          [](const GardModel& m) { return Json{{"family", "gard"}, {"n", m.n}, {"p", m.p}}; },
          [](const VardModel& m) {
            return Json{{"family", m.kernel.is_binary() ? "vrd" : "vard"},
                        {"n", m.n},
                        {"kernel", to_json(m.kernel)}};
          },
          [](const ErgModel& m) { return to_json(GraphModel{m}); },
          [](const VergModel& m) { return to_json(GraphModel{m}); },
          [](const DrdModel& m) {
            return Json{{"family", "drd"}, {"graph_model", to_json(m.graph)}, {"p_d", m.p_d}};
          },
          [](const DerdModel& m) {
            return Json{{"family", "derd"}, {"n", m.n}, {"p_e", m.p_e}, {"p_d", m.p_d}};
          },
          [](const RnndModel& m) {
            Json j{{"family", "rnnd"}, {"n", m.n}, {"k", m.rule.k()}};
            if (!m.rule.is_all()) j["subset"] = m.rule.ranks();
            j["d"] = m.d;
            j["dist"] = std::string(to_string(m.dist));
            j["norm"] = std::string(to_string(m.norm));
            return j;
          },
      },
      model);
}

GraphModel graph_model_from_json(const Json& j) {
  const std::string family = tag_of(j, "family");
  const std::string what = family + " model";
  if (family == "erg") return ErgModel{field<int>(j, "n", what), field<double>(j, "p_e", what)};
  if (family == "verg" || family == "vrg") {
    if (!j.contains("kernel")) throw InvalidArgument(what + ": missing field 'kernel'");
    return VergModel{field<int>(j, "n", what), kernel_from_json(j.at("kernel"))};
  }
  throw InvalidArgument("graph_model must be erg, verg or vrg, got '" + family + "'");
}

ModelSpec model_from_json(const Json& j) {
  const std::string family = tag_of(j, "family");
  const std::string what = family + " model";
  ModelSpec model;
  if (family == "uniform") {
    model = UniformModel{field<int>(j, "n", what), field<int>(j, "m", what)};
  } else if (family == "ard") {
    model = ArdModel{field<int>(j, "n", what), field<double>(j, "p_a", what)};
  } else if (family == "gard") {
    model = GardModel{field<int>(j, "n", what), field<std::vector<std::vector<double>>>(j, "p", what)};
  } else if (family == "vard" || family == "vrd") {
    if (!j.contains("kernel")) throw InvalidArgument(what + ": missing field 'kernel'");
    model = VardModel{field<int>(j, "n", what), kernel_from_json(j.at("kernel"))};
  } else if (family == "erg" || family == "verg" || family == "vrg") {
    model = std::visit([](const auto& g) { return ModelSpec{g}; }, graph_model_from_json(j));
  } else if (family == "drd") {
    if (!j.contains("graph_model")) throw InvalidArgument(what + ": missing field 'graph_model'");
    model = DrdModel{graph_model_from_json(j.at("graph_model")), field<double>(j, "p_d", what)};
  } else if (family == "derd") {
    model = DerdModel{field<int>(j, "n", what), field<double>(j, "p_e", what), field<double>(j, "p_d", what)};
  } else if (family == "rnnd") {
    RnndModel m;
    m.n = field<int>(j, "n", what);
    if (j.contains("subset")) {
      m.rule = NndRule::subset(field<std::vector<int>>(j, "subset", what), field_or<int>(j, "k", 0, what));
    } else {
      m.rule = NndRule::all(field<int>(j, "k", what));
    }
    m.d = field_or<int>(j, "d", 1, what);
    m.dist = parse_point_distribution(field_or<std::string>(j, "dist", "uniform", what));
    m.norm = parse_norm(field_or<std::string>(j, "norm", "l2", what));
    model = m;
  } else {
    throw InvalidArgument("unknown model family '" + family +
                          "' (expected uniform, ard, gard, vard, vrd, erg, verg, vrg, drd, derd, rnnd)");
  }
  validate(model);
  return model;
}

Json load_json(std::string_view path_or_inline) {
  std::string text(path_or_inline);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InvalidArgument("empty JSON argument");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) throw InvalidArgument("cannot open '" + text + "' (and it is not inline JSON)");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("invalid JSON: ") + e.what());
  }
}

std::string format_probability(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

std::string mask_hex(std::uint64_t mask, std::size_t slots) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t bytes = std::max<std::size_t>(1, (slots + 7) / 8);
  std::string out;
  for (std::size_t b = 0; b < bytes; ++b) {
    const auto byte = static_cast<unsigned>((mask >> (8 * b)) & 0xffu);
    out += kDigits[byte >> 4];
    out += kDigits[byte & 0xfu];
  }
  return out;
}

std::string pmf_to_csv(const Pmf& pmf) {
  std::string out = "digraph_hex,probability\n";
  pmf.for_each_nonzero([&](std::uint64_t m, double p) {
    out += mask_hex(m, pmf.slot_count());
    out += ',';
    out += format_probability(p);
    out += '\n';
  });
  return out;
}

Pmf pmf_from_csv(std::string_view text, int n, PmfKind kind) {
  const std::size_t slots = kind == PmfKind::digraph ? arc_slot_count(n) : edge_slot_count(n);
  std::vector<Pmf::Entry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("digraph_hex", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("pmf CSV row without a comma: '" + line + "'");
    const SlotBits bits = hex_to_bits(std::string_view(line).substr(0, comma), slots);
    double p = 0.0;
    try {
      p = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("bad probability in pmf CSV row '" + line + "'");
    }
    entries.emplace_back(bits.word(0), p);
  }
  return Pmf::from_entries(n, kind, std::move(entries));
}

Json pmf_to_json(const Pmf& pmf) {
  Json support = Json::array();
  pmf.for_each_nonzero([&](std::uint64_t m, double p) {
    const std::string text = pmf.kind() == PmfKind::digraph ? to_string(Digraph::from_mask(pmf.n(), m))
                                                            : to_string(Graph::from_mask(pmf.n(), m));
    support.push_back(Json{{"hex", mask_hex(m, pmf.slot_count())}, {"state", text}, {"probability", p}});
  });
  return Json{{"schema_version", kSchemaVersion},
              {"n", pmf.n()},
              {"kind", pmf.kind() == PmfKind::digraph ? "digraph" : "graph"},
              {"slots", pmf.slot_count()},
              {"support_size", pmf.support_size()},
              {"support", support}};
}

Json to_json(const EstimateWithError& e) {
  return Json{{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

Json to_json(const RnndStats& s) {
  return Json{{"out_degree_min", s.out_degree_min},
              {"out_degree_max", s.out_degree_max},
              {"in_degree_max", s.in_degree_max},
              {"n_s_histogram", s.n_s_histogram},
              {"arc_marginal", to_json(s.arc_marginal_est)},
              {"joint_pair", to_json(s.joint_pair_est)},
              {"out_degree_violations", s.out_degree_violations},
              {"edge_identity_violations", s.edge_identity_violations},
              {"tie_samples", s.tie_samples},
              {"n_samples", s.n_samples}};
}

}  // namespace randig
