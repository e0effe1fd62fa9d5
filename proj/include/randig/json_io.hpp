#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "randig/analysis.hpp"
#include "randig/kernel.hpp"
#include "randig/model.hpp"
#include "randig/pmf.hpp"
#include "randig/rnnd.hpp"

namespace randig {

using Json = nlohmann::ordered_json;

/// Version of every JSON document written by this library.
inline constexpr int kSchemaVersion = 1;

// Tagged objects; see docs/schemas.md. Malformed input throws InvalidArgument.
Json to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const Json& j);
Json to_json(const ModelSpec& model);
Json to_json(const GraphModel& model);
ModelSpec model_from_json(const Json& j);
GraphModel graph_model_from_json(const Json& j);

/// Parses `text` as JSON, or reads it from the file it names.
Json load_json(std::string_view path_or_inline);

/// %.17g, so a written probability reads back bit-for-bit.
std::string format_probability(double p);

/// `digraph_hex,probability` header plus one row per support state, ascending.
std::string pmf_to_csv(const Pmf& pmf);
Pmf pmf_from_csv(std::string_view text, int n, PmfKind kind);
Json pmf_to_json(const Pmf& pmf);

/// Hex of a mask with `slots` bits, same layout as the digraph text form.
std::string mask_hex(std::uint64_t mask, std::size_t slots);

Json to_json(const EstimateWithError& e);
Json to_json(const RnndStats& s);

}  // namespace randig
