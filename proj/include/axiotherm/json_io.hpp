#pragma once

#include <string>

#include "axiotherm/catalog.hpp"
#include "axiotherm/equilibrium.hpp"
#include "axiotherm/numerics.hpp"
#include "axiotherm/report.hpp"
#include "axiotherm/types.hpp"
#include "json.hpp"

namespace axiotherm::json_io {

using nlohmann::json;

/// Schema-checked field access. Every accessor throws SchemaError carrying
/// "path.key" so CLI diagnostics can point at the offending entry.
[[nodiscard]] const json& require_field(const json& obj, const std::string& key,
                                        const std::string& path);
[[nodiscard]] double as_number(const json& v, const std::string& path);
[[nodiscard]] int as_int(const json& v, const std::string& path);
[[nodiscard]] bool as_bool(const json& v, const std::string& path);
[[nodiscard]] std::string as_string(const json& v, const std::string& path);
void require_object(const json& v, const std::string& path);

/// Rejects keys outside the allowed set, so typos fail loudly instead of
/// being ignored.
void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path);

[[nodiscard]] json params_to_json(const ModelParams& beta);

/// State object: {"model", "E", optional "beta", optional "S_assigned"}.
/// A missing "beta" falls back to the entry's default parameters; a present
/// one is canonicalized to the declared order and validated by the factory.
/// "S_assigned" switches to the assigned-entropy state kind.
[[nodiscard]] json state_to_json(const ThermoState& state);
[[nodiscard]] ThermoState state_from_json(const Catalog& cat, const json& v,
                                          const std::string& path);
/// Same schema, but the assigned-entropy kind is rejected.
[[nodiscard]] StableEqState stable_from_json(const Catalog& cat, const json& v,
                                             const std::string& path);

[[nodiscard]] json numerics_to_json(const numerics::NumericsConfig& cfg);
/// Applies a partial override object onto base. Unknown keys and values of
/// the wrong kind throw SchemaError; the merged config is validated.
[[nodiscard]] numerics::NumericsConfig numerics_overrides(
    numerics::NumericsConfig base, const json& v, const std::string& path);

[[nodiscard]] json delta_to_json(const EntropyDelta& d);
[[nodiscard]] json report_to_json(const VerificationReport& rep);
[[nodiscard]] std::string report_to_csv(const VerificationReport& rep);
[[nodiscard]] json partition_to_json(const equilibrium::PartitionResult& part);
[[nodiscard]] json scan_to_json(const equilibrium::ScanResult& scan);
[[nodiscard]] std::string scan_profile_to_csv(const equilibrium::ScanResult& scan);
[[nodiscard]] json forces_to_json(const equilibrium::GibbsForces& g);

}  // namespace axiotherm::json_io
