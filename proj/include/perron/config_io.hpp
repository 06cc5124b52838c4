#pragma once

/**
 * @file config_io.hpp
 * @brief JSON schemas: map configs in, certificates and reports out.
 *        Rationals serialize as "p/q" in lowest terms, reals as decimals
 *        with 12 significant digits.
 */

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "perron/analysis.hpp"
#include "perron/finder.hpp"
#include "perron/simulate.hpp"

namespace perron {

using json = nlohmann::json;

/// Parses a map config object (keyed "model" or "kind"); throws
/// invalid_input with a message on schema violations.
IntegerMap parse_map_config(const json& j);
IntegerMap load_map_config(const std::string& path);

json slice_to_json(const SphereSlice& slice);
json certificate_to_json(const ConstantsCertificate& cert);
json residual_report_to_json(const ResidualReport& report);
json concavity_result_to_json(const ConcavityResult& result);
json scalability_result_to_json(const ScalabilityResult& result);

/// Reproducibility metadata attached to every JSON output. Outputs with
/// identical manifests (timestamp aside) are byte-identical.
struct RunManifest {
    std::string subcommand;
    json flags;  // normalized flag object
    std::optional<std::string> config_digest;
    std::string version;
    std::string timestamp;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

json manifest_to_json(const RunManifest& manifest);

/// FNV-1a 64-bit content hash, hex-encoded.
std::string content_digest(const std::string& bytes);

extern const char* const kToolVersion;

}  // namespace perron
