#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "mec/core.hpp"

namespace mec {

/// Instance documents are either {"distributions": [[...], ...],
/// "normalize": bool} or a bare array of arrays. Distributions are
/// rescaled to total 1 only when normalization is requested; an explicit
/// `normalize` argument overrides the document's flag.
InstanceSet parse_instance(const nlohmann::json& doc,
                           std::optional<bool> normalize = std::nullopt);
InstanceSet parse_instance(const std::string& text,
                           std::optional<bool> normalize = std::nullopt);
InstanceSet load_instance(const std::filesystem::path& path,
                          std::optional<bool> normalize = std::nullopt);

nlohmann::json instance_to_json(const InstanceSet& s);

/// Array of {"indices": [...], "mass": x}.
nlohmann::json coupling_to_json(const Coupling& c);
Coupling coupling_from_json(const nlohmann::json& doc);
void save_coupling(const std::filesystem::path& path, const Coupling& c);
Coupling load_coupling(const std::filesystem::path& path);

}  // namespace mec
