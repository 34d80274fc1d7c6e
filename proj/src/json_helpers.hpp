#pragma once

#include <json.hpp>

#include "sonarsim/simbench.hpp"
#include "sonarsim/space.hpp"

// Shared JSON encodings of config-level objects (implemented in config.cpp);
// kept out of the public headers so the vendor include stays internal.

namespace sonarsim {

nlohmann::json space_to_json(const SearchSpaceConfig& c);
nlohmann::json profile_to_json(const HardwareProfile& p);

}  // namespace sonarsim
