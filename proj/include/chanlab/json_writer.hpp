// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

namespace chanlab {

/// Serialises `value` with sorted keys, two-space indentation and every
/// floating-point number printed with 17 significant digits, so equal inputs
/// always produce equal bytes and doubles survive a round-trip.
std::string dump_json(const nlohmann::json &value);

/// Locale-independent equivalent of printf("%.17g"); shared by the JSON and
/// CSV writers.
std::string format_double(double value);

}  // namespace chanlab
