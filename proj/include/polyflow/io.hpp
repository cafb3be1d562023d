#ifndef POLYFLOW_IO_HPP
#define POLYFLOW_IO_HPP

#include <string>

#include <json.hpp>

#include "polyflow/certify.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/potential.hpp"
#include "polyflow/tiling.hpp"

namespace polyflow {

/// Schema tag carried by every JSON document.
inline constexpr const char* kFormatTag = "polyflow/1";

using nlohmann::json;

// Rationals travel as strings "p/q" or "p"; decimal strings and plain JSON
// integers are accepted on input and converted exactly.

json system_to_json(const HybridSystem& system);
HybridSystem system_from_json(const json& doc);

json potential_to_json(const PWLPotential& potential);
PWLPotential potential_from_json(const json& doc);

json validation_to_json(const ValidationReport& report);
json certificate_to_json(const HybridSystem& system, const Certificate& certificate);
json gamma_to_json(const GammaDelta& gamma);

/// Trajectory CSV: header `t,x1,...,xn,event`, one row per breakpoint with
/// decimals rendered to 17 significant digits; `exact_columns` appends the
/// same values as exact rational strings.
std::string trajectory_to_csv(const Trajectory& trajectory, bool exact_columns = false);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace polyflow

#endif  // POLYFLOW_IO_HPP
