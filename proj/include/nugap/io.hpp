#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "nugap/nu_metric.hpp"
#include "nugap/plant.hpp"

namespace nugap {

// Parses a plant spec object:
//   {"type": "delay_rational", "delay": 1.0, "num": [...], "den": [...]}
// with coefficients ascending. Errors name the offending field.
DelayRationalPlant parse_plant_spec(const nlohmann::json& spec);
DelayRationalPlant parse_plant_spec_text(const std::string& text);

// Full metric report: value, branch, diagnostics, tool version and the
// effective options, with deterministic key order.
nlohmann::ordered_json nu_result_to_json(const NuResult& result);

std::string margin_curve_csv(const std::vector<CircleScan>& curve);
std::string sweep_csv(const NormSearchResult& search);

// Writes via a temporary file in the same directory plus an atomic rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace nugap
