#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "relex/pipeline.hpp"

namespace relex {

inline constexpr const char* kModelFormat = "relex-model";
inline constexpr int kModelVersion = 1;

nlohmann::json model_to_json(const TrainedModel& model);
/// Throws ParseError on a wrong format tag, unsupported version or missing fields.
TrainedModel model_from_json(const nlohmann::json& j);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace relex
