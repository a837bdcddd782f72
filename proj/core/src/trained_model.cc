//
// Copyright 2026 The dpglm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpglm/trained_model.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace dpglm {
namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinity; the non-private budget is written as null epsilon.
Json BudgetToJson(const PrivacyBudget& b) {
  Json j;
  if (b.is_private()) {
    j["epsilon"] = b.epsilon();
  } else {
    j["epsilon"] = nullptr;
  }
  j["delta"] = b.delta();
  return j;
}

absl::StatusOr<PrivacyBudget> BudgetFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("epsilon") || !j.contains("delta")) {
    return absl::InvalidArgumentError("budget needs epsilon and delta");
  }
  if (j["epsilon"].is_null()) return PrivacyBudget::NonPrivate();
  return PrivacyBudget::Create(j["epsilon"].get<double>(),
                               j["delta"].get<double>());
}

Json ScheduleJson(const OptimizerSchedule& s) {
  Json j;
  j["method"] = s.method;
  j["steps"] = s.steps;
  j["step_size"] = s.step_size;
  j["noise_variance"] = s.noise_variance;
  j["radius"] = s.radius;
  j["regularization"] = s.regularization;
  j["lipschitz"] = s.lipschitz;
  j["smoothness"] = s.smoothness;
  j["dimension"] = s.dimension;
  j["stochastic"] = s.stochastic;
  j["degenerate"] = s.degenerate;
  j["budget"] = BudgetToJson(s.budget);
  j["warnings"] = s.warnings;
  return j;
}

absl::StatusOr<OptimizerSchedule> ScheduleFromJsonValue(const Json& j) {
  OptimizerSchedule s;
  try {
    s.method = j.at("method").get<std::string>();
    s.steps = j.at("steps").get<int64_t>();
    s.step_size = j.at("step_size").get<double>();
    s.noise_variance = j.at("noise_variance").get<double>();
    s.radius = j.at("radius").get<double>();
    s.regularization = j.at("regularization").get<double>();
    s.lipschitz = j.at("lipschitz").get<double>();
    s.smoothness = j.at("smoothness").get<double>();
    s.dimension = j.at("dimension").get<int>();
    s.stochastic = j.at("stochastic").get<bool>();
    s.degenerate = j.at("degenerate").get<bool>();
    absl::StatusOr<PrivacyBudget> b = BudgetFromJson(j.at("budget"));
    if (!b.ok()) return b.status();
    s.budget = *b;
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed schedule: ", e.what()));
  }
  return s;
}

}  // namespace

std::string ScheduleToJson(const OptimizerSchedule& schedule) {
  return ScheduleJson(schedule).dump();
}

absl::StatusOr<OptimizerSchedule> ScheduleFromJson(const std::string& json) {
  Json j = Json::parse(json, nullptr, false);
  if (j.is_discarded()) return absl::InvalidArgumentError("invalid JSON");
  return ScheduleFromJsonValue(j);
}

std::string TrainedModelToJson(const TrainedModel& model) {
  Json j;
  j["w"] = std::vector<double>(model.w.data(), model.w.data() + model.w.size());
  j["schedule"] = ScheduleJson(model.schedule);
  j["budget"] = BudgetToJson(model.budget_spent);
  Json charges = Json::array();
  for (const BudgetCharge& c : model.charges) {
    charges.push_back(
        {{"component", c.component}, {"epsilon", c.epsilon}, {"delta", c.delta}});
  }
  j["charges"] = charges;
  j["subgaussian_parameter"] = model.subgaussian_parameter;
  Json diag = Json::object();
  for (const auto& [k, v] : model.diagnostics) {
    if (std::isfinite(v)) {
      diag[k] = v;
    } else {
      diag[k] = nullptr;
    }
  }
  j["diagnostics"] = diag;
  j["warnings"] = model.warnings;
  return j.dump(2) + "\n";
}

absl::StatusOr<TrainedModel> TrainedModelFromJson(const std::string& json) {
  Json j = Json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("model text is not a JSON object");
  }
  TrainedModel m;
  try {
    const std::vector<double> w = j.at("w").get<std::vector<double>>();
    m.w = Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
    absl::StatusOr<OptimizerSchedule> s = ScheduleFromJsonValue(j.at("schedule"));
    if (!s.ok()) return s.status();
    m.schedule = *s;
    absl::StatusOr<PrivacyBudget> b = BudgetFromJson(j.at("budget"));
    if (!b.ok()) return b.status();
    m.budget_spent = *b;
    for (const Json& c : j.at("charges")) {
      m.charges.push_back({c.at("component").get<std::string>(),
                           c.at("epsilon").get<double>(),
                           c.at("delta").get<double>()});
    }
    m.subgaussian_parameter = j.at("subgaussian_parameter").get<double>();
    for (const auto& [k, v] : j.at("diagnostics").items()) {
      m.diagnostics[k] =
          v.is_null() ? std::nan("") : v.get<double>();
    }
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed model: ", e.what()));
  }
  return m;
}

}  // namespace dpglm
