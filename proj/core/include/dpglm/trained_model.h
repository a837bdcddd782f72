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

#ifndef DPGLM_TRAINED_MODEL_H_
#define DPGLM_TRAINED_MODEL_H_

#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/linalg.h"
#include "dpglm/privacy.h"
#include "dpglm/schedule.h"

namespace dpglm {

struct TrainedModel {
  Vector w;
  OptimizerSchedule schedule;
  // Total privacy cost of producing `w`, and how it was accounted.
  PrivacyBudget budget_spent = PrivacyBudget::NonPrivate();
  std::vector<BudgetCharge> charges;
  // Sub-Gaussian scale of ||w||: B for noisy GD, B + sigma for output
  // perturbation, 2B for the JL method. Used by boosting.
  double subgaussian_parameter = 0.0;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;
};

// Text form {w, schedule, budget, diagnostics}; the round trip is exact.
std::string TrainedModelToJson(const TrainedModel& model);
absl::StatusOr<TrainedModel> TrainedModelFromJson(const std::string& json);

std::string ScheduleToJson(const OptimizerSchedule& schedule);
absl::StatusOr<OptimizerSchedule> ScheduleFromJson(const std::string& json);

}  // namespace dpglm

#endif  // DPGLM_TRAINED_MODEL_H_
