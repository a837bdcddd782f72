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

#ifndef DPGLM_HARNESS_REPORT_H_
#define DPGLM_HARNESS_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "dpglm/harness/experiment.h"

namespace dpglm::harness {

struct RatePoint {
  int n = 0;
  double median_excess_risk = 0.0;
  int count = 0;
};

struct RateGroup {
  std::string algorithm;
  int d = 0;
  double epsilon = 0.0;
  std::vector<RatePoint> points;  // increasing n
  // Least-squares slope of log median vs log n. Unset with fewer than two
  // distinct n or a non-positive median.
  std::optional<double> slope;
};

double Median(std::vector<double> values);
std::optional<double> LogLogSlope(const std::vector<double>& x,
                                  const std::vector<double>& y);

// Groups by (algorithm, d, epsilon) in first-appearance order.
std::vector<RateGroup> Summarize(const std::vector<ResultRow>& rows);

std::string FormatSummaryText(const std::vector<RateGroup>& groups);
// algorithm,d,epsilon,n,median_excess_risk,count,slope
std::string FormatSummaryCsv(const std::vector<RateGroup>& groups);

}  // namespace dpglm::harness

#endif  // DPGLM_HARNESS_REPORT_H_
