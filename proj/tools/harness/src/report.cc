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

#include "dpglm/harness/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpglm/dataset_io.h"

namespace dpglm::harness {

double Median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

std::optional<double> LogLogSlope(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

std::vector<RateGroup> Summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, int, double>;
  std::vector<Key> order;
  std::map<Key, std::map<int, std::vector<double>>> by_key;
  for (const ResultRow& r : rows) {
    Key key{r.algorithm, r.d, r.epsilon};
    if (!by_key.contains(key)) order.push_back(key);
    by_key[key][r.n].push_back(r.excess_risk);
  }
  std::vector<RateGroup> groups;
  for (const Key& key : order) {
    RateGroup g;
    std::tie(g.algorithm, g.d, g.epsilon) = key;
    std::vector<double> ns;
    std::vector<double> medians;
    for (const auto& [n, values] : by_key[key]) {
      RatePoint p{n, Median(values), static_cast<int>(values.size())};
      g.points.push_back(p);
      ns.push_back(n);
      medians.push_back(p.median_excess_risk);
    }
    g.slope = LogLogSlope(ns, medians);
    groups.push_back(std::move(g));
  }
  return groups;
}

std::string FormatSummaryText(const std::vector<RateGroup>& groups) {
  std::string out;
  for (const RateGroup& g : groups) {
    absl::StrAppend(&out, g.algorithm, "  d=", g.d,
                    "  epsilon=", FormatDouble(g.epsilon), "\n");
    for (const RatePoint& p : g.points) {
      absl::StrAppendFormat(&out, "  n=%-8d median_excess_risk=%.6g  (%d runs)\n",
                            p.n, p.median_excess_risk, p.count);
    }
    if (g.slope.has_value()) {
      absl::StrAppendFormat(&out, "  log-log slope: %.4f\n", *g.slope);
    } else {
      absl::StrAppend(&out, "  log-log slope: undefined\n");
    }
  }
  return out;
}

std::string FormatSummaryCsv(const std::vector<RateGroup>& groups) {
  std::string out = "algorithm,d,epsilon,n,median_excess_risk,count,slope\n";
  for (const RateGroup& g : groups) {
    const std::string slope =
        g.slope.has_value() ? FormatDouble(*g.slope) : "undefined";
    for (const RatePoint& p : g.points) {
      absl::StrAppend(&out, g.algorithm, ",", g.d, ",", FormatDouble(g.epsilon),
                      ",", p.n, ",", FormatDouble(p.median_excess_risk), ",",
                      p.count, ",", slope, "\n");
    }
  }
  return out;
}

}  // namespace dpglm::harness
