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

#include "dpglm/dataset_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace dpglm {

std::string FormatDouble(double v) {
  if (v == 0.0) return "0";
  // %.17g always round-trips; try shorter first to keep files readable.
  for (int precision = 15; precision <= 17; ++precision) {
    std::string s = absl::StrFormat("%.*g", precision, v);
    double back = 0.0;
    if (absl::SimpleAtod(s, &back) && back == v) return s;
  }
  return absl::StrFormat("%.17g", v);
}

std::string DatasetToCsv(const Dataset& data) {
  std::string out;
  for (int i = 0; i < data.n(); ++i) {
    absl::StrAppend(&out, FormatDouble(data.y(i)));
    for (int j = 0; j < data.dim(); ++j) {
      absl::StrAppend(&out, ",", FormatDouble(data.features()(i, j)));
    }
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<Dataset> DatasetFromCsv(const std::string& csv, double x_bound,
                                       double y_bound) {
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(csv, '\n', absl::SkipEmpty())) {
    ++line_no;
    line = absl::StripTrailingAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<double> row;
    for (absl::string_view field : absl::StrSplit(line, ',')) {
      double v = 0.0;
      if (!absl::SimpleAtod(field, &v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_no, ": cannot parse '", field, "'"));
      }
      row.push_back(v);
    }
    if (row.size() < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": empty row"));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": ragged row"));
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  const int d = n == 0 ? 0 : static_cast<int>(rows.front().size()) - 1;
  Matrix features(n, d);
  Vector labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = rows[i][0];
    for (int j = 0; j < d; ++j) features(i, j) = rows[i][j + 1];
  }
  return Dataset::Create(std::move(features), std::move(labels), x_bound,
                         y_bound);
}

std::string MetadataToJson(const DatasetMetadata& meta) {
  nlohmann::ordered_json j;
  j["n"] = meta.n;
  j["d"] = meta.d;
  j["x_bound"] = meta.x_bound;
  j["y_bound"] = meta.y_bound;
  if (meta.rank.has_value()) {
    j["rank"] = *meta.rank;
  } else {
    j["rank"] = nullptr;
  }
  j["generator"] = meta.generator;
  j["seed"] = meta.seed;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.parameters) params[k] = v;
  j["parameters"] = params;
  return j.dump(2) + "\n";
}

absl::StatusOr<DatasetMetadata> MetadataFromJson(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("metadata is not a JSON object");
  }
  for (const char* key : {"n", "d", "x_bound", "y_bound", "generator", "seed"}) {
    if (!j.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("metadata is missing key '", key, "'"));
    }
  }
  DatasetMetadata meta;
  try {
    meta.n = j["n"].get<int64_t>();
    meta.d = j["d"].get<int>();
    meta.x_bound = j["x_bound"].get<double>();
    meta.y_bound = j["y_bound"].get<double>();
    if (j.contains("rank") && !j["rank"].is_null()) {
      meta.rank = j["rank"].get<int>();
    }
    meta.generator = j["generator"].get<std::string>();
    meta.seed = j["seed"].get<uint64_t>();
    if (j.contains("parameters")) {
      for (const auto& [k, v] : j["parameters"].items()) {
        meta.parameters[k] = v.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed metadata: ", e.what()));
  }
  return meta;
}

std::string MetadataPathFor(const std::string& csv_path) {
  return csv_path + ".meta.json";
}

absl::StatusOr<std::string> ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteStringToFile(const std::string& path,
                               const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out << contents;
  out.close();
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::Status WriteDataset(const std::string& csv_path, const Dataset& data,
                          const DatasetMetadata& meta) {
  if (meta.n != data.n() || meta.d != data.dim()) {
    return absl::InvalidArgumentError("metadata shape does not match data");
  }
  absl::Status s = WriteStringToFile(csv_path, DatasetToCsv(data));
  if (!s.ok()) return s;
  return WriteStringToFile(MetadataPathFor(csv_path), MetadataToJson(meta));
}

absl::StatusOr<std::pair<Dataset, DatasetMetadata>> ReadDataset(
    const std::string& csv_path) {
  absl::StatusOr<std::string> meta_text =
      ReadFileToString(MetadataPathFor(csv_path));
  if (!meta_text.ok()) return meta_text.status();
  absl::StatusOr<DatasetMetadata> meta = MetadataFromJson(*meta_text);
  if (!meta.ok()) return meta.status();
  absl::StatusOr<std::string> csv = ReadFileToString(csv_path);
  if (!csv.ok()) return csv.status();
  absl::StatusOr<Dataset> data =
      DatasetFromCsv(*csv, meta->x_bound, meta->y_bound);
  if (!data.ok()) return data.status();
  if (data->n() != meta->n || (data->n() > 0 && data->dim() != meta->d)) {
    return absl::InvalidArgumentError(
        "dataset shape disagrees with its metadata");
  }
  return std::make_pair(*std::move(data), *std::move(meta));
}

}  // namespace dpglm
