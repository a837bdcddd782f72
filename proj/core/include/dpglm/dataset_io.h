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

#ifndef DPGLM_DATASET_IO_H_
#define DPGLM_DATASET_IO_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpglm/dataset.h"

namespace dpglm {

// CSV rows "y,x1,...,xd" with no header. Values use 17 significant digits so
// a write/read cycle is exact.
std::string DatasetToCsv(const Dataset& data);
absl::StatusOr<Dataset> DatasetFromCsv(const std::string& csv, double x_bound,
                                       double y_bound);

std::string MetadataToJson(const DatasetMetadata& meta);
absl::StatusOr<DatasetMetadata> MetadataFromJson(const std::string& json);

// Sidecar path used for a dataset CSV.
std::string MetadataPathFor(const std::string& csv_path);

// Writes `csv_path` and its sidecar.
absl::Status WriteDataset(const std::string& csv_path, const Dataset& data,
                          const DatasetMetadata& meta);
// Reads a dataset and sidecar; bounds come from the sidecar.
absl::StatusOr<std::pair<Dataset, DatasetMetadata>> ReadDataset(
    const std::string& csv_path);

// Shortest round-trip formatting for doubles.
std::string FormatDouble(double v);

absl::StatusOr<std::string> ReadFileToString(const std::string& path);
absl::Status WriteStringToFile(const std::string& path,
                               const std::string& contents);

}  // namespace dpglm

#endif  // DPGLM_DATASET_IO_H_
