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

#ifndef DPGLM_STATUS_MACROS_H_
#define DPGLM_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPGLM_STATUS_CONCAT_INNER_(a, b) a##b
#define DPGLM_STATUS_CONCAT_(a, b) DPGLM_STATUS_CONCAT_INNER_(a, b)

#define DPGLM_RETURN_IF_ERROR(expr)          \
  do {                                       \
    const absl::Status _dpglm_status = (expr); \
    if (!_dpglm_status.ok()) return _dpglm_status; \
  } while (0)

#define DPGLM_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                 \
  if (!tmp.ok()) return tmp.status();                \
  lhs = std::move(tmp).value()

// Evaluates an absl::StatusOr expression, returning its status on error and
// otherwise moving the value into `lhs`.
#define DPGLM_ASSIGN_OR_RETURN(lhs, expr) \
  DPGLM_ASSIGN_OR_RETURN_IMPL_(           \
      DPGLM_STATUS_CONCAT_(_dpglm_statusor_, __LINE__), lhs, expr)

#endif  // DPGLM_STATUS_MACROS_H_
