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

#include "dpglm/harness/config.h"

#include <filesystem>
#include <set>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dpglm/dataset_io.h"
#include "dpglm/status_macros.h"

namespace dpglm::harness {
namespace {

const std::set<std::string>& KnownKeys() {
  static const auto* keys = new std::set<std::string>{
      "include",     "instance",    "x_bound",     "w_star_norm",
      "noise_std",   "rank",        "d_prime",     "p_mass",
      "b_bias",      "y_bound",     "dummy_point", "signs",
      "alpha_mass",  "beta_shape",  "instance_radius", "p_norm",
      "adversarial", "loss",        "smoothness",  "algorithm",
      "n",           "d",           "epsilon",     "delta",
      "B",           "beta",        "grid_size",   "seeds",
      "seed_count",  "base_seed",   "threads",     "max_gradient_evaluations",
      "record_runtime", "output"};
  return *keys;
}

// Keys that vary per sweep point or only affect execution.
const std::set<std::string>& SweepKeys() {
  static const auto* keys = new std::set<std::string>{
      "include", "n",       "d",      "epsilon",
      "seeds",   "seed_count", "threads", "max_gradient_evaluations",
      "record_runtime", "output"};
  return *keys;
}

absl::StatusOr<double> ToDouble(const std::string& key,
                                const std::string& value) {
  double v = 0.0;
  if (!absl::SimpleAtod(value, &v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("key '", key, "': not a number: '", value, "'"));
  }
  return v;
}

absl::StatusOr<int64_t> ToInt(const std::string& key,
                              const std::string& value) {
  int64_t v = 0;
  if (absl::SimpleAtoi(value, &v)) return v;
  // Accept integral doubles such as 1e4.
  double d = 0.0;
  if (absl::SimpleAtod(value, &d) && d == static_cast<double>(
                                              static_cast<int64_t>(d))) {
    return static_cast<int64_t>(d);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("key '", key, "': not an integer: '", value, "'"));
}

absl::StatusOr<bool> ToBool(const std::string& key, const std::string& value) {
  bool v = false;
  if (!absl::SimpleAtob(value, &v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("key '", key, "': not a boolean: '", value, "'"));
  }
  return v;
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  for (absl::string_view part : absl::StrSplit(value, ',')) {
    std::string s(absl::StripAsciiWhitespace(part));
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

template <typename T, typename F>
absl::StatusOr<std::vector<T>> ParseList(const std::string& key,
                                         const std::string& value, F parse) {
  std::vector<T> out;
  for (const std::string& item : SplitList(value)) {
    auto v = parse(key, item);
    if (!v.ok()) return v.status();
    out.push_back(static_cast<T>(*v));
  }
  if (out.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("key '", key, "': empty list"));
  }
  return out;
}

bool IsLipschitzAlgorithm(const std::string& name) {
  return name.find("lipschitz") != std::string::npos;
}

std::string InnerName(const std::string& name, const std::string& wrapper) {
  if (name.rfind(wrapper + "(", 0) == 0 && name.back() == ')') {
    return name.substr(wrapper.size() + 1,
                       name.size() - wrapper.size() - 2);
  }
  return "";
}

}  // namespace

absl::StatusOr<KeyValues> ParseKeyValues(const std::string& text) {
  KeyValues kv;
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = raw;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected key = value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": empty key"));
    }
    if (!KnownKeys().contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": unknown key '", key, "'"));
    }
    kv[key] = value;
  }
  return kv;
}

absl::StatusOr<KeyValues> ReadKeyValuesFile(const std::string& path) {
  DPGLM_ASSIGN_OR_RETURN(std::string text, ReadFileToString(path));
  DPGLM_ASSIGN_OR_RETURN(KeyValues kv, ParseKeyValues(text));
  auto it = kv.find("include");
  if (it == kv.end()) return kv;
  std::filesystem::path inc(it->second);
  if (inc.is_relative()) {
    inc = std::filesystem::path(path).parent_path() / inc;
  }
  DPGLM_ASSIGN_OR_RETURN(KeyValues base, ReadKeyValuesFile(inc.string()));
  kv.erase("include");
  for (auto& [k, v] : kv) base[k] = v;
  return base;
}

absl::Status ValidateAlgorithmName(const std::string& name) {
  static const std::set<std::string> leaves = {
      "noisy-gd",          "noisy-gd-nonprivate",   "output-pert-smooth",
      "output-pert-lipschitz", "jl-smooth",         "jl-lipschitz"};
  if (leaves.contains(name) || name == "flagship") return absl::OkStatus();
  if (std::string inner = InnerName(name, "boost"); !inner.empty()) {
    if (!leaves.contains(inner) || inner == "noisy-gd-nonprivate") {
      return absl::InvalidArgumentError(
          absl::StrCat("boost() takes a private base algorithm, got '", inner,
                       "'"));
    }
    if (IsLipschitzAlgorithm(inner)) {
      return absl::InvalidArgumentError("boost() needs a smooth base");
    }
    return absl::OkStatus();
  }
  if (std::string inner = InnerName(name, "grid-search"); !inner.empty()) {
    if (inner == "noisy-gd-nonprivate" || inner == "flagship" ||
        !InnerName(inner, "grid-search").empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("grid-search() cannot wrap '", inner, "'"));
    }
    return ValidateAlgorithmName(inner);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown algorithm '", name, "'"));
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(const KeyValues& kv) {
  for (const auto& [k, v] : kv) {
    if (!KnownKeys().contains(k)) {
      return absl::InvalidArgumentError(absl::StrCat("unknown key '", k, "'"));
    }
  }
  ExperimentConfig c;
  InstanceSpec& in = c.instance;
  auto get = [&kv](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto read_double = [&](const std::string& key,
                         double& out) -> absl::Status {
    if (const std::string* v = get(key)) {
      DPGLM_ASSIGN_OR_RETURN(out, ToDouble(key, *v));
    }
    return absl::OkStatus();
  };
  auto read_int = [&](const std::string& key, int& out) -> absl::Status {
    if (const std::string* v = get(key)) {
      DPGLM_ASSIGN_OR_RETURN(int64_t i, ToInt(key, *v));
      out = static_cast<int>(i);
    }
    return absl::OkStatus();
  };
  auto read_bool = [&](const std::string& key, bool& out) -> absl::Status {
    if (const std::string* v = get(key)) {
      DPGLM_ASSIGN_OR_RETURN(out, ToBool(key, *v));
    }
    return absl::OkStatus();
  };

  if (const std::string* v = get("instance")) in.kind = *v;
  if (in.kind != "regression" && in.kind != "smooth-hard" &&
      in.kind != "lipschitz-hard") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown instance '", in.kind, "'"));
  }
  DPGLM_RETURN_IF_ERROR(read_double("x_bound", in.x_bound));
  DPGLM_RETURN_IF_ERROR(read_double("w_star_norm", in.w_star_norm));
  DPGLM_RETURN_IF_ERROR(read_double("noise_std", in.noise_std));
  DPGLM_RETURN_IF_ERROR(read_int("rank", in.rank));
  DPGLM_RETURN_IF_ERROR(read_int("d_prime", in.d_prime));
  DPGLM_RETURN_IF_ERROR(read_double("p_mass", in.p_mass));
  DPGLM_RETURN_IF_ERROR(read_double("b_bias", in.b_bias));
  DPGLM_RETURN_IF_ERROR(read_double("y_bound", in.y_bound));
  DPGLM_RETURN_IF_ERROR(read_bool("dummy_point", in.dummy_point));
  DPGLM_RETURN_IF_ERROR(read_double("alpha_mass", in.alpha_mass));
  DPGLM_RETURN_IF_ERROR(read_double("beta_shape", in.beta_shape));
  DPGLM_RETURN_IF_ERROR(read_double("instance_radius", in.radius));
  DPGLM_RETURN_IF_ERROR(read_double("p_norm", in.p_norm));
  DPGLM_RETURN_IF_ERROR(read_bool("adversarial", in.adversarial));
  if (const std::string* v = get("signs"); v && *v != "random") {
    DPGLM_ASSIGN_OR_RETURN(auto signs, ParseList<int>("signs", *v, ToInt));
    in.signs = std::move(signs);
  }

  c.loss = in.kind == "lipschitz-hard" ? "absolute" : "squared";
  if (const std::string* v = get("loss")) c.loss = *v;
  DPGLM_RETURN_IF_ERROR(read_double("smoothness", c.smoothness));
  if (c.loss != "squared" && c.loss != "scaled-squared" &&
      c.loss != "absolute") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown loss '", c.loss, "'"));
  }
  // The population oracles evaluate risk under one loss per instance.
  if (in.kind == "lipschitz-hard" ? c.loss != "absolute"
                                  : c.loss != "squared") {
    return absl::InvalidArgumentError(absl::StrCat(
        "instance '", in.kind, "' has an oracle for ",
        in.kind == "lipschitz-hard" ? "absolute" : "squared", " loss only"));
  }

  const std::string* alg = get("algorithm");
  if (alg == nullptr) return absl::InvalidArgumentError("missing 'algorithm'");
  c.algorithm = *alg;
  DPGLM_RETURN_IF_ERROR(ValidateAlgorithmName(c.algorithm));
  const bool lipschitz_alg = IsLipschitzAlgorithm(c.algorithm);
  if (lipschitz_alg != (c.loss == "absolute")) {
    return absl::InvalidArgumentError(
        absl::StrCat("algorithm '", c.algorithm, "' is incompatible with loss '",
                     c.loss, "'"));
  }

  for (const char* key : {"n", "d", "epsilon"}) {
    if (get(key) == nullptr) {
      return absl::InvalidArgumentError(
          absl::StrCat("missing sweep axis '", key, "'"));
    }
  }
  DPGLM_ASSIGN_OR_RETURN(c.n_values, ParseList<int>("n", *get("n"), ToInt));
  DPGLM_ASSIGN_OR_RETURN(c.d_values, ParseList<int>("d", *get("d"), ToInt));
  DPGLM_ASSIGN_OR_RETURN(c.epsilons,
                         ParseList<double>("epsilon", *get("epsilon"),
                                           ToDouble));
  DPGLM_RETURN_IF_ERROR(read_double("delta", c.delta));
  DPGLM_RETURN_IF_ERROR(read_double("beta", c.beta));

  const bool selects = c.algorithm == "flagship" ||
                       !InnerName(c.algorithm, "grid-search").empty();
  if (const std::string* v = get("B"); v && *v != "adaptive") {
    DPGLM_ASSIGN_OR_RETURN(double b, ToDouble("B", *v));
    if (selects) {
      return absl::InvalidArgumentError(
          "B must be 'adaptive' for grid-search and flagship");
    }
    c.radius = b;
  } else if (!selects) {
    return absl::InvalidArgumentError(
        absl::StrCat("algorithm '", c.algorithm, "' needs a numeric B"));
  }
  if (const std::string* v = get("grid_size")) {
    DPGLM_ASSIGN_OR_RETURN(int64_t k, ToInt("grid_size", *v));
    c.grid_size = static_cast<int>(k);
  }

  if (const std::string* v = get("seeds")) {
    DPGLM_ASSIGN_OR_RETURN(c.seeds, ParseList<uint64_t>("seeds", *v, ToInt));
  } else {
    int count = 1;
    DPGLM_RETURN_IF_ERROR(read_int("seed_count", count));
    if (count < 1) return absl::InvalidArgumentError("seed_count must be >= 1");
    for (int s = 0; s < count; ++s) c.seeds.push_back(s);
  }
  if (const std::string* v = get("base_seed")) {
    DPGLM_ASSIGN_OR_RETURN(int64_t s, ToInt("base_seed", *v));
    c.base_seed = static_cast<uint64_t>(s);
  }
  DPGLM_RETURN_IF_ERROR(read_int("threads", c.threads));
  DPGLM_RETURN_IF_ERROR(
      read_double("max_gradient_evaluations", c.max_gradient_evaluations));
  DPGLM_RETURN_IF_ERROR(read_bool("record_runtime", c.record_runtime));
  if (const std::string* v = get("output")) c.output = *v;

  for (const auto& [k, v] : kv) {
    if (!SweepKeys().contains(k)) c.run_keys[k] = v;
  }
  c.run_keys["base_seed"] = absl::StrCat(c.base_seed);
  return c;
}

}  // namespace dpglm::harness
