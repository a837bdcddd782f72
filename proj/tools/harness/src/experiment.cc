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

#include "dpglm/harness/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpglm/dataset_io.h"
#include "dpglm/model_selection.h"
#include "dpglm/privacy.h"
#include "dpglm/status_macros.h"
#include "dpglm/trained_model.h"
#include "json.hpp"

namespace dpglm::harness {
namespace {

using Json = nlohmann::ordered_json;

uint64_t DoubleBits(double v) {
  uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

std::string Inner(const std::string& name, const std::string& wrapper) {
  if (name.rfind(wrapper + "(", 0) == 0 && name.back() == ')') {
    return name.substr(wrapper.size() + 1, name.size() - wrapper.size() - 2);
  }
  return "";
}

// Streams: the instance depends on (seed, n, d); the algorithm additionally on
// epsilon.
Rng PointRoot(const ExperimentConfig& config, const SweepPoint& p) {
  return Rng(p.seed, config.base_seed);
}
uint64_t InstanceKey(const SweepPoint& p) {
  return HashCombine(static_cast<uint64_t>(p.n), static_cast<uint64_t>(p.d));
}

absl::StatusOr<BaseAlgorithm> MakeBase(const std::string& name,
                                       const GlmLoss& loss, double x_bound,
                                       double beta) {
  if (name == "noisy-gd" || name == "noisy-gd-nonprivate") {
    return MakeNoisyGdAlgorithm(loss, x_bound);
  }
  if (name == "output-pert-smooth") {
    return MakeOutputPerturbationAlgorithm(loss, x_bound, LossRegime::kSmooth);
  }
  if (name == "output-pert-lipschitz") {
    return MakeOutputPerturbationAlgorithm(loss, x_bound,
                                           LossRegime::kLipschitz);
  }
  if (name == "jl-smooth") {
    return MakeJlAlgorithm(loss, x_bound, LossRegime::kSmooth);
  }
  if (name == "jl-lipschitz") {
    return MakeJlAlgorithm(loss, x_bound, LossRegime::kLipschitz);
  }
  if (std::string inner = Inner(name, "boost"); !inner.empty()) {
    DPGLM_ASSIGN_OR_RETURN(BaseAlgorithm base,
                           MakeBase(inner, loss, x_bound, beta));
    return MakeBoostedAlgorithm(std::move(base), loss, beta);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("'", name, "' is not a base algorithm"));
}

double LabelBoundEstimate(const ExperimentConfig& c) {
  const InstanceSpec& in = c.instance;
  if (in.kind == "regression") {
    return in.w_star_norm * in.x_bound + 3.0 * in.noise_std;
  }
  if (in.kind == "smooth-hard") return in.y_bound;
  return in.radius * in.x_bound;
}

int GridSizeFor(const ExperimentConfig& c, const GlmLoss& loss, double x_bound,
                int n, double epsilon) {
  if (c.grid_size.has_value()) return *c.grid_size;
  absl::StatusOr<int> k = FlagshipGridSize(loss, x_bound, n, epsilon);
  return k.ok() ? *k : 1;
}

double LeafCost(const std::string& name, double n) {
  if (name.rfind("output-pert", 0) == 0) return 1000.0 * n;
  return n * n;
}

double AlgorithmCost(const std::string& name, double n, double beta, int k) {
  if (std::string inner = Inner(name, "boost"); !inner.empty()) {
    absl::StatusOr<int> m = BoostModelCount(beta);
    const int models = m.ok() ? *m : 1;
    return models * AlgorithmCost(inner, std::floor(n / (models + 1)), beta,
                                  k) +
           n;
  }
  if (std::string inner = Inner(name, "grid-search"); !inner.empty()) {
    return k * (AlgorithmCost(inner, n / 2, beta, k) + n / 2);
  }
  if (name == "flagship") {
    return AlgorithmCost("grid-search(boost(output-pert-smooth))", n, beta, k);
  }
  return LeafCost(name, n);
}

std::string QuoteCsv(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

absl::StatusOr<std::vector<std::string>> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) return absl::InvalidArgumentError("unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::vector<SweepPoint> EnumeratePoints(const ExperimentConfig& config) {
  std::vector<SweepPoint> points;
  for (int n : config.n_values) {
    for (int d : config.d_values) {
      for (double eps : config.epsilons) {
        for (uint64_t seed : config.seeds) points.push_back({n, d, eps, seed});
      }
    }
  }
  return points;
}

absl::StatusOr<GlmLoss> BuildLoss(const ExperimentConfig& config,
                                  double label_bound) {
  if (config.loss == "squared") return SquaredLoss(label_bound);
  if (config.loss == "scaled-squared") {
    return ScaledSquaredLoss(config.smoothness, label_bound);
  }
  if (config.loss == "absolute") return AbsoluteLoss(label_bound);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown loss '", config.loss, "'"));
}

absl::StatusOr<GeneratedInstance> BuildInstance(const ExperimentConfig& config,
                                                const SweepPoint& point) {
  const InstanceSpec& in = config.instance;
  Rng rng = PointRoot(config, point).Split(InstanceKey(point));
  if (in.kind == "regression") {
    RegressionParams p;
    p.d = point.d;
    p.n = point.n;
    p.w_star_norm = in.w_star_norm;
    p.noise_std = in.noise_std;
    p.x_bound = in.x_bound;
    p.rank = in.rank;
    return GenerateRegression(p, rng);
  }
  if (in.kind == "smooth-hard") {
    SmoothHardParams p;
    if (in.adversarial) {
      p = AdversarialSmoothPreset(point.n, point.d, point.epsilon,
                                  config.radius.value_or(1.0), in.y_bound,
                                  in.x_bound, in.p_mass, rng);
      p.dummy_point = in.dummy_point;
      if (in.dummy_point) p.d = std::max(p.d, p.d_prime + 1);
    } else {
      p.d_prime = in.d_prime > 0 ? in.d_prime : point.d;
      p.p_mass = in.p_mass;
      p.b_bias = in.b_bias;
      p.n = point.n;
      p.y_bound = in.y_bound;
      p.x_bound = in.x_bound;
      p.d = std::max(point.d, p.d_prime + (in.dummy_point ? 1 : 0));
      p.dummy_point = in.dummy_point;
      if (!in.signs.empty()) {
        p.signs = in.signs;
      } else {
        p.signs.resize(p.d_prime);
        for (int& s : p.signs) s = rng.Bernoulli(0.5) ? 1 : -1;
      }
    }
    DPGLM_ASSIGN_OR_RETURN(GeneratedInstance inst, GenerateSmoothHard(p));
    inst.metadata.seed = point.seed;
    return inst;
  }
  LipschitzHardParams p;
  if (in.adversarial) {
    p = AdversarialLipschitzPreset(point.n, point.d, point.epsilon,
                                   in.radius, in.x_bound, in.p_norm);
  } else {
    p.d_prime = in.d_prime > 0 ? in.d_prime : point.d;
    p.alpha_mass = in.alpha_mass;
    p.beta_shape = in.beta_shape;
    p.radius = in.radius;
    p.p_norm = in.p_norm;
    p.n = point.n;
    p.x_bound = in.x_bound;
  }
  return GenerateLipschitzHard(p, rng);
}

double PredictedGradientEvaluations(const ExperimentConfig& config,
                                    const SweepPoint& point) {
  int k = 1;
  if (config.algorithm == "flagship" ||
      !Inner(config.algorithm, "grid-search").empty()) {
    absl::StatusOr<GlmLoss> loss =
        BuildLoss(config, LabelBoundEstimate(config));
    k = loss.ok() ? GridSizeFor(config, *loss, config.instance.x_bound,
                                point.n, point.epsilon)
                  : 1;
  }
  return AlgorithmCost(config.algorithm, point.n, config.beta, k);
}

absl::StatusOr<ResultRow> RunPoint(const ExperimentConfig& config,
                                   const SweepPoint& point) {
  const auto start = std::chrono::steady_clock::now();
  DPGLM_ASSIGN_OR_RETURN(GeneratedInstance inst, BuildInstance(config, point));
  const Dataset& data = inst.data;
  DPGLM_ASSIGN_OR_RETURN(GlmLoss loss, BuildLoss(config, data.y_bound()));
  const bool non_private = config.algorithm == "noisy-gd-nonprivate";
  PrivacyBudget budget = PrivacyBudget::NonPrivate();
  if (!non_private) {
    DPGLM_ASSIGN_OR_RETURN(budget,
                           PrivacyBudget::Create(point.epsilon, config.delta));
  }
  Rng rng = PointRoot(config, point)
                .Split(HashCombine(InstanceKey(point),
                                   DoubleBits(point.epsilon)));

  TrainedModel model;
  double b_used = config.radius.value_or(0.0);
  if (config.algorithm == "flagship") {
    DPGLM_ASSIGN_OR_RETURN(GridSearchResult r,
                           FlagshipPipeline(loss, data, budget, config.beta,
                                            rng));
    b_used = r.candidates[r.selected].radius;
    model = std::move(r.model);
  } else if (std::string inner = Inner(config.algorithm, "grid-search");
             !inner.empty()) {
    DPGLM_ASSIGN_OR_RETURN(BaseAlgorithm base,
                           MakeBase(inner, loss, data.x_bound(), config.beta));
    const int k = GridSizeFor(config, loss, data.x_bound(), data.n(),
                              point.epsilon);
    DPGLM_ASSIGN_OR_RETURN(GridSearchResult r,
                           PrivateGridSearch(base, loss, data, k, budget,
                                             config.beta, rng));
    b_used = r.candidates[r.selected].radius;
    model = std::move(r.model);
  } else {
    DPGLM_ASSIGN_OR_RETURN(BaseAlgorithm base,
                           MakeBase(config.algorithm, loss, data.x_bound(),
                                    config.beta));
    DPGLM_ASSIGN_OR_RETURN(model, base.train(data, b_used, budget, rng));
  }

  ResultRow row;
  row.algorithm = config.algorithm;
  row.n = point.n;
  row.d = data.dim();
  row.rank = inst.metadata.rank.has_value() ? *inst.metadata.rank
                                            : DesignRank(data, 1e-9);
  row.epsilon = point.epsilon;
  row.delta = config.delta;
  row.b_used = b_used;
  row.seed = point.seed;
  if (config.instance.kind == "lipschitz-hard") {
    row.excess_risk =
        inst.oracle->Risk(model.w) - inst.oracle->Risk(inst.comparator);
  } else {
    row.excess_risk = inst.oracle->ExcessRisk(model.w);
  }
  row.empirical_risk = EmpiricalRisk(loss, data, model.w);

  Json j;
  j["run"] = Json::object();
  for (const auto& [k, v] : config.run_keys) j["run"][k] = v;
  j["point"] = {{"n", point.n},
                {"d", point.d},
                {"epsilon", FormatDouble(point.epsilon)},
                {"seed", point.seed}};
  j["b_used"] = b_used;
  j["schedule"] = Json::parse(ScheduleToJson(model.schedule));
  row.schedule_json = j.dump();

  if (config.record_runtime) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return row;
}

absl::StatusOr<std::vector<ResultRow>> RunSweep(
    const ExperimentConfig& config) {
  const std::vector<SweepPoint> points = EnumeratePoints(config);
  double predicted = 0.0;
  for (const SweepPoint& p : points) {
    predicted += PredictedGradientEvaluations(config, p);
  }
  if (predicted > config.max_gradient_evaluations) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "sweep needs about ", predicted,
        " gradient evaluations, above the cap of ",
        config.max_gradient_evaluations));
  }
  std::vector<absl::StatusOr<ResultRow>> results(
      points.size(), absl::UnknownError("not run"));
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < points.size(); i = next++) {
      results[i] = RunPoint(config, points[i]);
    }
  };
  const int threads = std::max(
      1, std::min<int>(config.threads, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<ResultRow> rows;
  rows.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    if (!results[i].ok()) {
      const SweepPoint& p = points[i];
      return absl::Status(
          results[i].status().code(),
          absl::StrCat("run n=", p.n, " d=", p.d, " epsilon=", p.epsilon,
                       " seed=", p.seed, ": ", results[i].status().message()));
    }
    rows.push_back(*std::move(results[i]));
  }
  return rows;
}

absl::StatusOr<ResultRow> ReplayRow(const std::string& schedule_json) {
  Json j = Json::parse(schedule_json, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.contains("run") || !j.contains("point")) {
    return absl::InvalidArgumentError("schedule_json lacks run/point keys");
  }
  KeyValues kv;
  for (const auto& [k, v] : j["run"].items()) kv[k] = v.get<std::string>();
  const Json& p = j["point"];
  kv["n"] = absl::StrCat(p["n"].get<int>());
  kv["d"] = absl::StrCat(p["d"].get<int>());
  kv["epsilon"] = p["epsilon"].get<std::string>();
  kv["seeds"] = absl::StrCat(p["seed"].get<uint64_t>());
  DPGLM_ASSIGN_OR_RETURN(ExperimentConfig config, ParseExperimentConfig(kv));
  config.record_runtime = false;
  return RunPoint(config, EnumeratePoints(config).front());
}

std::string FormatCsvRow(const ResultRow& r) {
  return absl::StrJoin(
      {r.algorithm, absl::StrCat(r.n), absl::StrCat(r.d), absl::StrCat(r.rank),
       FormatDouble(r.epsilon), FormatDouble(r.delta), FormatDouble(r.b_used),
       absl::StrCat(r.seed), FormatDouble(r.excess_risk),
       FormatDouble(r.empirical_risk), FormatDouble(r.runtime_ms),
       QuoteCsv(r.schedule_json)},
      ",");
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::string out = absl::StrCat(kCsvHeader, "\n");
  for (const ResultRow& r : rows) absl::StrAppend(&out, FormatCsvRow(r), "\n");
  return out;
}

absl::StatusOr<std::vector<ResultRow>> ParseResultsCsv(
    const std::string& text) {
  std::vector<ResultRow> rows;
  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) {
        return absl::InvalidArgumentError(
            absl::StrCat("schema mismatch: expected header '", kCsvHeader,
                         "'"));
      }
      continue;
    }
    if (line.empty()) continue;
    DPGLM_ASSIGN_OR_RETURN(std::vector<std::string> f, SplitCsvLine(line));
    if (f.size() != 12) {
      return absl::InvalidArgumentError(absl::StrCat(
          "schema mismatch: line ", line_no, " has ", f.size(), " fields"));
    }
    ResultRow r;
    r.algorithm = f[0];
    bool ok = absl::SimpleAtoi(f[1], &r.n) && absl::SimpleAtoi(f[2], &r.d) &&
              absl::SimpleAtoi(f[3], &r.rank) &&
              absl::SimpleAtod(f[4], &r.epsilon) &&
              absl::SimpleAtod(f[5], &r.delta) &&
              absl::SimpleAtod(f[6], &r.b_used) &&
              absl::SimpleAtoi(f[7], &r.seed) &&
              absl::SimpleAtod(f[8], &r.excess_risk) &&
              absl::SimpleAtod(f[9], &r.empirical_risk) &&
              absl::SimpleAtod(f[10], &r.runtime_ms);
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema mismatch: bad value on line ", line_no));
    }
    r.schedule_json = f[11];
    rows.push_back(std::move(r));
  }
  if (line_no == 0) return absl::InvalidArgumentError("empty results file");
  return rows;
}

absl::StatusOr<std::vector<std::string>> GenerateDatasets(
    const ExperimentConfig& config, const std::string& out) {
  std::vector<SweepPoint> points;
  for (int n : config.n_values) {
    for (int d : config.d_values) {
      for (uint64_t seed : config.seeds) {
        points.push_back({n, d, config.epsilons.front(), seed});
      }
    }
  }
  const bool single_file = points.size() == 1 && out.size() > 4 &&
                           out.compare(out.size() - 4, 4, ".csv") == 0;
  std::vector<std::string> paths;
  for (const SweepPoint& p : points) {
    DPGLM_ASSIGN_OR_RETURN(GeneratedInstance inst, BuildInstance(config, p));
    std::filesystem::path path;
    if (single_file) {
      path = out;
    } else {
      path = std::filesystem::path(out) /
             absl::StrCat(config.instance.kind, "_n", p.n, "_d", p.d, "_seed",
                          p.seed, ".csv");
    }
    if (path.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(path.parent_path(), ec);
      if (ec) {
        return absl::InternalError(absl::StrCat(
            "cannot create ", path.parent_path().string(), ": ", ec.message()));
      }
    }
    DPGLM_RETURN_IF_ERROR(WriteDataset(path.string(), inst.data,
                                       inst.metadata));
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace dpglm::harness
