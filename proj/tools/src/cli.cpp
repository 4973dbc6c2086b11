/* Copyright 2026 The herdtrack Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "herdtrack/cli/cli.hpp"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "herdtrack/budget.hpp"
#include "herdtrack/cli/codec.hpp"
#include "herdtrack/cli/manifest.hpp"
#include "herdtrack/errors.hpp"

#ifndef HERDTRACK_VERSION
#define HERDTRACK_VERSION "0.0.0"
#endif

namespace herdtrack::cli {

std::string version() { return HERDTRACK_VERSION; }

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputDigest digest(std::string role, const std::string& path) {
  std::string sha = sha256_file(path);
  return {std::move(role), path, std::move(sha)};
}

std::vector<double> parse_list(const std::string& text, std::string_view what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw InputError(std::string(what) + ": empty list");
  return out;
}

// "tau_low=0.6,0.65;tau_high=0.78,0.9;cadence_s=3600". Axes left out keep the
// single base value.
SweepGrid parse_sweep(const std::string& spec, const ReidConfig& base) {
  SweepGrid grid{{base.tau_low}, {base.tau_high}, {base.cadence_s}};
  std::stringstream ss(spec);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InputError("sweep: expected axis=values, got '" + part + "'");
    const std::string axis = part.substr(0, eq);
    auto values = parse_list(part.substr(eq + 1), "sweep " + axis);
    if (axis == "tau_low") {
      grid.tau_low = std::move(values);
    } else if (axis == "tau_high") {
      grid.tau_high = std::move(values);
    } else if (axis == "cadence_s") {
      grid.cadence_s = std::move(values);
    } else {
      throw InputError("sweep: unknown axis '" + axis + "'");
    }
    any = true;
  }
  if (!any) throw InputError("sweep: empty grid");
  return grid;
}

struct Emitter {
  std::ostream& out;
  bool manifest_only;
  RunManifest manifest;

  // Returns true when the caller should stop after the manifest.
  bool stop_after_manifest() {
    if (!manifest_only) return false;
    out << nlohmann::json{{"manifest", manifest.to_json()}}.dump(2) << '\n';
    return true;
  }
  void emit(nlohmann::json body) {
    body["manifest"] = manifest.to_json();
    out << body.dump(2) << '\n';
  }
};

struct MotOptions {
  std::string gt_path, pred_path;
  double iou = 0.5;
  std::string motp = "center";
  std::string format = "json";
};

void run_mot(const MotOptions& o, Emitter& em) {
  if (!(o.iou > 0.0 && o.iou <= 1.0)) throw InputError("--iou must lie in (0, 1]");
  MotConfig cfg;
  cfg.iou_gate = o.iou;
  cfg.distance_mode = parse_distance_mode(o.motp);
  em.manifest.config = {{"mot", to_json(cfg)}, {"out", o.format}};
  em.manifest.inputs = {digest("ground_truth", o.gt_path), digest("prediction", o.pred_path)};
  if (em.stop_after_manifest()) return;
  const TrackSet gt = read_track_csv(std::filesystem::path(o.gt_path));
  const TrackSet pred = read_track_csv(std::filesystem::path(o.pred_path));
  const MotSummary summary = evaluate_sequence(gt, pred, cfg);
  em.emit({{"summary", to_json(summary)}});
}

struct LossOptionsCli {
  std::string student_path, teacher_path;
  std::vector<double> weights{1.0, 0.5, 0.3, 0.1};
  bool gradcheck = false;
  bool epsilon_mode = false;
  double epsilon = 1e-12;
};

void run_loss(const LossOptionsCli& o, Emitter& em) {
  if (o.weights.size() != 4) throw InputError("--weights needs four values");
  for (double w : o.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("--weights must be non-negative");
  }
  if (!(o.epsilon > 0.0)) throw InputError("--epsilon-value must be positive");
  LossOptions opts;
  opts.weights = {o.weights[0], o.weights[1], o.weights[2], o.weights[3]};
  opts.epsilon_mode = o.epsilon_mode;
  opts.epsilon = o.epsilon;
  em.manifest.config = {{"weights", to_json(opts.weights)},
                        {"epsilon_mode", opts.epsilon_mode},
                        {"epsilon", opts.epsilon},
                        {"gradcheck", o.gradcheck}};
  em.manifest.inputs = {digest("student", o.student_path), digest("teacher", o.teacher_path)};
  if (em.stop_after_manifest()) return;
  const FeatureTensor student = read_tensor(std::filesystem::path(o.student_path));
  const FeatureTensor teacher = read_tensor(std::filesystem::path(o.teacher_path));
  const auto loss = compute_loss(student, teacher, opts);
  const auto fid = fidelity(student, teacher);
  nlohmann::json body{{"loss", to_json(loss)},
                      {"fidelity", to_json(fid)},
                      {"fidelity_within_band", fidelity_within_band(fid)}};
  if (o.gradcheck) body["gradcheck"] = to_json(gradient_check(student, teacher, opts));
  em.emit(std::move(body));
}

struct ReidOptions {
  std::string scenario_path;
  ReidConfig reid;
  std::optional<std::uint64_t> seed;
  std::uint32_t warmup = 10;
  std::string sweep;
  std::string dump_csv;
  bool events = false;
};

void run_reid(const ReidOptions& o, Emitter& em) {
  validate(o.reid);
  ScenarioConfig sc = scenario_from_json(parse_json(read_text(o.scenario_path), o.scenario_path));
  if (o.seed) sc.seed = *o.seed;
  if (o.warmup < 1 || o.warmup > sc.num_frames) {
    throw InputError("--warmup must lie in [1, num_frames]");
  }
  std::optional<SweepGrid> grid;
  if (!o.sweep.empty()) grid = parse_sweep(o.sweep, o.reid);
  if (grid && !o.dump_csv.empty()) throw InputError("--dump-csv cannot be combined with --sweep");

  em.manifest.config = {{"scenario", to_json(sc)}, {"reid", to_json(o.reid)}, {"warmup", o.warmup}};
  if (grid) {
    em.manifest.config["sweep"] = {
        {"tau_low", grid->tau_low}, {"tau_high", grid->tau_high}, {"cadence_s", grid->cadence_s}};
  }
  em.manifest.inputs = {digest("scenario", o.scenario_path)};
  em.manifest.seed = sc.seed;
  if (em.stop_after_manifest()) return;

  if (grid) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : sensitivity_sweep(sc, o.reid, *grid, o.warmup)) {
      points.push_back({{"config", to_json(p.config)}, {"report", to_json(p.report)}});
    }
    em.emit({{"points", points}});
    return;
  }
  const Scenario scenario = generate(sc);
  const PipelineRun run = run_pipeline_detailed(scenario, o.reid, o.warmup);
  nlohmann::json body{{"report", to_json(run.report)},
                      {"injected_switch_count", scenario.injected_switch_count()},
                      {"event_count", run.events.size()}};
  if (o.events) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : run.events) events.push_back(to_json(e));
    body["events"] = events;
  }
  if (!o.dump_csv.empty()) {
    write_track_csv(std::filesystem::path(o.dump_csv), run.corrected);
    body["corrected_csv"] = o.dump_csv;
  }
  em.emit(std::move(body));
}

struct PruneOptions {
  MemoryModelParams model;
  PruneConfig prune;
  std::uint64_t frames = 600;
  bool no_prune = false;
  bool trace = false;
  std::string units = "decimal";
};

void run_prune(PruneOptions o, Emitter& em) {
  o.prune.enabled = !o.no_prune;
  validate(o.model);
  if (o.frames == 0) throw InputError("--frames must be positive");
  if (o.prune.interval == 0) throw InputError("--interval must be positive");
  const UnitMode units = parse_unit_mode(o.units);
  em.manifest.config = {{"model", to_json(o.model)},
                        {"prune", to_json(o.prune)},
                        {"frames", o.frames},
                        {"units", std::string(to_string(units))}};
  if (em.stop_after_manifest()) return;

  const auto trace = simulate_stream(o.model, o.frames, o.prune);
  Bytes peak = 0;
  for (const auto& p : trace) peak = std::max(peak, p.bytes);
  const Bytes steady = steady_state_per_object(o.model, o.prune);
  nlohmann::json result{
      {"frames", o.frames},
      {"final_bytes", trace.back().bytes},
      {"peak_bytes", peak},
      {"unpruned_final_bytes", unpruned_footprint(o.model, o.frames)},
      {"steady_state_per_object_bytes", steady},
      {"steady_state_per_object_mb", to_megabytes(steady, units)},
      {"peak_mb", to_megabytes(peak, units)},
      {"time_to_budget_s", time_to_budget(o.model)},
      {"units", std::string(to_string(units))}};
  if (o.prune.enabled) {
    const Bytes bound = pruned_footprint_bound(o.model, o.prune);
    result["bound_bytes"] = bound;
    result["bounded"] = peak <= bound;
  }
  nlohmann::json body{{"result", result}};
  if (o.trace) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : trace) points.push_back({p.frame, p.bytes});
    body["trace"] = points;
  }
  em.emit(std::move(body));
}

struct StorageOptions {
  std::uint64_t animals = 1;
  double cadence_h = 1.0;
  std::size_t dim = kDefaultEmbeddingDim;
  std::string precision = "half16";
  double metadata_kb = 10.0;
  double fps = 5.0;
  std::string units = "decimal";
};

void run_storage(const StorageOptions& o, Emitter& em) {
  const UnitMode units = parse_unit_mode(o.units);
  if (!(o.metadata_kb >= 0.0) || !std::isfinite(o.metadata_kb)) {
    throw InputError("--metadata-kb must be non-negative");
  }
  const auto meta = static_cast<Bytes>(std::llround(o.metadata_kb * kilo(units)));
  const auto policy = StoragePolicy::from_embedding(o.dim, parse_precision(o.precision),
                                                    o.cadence_h, meta, o.animals, o.fps);
  em.manifest.config = {{"policy", to_json(policy)},
                        {"cadence_h", o.cadence_h},
                        {"dim", o.dim},
                        {"precision", o.precision},
                        {"units", std::string(to_string(units))}};
  if (em.stop_after_manifest()) return;
  const auto fp = annual_footprint(policy);
  const auto traffic = raw_traffic_and_reduction(policy, o.cadence_h * 3600.0);
  em.emit({{"footprint",
            {{"raw_embedding_bytes", fp.raw_embedding_bytes},
             {"total_bytes_per_animal", fp.total_bytes_per_animal},
             {"barn_total_bytes", fp.barn_total_bytes},
             {"per_animal_mb", to_megabytes(fp.total_bytes_per_animal, units)},
             {"barn_gb", to_gigabytes(fp.barn_total_bytes, units)},
             {"units", std::string(to_string(units))}}},
           {"traffic",
            {{"bytes_per_animal_per_day", traffic.bytes_per_animal_per_day},
             {"reduction_factor", traffic.reduction_factor}}}});
}

struct BudgetOptions {
  std::optional<double> envelope;
  std::string lines_path;
  std::string format = "json";
};

std::string budget_table(const BudgetReport& r) {
  std::size_t name_w = std::string_view("Remaining headroom").size();
  for (const auto& l : r.lines) name_w = std::max(name_w, l.name.size());
  std::ostringstream os;
  auto row = [&](std::string_view name, double gb, std::string_view note) {
    os << std::left << std::setw(static_cast<int>(name_w)) << name << "  " << std::right
       << std::setw(8) << std::fixed << std::setprecision(2) << gb;
    if (!note.empty()) os << "  " << note;
    os << '\n';
  };
  os << std::left << std::setw(static_cast<int>(name_w)) << "Component" << "  " << std::right
     << std::setw(8) << "VRAM GB" << "  Note\n";
  os << std::string(name_w + 10, '-') << '\n';
  for (const auto& l : r.lines) row(l.name, l.vram_gb, l.note);
  os << std::string(name_w + 10, '-') << '\n';
  row("Total budgeted", r.total_gb, "");
  row("Envelope", r.envelope_gb, "");
  row("Remaining headroom", r.headroom_gb, r.over_budget ? "OVER BUDGET" : "");
  return os.str();
}

void run_budget(const BudgetOptions& o, Emitter& em) {
  double envelope = 16.0;
  auto lines = budget_lines_from_json(parse_json(read_text(o.lines_path), o.lines_path), &envelope);
  if (o.envelope) envelope = *o.envelope;
  em.manifest.config = {{"envelope_gb", envelope}, {"format", o.format}};
  em.manifest.inputs = {digest("lines", o.lines_path)};
  if (em.stop_after_manifest()) return;
  const auto report = budget_report(std::move(lines), envelope);
  if (o.format == "table") {
    em.out << "# herdtrack " << em.manifest.version << " budget, lines sha256 "
           << em.manifest.inputs.front().sha256 << '\n'
           << budget_table(report);
    return;
  }
  em.emit({{"report", to_json(report)}});
}

struct CheckpointOptions {
  double params = 0.0;
  double bytes_per_param = 2.0;
  std::optional<double> teacher_params;
  std::string name = "model";
};

std::uint64_t as_count(double v, std::string_view what) {
  if (!(v >= 0.0) || v > 1e18 || std::floor(v) != v) {
    throw InputError(std::string(what) + " must be a non-negative whole number");
  }
  return static_cast<std::uint64_t>(v);
}

void run_checkpoint(const CheckpointOptions& o, Emitter& em) {
  ComponentSpec c{o.name, as_count(o.params, "--params"), o.bytes_per_param, std::nullopt};
  validate(c);
  em.manifest.config = {{"name", c.name},
                        {"parameter_count", c.parameter_count},
                        {"bytes_per_parameter", c.bytes_per_parameter}};
  if (o.teacher_params) em.manifest.config["teacher_params"] = *o.teacher_params;
  if (em.stop_after_manifest()) return;
  const Bytes size = checkpoint_size(c);
  nlohmann::json body{{"bytes", size},
                      {"decimal", format_size(size, UnitMode::kDecimal)},
                      {"binary", format_size(size, UnitMode::kBinary)},
                      {"gb", to_gigabytes(size, UnitMode::kDecimal)},
                      {"gib", to_gigabytes(size, UnitMode::kBinary)},
                      {"mb", to_megabytes(size, UnitMode::kDecimal)},
                      {"mib", to_megabytes(size, UnitMode::kBinary)}};
  if (o.teacher_params) {
    body["compression_ratio"] =
        compression_ratio(as_count(*o.teacher_params, "--teacher-params"), c.parameter_count);
  }
  em.emit(std::move(body));
}

struct ClsOptions {
  std::string csv_path;
  std::size_t top = 5;
};

void run_cls(const ClsOptions& o, Emitter& em) {
  if (o.top == 0) throw InputError("--top must be positive");
  em.manifest.config = {{"top", o.top}};
  em.manifest.inputs = {digest("confusion", o.csv_path)};
  if (em.stop_after_manifest()) return;
  const auto cm = read_confusion_csv(std::filesystem::path(o.csv_path));
  const ClassReport rep = report(cm);
  nlohmann::json top = nlohmann::json::array();
  for (const auto& c : top_confusions(cm, o.top)) top.push_back(to_json(c));
  em.emit({{"report", to_json(rep)}, {"top_confusions", top}});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"herdtrack: tracking metrics, distillation loss, memory and re-id models"};
  app.name("herdtrack");
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();
  bool manifest_only = false;
  app.add_flag("--manifest-only", manifest_only,
               "Print the resolved run manifest without running");

  MotOptions mot;
  auto* mot_cmd = app.add_subcommand("mot-eval", "CLEAR-MOT and identity metrics for two track CSVs");
  mot_cmd->add_option("gt", mot.gt_path, "Ground-truth track CSV")->required();
  mot_cmd->add_option("pred", mot.pred_path, "Predicted track CSV")->required();
  mot_cmd->add_option("--iou", mot.iou, "IoU matching gate")->capture_default_str();
  mot_cmd->add_option("--motp", mot.motp, "Localization distance")
      ->check(CLI::IsMember({"center", "one-minus-iou"}))
      ->capture_default_str();
  mot_cmd->add_option("--out", mot.format, "Output format")
      ->check(CLI::IsMember({"json"}))
      ->capture_default_str();

  LossOptionsCli loss;
  auto* loss_cmd = app.add_subcommand("loss-eval", "Distillation loss and fidelity for two tensors");
  loss_cmd->add_option("student", loss.student_path, "Student tensor (DTN1/DTNH)")->required();
  loss_cmd->add_option("teacher", loss.teacher_path, "Teacher tensor (DTN1/DTNH)")->required();
  loss_cmd->add_option("--weights", loss.weights, "directional,cosine,moment,raw")
      ->delimiter(',')
      ->expected(4)
      ->capture_default_str();
  loss_cmd->add_flag("--gradcheck", loss.gradcheck, "Check the analytic gradient");
  loss_cmd->add_flag("--epsilon", loss.epsilon_mode, "Smooth norms as sqrt(x^2 + eps^2)");
  loss_cmd->add_option("--epsilon-value", loss.epsilon, "Smoothing epsilon")->capture_default_str();

  ReidOptions reid;
  auto* reid_cmd = app.add_subcommand("reid-sim", "Run the re-id corrector on a synthetic scenario");
  reid_cmd->add_option("scenario", reid.scenario_path, "Scenario JSON")->required();
  reid_cmd->add_option("--tau-low", reid.reid.tau_low)->capture_default_str();
  reid_cmd->add_option("--tau-high", reid.reid.tau_high)->capture_default_str();
  reid_cmd->add_option("--alpha", reid.reid.alpha)->capture_default_str();
  reid_cmd->add_option("--cadence-s", reid.reid.cadence_s)->capture_default_str();
  reid_cmd->add_option("--seed", reid.seed, "Override the scenario seed");
  reid_cmd->add_option("--warmup", reid.warmup, "Oracle warmup frames")->capture_default_str();
  reid_cmd->add_option("--sweep", reid.sweep,
                       "Grid, e.g. 'tau_low=0.6,0.65;tau_high=0.78,0.9;cadence_s=3600'");
  reid_cmd->add_option("--dump-csv", reid.dump_csv, "Write the corrected track stream");
  reid_cmd->add_flag("--events", reid.events, "Include every re-id event");

  PruneOptions prune;
  auto* prune_cmd = app.add_subcommand("prune-sim", "Session memory growth with window pruning");
  prune_cmd->add_option("--objects", prune.model.num_objects)->capture_default_str();
  prune_cmd->add_option("--per-frame-mb", prune.model.per_frame_per_object_mb)->capture_default_str();
  prune_cmd->add_option("--base-mb", prune.model.base_mb)->capture_default_str();
  prune_cmd->add_option("--fps", prune.model.fps)->capture_default_str();
  prune_cmd->add_option("--budget-gb", prune.model.budget_gb)->capture_default_str();
  prune_cmd->add_option("--frames", prune.frames)->capture_default_str();
  prune_cmd->add_option("--keep", prune.prune.keep_last)->capture_default_str();
  prune_cmd->add_option("--interval", prune.prune.interval)->capture_default_str();
  prune_cmd->add_flag("--no-prune", prune.no_prune, "Disable pruning");
  prune_cmd->add_flag("--trace", prune.trace, "Include the per-frame footprint trace");
  prune_cmd->add_option("--units", prune.units)
      ->check(CLI::IsMember({"decimal", "binary"}))
      ->capture_default_str();

  StorageOptions storage;
  auto* storage_cmd = app.add_subcommand("storage", "Annual embedding-bank storage");
  storage_cmd->add_option("--animals", storage.animals)->capture_default_str();
  storage_cmd->add_option("--cadence-h", storage.cadence_h)->capture_default_str();
  storage_cmd->add_option("--dim", storage.dim)->capture_default_str();
  storage_cmd->add_option("--precision", storage.precision)
      ->check(CLI::IsMember({"half16", "single32"}))
      ->capture_default_str();
  storage_cmd->add_option("--metadata-kb", storage.metadata_kb)->capture_default_str();
  storage_cmd->add_option("--fps", storage.fps)->capture_default_str();
  storage_cmd->add_option("--units", storage.units)
      ->check(CLI::IsMember({"decimal", "binary"}))
      ->capture_default_str();

  BudgetOptions budget;
  auto* budget_cmd = app.add_subcommand("budget", "Device memory budget and headroom");
  budget_cmd->add_option("--envelope", budget.envelope, "Envelope in GB (default 16)");
  budget_cmd->add_option("--lines", budget.lines_path, "Budget lines JSON")->required();
  budget_cmd->add_option("--format", budget.format)
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  CheckpointOptions ckpt;
  auto* ckpt_cmd = app.add_subcommand("checkpoint", "Checkpoint size and compression ratio");
  ckpt_cmd->add_option("--params", ckpt.params, "Parameter count")->required();
  ckpt_cmd->add_option("--bytes-per-param", ckpt.bytes_per_param)->capture_default_str();
  ckpt_cmd->add_option("--teacher-params", ckpt.teacher_params);
  ckpt_cmd->add_option("--name", ckpt.name)->capture_default_str();

  ClsOptions cls;
  auto* cls_cmd = app.add_subcommand("cls-eval", "Per-class and averaged scores from a confusion CSV");
  cls_cmd->add_option("confusion", cls.csv_path, "Confusion matrix CSV")->required();
  cls_cmd->add_option("--top", cls.top, "Number of top confusions")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Emitter em{out, manifest_only, {}};
  em.manifest.version = version();
  try {
    if (*mot_cmd) {
      em.manifest.subcommand = "mot-eval";
      run_mot(mot, em);
    } else if (*loss_cmd) {
      em.manifest.subcommand = "loss-eval";
      run_loss(loss, em);
    } else if (*reid_cmd) {
      em.manifest.subcommand = "reid-sim";
      run_reid(reid, em);
    } else if (*prune_cmd) {
      em.manifest.subcommand = "prune-sim";
      run_prune(prune, em);
    } else if (*storage_cmd) {
      em.manifest.subcommand = "storage";
      run_storage(storage, em);
    } else if (*budget_cmd) {
      em.manifest.subcommand = "budget";
      run_budget(budget, em);
    } else if (*ckpt_cmd) {
      em.manifest.subcommand = "checkpoint";
      run_checkpoint(ckpt, em);
    } else if (*cls_cmd) {
      em.manifest.subcommand = "cls-eval";
      run_cls(cls, em);
    }
  } catch (const InputError& e) {
    err << "herdtrack: input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EmptyDataError& e) {
    err << "herdtrack: empty data: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const DegenerateInputError& e) {
    err << "herdtrack: degenerate input: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "herdtrack: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace herdtrack::cli
