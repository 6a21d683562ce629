// Copyright 2026 The Everettropy Authors
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

#include "cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "everettropy/capacity.hpp"
#include "everettropy/copyability.hpp"
#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"
#include "everettropy/format.hpp"
#include "everettropy/operator_io.hpp"
#include "everettropy/selection.hpp"
#include "everettropy/state.hpp"
#include "everettropy/szilard.hpp"

namespace everettropy::cli {
namespace {

using json = nlohmann::json;

constexpr double kEntropySlack = 1e-9;

double resolve_tolerance(const RunConfig& config) {
  if (config.tolerance) {
    if (!(*config.tolerance > 0.0) || !std::isfinite(*config.tolerance)) {
      throw ValidationError("tol: must be a positive finite number");
    }
    return *config.tolerance;
  }
  const char* env = std::getenv(kToleranceEnv);
  if (env == nullptr || *env == '\0') return kOperatorTol;
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(env, &end);
  if (errno != 0 || end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(kToleranceEnv) + ": '" + env +
                          "' is not a positive number");
  }
  return value;
}

void emit(const std::string& text, const std::string& path, std::ostream& out,
          const char* field = "out") {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError(std::string(field) + ": cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw ValidationError(std::string(field) + ": write to '" + path + "' failed");
}

// Output re-validation: any NaN or out-of-range entropy is a numerical fault.
void check_entropy(double value, std::size_t dim, const std::string& what) {
  const double ceiling = std::log2(static_cast<double>(dim)) + kEntropySlack;
  if (!std::isfinite(value) || value < -kEntropySlack || value > ceiling) {
    throw NumericalError(what + ": entropy " + format_decimal(value) + " outside [0, log2 " +
                         std::to_string(dim) + "]");
  }
}

void check_finite(double value, const std::string& what) {
  if (!std::isfinite(value)) throw NumericalError(what + ": non-finite value");
}

DensityState read_state(const std::string& path, const char* field, double tol) {
  if (path.empty()) throw ValidationError(std::string(field) + ": path is required");
  Operator op = [&] {
    try {
      return read_operator_file(path);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(field) + ": " + e.what());
    }
  }();
  try {
    return DensityState::from_operator(op, tol);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(field) + ": " + e.what());
  }
}

Operator read_operator(const std::string& path, const char* field) {
  if (path.empty()) throw ValidationError(std::string(field) + ": path is required");
  try {
    return read_operator_file(path);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(field) + ": " + e.what());
  }
}

// --- szilard ---------------------------------------------------------------

int run_szilard_command(const RunConfig& config, std::ostream& out) {
  if (config.molecules < 1) throw ValidationError("molecules: must be >= 1");
  const szilard::EntropyTrace trace = szilard::run_szilard(config.molecules);
  const std::size_t dims[] = {2, 2, 2, 3, 6, 24};

  std::string csv = "stage,subsystem,entropy_bits_per_molecule,entropy_bits_total\n";
  for (std::size_t t = 0; t < trace.entropies.size(); ++t) {
    for (std::size_t row = 0; row < szilard::kTraceRows.size(); ++row) {
      const std::string name(szilard::kTraceRows[row]);
      const double per = trace.entropies[t][row];
      check_entropy(per, dims[row], "stage " + std::to_string(t) + " " + name);
      csv += std::to_string(t) + "," + name + "," + format_decimal(per) + "," +
             format_decimal(trace.total(t, name)) + "\n";
    }
    if (trace.entropies[t][5] > kEntropySlack) {
      throw NumericalError("stage " + std::to_string(t) + ": global state is not pure");
    }
  }

  std::string dump;
  if (!config.json_path.empty()) {
    json doc;
    doc["molecules"] = config.molecules;
    doc["stages"] = json::array();
    for (std::size_t t = 0; t < trace.states.size(); ++t) {
      json stage;
      stage["stage"] = t;
      json reduced = json::object();
      for (const char* label :
           {szilard::kQubit, szilard::kCarrier, szilard::kDeviceX, szilard::kDeviceC}) {
        reduced[label] = json::parse(operator_to_json(reduced_state(trace.states[t], {label}).op()));
      }
      stage["reduced"] = std::move(reduced);
      doc["stages"].push_back(std::move(stage));
    }
    dump = doc.dump(2) + "\n";
  }

  emit(csv, config.out_path, out);
  if (!dump.empty()) emit(dump, config.json_path, out, "json");
  return kExitOk;
}

// --- selection -------------------------------------------------------------

int run_selection_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.seed) throw ValidationError("seed: required for stochastic runs");
  if (config.dim_a < 2) throw ValidationError("dim-a: must be >= 2");
  if (config.dim_b < 2) throw ValidationError("dim-b: must be >= 2");
  if (config.dim_a * config.dim_b > 4096) throw ValidationError("dim-a: dim-a * dim-b exceeds 4096");
  if (!std::isfinite(config.noise) || config.noise < 0.0) {
    throw ValidationError("noise: must be a finite number >= 0");
  }
  if (config.seeds < 1) throw ValidationError("seeds: must be >= 1");
  if (config.parallel < 1) throw ValidationError("parallel: must be >= 1");

  SweepConfig sweep;
  sweep.dim_a = config.dim_a;
  sweep.dim_b = config.dim_b;
  sweep.epsilon = config.noise;
  sweep.seeds = config.seeds;
  sweep.first_seed = *config.seed;
  sweep.parallel = config.parallel;
  const std::vector<SweepRecord> records = run_selection_sweep(sweep);

  std::string csv = "seed,S1_before,S1_after,S2_before,S2_after,global_S,dephasing_form_matched\n";
  std::string ledger = "seed,matched1,matched2,delta_S1,delta_S2\n";
  std::size_t violations = 0;
  std::size_t unmatched = 0;
  std::uint64_t first_violation = 0;
  for (const SweepRecord& r : records) {
    const std::string tag = "seed " + std::to_string(r.seed);
    check_entropy(r.s1_before, config.dim_a, tag + " S1_before");
    check_entropy(r.s1_after, config.dim_a, tag + " S1_after");
    check_entropy(r.s2_before, config.dim_b, tag + " S2_before");
    check_entropy(r.s2_after, config.dim_b, tag + " S2_after");
    check_entropy(r.global, config.dim_a * config.dim_b, tag + " global_S");

    const double d1 = r.s1_after - r.s1_before;
    const double d2 = r.s2_after - r.s2_before;
    const bool bad = (r.matched1 && d1 < -kEntropySlack) || (r.matched2 && d2 < -kEntropySlack);
    if (bad && violations++ == 0) first_violation = r.seed;
    if (!(r.matched1 && r.matched2)) {
      ++unmatched;
      ledger += std::to_string(r.seed) + "," + (r.matched1 ? "true" : "false") + "," +
                (r.matched2 ? "true" : "false") + "," + format_decimal(d1) + "," +
                format_decimal(d2) + "\n";
    }
    csv += std::to_string(r.seed) + "," + format_decimal(r.s1_before) + "," +
           format_decimal(r.s1_after) + "," + format_decimal(r.s2_before) + "," +
           format_decimal(r.s2_after) + "," + format_decimal(r.global) + "," +
           ((r.matched1 && r.matched2) ? "true" : "false") + "\n";
  }

  emit(csv, config.out_path, out);
  if (!config.ledger_path.empty()) emit(ledger, config.ledger_path, out, "ledger");
  if (!config.out_path.empty()) {
    out << "runs=" << records.size() << " matched=" << (records.size() - unmatched)
        << " unmatched=" << unmatched << " violations=" << violations << "\n";
  }
  if (violations > 0) {
    err << "error: seed " << first_violation
        << ": marginal entropy decreased on a dephasing-matched run (" << violations
        << " total)\n";
    return kExitNumerical;
  }
  return kExitOk;
}

// --- copy-check ------------------------------------------------------------

int run_copy_check_command(const RunConfig& config, std::ostream& out, double tol) {
  const Operator b = read_operator(config.operator_path, "operator");
  const CopyVerdict verdict = classify_copyable(
      b, tol, config.hermitian_only ? CopyMode::hermitian_only : CopyMode::normal);
  json doc;
  doc["copyable"] = verdict.copyable;
  doc["degenerate"] = verdict.degenerate;
  if (verdict.witness) {
    doc["witness"] = json::array({verdict.witness->first, verdict.witness->second});
  } else {
    doc["witness"] = nullptr;
  }
  emit(doc.dump() + "\n", config.out_path, out);
  return kExitOk;
}

// --- capacity --------------------------------------------------------------

RealVector read_real_array(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty()) throw ValidationError(field + ": expected a non-empty array");
  RealVector v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw ValidationError(field + "[" + std::to_string(i) + "]: expected a number");
    }
    v(static_cast<Eigen::Index>(i)) = node[i].get<double>();
  }
  return v;
}

ChannelExperiment read_experiment(const std::string& path, double tol) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("experiment: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ValidationError("experiment: malformed JSON (byte " + std::to_string(e.byte) + ")");
  }
  if (!doc.is_object()) throw ValidationError("experiment: expected a JSON object");

  std::optional<DensityState> channel;
  if (doc.contains("spectrum")) {
    const RealVector spectrum = read_real_array(doc["spectrum"], "spectrum");
    try {
      channel = DensityState::diagonal(single("channel", static_cast<std::size_t>(spectrum.size())),
                                       spectrum);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("spectrum: ") + e.what());
    }
  } else if (doc.contains("state")) {
    try {
      channel = DensityState::from_operator(parse_operator_json(doc["state"].dump()), tol);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("state: ") + e.what());
    }
  } else {
    throw ValidationError("spectrum: missing (or give 'state')");
  }

  if (!doc.contains("code") || !doc["code"].is_array() || doc["code"].empty()) {
    throw ValidationError("code: expected a non-empty array of permutations");
  }
  std::vector<Permutation> code;
  for (std::size_t a = 0; a < doc["code"].size(); ++a) {
    const json& row = doc["code"][a];
    const std::string field = "code[" + std::to_string(a) + "]";
    if (!row.is_array()) throw ValidationError(field + ": expected an array");
    Permutation perm;
    for (const json& x : row) {
      if (!x.is_number_unsigned()) throw ValidationError(field + ": entries must be indices");
      perm.push_back(x.get<std::size_t>());
    }
    if (perm.size() != channel->dim() || !is_bijection(perm)) {
      throw ValidationError(field + ": not a permutation of 0.." + std::to_string(channel->dim() - 1));
    }
    code.push_back(std::move(perm));
  }

  RealVector prior = uniform_prior(code.size());
  if (doc.contains("prior")) prior = read_real_array(doc["prior"], "prior");
  try {
    return ChannelExperiment(std::move(prior), std::move(*channel), std::move(code));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("experiment: ") + e.what());
  }
}

int run_capacity_command(const RunConfig& config, std::ostream& out, double tol) {
  const bool have_state = !config.state_path.empty();
  const bool have_experiment = !config.experiment_path.empty();
  if (have_state == have_experiment) {
    throw ValidationError("state: give exactly one of --state or --experiment");
  }
  json doc;
  if (have_state) {
    const DensityState rho = read_state(config.state_path, "state", tol);
    const double s = von_neumann_entropy(rho);
    const double imax = i_max(rho);
    check_entropy(s, rho.dim(), "entropy_bits");
    check_entropy(imax, rho.dim(), "i_max_bits");
    doc["dimension"] = rho.dim();
    doc["entropy_bits"] = s;
    doc["i_max_bits"] = imax;
  } else {
    const ChannelExperiment experiment = read_experiment(config.experiment_path, tol);
    const CapacityReport report = evaluate_capacity(experiment);
    json joint = json::array();
    for (Eigen::Index a = 0; a < report.joint.rows(); ++a) {
      json row = json::array();
      for (Eigen::Index b = 0; b < report.joint.cols(); ++b) {
        check_finite(report.joint(a, b), "joint");
        row.push_back(report.joint(a, b));
      }
      joint.push_back(std::move(row));
    }
    const std::size_t n = experiment.channel().dim();
    check_entropy(report.mutual_information_bits, n, "mutual_information_bits");
    check_entropy(report.i_max_bits, n, "i_max_bits");
    check_finite(report.gap, "gap");
    if (report.gap < -kEntropySlack) {
      throw NumericalError("gap: mutual information exceeds i_max by " +
                           format_decimal(-report.gap));
    }
    doc["joint"] = std::move(joint);
    doc["mutual_information_bits"] = report.mutual_information_bits;
    doc["i_max_bits"] = report.i_max_bits;
    doc["gap"] = report.gap;
  }
  emit(doc.dump() + "\n", config.out_path, out);
  return kExitOk;
}

// --- branches --------------------------------------------------------------

int run_branches_command(const RunConfig& config, std::ostream& out, double tol) {
  const Operator u = read_operator(config.unitary_path, "unitary");
  const Operator a = read_operator(config.observable_path, "observable");
  const Observable obs = [&] {
    try {
      return Observable(a, tol);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("observable: ") + e.what());
    }
  }();
  const std::optional<Permutation> perm = detect_branching(u, obs, tol);
  json doc;
  doc["branching"] = perm.has_value();
  if (perm) {
    doc["permutation"] = *perm;
  } else {
    doc["permutation"] = nullptr;
  }
  emit(doc.dump() + "\n", config.out_path, out);
  return kExitOk;
}

// --- entropy ---------------------------------------------------------------

int run_entropy_command(const RunConfig& config, std::ostream& out, double tol) {
  const DensityState rho = read_state(config.state_path, "state", tol);
  std::vector<std::string> keep = config.keep;
  if (keep.empty()) keep = rho.layout().labels();
  for (const auto& label : keep) {
    if (!rho.layout().contains(label)) {
      throw ValidationError("keep: unknown subsystem '" + label + "'");
    }
  }
  const DensityState marginal = reduced_state(rho, keep);
  const double s = von_neumann_entropy(marginal);
  check_entropy(s, marginal.dim(), "entropy_bits");

  json doc;
  doc["subsystems"] = marginal.layout().labels();
  doc["dimension"] = marginal.dim();
  doc["entropy_bits"] = s;
  emit(doc.dump() + "\n", config.out_path, out);
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const double tol = resolve_tolerance(config);
    const std::string& sub = config.subcommand;
    if (sub == "szilard") return run_szilard_command(config, out);
    if (sub == "selection") return run_selection_command(config, out, err);
    if (sub == "copy-check") return run_copy_check_command(config, out, tol);
    if (sub == "capacity") return run_capacity_command(config, out, tol);
    if (sub == "branches") return run_branches_command(config, out, tol);
    if (sub == "entropy") return run_entropy_command(config, out, tol);
    throw ValidationError("subcommand: unknown '" + sub + "'");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Entropy bookkeeping for unitary quantum measurement models", "everettropy"};
  app.require_subcommand(1);
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "Operator tolerance (overrides EVERETTROPY_TOL)");
  std::string seed_text;

  auto* szilard = app.add_subcommand("szilard", "Entropy trace of the Szilard measurement cycle");
  szilard->add_option("--molecules", config.molecules, "Number of molecules")->required();
  szilard->add_option("--out", config.out_path, "CSV trace path (default stdout)");
  szilard->add_option("--json", config.json_path, "Per-stage reduced states as JSON");

  auto* selection = app.add_subcommand("selection", "Seeded noisy selection runs");
  selection->add_option("--dim-a", config.dim_a, "Dimension of the first subsystem")
      ->capture_default_str();
  selection->add_option("--dim-b", config.dim_b, "Dimension of the second subsystem")
      ->capture_default_str();
  selection->add_option("--noise", config.noise, "Misalignment strength epsilon")
      ->capture_default_str();
  selection->add_option("--seeds", config.seeds, "Number of seeds")->capture_default_str();
  selection->add_option("--seed", seed_text, "First seed")->required();
  selection->add_option("--parallel", config.parallel, "Worker threads")->capture_default_str();
  selection->add_option("--out", config.out_path, "CSV path (default stdout)");
  selection->add_option("--ledger", config.ledger_path, "CSV of runs outside the dephasing form");

  auto* copy = app.add_subcommand("copy-check", "Decide whether an operator can be copied");
  copy->add_option("--operator", config.operator_path, "Operator JSON")->required();
  copy->add_flag("--hermitian-only", config.hermitian_only, "Only accept Hermitian operators");
  copy->add_option("--out", config.out_path, "JSON output path (default stdout)");

  auto* capacity = app.add_subcommand("capacity", "Information capacity and permutation codes");
  capacity->add_option("--state", config.state_path, "State JSON");
  capacity->add_option("--experiment", config.experiment_path, "Experiment JSON");
  capacity->add_option("--out", config.out_path, "JSON output path (default stdout)");

  auto* branches = app.add_subcommand("branches", "Detect branching relative to an observable");
  branches->add_option("--unitary", config.unitary_path, "Unitary JSON")->required();
  branches->add_option("--observable", config.observable_path, "Observable JSON")->required();
  branches->add_option("--out", config.out_path, "JSON output path (default stdout)");

  auto* entropy = app.add_subcommand("entropy", "Von Neumann entropy of a state or marginal");
  entropy->add_option("--state", config.state_path, "State JSON")->required();
  entropy->add_option("--keep", config.keep, "Subsystems to keep")->delimiter(',');
  entropy->add_option("--out", config.out_path, "JSON output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  if (tol_opt->count() > 0) config.tolerance = tol;
  if (!seed_text.empty()) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(seed_text.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || seed_text.front() == '-') {
      err << "error: seed: '" << seed_text << "' is not an unsigned 64-bit integer\n";
      return kExitValidation;
    }
    config.seed = v;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return run_command(config, out, err);
}

}  // namespace everettropy::cli
