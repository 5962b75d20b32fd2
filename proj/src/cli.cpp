// Copyright 2026 The qcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcp/cli.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qcp/gates.hpp"
#include "qcp/synthesis.hpp"

namespace qcp {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: expected a number for '" + key + "', got '" + value +
                                "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: expected an integer for '" + key + "', got '" + value +
                                "'");
  }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw std::invalid_argument("config: empty entry in list '" + key + "'");
    }
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Trace: return "trace";
    case Command::Simulate: return "simulate";
    case Command::Sweep: return "sweep";
    case Command::Cost: return "cost";
  }
  return "?";
}

std::string level_name(HamiltonianLevel level) {
  switch (level) {
    case HamiltonianLevel::Full8: return "full8";
    case HamiltonianLevel::Effective9: return "effective9";
    case HamiltonianLevel::Reduced12: return "reduced12";
  }
  return "?";
}

std::string schedule_name(ScheduleKind kind) {
  return kind == ScheduleKind::Swap ? "swap" : "phase";
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::ThisPaper: return "this_paper";
    case Scheme::Ref18Style: return "ref18";
    case Scheme::Ref15Style: return "ref15";
  }
  return "?";
}

std::string join_g17(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_g17(values[i]);
  }
  return out;
}

std::string label_string(const Register& reg, std::int64_t index) {
  const BasisLabel label = labels_of(reg, index);
  std::string out;
  for (size_t i = 0; i < label.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(label[i]);
  }
  return out;
}

std::string default_out_path(const RunConfig& cfg) {
  return command_name(cfg.command) + std::string("_report.") +
         (cfg.format == OutputFormat::Csv ? "csv" : "json");
}

std::string config_comment_block(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : resolved_config(cfg)) {
    out += "# " + key + " = " + value + "\n";
  }
  return out;
}

OrderedJson config_json(const RunConfig& cfg) {
  OrderedJson j;
  for (const auto& [key, value] : resolved_config(cfg)) {
    j[key] = value;
  }
  return j;
}

void emit(const RunConfig& cfg, const std::string& csv_body, const OrderedJson& json_report) {
  const std::string path = cfg.out_path.empty() ? default_out_path(cfg) : cfg.out_path;
  if (cfg.format == OutputFormat::Csv) {
    write_text_file(path, config_comment_block(cfg) + csv_body);
  } else {
    OrderedJson root;
    root["config"] = config_json(cfg);
    root["report"] = json_report;
    write_text_file(path, root.dump(2) + "\n");
  }
  std::cout << command_name(cfg.command) << ": wrote " << path << "\n";
}

OrderedJson amplitudes_json(const PureState& state) {
  OrderedJson list = OrderedJson::array();
  for (std::int64_t i = 0; i < state.reg.total_dim; ++i) {
    OrderedJson entry;
    entry["label"] = label_string(state.reg, i);
    entry["re"] = state.amps(i).real();
    entry["im"] = state.amps(i).imag();
    list.push_back(entry);
  }
  return list;
}

std::string gate_display_name(const GateSequence& seq, size_t index) {
  const GateSpec& g = seq.gates[index];
  switch (g.kind) {
    case GateKind::LevelShift:
      return index == 0 ? "L1" : "M1";
    case GateKind::ConditionalSwap:
      return "U(" + std::to_string(g.sites[0] + 1) + "," + std::to_string(g.sites[1] + 1) + ")";
    case GateKind::ControlledPhase:
      return "V(" + std::to_string(g.sites[0] + 1) + "," + std::to_string(g.sites[1] + 1) + ")";
    case GateKind::QutritPhase:
      return "P(" + std::to_string(g.sites[0] + 1) + ")";
  }
  return "?";
}

PulseSchedule schedule_on_state_register(const PulseSchedule& schedule, const RunConfig& cfg) {
  if (cfg.level != HamiltonianLevel::Reduced12) return schedule;
  PulseSchedule remapped = schedule;
  for (auto& c : remapped.post_corrections) {
    c.site -= cfg.drive.driven_first;
  }
  return remapped;
}

std::array<Complex, 8> trace_coefficients(const RunConfig& cfg) {
  std::array<Complex, 8> alpha;
  if (cfg.trace_alpha.empty()) {
    std::mt19937_64 rng(cfg.seed);
    double norm2 = 0.0;
    for (auto& a : alpha) {
      const double re = 2.0 * uniform_from_bits(rng()) - 1.0;
      const double im = 2.0 * uniform_from_bits(rng()) - 1.0;
      a = Complex(re, im);
      norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    for (auto& a : alpha) a /= norm;
  } else {
    if (cfg.trace_alpha.size() != 16) {
      throw std::invalid_argument("trace: alpha needs 16 comma-separated reals (re,im per "
                                  "coefficient)");
    }
    for (int k = 0; k < 8; ++k) {
      alpha[k] = Complex(cfg.trace_alpha[2 * k], cfg.trace_alpha[2 * k + 1]);
    }
  }
  return alpha;
}

}  // namespace

double uniform_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "command") {
    if (value == "verify") cfg.command = Command::Verify;
    else if (value == "trace") cfg.command = Command::Trace;
    else if (value == "simulate") cfg.command = Command::Simulate;
    else if (value == "sweep") cfg.command = Command::Sweep;
    else if (value == "cost") cfg.command = Command::Cost;
    else throw std::invalid_argument("config: unknown command '" + value + "'");
  } else if (key == "n") {
    cfg.n = static_cast<int>(parse_int(key, value));
  } else if (key == "phi") {
    cfg.phi = parse_double(key, value);
  } else if (key == "tolerance" || key == "tol") {
    cfg.tolerance = parse_double(key, value);
  } else if (key == "omega_j") {
    cfg.drive.omega_j = parse_double(key, value);
  } else if (key == "omega_j1") {
    cfg.drive.omega_j1 = parse_double(key, value);
  } else if (key == "phase_j") {
    cfg.drive.phase_j = parse_double(key, value);
  } else if (key == "phase_j1") {
    cfg.drive.phase_j1 = parse_double(key, value);
  } else if (key == "g") {
    cfg.drive.g = parse_double(key, value);
  } else if (key == "delta1") {
    cfg.drive.delta1 = parse_double(key, value);
  } else if (key == "delta2") {
    cfg.drive.delta2 = parse_double(key, value);
  } else if (key == "n_atoms") {
    cfg.drive.n_atoms = static_cast<int>(parse_int(key, value));
  } else if (key == "driven_first") {
    cfg.drive.driven_first = static_cast<int>(parse_int(key, value));
  } else if (key == "fock_cutoff") {
    cfg.drive.fock_cutoff = static_cast<int>(parse_int(key, value));
  } else if (key == "level") {
    if (value == "full8" || value == "full") cfg.level = HamiltonianLevel::Full8;
    else if (value == "effective9" || value == "effective") cfg.level = HamiltonianLevel::Effective9;
    else if (value == "reduced12" || value == "reduced") cfg.level = HamiltonianLevel::Reduced12;
    else throw std::invalid_argument("config: unknown level '" + value + "'");
  } else if (key == "schedule") {
    if (value == "swap") cfg.schedule = ScheduleKind::Swap;
    else if (value == "phase") cfg.schedule = ScheduleKind::Phase;
    else throw std::invalid_argument("config: unknown schedule '" + value + "'");
  } else if (key == "scales") {
    cfg.scales = parse_double_list(key, value);
  } else if (key == "alpha") {
    cfg.trace_alpha = parse_double_list(key, value);
  } else if (key == "xi") {
    cfg.cost_xi = parse_double(key, value);
  } else if (key == "cost_n_min") {
    cfg.cost_n_min = static_cast<int>(parse_int(key, value));
  } else if (key == "cost_n_max") {
    cfg.cost_n_max = static_cast<int>(parse_int(key, value));
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "format") {
    if (value == "csv") cfg.format = OutputFormat::Csv;
    else if (value == "json") cfg.format = OutputFormat::Json;
    else throw std::invalid_argument("config: unknown format '" + value + "'");
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(parse_int(key, value));
    if (cfg.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  const std::string content = read_text_file(path);
  std::stringstream stream(content);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_number) +
                                  " is not 'key = value'");
    }
    apply_config_entry(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
}

KeyValues resolved_config(const RunConfig& cfg) {
  KeyValues kv;
  kv.emplace_back("command", command_name(cfg.command));
  kv.emplace_back("n", std::to_string(cfg.n));
  kv.emplace_back("phi", format_g17(cfg.phi));
  kv.emplace_back("tolerance", format_g17(cfg.tolerance));
  kv.emplace_back("omega_j", format_g17(cfg.drive.omega_j));
  kv.emplace_back("omega_j1", format_g17(cfg.drive.omega_j1));
  kv.emplace_back("phase_j", format_g17(cfg.drive.phase_j));
  kv.emplace_back("phase_j1", format_g17(cfg.drive.phase_j1));
  kv.emplace_back("g", format_g17(cfg.drive.g));
  kv.emplace_back("delta1", format_g17(cfg.drive.delta1));
  kv.emplace_back("delta2", format_g17(cfg.drive.delta2));
  kv.emplace_back("n_atoms", std::to_string(cfg.drive.n_atoms));
  kv.emplace_back("driven_first", std::to_string(cfg.drive.driven_first));
  kv.emplace_back("fock_cutoff", std::to_string(cfg.drive.fock_cutoff));
  kv.emplace_back("level", level_name(cfg.level));
  kv.emplace_back("schedule", schedule_name(cfg.schedule));
  kv.emplace_back("scales", join_g17(cfg.scales));
  kv.emplace_back("alpha", join_g17(cfg.trace_alpha));
  kv.emplace_back("xi", format_g17(cfg.cost_xi));
  kv.emplace_back("cost_n_min", std::to_string(cfg.cost_n_min));
  kv.emplace_back("cost_n_max", std::to_string(cfg.cost_n_max));
  kv.emplace_back("out", cfg.out_path);
  kv.emplace_back("format", cfg.format == OutputFormat::Csv ? "csv" : "json");
  kv.emplace_back("seed", std::to_string(cfg.seed));
  kv.emplace_back("jobs", std::to_string(cfg.jobs));
  return kv;
}

int run_verify(const RunConfig& cfg) {
  if (cfg.n < 3 || cfg.n > 8) {
    throw std::invalid_argument("verify: n must be between 3 and 8");
  }
  if (cfg.tolerance <= 0.0) {
    throw std::invalid_argument("verify: tolerance must be positive");
  }
  const VerificationReport report = verify_against_target(cfg.n, cfg.phi, cfg.tolerance);

  std::string csv = "n,phi,tolerance,max_elementwise_error,ancilla_leakage,swap_count,"
                    "phase_count,shift_count,pass\n";
  csv += std::to_string(report.n) + "," + format_g17(report.phi) + "," +
         format_g17(cfg.tolerance) + "," + format_g17(report.max_elementwise_error) + "," +
         format_g17(report.ancilla_leakage) + "," + std::to_string(report.swap_count) + "," +
         std::to_string(report.phase_count) + "," + std::to_string(report.shift_count) + "," +
         (report.passed() ? "1" : "0") + "\n";

  OrderedJson j;
  j["n"] = report.n;
  j["phi"] = report.phi;
  j["tolerance"] = cfg.tolerance;
  j["max_elementwise_error"] = report.max_elementwise_error;
  j["ancilla_leakage"] = report.ancilla_leakage;
  j["swap_count"] = report.swap_count;
  j["phase_count"] = report.phase_count;
  j["shift_count"] = report.shift_count;
  j["pass"] = report.passed();

  emit(cfg, csv, j);
  std::cout << "verify: n=" << report.n << " max_error=" << format_g17(report.max_elementwise_error)
            << " leakage=" << format_g17(report.ancilla_leakage)
            << (report.passed() ? " PASS" : " FAIL") << "\n";
  return report.passed() ? kExitPass : kExitCheckFailure;
}

int run_trace(const RunConfig& cfg) {
  if (cfg.n != 3) {
    throw std::invalid_argument("trace: the worked example is the three-qubit walkthrough (n = 3)");
  }
  const std::array<Complex, 8> alpha = trace_coefficients(cfg);

  RunConfig resolved = cfg;
  resolved.trace_alpha.clear();
  for (const auto& a : alpha) {
    resolved.trace_alpha.push_back(a.real());
    resolved.trace_alpha.push_back(a.imag());
  }

  const std::vector<PureState> states = worked_example_trace(alpha, cfg.phi);
  const GateSequence seq = build_sequence(3, cfg.phi);

  std::string csv = "step,gate,label,re,im\n";
  OrderedJson steps = OrderedJson::array();
  for (size_t s = 0; s < states.size(); ++s) {
    const std::string name = gate_display_name(seq, s);
    for (std::int64_t i = 0; i < states[s].reg.total_dim; ++i) {
      csv += std::to_string(s + 1) + "," + name + "," + label_string(states[s].reg, i) + "," +
             format_g17(states[s].amps(i).real()) + "," + format_g17(states[s].amps(i).imag()) +
             "\n";
    }
    OrderedJson step;
    step["step"] = s + 1;
    step["gate"] = name;
    step["amplitudes"] = amplitudes_json(states[s]);
    steps.push_back(step);
  }

  OrderedJson j;
  j["steps"] = steps;
  emit(resolved, csv, j);
  return kExitPass;
}

int run_simulate(const RunConfig& cfg) {
  const DriveParams& p = cfg.drive;
  validate(p);
  const DerivedParams d = derive_params(p);
  const std::vector<std::string> warnings = regime_warnings(p);

  PulseSchedule schedule;
  double conditional_phase = 0.0;
  if (cfg.schedule == ScheduleKind::Swap) {
    schedule = swap_pulse_schedule(p, cfg.level);
  } else {
    auto [sched, phase] = phase_pulse_schedule(p, cfg.level);
    schedule = sched;
    conditional_phase = phase;
  }

  HamiltonianSource source = [&]() {
    switch (cfg.level) {
      case HamiltonianLevel::Full8: return full_source(p);
      case HamiltonianLevel::Effective9: return effective_source(p);
      case HamiltonianLevel::Reduced12:
      default: return HamiltonianSource::constant(reduced_hamiltonian(p));
    }
  }();

  const PureState initial = sweep_stress_state(p, cfg.level);
  PureState final_state = evolve(initial, source, schedule.duration);
  final_state = apply_corrections(final_state, schedule_on_state_register(schedule, cfg));

  const PureState ideal = sweep_ideal_state(p, cfg.level, cfg.schedule);
  const double fidelity = state_fidelity(final_state, ideal);
  const double vacuum = vacuum_population(final_state);

  std::string csv = "record,key,value,re,im\n";
  auto add_row = [&](const std::string& record, const std::string& key, const std::string& value) {
    csv += record + "," + key + "," + value + ",,\n";
  };
  add_row("derived", "lambda_j", format_g17(d.lambda_j));
  add_row("derived", "lambda_j1", format_g17(d.lambda_j1));
  add_row("derived", "delta", format_g17(d.delta));
  add_row("derived", "xi", format_g17(d.xi));
  add_row("derived", "phase_diff", format_g17(d.phase_diff));
  add_row("derived", "mu_j", format_g17(d.mu_j));
  add_row("derived", "mu_j1", format_g17(d.mu_j1));
  add_row("derived", "mu", format_g17(d.mu));
  add_row("derived", "epsilon", format_g17(d.epsilon));
  add_row("derived", "eta", format_g17(d.eta));
  add_row("schedule", "level", level_name(schedule.level));
  add_row("schedule", "duration", format_g17(schedule.duration));
  for (size_t i = 0; i < schedule.post_corrections.size(); ++i) {
    const auto& c = schedule.post_corrections[i];
    add_row("schedule", "correction_" + std::to_string(i),
            std::to_string(c.site) + ";" + std::to_string(c.level) + ";" + format_g17(c.theta));
  }
  if (cfg.schedule == ScheduleKind::Phase) {
    add_row("result", "conditional_phase", format_g17(conditional_phase));
  }
  add_row("result", "fidelity", format_g17(fidelity));
  add_row("result", "infidelity", format_g17(1.0 - fidelity));
  add_row("result", "norm", format_g17(final_state.norm()));
  add_row("result", "vacuum_population", format_g17(vacuum));
  for (size_t i = 0; i < warnings.size(); ++i) {
    add_row("warning", std::to_string(i), warnings[i]);
  }
  for (std::int64_t i = 0; i < initial.reg.total_dim; ++i) {
    csv += "amplitude,initial:" + label_string(initial.reg, i) + ",," +
           format_g17(initial.amps(i).real()) + "," + format_g17(initial.amps(i).imag()) + "\n";
  }
  for (std::int64_t i = 0; i < final_state.reg.total_dim; ++i) {
    csv += "amplitude,final:" + label_string(final_state.reg, i) + ",," +
           format_g17(final_state.amps(i).real()) + "," + format_g17(final_state.amps(i).imag()) +
           "\n";
  }

  OrderedJson j;
  j["warnings"] = warnings;
  OrderedJson derived;
  derived["lambda_j"] = d.lambda_j;
  derived["lambda_j1"] = d.lambda_j1;
  derived["delta"] = d.delta;
  derived["xi"] = d.xi;
  derived["phase_diff"] = d.phase_diff;
  derived["mu_j"] = d.mu_j;
  derived["mu_j1"] = d.mu_j1;
  derived["mu"] = d.mu;
  derived["epsilon"] = d.epsilon;
  derived["eta"] = d.eta;
  j["derived"] = derived;
  OrderedJson sched_json;
  sched_json["level"] = level_name(schedule.level);
  sched_json["duration"] = schedule.duration;
  OrderedJson corrections = OrderedJson::array();
  for (const auto& c : schedule.post_corrections) {
    OrderedJson cj;
    cj["site"] = c.site;
    cj["level"] = c.level;
    cj["theta"] = c.theta;
    corrections.push_back(cj);
  }
  sched_json["corrections"] = corrections;
  j["schedule"] = sched_json;
  if (cfg.schedule == ScheduleKind::Phase) {
    j["conditional_phase"] = conditional_phase;
  }
  OrderedJson result;
  result["fidelity"] = fidelity;
  result["infidelity"] = 1.0 - fidelity;
  result["norm"] = final_state.norm();
  result["vacuum_population"] = vacuum;
  j["result"] = result;
  j["initial"] = amplitudes_json(initial);
  j["final"] = amplitudes_json(final_state);

  emit(cfg, csv, j);
  std::cout << "simulate: " << schedule_name(cfg.schedule) << " on " << level_name(cfg.level)
            << " fidelity=" << format_g17(fidelity) << "\n";
  return kExitPass;
}

int run_sweep(const RunConfig& cfg) {
  validate(cfg.drive);
  const SweepResult sweep = detuning_scaling_sweep(cfg.drive, cfg.scales, cfg.schedule, cfg.jobs);

  std::string csv = "scale,infidelity\n";
  for (size_t i = 0; i < sweep.scales.size(); ++i) {
    csv += format_g17(sweep.scales[i]) + "," + format_g17(sweep.infidelities[i]) + "\n";
  }
  csv += "# fitted_order = " + format_g17(sweep.fitted_order) + "\n";

  OrderedJson j;
  j["scales"] = sweep.scales;
  j["infidelities"] = sweep.infidelities;
  j["fitted_order"] = sweep.fitted_order;

  emit(cfg, csv, j);
  return kExitPass;
}

int run_cost(const RunConfig& cfg) {
  if (cfg.cost_n_min < 3 || cfg.cost_n_max < cfg.cost_n_min) {
    throw std::invalid_argument("cost: need 3 <= cost_n_min <= cost_n_max");
  }
  if (cfg.cost_xi <= 0.0) {
    throw std::invalid_argument("cost: xi must be positive");
  }

  std::vector<CostReport> rows;
  for (int n = cfg.cost_n_min; n <= cfg.cost_n_max; ++n) {
    rows.push_back(cost_report(Scheme::ThisPaper, n, cfg.cost_xi));
    rows.push_back(cost_report(Scheme::Ref18Style, n, cfg.cost_xi));
    if (n == 3) {
      rows.push_back(cost_report(Scheme::Ref15Style, n, cfg.cost_xi));
    }
  }

  std::string csv = "scheme,n,two_site_gate_count,single_site_gate_count,total_coupling_time\n";
  OrderedJson list = OrderedJson::array();
  for (const auto& r : rows) {
    csv += scheme_name(r.scheme) + "," + std::to_string(r.n) + "," +
           std::to_string(r.two_site_gate_count) + "," + std::to_string(r.single_site_gate_count) +
           "," + format_g17(r.total_coupling_time) + "\n";
    OrderedJson row;
    row["scheme"] = scheme_name(r.scheme);
    row["n"] = r.n;
    row["two_site_gate_count"] = r.two_site_gate_count;
    row["single_site_gate_count"] = r.single_site_gate_count;
    row["total_coupling_time"] = r.total_coupling_time;
    list.push_back(row);
  }

  emit(cfg, csv, list);
  return kExitPass;
}

int run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Verify: return run_verify(cfg);
    case Command::Trace: return run_trace(cfg);
    case Command::Simulate: return run_simulate(cfg);
    case Command::Sweep: return run_sweep(cfg);
    case Command::Cost: return run_cost(cfg);
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace qcp
