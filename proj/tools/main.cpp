// Copyright 2026 The donorqca Authors
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


// donorqca command line: params | run | compare | tomo | demo.
//
// Exit codes: 0 success, 1 internal error, 2 configuration error (bad
// arguments, missing files, invalid device, step size), 3 parse error
// (malformed JSON, units, observables), 4 physically infeasible program
// (selectivity collision, failed validation).

#include <algorithm>
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "donorqca/demos.hpp"
#include "donorqca/device_io.hpp"
#include "donorqca/errors.hpp"
#include "donorqca/noise_ensemble.hpp"
#include "donorqca/programs.hpp"
#include "donorqca/readout.hpp"

namespace fs = std::filesystem;
using namespace donorqca;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kParse = 3, kInfeasible = 4 };

struct Options {
  std::string device;
  std::string program;
  std::string op;
  std::size_t molecules = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt_ns;
  std::string out = ".";
  std::string format = "csv,json";
  std::string table_format = "table";  // params only
  std::string level = "pulse";
  int threads = 0;
  std::vector<std::string> observables;
  std::string input;
};

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot write " + path.string());
  f << text;
}

bool wants(const Options& o, const std::string& fmt) {
  if (o.format != "csv" && o.format != "json" && o.format != "csv,json" && o.format != "json,csv") {
    throw SpecError("--format must be csv, json or csv,json");
  }
  return o.format.find(fmt) != std::string::npos;
}

DeviceSpec device_of(const Options& o) {
  if (o.device.empty()) return zno_device();
  return load_device(o.device);
}

NoiseModel noise_of(const Options& o) {
  NoiseModel model = NoiseModel::none();
  if (!o.device.empty()) {
    const json j = read_json_file(o.device);
    if (j.contains("noise")) model = noise_model_from_json(j.at("noise"));
  }
  if (const char* env = std::getenv("DONORQCA_SEED")) {
    try {
      model.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw SpecError(std::string("DONORQCA_SEED is not an integer: ") + env);
    }
  }
  if (o.seed) model.seed = *o.seed;
  return model;
}

PulseProgram program_of(const Options& o, const DeviceSpec& spec) {
  if (!o.program.empty() && !o.op.empty()) throw SpecError("give --program or --op, not both");
  if (!o.program.empty()) return load_program(o.program);
  if (o.op.empty()) throw SpecError("a program is required (--program FILE or --op NAME)");
  if (o.op == "empty") return PulseProgram{"empty", {}, {}, {}, {}};
  const auto& names = demo_program_names();
  if (std::find(names.begin(), names.end(), o.op) != names.end()) return demo_program(spec, o.op);
  throw SpecError("unknown --op '" + o.op + "' (ramsey, hahn_echo, ca_step, shift_and_read, empty)");
}

// Violations end the command; warnings go to stderr.
void check_program(const PulseProgram& program, const DeviceSpec& spec) {
  const ValidationReport report = validate_program(program, spec);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (!report.ok) {
    std::string msg = "program fails validation:";
    for (const std::string& v : report.violations) msg += "\n  " + v;
    throw InfeasibleError(msg);
  }
}

std::optional<Time> dt_of(const Options& o) {
  if (!o.dt_ns) return std::nullopt;
  return Time(*o.dt_ns, units::ns);
}

int cmd_params(const Options& o) {
  const DeviceSpec spec = device_of(o);
  const std::vector<ParameterRow> rows = parameter_table(spec);
  json j = json::array();
  for (const ParameterRow& r : rows) {
    json row{{"key", r.key}, {"description", r.description}, {"unit", r.unit},
             {"value", std::stod(fmt12(r.value))}, {"status", r.status()}, {"note", r.note}};
    row["reference"] = r.reference ? json(*r.reference) : json(nullptr);
    j.push_back(row);
  }
  if (o.table_format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%-22s %-16s %-12s %-12s %-8s %s\n", "key", "value", "reference", "unit", "status", "note");
    for (const ParameterRow& r : rows) {
      std::printf("%-22s %-16s %-12s %-12s %-8s %s\n", r.key.c_str(), fmt12(r.value).c_str(),
                  r.reference ? fmt12(*r.reference).c_str() : "-", r.unit.c_str(), r.status().c_str(),
                  r.note.c_str());
    }
  }
  if (o.out != ".") write_text(fs::path(o.out) / "params.json", j.dump(2) + "\n");
  return kOk;
}

int cmd_run(const Options& o) {
  const DeviceSpec spec = device_of(o);
  const NoiseModel noise = noise_of(o);
  const PulseProgram program = program_of(o, spec);
  check_program(program, spec);
  std::vector<Observable> obs;
  for (const std::string& s : o.observables) obs.push_back(Observable::parse(s, spec.pattern.size()));
  if (obs.empty()) {
    for (size_t k = 0; k < spec.pattern.size(); ++k) obs.push_back(Observable::single('Z', static_cast<int>(k), spec.pattern.size()));
  }
  EnsembleOptions opt;
  opt.level = level_from_string(o.level);
  opt.threads = o.threads;
  opt.dt = dt_of(o);
  const bool csv = wants(o, "csv"), js = wants(o, "json");
  const EnsembleResult r = run_ensemble(spec, noise, program, o.molecules, obs, {}, opt);
  json summary = r.to_json();
  summary["program"] = program.name;
  summary["pattern"] = spec.pattern.str();
  summary["duration_ns"] = std::stod(fmt12(program.duration().in(units::ns)));
  if (csv) write_text(fs::path(o.out) / "timeseries.csv", r.to_csv());
  if (js) write_text(fs::path(o.out) / "summary.json", summary.dump(2) + "\n");
  std::printf("%s: %zu molecules, %zu samples, seed %llu, level %s\n", program.name.empty() ? "program" : program.name.c_str(),
              r.n_molecules, r.times.size(), static_cast<unsigned long long>(r.seed), to_string(r.level).c_str());
  for (size_t i = 0; i < obs.size(); ++i) {
    std::printf("  %-10s final %s +- %s\n", obs[i].str().c_str(), fmt12(r.mean[i].back()).c_str(),
                fmt12(r.stderr_[i].back()).c_str());
  }
  return kOk;
}

int cmd_compare(const Options& o) {
  const DeviceSpec spec = device_of(o);
  const PulseProgram program = program_of(o, spec);
  check_program(program, spec);
  for (const PulseEvent& e : program.events) {
    if (e.has_drive() && !std::holds_alternative<GateRule>(e.intent)) {
      throw SpecError("compare needs a rule on every microwave event");
    }
  }
  const ChainState input =
      o.input.empty() ? initialize_pumped(spec.pattern) : new_chain(spec.pattern, o.input);
  json report;
  report["pattern"] = spec.pattern.str();
  report["program"] = program.name;
  report["events"] = json::array();
  ChainState state = input;
  const std::optional<Time> dt = dt_of(o);
  for (size_t i = 0; i < program.events.size(); ++i) {
    PulseProgram one;
    one.events = {program.events[i]};
    const ChainState oracle = run_program(state, one, spec, Level::Oracle);
    const ChainState pulse = run_program(state, one, spec, Level::Pulse, dt);
    const PulseEvent& e = program.events[i];
    std::string intent = "free";
    if (const auto* r = std::get_if<GateRule>(&e.intent)) intent = r->str();
    if (const auto* p = std::get_if<IsingPhase>(&e.intent)) intent = "ising bond " + std::to_string(p->bond);
    const double f = fidelity(oracle, pulse);
    report["events"].push_back({{"index", i}, {"intent", intent}, {"fidelity", std::stod(fmt12(f))}});
    std::printf("event %zu  %-40s fidelity %s\n", i, intent.c_str(), fmt12(f).c_str());
    state = oracle;
  }
  const double total = fidelity(run_program(input, program, spec, Level::Oracle),
                                run_program(input, program, spec, Level::Pulse, dt));
  report["cumulative_fidelity"] = std::stod(fmt12(total));
  std::printf("cumulative fidelity %s\n", fmt12(total).c_str());
  write_text(fs::path(o.out) / "compare.json", report.dump(2) + "\n");
  return kOk;
}

int cmd_tomo(const Options& o) {
  const DeviceSpec spec = device_of(o);
  const NoiseModel noise = noise_of(o);
  const PulseProgram program = program_of(o, spec);
  check_program(program, spec);
  EnsembleOptions opt;
  opt.level = level_from_string(o.level);
  opt.threads = o.threads;
  opt.dt = dt_of(o);
  const TomographyResult t = tomography_D(spec, program, noise, o.molecules, opt);
  json j = t.to_json();
  for (auto* key : {"bloch", "stderr"}) {
    for (auto& v : j[key]) v = std::stod(fmt12(v.get<double>()));
  }
  write_text(fs::path(o.out) / "tomography.json", j.dump(2) + "\n");
  std::printf("D Bloch vector (%s, %s, %s) +- (%s, %s, %s)\n", fmt12(t.bloch.x).c_str(), fmt12(t.bloch.y).c_str(),
              fmt12(t.bloch.z).c_str(), fmt12(t.stderr_[0]).c_str(), fmt12(t.stderr_[1]).c_str(),
              fmt12(t.stderr_[2]).c_str());
  return kOk;
}

int cmd_demo(const Options& o) {
  const DeviceSpec spec = zno_device();
  json device = device_to_json(spec);
  device["name"] = "ZnO ABCABCD chain";
  device["noise"] = noise_model_to_json(NoiseModel::uniform(Time(90.0, units::us), Energy{}));
  const fs::path out(o.out);
  write_text(out / "zno_device.json", device.dump(2) + "\n");
  std::printf("%s\n", (out / "zno_device.json").string().c_str());
  for (const PulseProgram& p : demo_programs(spec)) {
    const fs::path path = out / "programs" / (p.name + ".json");
    write_text(path, program_to_json(p).dump(2) + "\n");
    std::printf("%s  (%zu events, %s ns)\n", path.string().c_str(), p.events.size(),
                fmt12(p.duration().in(units::ns)).c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Donor-spin quantum cellular automaton simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_device = [&](CLI::App* c) {
    c->add_option("--device", o.device, "Device JSON file (default: built-in ZnO device)")->check(CLI::ExistingFile);
  };
  auto add_program = [&](CLI::App* c) {
    c->add_option("--program", o.program, "Program JSON file")->check(CLI::ExistingFile);
    c->add_option("--op", o.op, "Built-in program: ramsey, hahn_echo, ca_step, shift_and_read, empty");
  };
  auto add_ensemble = [&](CLI::App* c) {
    c->add_option("--molecules", o.molecules, "Number of molecules")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "RNG seed (overrides DONORQCA_SEED and the device file)");
    c->add_option("--level", o.level, "oracle or pulse")->check(CLI::IsMember({"oracle", "pulse"}));
    c->add_option("--threads", o.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  };

  CLI::App* params = app.add_subcommand("params", "Derived parameter table of a device");
  add_device(params);
  params->add_option("--format", o.table_format, "table or json")->check(CLI::IsMember({"table", "json"}));
  params->add_option("--out", o.out, "Directory for params.json");

  CLI::App* run = app.add_subcommand("run", "Run a program over a molecular ensemble");
  add_device(run);
  add_program(run);
  add_ensemble(run);
  run->add_option("--dt", o.dt_ns, "Integration step in ns");
  run->add_option("--out", o.out, "Output directory");
  run->add_option("--format", o.format, "csv, json or csv,json");
  run->add_option("--observable", o.observables, "Pauli product, e.g. Z6 or X0*Z1 (repeatable)");

  CLI::App* compare = app.add_subcommand("compare", "Oracle versus pulse fidelity per event");
  add_device(compare);
  add_program(compare);
  compare->add_option("--dt", o.dt_ns, "Integration step in ns");
  compare->add_option("--input", o.input, "Input basis state, one bit per cell (default all 0)");
  compare->add_option("--out", o.out, "Directory for compare.json");

  CLI::App* tomo = app.add_subcommand("tomo", "Tomography of the D cell after a program");
  add_device(tomo);
  add_program(tomo);
  add_ensemble(tomo);
  tomo->add_option("--dt", o.dt_ns, "Integration step in ns");
  tomo->add_option("--out", o.out, "Directory for tomography.json");

  CLI::App* demo = app.add_subcommand("demo", "Write the ZnO device file and the canned programs");
  demo->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (params->parsed()) return cmd_params(o);
    if (run->parsed()) return cmd_run(o);
    if (compare->parsed()) return cmd_compare(o);
    if (tomo->parsed()) return cmd_tomo(o);
    if (demo->parsed()) return cmd_demo(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
