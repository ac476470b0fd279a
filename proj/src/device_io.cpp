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


#include "donorqca/device_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "donorqca/errors.hpp"

namespace donorqca {

using nlohmann::json;
using namespace units;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <class Q>
void read(const json& j, const char* key, Q& out, const std::string& where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_string()) throw ParseError(where + "." + key + " must be a string with units, e.g. \"12 meV\"");
  try {
    out = parse_as<Q>(v.get<std::string>());
  } catch (const DimensionError& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

void read_number(const json& j, const char* key, double& out, const std::string& where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ParseError(where + "." + key + " must be a number");
  out = j.at(key).get<double>();
}

void read_bool(const json& j, const char* key, bool& out, const std::string& where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_boolean()) throw ParseError(where + "." + key + " must be true or false");
  out = j.at(key).get<bool>();
}

int read_bit(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
    throw ParseError(where + "." + key + " must be 0 or 1");
  }
  return v.get<int>();
}

std::map<CellType, Energy> read_type_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must map cell types to energies");
  std::map<CellType, Energy> out;
  for (const auto& [key, value] : j.items()) {
    if (key.size() != 1) throw ParseError(where + ": '" + key + "' is not a cell type");
    Energy e;
    read(j, key.c_str(), e, where);
    out[cell_type_from_char(key[0])] = e;
  }
  return out;
}

template <class Q>
std::string fmt(Q q, std::string_view unit) {
  // Canonical unit symbols for each dimension used in device files.
  std::string_view canonical = "ueV";
  if constexpr (std::is_same_v<Q, Time>) canonical = "ns";
  if constexpr (std::is_same_v<Q, Length>) canonical = "nm";
  if constexpr (std::is_same_v<Q, NumberDensity>) canonical = "nm^-3";
  if constexpr (std::is_same_v<Q, MagneticField>) canonical = "T";
  if constexpr (std::is_same_v<Q, Temperature>) canonical = "K";
  if constexpr (std::is_same_v<Q, Frequency>) canonical = "GHz";
  if constexpr (std::is_same_v<Q, EnergyLength>) canonical = "ueV*nm";
  if constexpr (std::is_same_v<Q, Mobility>) canonical = "nm^2*C/(ueV*ns)";
  return format_quantity(q.canonical(), unit, canonical);
}

MaterialParams read_material(const json& j, MaterialParams m) {
  const std::string w = "material";
  check_keys(j, w,
             {"spin_orbit_c0", "donor_ionization", "bohr_radius", "effective_mass", "g_average", "exciton_binding",
              "bound_exciton_binding", "recombination_time", "beta", "nuclear_count", "hyperfine_frequency"});
  read(j, "spin_orbit_c0", m.spin_orbit_c0, w);
  read(j, "donor_ionization", m.donor_ionization, w);
  read(j, "bohr_radius", m.bohr_radius, w);
  read_number(j, "effective_mass", m.effective_mass, w);
  read_number(j, "g_average", m.g_average, w);
  read(j, "exciton_binding", m.exciton_binding, w);
  if (j.contains("bound_exciton_binding")) {
    Energy e;
    read(j, "bound_exciton_binding", e, w);
    m.bound_exciton_binding = e;
  }
  read(j, "recombination_time", m.recombination_time, w);
  read_number(j, "beta", m.beta, w);
  read_number(j, "nuclear_count", m.nuclear_count, w);
  read(j, "hyperfine_frequency", m.hyperfine_frequency, w);
  return m;
}

SampleMeasurements read_measurements(const json& j, SampleMeasurements s) {
  const std::string w = "measurements";
  check_keys(j, w,
             {"mobility", "g_anisotropy", "static_field", "esr_halfwidth", "mott_radius", "gating_time",
              "pulse_duration", "reference_t2", "cavity_frequency"});
  read(j, "mobility", s.mobility, w);
  read_number(j, "g_anisotropy", s.g_anisotropy, w);
  read(j, "static_field", s.static_field, w);
  read(j, "esr_halfwidth", s.esr_halfwidth, w);
  read(j, "mott_radius", s.mott_radius, w);
  read(j, "gating_time", s.gating_time, w);
  read(j, "pulse_duration", s.pulse_duration, w);
  read(j, "reference_t2", s.reference_t2, w);
  read(j, "cavity_frequency", s.cavity_frequency, w);
  return s;
}

}  // namespace

DeviceSpec device_from_json(const json& j) {
  const std::string w = "device";
  check_keys(j, w,
             {"name", "comment", "pattern", "detunings", "relay_detuning", "relay_couplings", "couplings",
              "cavity_energy", "donor_density", "temperature", "boundary", "lasers", "material", "measurements",
              "noise"});
  if (!j.contains("pattern") || !j.at("pattern").is_string()) throw ParseError("device.pattern is required");
  DeviceSpec spec = zno_device();
  spec.pattern = Pattern::parse(j.at("pattern").get<std::string>());
  if (j.contains("detunings")) {
    for (const auto& [t, e] : read_type_map(j.at("detunings"), "device.detunings")) spec.detunings[t] = e;
  }
  read(j, "relay_detuning", spec.relay_detuning, w);
  read(j, "cavity_energy", spec.cavity_energy, w);
  read(j, "donor_density", spec.donor_density, w);
  read(j, "temperature", spec.temperature, w);
  if (j.contains("boundary")) {
    const json& b = j.at("boundary");
    check_keys(b, "device.boundary", {"left", "right"});
    spec.boundary.left_virtual = read_bit(b, "left", spec.boundary.left_virtual, "device.boundary");
    spec.boundary.right_virtual = read_bit(b, "right", spec.boundary.right_virtual, "device.boundary");
  }
  if (j.contains("lasers")) {
    const json& l = j.at("lasers");
    const std::string lw = "device.lasers";
    check_keys(l, lw, {"rabi_circular", "rabi_linear", "circular_on", "linear_on"});
    read(l, "rabi_circular", spec.lasers.rabi_circular, lw);
    read(l, "rabi_linear", spec.lasers.rabi_linear, lw);
    read_bool(l, "circular_on", spec.lasers.circular_on, lw);
    read_bool(l, "linear_on", spec.lasers.linear_on, lw);
  }
  if (j.contains("relay_couplings") && j.contains("couplings")) {
    throw ParseError("device: give either relay_couplings or couplings, not both");
  }
  if (j.contains("relay_couplings")) {
    for (const auto& [t, e] : read_type_map(j.at("relay_couplings"), "device.relay_couplings")) {
      spec.relay_couplings[t] = e;
    }
  }
  if (j.contains("couplings")) {
    const json& c = j.at("couplings");
    const std::string cw = "device.couplings";
    check_keys(c, cw, {"AB", "BC", "CA", "CD"});
    for (const char* k : {"AB", "BC", "CA"}) {
      if (!c.contains(k)) throw ParseError(cw + "." + k + " is required");
    }
    Energy ab, bc, ca;
    read(c, "AB", ab, cw);
    read(c, "BC", bc, cw);
    read(c, "CA", ca, cw);
    std::optional<Energy> cd;
    if (c.contains("CD")) {
      Energy e;
      read(c, "CD", e, cw);
      cd = e;
    }
    spec.relay_couplings = relay_couplings_for(ab, bc, ca, spec.lasers.rabi_linear, spec.relay_detuning, cd);
  }
  if (j.contains("material")) spec.material = read_material(j.at("material"), spec.material);
  if (j.contains("measurements")) spec.measurements = read_measurements(j.at("measurements"), spec.measurements);
  spec.validate();
  return spec;
}

json device_to_json(const DeviceSpec& spec) {
  json j;
  j["pattern"] = spec.pattern.str();
  for (const auto& [t, e] : spec.detunings) j["detunings"][std::string(1, to_char(t))] = fmt(e, "meV");
  j["relay_detuning"] = fmt(spec.relay_detuning, "meV");
  for (const auto& [t, e] : spec.relay_couplings) j["relay_couplings"][std::string(1, to_char(t))] = fmt(e, "meV");
  j["cavity_energy"] = fmt(spec.cavity_energy, "ueV");
  j["donor_density"] = fmt(spec.donor_density, "cm^-3");
  j["temperature"] = fmt(spec.temperature, "K");
  j["boundary"] = {{"left", spec.boundary.left_virtual}, {"right", spec.boundary.right_virtual}};
  j["lasers"] = {{"rabi_circular", fmt(spec.lasers.rabi_circular, "meV")},
                 {"rabi_linear", fmt(spec.lasers.rabi_linear, "meV")},
                 {"circular_on", spec.lasers.circular_on},
                 {"linear_on", spec.lasers.linear_on}};
  const MaterialParams& m = spec.material;
  json mj = {{"spin_orbit_c0", fmt(m.spin_orbit_c0, "ueV*nm")},
             {"donor_ionization", fmt(m.donor_ionization, "meV")},
             {"bohr_radius", fmt(m.bohr_radius, "nm")},
             {"effective_mass", m.effective_mass},
             {"g_average", m.g_average},
             {"exciton_binding", fmt(m.exciton_binding, "meV")},
             {"recombination_time", fmt(m.recombination_time, "ps")},
             {"beta", m.beta},
             {"nuclear_count", m.nuclear_count},
             {"hyperfine_frequency", fmt(m.hyperfine_frequency, "MHz")}};
  if (m.bound_exciton_binding) mj["bound_exciton_binding"] = fmt(*m.bound_exciton_binding, "meV");
  j["material"] = mj;
  const SampleMeasurements& s = spec.measurements;
  j["measurements"] = {{"mobility", fmt(s.mobility, "cm^2/(V*s)")},
                       {"g_anisotropy", s.g_anisotropy},
                       {"static_field", fmt(s.static_field, "T")},
                       {"esr_halfwidth", fmt(s.esr_halfwidth, "mT")},
                       {"mott_radius", fmt(s.mott_radius, "nm")},
                       {"gating_time", fmt(s.gating_time, "ns")},
                       {"pulse_duration", fmt(s.pulse_duration, "ns")},
                       {"reference_t2", fmt(s.reference_t2, "us")},
                       {"cavity_frequency", fmt(s.cavity_frequency, "GHz")}};
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

DeviceSpec load_device(const std::filesystem::path& path) {
  try {
    return device_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_device(const DeviceSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write " + path.string());
  out << device_to_json(spec).dump(2) << "\n";
}

}  // namespace donorqca
