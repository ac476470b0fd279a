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

#include "donorqca/device_params.hpp"

#include <algorithm>
#include <cmath>

#include "donorqca/errors.hpp"

namespace donorqca {

using namespace units;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw SpecError(what);
}

Energy exchange_between(const DeviceSpec& spec, CellType a, CellType b, Energy rabi_linear) {
  return exchange_coupling(spec.relay_coupling(a), spec.relay_coupling(b), rabi_linear, spec.relay_detuning);
}

}  // namespace

void MaterialParams::validate() const {
  require(donor_ionization > Energy{}, "material: R0 must be positive");
  require(bohr_radius > Length{}, "material: a0 must be positive");
  require(effective_mass > 0.0 && effective_mass <= 1.0, "material: m_eff must lie in (0, 1]");
  require(recombination_time > Time{}, "material: T_REC must be positive");
  require(nuclear_count >= 1.0, "material: N_nuc must be at least 1");
  require(hyperfine_frequency > Frequency{}, "material: nu_hf must be positive");
}

MaterialParams zno_material() {
  MaterialParams m;
  m.spin_orbit_c0 = EnergyLength(-64.0, ueV_nm);
  m.donor_ionization = 35.0 * meV;
  m.bohr_radius = 2.151 * nm;
  m.effective_mass = 0.30;
  m.g_average = 1.956;
  m.exciton_binding = 60.0 * meV;
  m.recombination_time = 60.0 * ps;
  m.beta = 0.05;
  m.nuclear_count = 50.0;
  m.hyperfine_frequency = 1.4 * MHz;
  return m;
}

void LaserSettings::validate() const {
  require(rabi_circular >= Energy{}, "lasers: Omega_C must be non-negative");
  require(rabi_linear >= Energy{}, "lasers: Omega_L must be non-negative");
}

SampleMeasurements zno_measurements() {
  SampleMeasurements s;
  s.mobility = 2000.0 * cm2_per_Vs;
  s.g_anisotropy = 0.0017;
  s.static_field = 3.467 * T;
  s.esr_halfwidth = 0.2 * mT;
  s.mott_radius = 2.93 * nm;
  s.gating_time = 9.0 * ns;
  s.pulse_duration = 10.0 * ns;
  s.reference_t2 = 90.0 * us;
  s.cavity_frequency = 23.0 * GHz;
  return s;
}

void DeviceSpec::validate() const {
  require(pattern.size() > 0, "device: empty pattern");
  for (CellType t : pattern.cells()) {
    auto it = detunings.find(t);
    require(it != detunings.end(), std::string("device: missing detuning for type ") + to_char(t));
    require(it->second > Energy{}, std::string("device: detuning of type ") + to_char(t) +
                                       " must be positive (virtual excitation only)");
    auto jt = relay_couplings.find(t);
    require(jt != relay_couplings.end(), std::string("device: missing relay coupling for type ") + to_char(t));
    require(jt->second >= Energy{}, std::string("device: relay coupling of type ") + to_char(t) +
                                        " must be non-negative");
  }
  require(relay_detuning > Energy{}, "device: relay detuning delta_R must be positive");
  require(cavity_energy > Energy{}, "device: cavity energy must be positive");
  require(donor_density > NumberDensity{}, "device: donor density must be positive");
  require(temperature >= Temperature{}, "device: temperature must be non-negative");
  require(boundary.left_virtual == 0 || boundary.left_virtual == 1, "device: boundary values must be 0 or 1");
  require(boundary.right_virtual == 0 || boundary.right_virtual == 1, "device: boundary values must be 0 or 1");
  material.validate();
  lasers.validate();
}

Energy DeviceSpec::detuning(CellType t) const {
  auto it = detunings.find(t);
  if (it == detunings.end()) throw SpecError(std::string("no detuning for type ") + to_char(t));
  return it->second;
}

Energy DeviceSpec::relay_coupling(CellType t) const {
  auto it = relay_couplings.find(t);
  if (it == relay_couplings.end()) throw SpecError(std::string("no relay coupling for type ") + to_char(t));
  return it->second;
}

DeviceSpec zno_device() {
  DeviceSpec d;
  d.pattern = Pattern::parse("ABCABCD");
  d.detunings = {{CellType::A, 12.0 * meV}, {CellType::B, 10.0 * meV}, {CellType::C, 8.0 * meV},
                 {CellType::D, 6.0 * meV}};
  d.relay_detuning = 4.0 * meV;
  d.lasers = LaserSettings{1.07 * meV, 2.0 * meV, true, true};
  d.relay_couplings = relay_couplings_for(4.0 * ueV, 2.0 * ueV, 6.0 * ueV, d.lasers.rabi_linear, d.relay_detuning,
                                          6.0 * ueV);
  d.cavity_energy = 95.0 * ueV;
  d.material = zno_material();
  d.donor_density = 1.0e17 * per_cm3;
  d.temperature = 4.2 * K;
  d.boundary = BoundaryPolicy{0, 0};
  d.measurements = zno_measurements();
  return d;
}

Energy EffectiveCouplings::delta_of(CellType t) const {
  auto it = delta.find(t);
  return it == delta.end() ? Energy{} : it->second;
}

Energy EffectiveCouplings::left_coupling(int site) const {
  if (site == 0) return left_boundary_coupling;
  return bond(site - 1);
}

Energy EffectiveCouplings::right_coupling(int site) const {
  if (static_cast<size_t>(site) == bonds.size()) return right_boundary_coupling;
  return bond(site);
}

Energy spin_splitting(Energy rabi_circular, Energy detuning) {
  if (!(detuning > Energy{})) throw SpecError("spin_splitting: detuning must be positive");
  return Energy::from_canonical((rabi_circular * rabi_circular / detuning).canonical());
}

Energy exchange_coupling(Energy j_ir, Energy j_rj, Energy rabi_linear, Energy relay_detuning) {
  if (!(relay_detuning > Energy{})) throw SpecError("exchange_coupling: relay detuning must be positive");
  const auto numerator = j_ir * j_rj * rabi_linear * rabi_linear;
  const auto denominator = relay_detuning * relay_detuning * relay_detuning;
  return numerator / denominator;
}

EffectiveCouplings effective_couplings(const DeviceSpec& spec, const LaserSettings& lasers) {
  EffectiveCouplings out;
  const Energy omega_c = lasers.effective_circular();
  const Energy omega_l = lasers.effective_linear();
  for (CellType t : kAllCellTypes) {
    if (spec.pattern.contains(t)) out.delta[t] = spin_splitting(omega_c, spec.detuning(t));
  }
  const auto& cells = spec.pattern.cells();
  for (size_t k = 0; k + 1 < cells.size(); ++k) {
    out.bonds.push_back(Bond{static_cast<int>(k), static_cast<int>(k + 1),
                             exchange_between(spec, cells[k], cells[k + 1], omega_l)});
  }
  // Virtual neighbours continue the A -> B -> C cycle; D has none.
  if (auto pred = cyclic_predecessor(cells.front()); pred && spec.relay_couplings.contains(*pred)) {
    out.left_boundary_coupling = exchange_between(spec, *pred, cells.front(), omega_l);
  }
  if (auto succ = cyclic_successor(cells.back()); succ && spec.relay_couplings.contains(*succ)) {
    out.right_boundary_coupling = exchange_between(spec, cells.back(), *succ, omega_l);
  }
  return out;
}

Energy solve_rabi_for_resonance(Energy detuning, Energy target) {
  if (!(target > Energy{})) {
    throw InfeasibleError("solve_rabi_for_resonance: requested splitting " + std::to_string(target.in(ueV)) +
                          " ueV is not positive; the transition lies below the achievable range");
  }
  if (!(detuning > Energy{})) throw SpecError("solve_rabi_for_resonance: detuning must be positive");
  return sqrt(detuning * target);
}

Energy conditional_transition_energy(Energy delta, Energy j_left, int s_left, Energy j_right, int s_right) {
  return delta + static_cast<double>(s_left) * j_left + static_cast<double>(s_right) * j_right;
}

Energy linewidth_from_lifetime(Time lifetime) {
  if (!(lifetime > Time{})) throw SpecError("linewidth_from_lifetime: lifetime must be positive");
  return linewidth_from_time(lifetime);
}

Energy esr_inhomogeneous_width(Energy gamma_d0x, Energy splitting, Energy detuning) {
  if (!(detuning > Energy{})) throw SpecError("esr_inhomogeneous_width: detuning must be positive");
  return gamma_d0x * (splitting / detuning).canonical();
}

Energy excitation_bandwidth(Time pulse_length, double factor) {
  if (!(pulse_length > Time{})) throw SpecError("excitation_bandwidth: pulse length must be positive");
  return factor * (constants::hbar / pulse_length);
}

Time collision_time(Mobility mobility, double effective_mass) {
  if (!(mobility > Mobility{})) throw SpecError("collision_time: mobility must be positive");
  return effective_mass * (mobility * constants::electron_mass_per_charge);
}

InverseLength fermi_k_from_anisotropy(double delta_g, double g, MagneticField b0, EnergyLength c0) {
  if (delta_g < 0.0) throw SpecError("fermi_k_from_anisotropy: Delta g must be non-negative");
  if (!(b0 > MagneticField{})) throw SpecError("fermi_k_from_anisotropy: B0 must be positive");
  const Energy zeeman = g * (constants::bohr_magneton * b0);
  return std::sqrt(2.0 * delta_g) * (zeeman / abs(c0));
}

double g_anisotropy_from_fermi_k(InverseLength k_f, double g, MagneticField b0, EnergyLength c0) {
  const Energy spin_orbit = c0 * k_f;
  const Energy zeeman = g * (constants::bohr_magneton * b0);
  const double r = (spin_orbit / zeeman).canonical();
  return 0.5 * r * r;
}

Time t2_metal(EnergyLength c0, InverseLength k_f, Time tau_c) {
  if (!(tau_c > Time{}) || !(k_f > InverseLength{}) || c0.canonical() == 0.0) {
    throw SpecError("t2_metal: inputs must be non-zero and tau_c, k_F positive");
  }
  const Energy precession = c0 * k_f;
  return 0.5 * (constants::hbar * constants::hbar) / (precession * precession * tau_c);
}

double gamma_angle(EnergyLength c0, Energy r0, Length a0) {
  if (!(r0 > Energy{}) || !(a0 > Length{})) throw SpecError("gamma_angle: R0 and a0 must be positive");
  return (abs(c0) / (r0 * a0)).canonical();
}

Time t2_insulator(NumberDensity n0, Length a0, Energy r0, double gamma, double beta, HbarReading reading) {
  if (!(n0 > NumberDensity{}) || !(a0 > Length{}) || !(r0 > Energy{}) || gamma <= 0.0 || beta <= 0.0) {
    throw SpecError("t2_insulator: all inputs must be positive");
  }
  const EnergyTime quantum = reading == HbarReading::Literal ? constants::hbar : constants::planck;
  const double filling = (n0 * a0 * a0 * a0).canonical();
  return (beta * quantum) / (filling * gamma * gamma * r0);
}

Time t2_hyperfine_limit(double nuclear_count, Frequency nu, HbarReading reading) {
  if (nuclear_count < 1.0) throw SpecError("t2_hyperfine_limit: N must be at least 1");
  if (!(nu > Frequency{})) throw SpecError("t2_hyperfine_limit: nu must be positive");
  const EnergyTime coupling_quantum = reading == HbarReading::AsPlanck ? constants::planck : constants::hbar;
  const Energy hyperfine = coupling_quantum * nu;
  return nuclear_count * (constants::hbar / hyperfine);
}

NumberDensity mott_critical_density(Length a0) {
  if (!(a0 > Length{})) throw SpecError("mott_critical_density: a0 must be positive");
  const double r = kMottConstant / a0.canonical();
  return NumberDensity::from_canonical(r * r * r);
}

Time t2_from_esr_halfwidth(MagneticField halfwidth, double g) {
  if (!(halfwidth > MagneticField{})) throw SpecError("t2_from_esr_halfwidth: half-width must be positive");
  return constants::hbar / (2.0 * g * (constants::bohr_magneton * halfwidth));
}

double fault_tolerance_ratio(Time t2, Time gating_time) {
  if (!(t2 > Time{}) || !(gating_time > Time{})) throw SpecError("fault_tolerance_ratio: times must be positive");
  return (t2 / gating_time).canonical();
}

std::map<CellType, Energy> relay_couplings_for(Energy j_ab, Energy j_bc, Energy j_ca, Energy rabi_linear,
                                               Energy relay_detuning, std::optional<Energy> j_cd) {
  if (!(j_ab > Energy{}) || !(j_bc > Energy{}) || !(j_ca > Energy{}) || !(rabi_linear > Energy{})) {
    throw SpecError("relay_couplings_for: couplings and Omega_L must be positive");
  }
  // J_ij = J_iR J_jR s with s = Omega_L^2 / delta_R^3 (per energy).
  const double s = (rabi_linear * rabi_linear / (relay_detuning * relay_detuning * relay_detuning)).canonical();
  const double ab = j_ab.canonical(), bc = j_bc.canonical(), ca = j_ca.canonical();
  const double ja = std::sqrt(ab * ca / (bc * s));
  const double jb = ab / (ja * s);
  const double jc = ca / (ja * s);
  std::map<CellType, Energy> out{{CellType::A, Energy::from_canonical(ja)},
                                 {CellType::B, Energy::from_canonical(jb)},
                                 {CellType::C, Energy::from_canonical(jc)}};
  if (j_cd) out[CellType::D] = Energy::from_canonical(j_cd->canonical() / (jc * s));
  return out;
}

std::string ParameterRow::status() const {
  switch (tolerance_kind) {
    case ToleranceKind::Info:
      return "info";
    case ToleranceKind::Flagged:
      return "flagged";
    case ToleranceKind::Relative:
    case ToleranceKind::ExactRatio:
      if (!reference) return "info";
      return std::fabs(value - *reference) <= tolerance * std::fabs(*reference) ? "ok" : "out";
    case ToleranceKind::Factor: {
      if (!reference || value <= 0.0 || *reference <= 0.0) return "out";
      const double f = std::max(value / *reference, *reference / value);
      return f <= tolerance ? "ok" : "out";
    }
  }
  return "info";
}

std::vector<ParameterRow> parameter_table(const DeviceSpec& spec) {
  spec.validate();
  const MaterialParams& m = spec.material;
  const SampleMeasurements& meas = spec.measurements;
  std::vector<ParameterRow> rows;
  auto add = [&rows](std::string key, std::string description, std::string unit, double value,
                     std::optional<double> reference, ToleranceKind kind, double tol, std::string note = {}) {
    rows.push_back(ParameterRow{std::move(key), std::move(description), std::move(unit), value, reference, kind, tol,
                                std::move(note)});
  };

  const EffectiveCouplings eff = effective_couplings(spec, spec.lasers);
  const std::map<CellType, double> splitting_refs{{CellType::A, 95.0}, {CellType::B, 114.0}, {CellType::C, 143.0}};
  for (CellType t : kAllCellTypes) {
    if (!spec.pattern.contains(t)) continue;
    auto ref = splitting_refs.find(t);
    std::optional<double> r;
    if (ref != splitting_refs.end()) r = ref->second;
    add(std::string("Delta_") + to_char(t), std::string("spin splitting of type ") + to_char(t), "ueV",
        eff.delta_of(t).in(ueV), r, r ? ToleranceKind::Relative : ToleranceKind::Info, 0.01);
  }

  const CellType first = spec.pattern[0];
  const Energy rabi_c = solve_rabi_for_resonance(spec.detuning(first), spec.cavity_energy);
  add("Omega_C", std::string("circular Rabi energy putting ") + to_char(first) + " on the cavity", "meV",
      rabi_c.in(meV), 1.07, ToleranceKind::Relative, 0.01);
  add("Delta_CAV", "cavity photon energy from nu_CAV", "ueV", energy_from_frequency(meas.cavity_frequency).in(ueV),
      95.0, ToleranceKind::Relative, 0.01);

  const Energy gamma_d0x = linewidth_from_lifetime(m.recombination_time);
  add("Gamma_D0X", "D0X linewidth hbar/T_REC", "ueV", gamma_d0x.in(ueV), 10.0, ToleranceKind::Relative, 0.15);
  add("Gamma_inh_ESR", std::string("ESR inhomogeneous width of type ") + to_char(first), "ueV",
      esr_inhomogeneous_width(gamma_d0x, eff.delta_of(first), spec.detuning(first)).in(ueV), 0.08,
      ToleranceKind::Relative, 0.25);
  add("delta_EX", "excitation bandwidth of the selective pulse", "ueV",
      excitation_bandwidth(meas.pulse_duration).in(ueV), 0.06, ToleranceKind::Relative, 0.20);

  const Time tau_c = collision_time(meas.mobility, m.effective_mass);
  add("tau_c", "collision time mu m*/e", "fs", tau_c.in(fs), 340.0, ToleranceKind::Relative, 0.03);
  const InverseLength k_f = fermi_k_from_anisotropy(meas.g_anisotropy, m.g_average, meas.static_field, m.spin_orbit_c0);
  add("k_F", "Fermi wavevector from the g anisotropy", "nm^-1", k_f.in(per_nm), 0.359, ToleranceKind::Relative, 0.01);
  add("T2_metal", "metallic-phase spin coherence", "ns", t2_metal(m.spin_orbit_c0, k_f, tau_c).in(ns), 1.0,
      ToleranceKind::Factor, 1.5);

  const double gamma = gamma_angle(m.spin_orbit_c0, m.donor_ionization, m.bohr_radius);
  add("gamma", "spin rotation angle per hop", "", gamma, 8.5e-4, ToleranceKind::Relative, 0.01);
  const Time t2_ins = t2_insulator(spec.donor_density, m.bohr_radius, m.donor_ionization, gamma, m.beta);
  add("T2_ins", "insulating-phase spin coherence, hbar as printed", "us", t2_ins.in(us), 20.0, ToleranceKind::Flagged,
      0.0, "quoted 20 us is not reproduced by the formula with the stated inputs");
  add("T2_ins_h", "insulating-phase spin coherence, hbar read as h", "us",
      t2_insulator(spec.donor_density, m.bohr_radius, m.donor_ionization, gamma, m.beta, HbarReading::AsPlanck).in(us),
      20.0, ToleranceKind::Flagged, 0.0, "2 pi larger than the literal reading");
  const Time t2_ins_dilute = t2_insulator(spec.donor_density / 10.0, m.bohr_radius, m.donor_ionization, gamma, m.beta);
  add("T2_ins_scaling", "T2_ins(n0/10) / T2_ins(n0)", "", (t2_ins_dilute / t2_ins).canonical(), 10.0,
      ToleranceKind::ExactRatio, 1e-12);

  add("T2_limit", "hyperfine-limited coherence N/(2 pi nu)", "us",
      t2_hyperfine_limit(m.nuclear_count, m.hyperfine_frequency).in(us), 90.0, ToleranceKind::Flagged, 0.0,
      "quoted 90 us does not follow from N and nu under either hbar reading");
  add("T2_limit_literal", "hyperfine-limited coherence N/nu", "us",
      t2_hyperfine_limit(m.nuclear_count, m.hyperfine_frequency, HbarReading::Literal).in(us), 90.0,
      ToleranceKind::Flagged, 0.0);

  add("n_c", "Mott critical density at the Mott radius", "cm^-3", mott_critical_density(meas.mott_radius).in(per_cm3),
      7.0e17, ToleranceKind::Relative, 0.03);
  add("n_c_a0", "Mott critical density at a0", "cm^-3", mott_critical_density(m.bohr_radius).in(per_cm3),
      std::nullopt, ToleranceKind::Info, 0.0);
  add("T2_exp", "coherence from the ESR half-width", "ns", t2_from_esr_halfwidth(meas.esr_halfwidth, m.g_average).in(ns),
      13.0, ToleranceKind::Relative, 0.15);
  add("T2_over_Tp", "fault-tolerance ratio T2/T_p", "", fault_tolerance_ratio(meas.reference_t2, meas.gating_time),
      1.0e4, ToleranceKind::Relative, 1e-9);
  return rows;
}

}  // namespace donorqca
