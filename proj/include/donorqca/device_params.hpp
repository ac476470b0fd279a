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

#ifndef DONORQCA_DEVICE_PARAMS_HPP
#define DONORQCA_DEVICE_PARAMS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "donorqca/cell.hpp"
#include "donorqca/units.hpp"

namespace donorqca {

/// Material constants of the ZnO / ZnMgO host and its hydrogen donor.
struct MaterialParams {
  EnergyLength spin_orbit_c0;        // C0, k-linear coupling constant
  Energy donor_ionization;           // R0
  Length bohr_radius;                // a0
  double effective_mass = 0.30;      // m*/m_e
  double g_average = 1.956;          // g_av
  Energy exciton_binding;            // Eb(X)
  std::optional<Energy> bound_exciton_binding;  // Eb(D0X); not needed by any formula
  Time recombination_time;           // T_REC of the donor-bound exciton
  double beta = 0.05;                // beta(T), supplied as a scalar
  double nuclear_count = 50.0;       // N nuclei seen by the donor electron
  Frequency hyperfine_frequency;     // nu of the donor hyperfine coupling

  void validate() const;
};

/// Hydrogen in ZnO. a0 defaults to the value consistent with the quoted
/// rotation angle gamma = 8.5e-4 (2.151 nm); the metal-insulator estimate uses
/// SampleMeasurements::mott_radius instead.
MaterialParams zno_material();

/// Optical operating point: Rabi energies of the circularly polarised laser
/// (spin splittings) and of the linearly polarised laser (relay exchange).
struct LaserSettings {
  Energy rabi_circular;
  Energy rabi_linear;
  bool circular_on = true;
  bool linear_on = true;

  Energy effective_circular() const { return circular_on ? rabi_circular : Energy{}; }
  Energy effective_linear() const { return linear_on ? rabi_linear : Energy{}; }
  bool any_on() const { return circular_on || linear_on; }
  void validate() const;

  friend bool operator==(const LaserSettings&, const LaserSettings&) = default;
};

/// Value of the fictitious neighbour spin beyond each chain end (0 or 1).
struct BoundaryPolicy {
  int left_virtual = 0;
  int right_virtual = 0;

  friend bool operator==(const BoundaryPolicy&, const BoundaryPolicy&) = default;
};

/// Sample-level measurements and timing figures that feed the decoherence
/// estimates and the parameter table.
struct SampleMeasurements {
  Mobility mobility;
  double g_anisotropy = 0.0017;      // Delta g
  MagneticField static_field;        // B0 of the ESR measurement
  MagneticField esr_halfwidth;       // Delta B_1/2
  Length mott_radius;                // a0 reproducing the quoted n_c
  Time gating_time;                  // T_p of the fault-tolerance ratio
  Time pulse_duration;               // selective microwave pulse length
  Time reference_t2;                 // optimistic T2 used for T2/T_p
  Frequency cavity_frequency;        // nu_CAV
};

SampleMeasurements zno_measurements();

struct DeviceSpec {
  Pattern pattern;
  std::map<CellType, Energy> detunings;         // delta_i, laser below D0X_i
  Energy relay_detuning;                        // delta_R
  std::map<CellType, Energy> relay_couplings;   // J_iR
  Energy cavity_energy;                         // Delta_CAV
  MaterialParams material;
  NumberDensity donor_density;                  // n0
  Temperature temperature;
  BoundaryPolicy boundary;
  LaserSettings lasers;                         // default operating point
  SampleMeasurements measurements;

  /// Throws SpecError naming the first violated invariant.
  void validate() const;
  Energy detuning(CellType t) const;
  Energy relay_coupling(CellType t) const;
};

/// ABCABCD with the published detunings (12/10/8 meV, D at 6 meV), cavity at
/// 95 ueV and relay couplings chosen so J_AB, J_BC, J_CA = 4, 2, 6 ueV at
/// Omega_L = 2 meV, delta_R = 4 meV (J_CD = J_CA).
DeviceSpec zno_device();

struct Bond {
  int left = 0;
  int right = 0;
  Energy coupling;
};

/// Laser-induced splittings and couplings for one gating window.
struct EffectiveCouplings {
  std::map<CellType, Energy> delta;
  std::vector<Bond> bonds;          // one entry per adjacent pair (k, k+1)
  Energy left_boundary_coupling;    // coupling of cell 0 to its virtual neighbour
  Energy right_boundary_coupling;   // coupling of cell N-1 to its virtual neighbour

  Energy delta_of(CellType t) const;
  /// Coupling between sites k and k+1.
  Energy bond(int left_site) const { return bonds.at(static_cast<size_t>(left_site)).coupling; }
  /// Coupling of `site` to its left/right neighbour, including virtual ones.
  Energy left_coupling(int site) const;
  Energy right_coupling(int site) const;
};

/// Delta_i = Omega_C^2 / delta_i.
Energy spin_splitting(Energy rabi_circular, Energy detuning);

/// J_ij = J_iR * J_Rj * Omega_L^2 / delta_R^3.
Energy exchange_coupling(Energy j_ir, Energy j_rj, Energy rabi_linear, Energy relay_detuning);

EffectiveCouplings effective_couplings(const DeviceSpec& spec, const LaserSettings& lasers);

/// Omega_C that puts a type with detuning `detuning` at splitting `target`.
Energy solve_rabi_for_resonance(Energy detuning, Energy target);

/// Flip energy of a cell whose neighbours hold spins s = -1 ('0') or +1 ('1').
Energy conditional_transition_energy(Energy delta, Energy j_left, int s_left, Energy j_right, int s_right);

/// Spin value of a logical bit: '0' (down) maps to -1 and '1' (up) to +1.
constexpr int spin_of_bit(int bit) { return bit ? 1 : -1; }

/// Homogeneous optical linewidth Gamma = hbar / tau.
Energy linewidth_from_lifetime(Time lifetime);

/// Gamma_inh = Gamma_D0X * Delta_i / delta_i.
Energy esr_inhomogeneous_width(Energy gamma_d0x, Energy splitting, Energy detuning);

/// Spectral width hbar / t_p of a pulse of length t_p, times `factor`.
inline constexpr double kExcitationBandwidthFactor = 1.0;
Energy excitation_bandwidth(Time pulse_length, double factor = kExcitationBandwidthFactor);

/// tau_c = mu * m* / e.
Time collision_time(Mobility mobility, double effective_mass);

/// Inverts Delta g = (C0 k_F)^2 / (2 (g mu_B B0)^2) for k_F.
InverseLength fermi_k_from_anisotropy(double delta_g, double g, MagneticField b0, EnergyLength c0);
/// Forward form of the same relation.
double g_anisotropy_from_fermi_k(InverseLength k_f, double g, MagneticField b0, EnergyLength c0);

/// Metallic-phase T2 = hbar^2 / (2 (C0 k_F)^2 tau_c).
Time t2_metal(EnergyLength c0, InverseLength k_f, Time tau_c);

/// Two readings of the quoted formulas: `Literal` uses hbar where hbar is
/// printed, `AsPlanck` substitutes h = 2 pi hbar.
enum class HbarReading { Literal, AsPlanck };

/// gamma = |C0| / (R0 a0).
double gamma_angle(EnergyLength c0, Energy r0, Length a0);

/// Insulating-phase T2 = beta hbar / (n0 a0^3 R0 gamma^2).
Time t2_insulator(NumberDensity n0, Length a0, Energy r0, double gamma, double beta,
                  HbarReading reading = HbarReading::Literal);

/// Hyperfine-limited T2 = N hbar / A. With A = h nu (AsPlanck, the default)
/// this is N / (2 pi nu); with A = hbar nu (Literal) it is N / nu.
Time t2_hyperfine_limit(double nuclear_count, Frequency nu, HbarReading reading = HbarReading::AsPlanck);

/// Edwards-Sienko criterion n_c^(1/3) a0 = 0.26.
inline constexpr double kMottConstant = 0.26;
NumberDensity mott_critical_density(Length a0);

/// T2 = hbar / (2 g mu_B Delta B_1/2).
Time t2_from_esr_halfwidth(MagneticField halfwidth, double g);

double fault_tolerance_ratio(Time t2, Time gating_time);

/// Relay couplings J_iR that realise the requested nearest-neighbour
/// couplings at the given linear-laser operating point. J_DR is set from
/// `j_cd` when given.
std::map<CellType, Energy> relay_couplings_for(Energy j_ab, Energy j_bc, Energy j_ca, Energy rabi_linear,
                                               Energy relay_detuning, std::optional<Energy> j_cd = std::nullopt);

// --- derived-quantity table -------------------------------------------------

enum class ToleranceKind { Relative, Factor, ExactRatio, Flagged, Info };

struct ParameterRow {
  std::string key;          // machine name, e.g. "Delta_A"
  std::string description;
  std::string unit;
  double value = 0.0;
  std::optional<double> reference;  // published figure in the same unit
  ToleranceKind tolerance_kind = ToleranceKind::Info;
  double tolerance = 0.0;   // relative fraction or multiplicative factor
  std::string note;

  /// "ok", "out", "flagged" or "info".
  std::string status() const;
};

std::vector<ParameterRow> parameter_table(const DeviceSpec& spec);

}  // namespace donorqca

#endif  // DONORQCA_DEVICE_PARAMS_HPP
