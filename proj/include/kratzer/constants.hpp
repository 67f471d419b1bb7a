#pragma once

#include <array>
#include <string_view>

namespace kratzer::units {

// Internal unit system: Hartree atomic units. Every formula in the library
// is written with hbar as a named symbol so that tests may pass alternate
// values, but the shipped value is 1.
inline constexpr double hbar = 1.0;

// Fixed conversion constants (CODATA 2018).
inline constexpr double hartree_per_eV = 1.0 / 27.211386245988;
inline constexpr double hartree_per_invcm = 1.0 / 219474.63136320;
inline constexpr double bohr_per_angstrom = 1.0 / 0.529177210903;
inline constexpr double electronmass_per_amu = 1822.888486209;

struct ConstantEntry {
    std::string_view name;
    double value;
    std::string_view note;
};

/// All fixed constants, for the generated `constants` report.
inline constexpr std::array<ConstantEntry, 5> constant_table = {{
    {"hbar", hbar, "reduced Planck constant, fixed internal convention"},
    {"hartree_per_eV", hartree_per_eV, "1 eV expressed in hartree"},
    {"hartree_per_invcm", hartree_per_invcm, "1 cm^-1 expressed in hartree"},
    {"bohr_per_angstrom", bohr_per_angstrom, "1 angstrom expressed in bohr"},
    {"electronmass_per_amu", electronmass_per_amu,
     "1 unified atomic mass unit expressed in electron masses"},
}};

} // namespace kratzer::units
