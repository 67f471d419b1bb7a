#pragma once

#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/model.hpp"

namespace kratzer {

enum class EnergyUnit { hartree, eV, inv_cm };
enum class LengthUnit { bohr, angstrom };

/// One row of a molecule table: experimental constants in their source units.
struct MoleculeRecord {
    std::string name;
    double De_value;
    EnergyUnit De_unit;
    double re_value;
    LengthUnit re_unit;
    double mass1_amu;
    double mass2_amu;
    std::optional<double> mu_amu; // overrides the two-mass reduced mass when present
};

/// Model inputs in atomic units: De [hartree], re [bohr], mu [electron masses].
struct MolecularParams {
    double De;
    double re;
    double mu;
};

namespace units {

inline EnergyUnit parse_energy_unit(const std::string& tag) {
    if (tag == "hartree")
        return EnergyUnit::hartree;
    if (tag == "eV")
        return EnergyUnit::eV;
    if (tag == "cm-1")
        return EnergyUnit::inv_cm;
    throw unit_error("unknown energy unit tag `" + tag + "` (expected hartree, eV, or cm-1)");
}

inline LengthUnit parse_length_unit(const std::string& tag) {
    if (tag == "bohr")
        return LengthUnit::bohr;
    if (tag == "angstrom")
        return LengthUnit::angstrom;
    throw unit_error("unknown length unit tag `" + tag + "` (expected bohr or angstrom)");
}

inline std::string energy_unit_name(EnergyUnit u) {
    switch (u) {
    case EnergyUnit::hartree: return "hartree";
    case EnergyUnit::eV: return "eV";
    case EnergyUnit::inv_cm: return "cm-1";
    }
    return "?";
}

inline std::string length_unit_name(LengthUnit u) {
    return u == LengthUnit::bohr ? "bohr" : "angstrom";
}

inline double to_hartree(double value, EnergyUnit u) {
    switch (u) {
    case EnergyUnit::hartree: return value;
    case EnergyUnit::eV: return value * hartree_per_eV;
    case EnergyUnit::inv_cm: return value * hartree_per_invcm;
    }
    return value;
}

inline double to_bohr(double value, LengthUnit u) {
    return u == LengthUnit::bohr ? value : value * bohr_per_angstrom;
}

namespace detail {

// Minimal RFC-4180 field splitter: handles quoted fields with embedded
// commas and doubled quotes.
inline std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted)
        throw parse_error("line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

inline double parse_number(const std::string& s, int line_no, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v))
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line_no) + ": bad number `" + s + "` for " +
                          what);
    }
}

inline double parse_positive(const std::string& s, int line_no, const std::string& what) {
    const double v = parse_number(s, line_no, what);
    if (!(v > 0.0))
        throw domain_error("line " + std::to_string(line_no) + ": " + what +
                           " must be positive, got " + s);
    return v;
}

} // namespace detail

inline constexpr const char* molecule_table_header =
    "name,De,De_unit,re,re_unit,mass1_amu,mass2_amu";

/// Parse a molecule CSV. Header must be `name,De,De_unit,re,re_unit,
/// mass1_amu,mass2_amu`, optionally followed by `,mu_amu`. Row order is
/// preserved; blank trailing lines are ignored.
inline std::vector<MoleculeRecord> parse_molecule_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw parse_error("line 1: missing header");
    auto header = detail::split_csv_line(line, 1);
    const std::vector<std::string> expected = {"name",    "De",        "De_unit",  "re",
                                               "re_unit", "mass1_amu", "mass2_amu"};
    bool has_mu_column = false;
    if (header.size() == expected.size() + 1) {
        if (header.back() != "mu_amu")
            throw parse_error("line 1: trailing column is `" + header.back() +
                              "`, only `mu_amu` is supported");
        has_mu_column = true;
    } else if (header.size() != expected.size()) {
        throw parse_error("line 1: expected header `" + std::string(molecule_table_header) +
                          "` (optionally + `,mu_amu`)");
    }
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (header[i] != expected[i])
            throw parse_error("line 1: header column " + std::to_string(i + 1) + " is `" +
                              header[i] + "`, expected `" + expected[i] + "`");

    std::vector<MoleculeRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto f = detail::split_csv_line(line, line_no);
        const std::size_t want = expected.size() + (has_mu_column ? 1 : 0);
        if (f.size() != want)
            throw parse_error("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(want) + " fields, got " + std::to_string(f.size()));
        MoleculeRecord rec;
        rec.name = f[0];
        if (rec.name.empty())
            throw parse_error("line " + std::to_string(line_no) + ": empty molecule name");
        rec.De_value = detail::parse_positive(f[1], line_no, "De");
        rec.De_unit = parse_energy_unit(f[2]);
        rec.re_value = detail::parse_positive(f[3], line_no, "re");
        rec.re_unit = parse_length_unit(f[4]);
        rec.mass1_amu = detail::parse_positive(f[5], line_no, "mass1_amu");
        rec.mass2_amu = detail::parse_positive(f[6], line_no, "mass2_amu");
        if (has_mu_column && !f[7].empty())
            rec.mu_amu = detail::parse_positive(f[7], line_no, "mu_amu");
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::vector<MoleculeRecord> parse_molecule_table(const std::string& text) {
    std::istringstream in(text);
    return parse_molecule_table(in);
}

/// Convert a record to atomic units. mu = m1 m2 / (m1 + m2) unless the
/// record carries an explicit mu_amu override.
inline MolecularParams to_atomic_units(const MoleculeRecord& rec) {
    const double mu_amu =
        rec.mu_amu ? *rec.mu_amu
                   : rec.mass1_amu * rec.mass2_amu / (rec.mass1_amu + rec.mass2_amu);
    MolecularParams p{to_hartree(rec.De_value, rec.De_unit), to_bohr(rec.re_value, rec.re_unit),
                      mu_amu * electronmass_per_amu};
    if (!std::isfinite(p.De) || !std::isfinite(p.re) || !std::isfinite(p.mu))
        throw numeric_error("to_atomic_units: non-finite result for `" + rec.name + "`");
    if (!(p.De > 0.0) || !(p.re > 0.0) || !(p.mu > 0.0))
        throw domain_error("to_atomic_units: nonpositive parameter for `" + rec.name + "`");
    return p;
}

/// alpha = -2 De re, beta = De re^2.
inline KratzerParams derive_kratzer(const MolecularParams& p) {
    if (!(p.De > 0.0) || !(p.re > 0.0) || !(p.mu > 0.0))
        throw domain_error("derive_kratzer: parameters must be positive");
    return KratzerParams(-2.0 * p.De * p.re, p.De * p.re * p.re, p.mu);
}

} // namespace units
} // namespace kratzer
