// Command-line front end: spectrum tables, wavefunction samples, the
// verification suites, unit constants, and molecule-file inspection.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
// or data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/spectrum.hpp"
#include "kratzer/units.hpp"
#include "kratzer/verify.hpp"
#include "kratzer/wavefunction.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_domain = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct OutputTarget {
    std::string path; // empty means stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw kratzer::usage_error("cannot open output file `" + path + "`");
        out << text;
    }
};

// One of three mutually exclusive parameter entry modes: raw alpha/beta/mu,
// physical constants, or a molecule file plus name.
struct ModelFlags {
    std::optional<double> alpha, beta, mu;
    std::optional<double> De, re, mu_amu;
    std::string De_unit, re_unit;
    std::string molecules_path, molecule_name;

    void attach(CLI::App* cmd) {
        auto opt = [cmd](const char* name, auto& slot, const char* desc) {
            return cmd->add_option(name, slot, desc);
        };
        opt("--alpha", alpha, "raw potential coefficient alpha (hartree*bohr, negative)");
        opt("--beta", beta, "raw potential coefficient beta (hartree*bohr^2)");
        opt("--mu", mu, "raw reduced mass (electron masses)");
        opt("--De", De, "well depth");
        opt("--De-unit", De_unit, "unit of --De: hartree, eV, or cm-1");
        opt("--re", re, "equilibrium distance");
        opt("--re-unit", re_unit, "unit of --re: bohr or angstrom");
        opt("--mu-amu", mu_amu, "reduced mass in amu");
        opt("--molecules", molecules_path, "molecule CSV file");
        opt("--name", molecule_name, "molecule name inside --molecules file");
    }

    kratzer::KratzerParams resolve() const {
        const bool raw_any = alpha || beta || mu;
        const bool phys_any = De || re || mu_amu || !De_unit.empty() || !re_unit.empty();
        const bool file_any = !molecules_path.empty() || !molecule_name.empty();
        if (raw_any + phys_any + file_any != 1)
            throw kratzer::usage_error(
                "give exactly one parameter mode: raw (--alpha --beta --mu), physical "
                "(--De --De-unit --re --re-unit --mu-amu), or file (--molecules --name)");
        if (raw_any) {
            for (const auto& [flag, slot] :
                 {std::pair{"--alpha", alpha}, {"--beta", beta}, {"--mu", mu}})
                if (!slot)
                    throw kratzer::usage_error(std::string("raw mode needs ") + flag);
            return kratzer::KratzerParams(*alpha, *beta, *mu);
        }
        if (phys_any) {
            if (!De || !re || !mu_amu || De_unit.empty() || re_unit.empty())
                throw kratzer::usage_error(
                    "physical mode needs --De --De-unit --re --re-unit --mu-amu");
            kratzer::MolecularParams p{
                kratzer::units::to_hartree(*De, kratzer::units::parse_energy_unit(De_unit)),
                kratzer::units::to_bohr(*re, kratzer::units::parse_length_unit(re_unit)),
                *mu_amu * kratzer::units::electronmass_per_amu};
            return kratzer::units::derive_kratzer(p);
        }
        if (molecules_path.empty() || molecule_name.empty())
            throw kratzer::usage_error("file mode needs both --molecules and --name");
        std::ifstream in(molecules_path);
        if (!in)
            throw kratzer::usage_error("cannot open molecule file `" + molecules_path + "`");
        for (const auto& rec : kratzer::units::parse_molecule_table(in))
            if (rec.name == molecule_name)
                return kratzer::units::derive_kratzer(kratzer::units::to_atomic_units(rec));
        throw kratzer::domain_error("no molecule named `" + molecule_name + "` in `" +
                                    molecules_path + "`");
    }
};

int cmd_spectrum(const ModelFlags& flags, int n_max, int l_max, const std::string& format,
                 const OutputTarget& out) {
    const auto params = flags.resolve();
    const auto table = kratzer::spectrum::spectrum_table(params, n_max, l_max);
    std::ostringstream os;
    if (format == "csv") {
        os << "n,l,q0,qn,sigma_n,energy_hartree,energy_eV,energy_cm1\n";
        for (const auto& e : table)
            os << e.n << ',' << e.l << ',' << fmt(e.q0) << ',' << fmt(e.qn) << ','
               << fmt(e.sigma_n) << ',' << fmt(e.energy) << ','
               << fmt(e.energy / kratzer::units::hartree_per_eV) << ','
               << fmt(e.energy / kratzer::units::hartree_per_invcm) << '\n';
    } else {
        json rows = json::array();
        for (const auto& e : table)
            rows.push_back({{"n", e.n},
                            {"l", e.l},
                            {"q0", e.q0},
                            {"qn", e.qn},
                            {"sigma_n", e.sigma_n},
                            {"energy_hartree", e.energy},
                            {"energy_eV", e.energy / kratzer::units::hartree_per_eV},
                            {"energy_cm1", e.energy / kratzer::units::hartree_per_invcm}});
        os << rows.dump(2) << '\n';
    }
    out.write(os.str());
    return exit_ok;
}

int cmd_wavefunction(const ModelFlags& flags, int n, int l, std::optional<double> r_min,
                     std::optional<double> r_max, int points, const std::string& format,
                     const OutputTarget& out) {
    const auto params = flags.resolve();
    const auto state = kratzer::wfn::build_state(params, n, l);
    const double lo = r_min.value_or(1e-3 * state.scale);
    const double hi = r_max.value_or(40.0 * state.scale);
    if (points < 1)
        throw kratzer::usage_error("--points must be at least 1");
    if (hi < lo)
        throw kratzer::usage_error("--r-max must not be below --r-min");
    const double q0 = state.exponent_power * kratzer::units::hbar;
    const double sigma_n = state.scale / kratzer::units::hbar;

    std::vector<std::pair<double, double>> samples;
    samples.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double r =
            points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        samples.emplace_back(r, state.Q(r));
    }

    std::ostringstream os;
    if (format == "csv") {
        os << "# n=" << state.n << " l=" << state.l << " sigma_n=" << fmt(sigma_n)
           << " q0=" << fmt(q0) << " A=" << fmt(state.norm_constant) << '\n';
        os << "r,Q\n";
        for (const auto& [r, q] : samples)
            os << fmt(r) << ',' << fmt(q) << '\n';
    } else {
        json doc{{"n", state.n},
                 {"l", state.l},
                 {"sigma_n", sigma_n},
                 {"q0", q0},
                 {"A", state.norm_constant}};
        json rows = json::array();
        for (const auto& [r, q] : samples)
            rows.push_back({{"r", r}, {"Q", q}});
        doc["samples"] = rows;
        os << doc.dump(2) << '\n';
    }
    out.write(os.str());
    return exit_ok;
}

int cmd_verify(const std::string& suite, std::optional<double> tolerance,
               const OutputTarget& out) {
    json extras;
    const auto checks = kratzer::verify::run_suite(suite, tolerance, &extras);
    auto report = kratzer::verify::report_json(checks);
    report["suite"] = suite;
    for (auto& [key, value] : extras.items())
        report[key] = std::move(value);
    out.write(report.dump(2) + "\n");
    return kratzer::verify::all_pass(checks) ? exit_ok : exit_verification_failure;
}

int cmd_constants(const OutputTarget& out) {
    json doc;
    for (const auto& entry : kratzer::units::constant_table)
        doc[std::string(entry.name)] = {{"value", entry.value},
                                        {"note", std::string(entry.note)}};
    out.write(doc.dump(2) + "\n");
    return exit_ok;
}

int cmd_molecules(const std::string& path, const std::string& name, const OutputTarget& out) {
    std::ifstream in(path);
    if (!in)
        throw kratzer::usage_error("cannot open molecule file `" + path + "`");
    const auto records = kratzer::units::parse_molecule_table(in);
    json doc = json::array();
    for (const auto& rec : records) {
        if (!name.empty() && rec.name != name)
            continue;
        const auto p = kratzer::units::to_atomic_units(rec);
        const auto k = kratzer::units::derive_kratzer(p);
        doc.push_back({{"name", rec.name},
                       {"De_hartree", p.De},
                       {"re_bohr", p.re},
                       {"mu_electron_masses", p.mu},
                       {"alpha", k.alpha},
                       {"beta", k.beta}});
    }
    if (!name.empty() && doc.empty())
        throw kratzer::domain_error("no molecule named `" + name + "` in `" + path + "`");
    out.write(doc.dump(2) + "\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kratzer oscillator spectra, wavefunctions, and verification suites"};
    app.require_subcommand(1);

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "emit the bound-state spectrum table");
    ModelFlags spectrum_flags;
    spectrum_flags.attach(spectrum_cmd);
    int n_max = 0, l_max = 0;
    std::string spectrum_format = "csv";
    OutputTarget spectrum_out;
    spectrum_cmd->add_option("--n-max", n_max, "largest vibrational quantum number")->required();
    spectrum_cmd->add_option("--l-max", l_max, "largest rotational quantum number")->required();
    spectrum_cmd->add_option("--format", spectrum_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    spectrum_cmd->add_option("--output", spectrum_out.path, "output path (default stdout)");

    // wavefunction
    auto* wf_cmd = app.add_subcommand("wavefunction", "emit samples of one bound state");
    ModelFlags wf_flags;
    wf_flags.attach(wf_cmd);
    int wf_n = 0, wf_l = 0, wf_points = 1000;
    std::optional<double> wf_rmin, wf_rmax;
    std::string wf_format = "csv";
    OutputTarget wf_out;
    wf_cmd->add_option("--n", wf_n, "vibrational quantum number")->required();
    wf_cmd->add_option("--l", wf_l, "rotational quantum number");
    wf_cmd->add_option("--r-min", wf_rmin, "first sample radius (bohr)");
    wf_cmd->add_option("--r-max", wf_rmax, "last sample radius (bohr)");
    wf_cmd->add_option("--points", wf_points, "number of samples");
    wf_cmd->add_option("--format", wf_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    wf_cmd->add_option("--output", wf_out.path, "output path (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::optional<double> tolerance;
    OutputTarget verify_out;
    verify_cmd->add_option("--suite", suite, "algebra, oracle, virial, adjoint, wavefunction, all")
        ->required()
        ->check(CLI::IsMember({"algebra", "oracle", "virial", "adjoint", "wavefunction", "all"}));
    verify_cmd->add_option("--tolerance", tolerance,
                           "override every residual tolerance in the suite");
    verify_cmd->add_option("--output", verify_out.path, "output path (default stdout)");

    // constants
    auto* constants_cmd = app.add_subcommand("constants", "emit the fixed unit constants");
    OutputTarget constants_out;
    constants_cmd->add_option("--output", constants_out.path, "output path (default stdout)");

    // molecules
    auto* molecules_cmd = app.add_subcommand("molecules", "list or inspect a molecule file");
    std::string mol_path, mol_name;
    OutputTarget molecules_out;
    molecules_cmd->add_option("--file", mol_path, "molecule CSV file")->required();
    molecules_cmd->add_option("--name", mol_name, "restrict to one molecule");
    molecules_cmd->add_option("--output", molecules_out.path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (spectrum_cmd->parsed())
            return cmd_spectrum(spectrum_flags, n_max, l_max, spectrum_format, spectrum_out);
        if (wf_cmd->parsed())
            return cmd_wavefunction(wf_flags, wf_n, wf_l, wf_rmin, wf_rmax, wf_points, wf_format,
                                    wf_out);
        if (verify_cmd->parsed())
            return cmd_verify(suite, tolerance, verify_out);
        if (constants_cmd->parsed())
            return cmd_constants(constants_out);
        if (molecules_cmd->parsed())
            return cmd_molecules(mol_path, mol_name, molecules_out);
    } catch (const kratzer::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const kratzer::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_usage;
}
