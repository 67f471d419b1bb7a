// Process-level conformance tests of the CLI: flag handling, exit codes,
// output formats, and determinism.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "proc.hpp"

namespace {

using nlohmann::json;

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok)
        ++failures;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

bool near(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    try {
        cli = testproc::cli_path(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    const std::string canonical = " --alpha -2 --beta 1 --mu 1";

    {
        auto r = testproc::run(cli + " spectrum" + canonical +
                               " --n-max 1 --l-max 0 --format csv");
        auto rows = parse_csv(r.output);
        const bool shape = r.exit_code == 0 && rows.size() == 3 && rows[0].size() == 8 &&
                           rows[0][5] == "energy_hartree";
        expect(shape, "spectrum csv: exit 0, header + two rows");
        if (shape) {
            expect(near(std::stod(rows[1][5]), -0.5, 1e-14), "spectrum csv: E(0,0) = -1/2");
            expect(near(std::stod(rows[2][5]), -2.0 / 9.0, 1e-14),
                   "spectrum csv: E(1,0) = -2/9");
            expect(near(std::stod(rows[1][2]), 2.0, 1e-14), "spectrum csv: q0 = 2");
            expect(near(std::stod(rows[1][6]), -0.5 / (1.0 / 27.211386245988), 1e-12),
                   "spectrum csv: eV column is hartree / hartree_per_eV");
        }
    }

    {
        auto r = testproc::run(cli +
                               " spectrum --alpha -1 --beta 0 --mu 1 --n-max 0 --l-max 0");
        auto rows = parse_csv(r.output);
        expect(r.exit_code == 0 && rows.size() == 2 && near(std::stod(rows[1][5]), -0.5, 1e-14),
               "spectrum: Coulomb ground row is -1/2");
    }

    {
        auto r = testproc::run(cli + " spectrum --alpha -2 --beta 1 --n-max 0 --l-max 0");
        expect(r.exit_code == 2 && r.output.find("--mu") != std::string::npos,
               "spectrum: missing --mu exits 2 and names the flag");
    }

    {
        auto r = testproc::run(cli + " spectrum" + canonical +
                               " --De 1 --n-max 0 --l-max 0");
        expect(r.exit_code == 2, "spectrum: mixing parameter modes exits 2");
    }

    {
        auto r = testproc::run(cli + " spectrum" + canonical + " --n-max 0 --l-max 0 --format xml");
        expect(r.exit_code == 2, "spectrum: unknown format exits 2");
    }

    {
        auto r = testproc::run(cli + " spectrum" + canonical +
                               " --n-max 1 --l-max 1 --format json");
        bool ok = r.exit_code == 0;
        if (ok) {
            auto doc = json::parse(r.output, nullptr, false);
            ok = !doc.is_discarded() && doc.is_array() && doc.size() == 4 &&
                 near(doc[0]["energy_hartree"].get<double>(), -0.5, 1e-14);
        }
        expect(ok, "spectrum json: parses with four entries");
    }

    {
        auto r = testproc::run(cli + " wavefunction" + canonical +
                               " --n 0 --l 0 --r-min 0.5 --r-max 2 --points 4");
        auto rows = parse_csv(r.output);
        bool ok = r.exit_code == 0 && rows.size() == 5 && rows[0][0] == "r";
        if (ok) {
            const double A = 2.0 / std::sqrt(3.0);
            for (std::size_t i = 1; i < rows.size(); ++i) {
                const double rr = std::stod(rows[i][0]);
                const double qq = std::stod(rows[i][1]);
                ok = ok && near(qq, A * rr * std::exp(-rr), 1e-12);
            }
        }
        expect(ok, "wavefunction: ground-state samples are (2/sqrt 3) r e^{-r}");
        expect(r.output.find("# n=0") != std::string::npos &&
                   r.output.find("A=") != std::string::npos,
               "wavefunction: csv header records the state metadata");
    }

    {
        auto r = testproc::run(cli + " wavefunction" + canonical +
                               " --n 1 --l 0 --r-min 0.5 --r-max 8 --points 151");
        auto rows = parse_csv(r.output);
        bool ok = r.exit_code == 0 && rows.size() == 152;
        if (ok) {
            // count sign changes, ignoring samples at the numerical zero of
            // the node itself
            int flips = 0;
            double node = 0.0;
            double prev = 0.0, prev_r = 0.0;
            for (std::size_t i = 1; i < rows.size(); ++i) {
                const double rr = std::stod(rows[i][0]);
                const double q = std::stod(rows[i][1]);
                if (std::abs(q) < 1e-12)
                    continue;
                if (prev != 0.0 && std::signbit(q) != std::signbit(prev)) {
                    ++flips;
                    node = 0.5 * (prev_r + rr);
                }
                prev = q;
                prev_r = rr;
            }
            ok = flips == 1 && std::abs(node - 3.0) < 0.1;
        }
        expect(ok, "wavefunction: n = 1 changes sign exactly once, near r = 3");
    }

    {
        auto r = testproc::run(cli + " wavefunction" + canonical +
                               " --n 0 --l 0 --r-min 1 --r-max 1 --points 1");
        auto rows = parse_csv(r.output);
        bool ok = r.exit_code == 0 && rows.size() == 2;
        if (ok)
            ok = near(std::stod(rows[1][1]), 2.0 / std::sqrt(3.0) * std::exp(-1.0), 1e-12);
        expect(ok, "wavefunction: single-point sampling equals direct evaluation");
    }

    {
        auto r = testproc::run(cli + " verify --suite adjoint");
        bool ok = r.exit_code == 0;
        if (ok) {
            auto doc = json::parse(r.output, nullptr, false);
            ok = !doc.is_discarded() && doc["all_pass"].get<bool>();
            for (const auto& c : doc["checks"])
                if (c["tolerance"].get<double>() == 0.0)
                    ok = ok && c["residual"].get<double>() == 0.0;
            // the report carries the commutator table and the derived rules
            ok = ok && doc["coordinate_commutators"]["T3"]["x"] == "+y" &&
                 doc["coordinate_commutators"]["T1"]["x"] == "0" &&
                 doc["selection_rules"]["z"] == json::array({0}) &&
                 doc["selection_rules"]["x"] == json::array({-1, 1});
        }
        expect(ok, "verify adjoint: exit 0, exact checks, table and rules in the report");
    }

    {
        auto r = testproc::run(cli + " verify --suite oracle");
        bool ok = r.exit_code == 0;
        if (ok) {
            auto doc = json::parse(r.output, nullptr, false);
            ok = !doc.is_discarded() && doc["all_pass"].get<bool>() &&
                 doc["oracle_comparison"].size() == 15;
            if (ok)
                for (const auto& row : doc["oracle_comparison"])
                    ok = ok && row["pass"].get<bool>() &&
                         row["energy_oracle"].get<double>() < 0.0;
        }
        expect(ok, "verify oracle: comparison report with one row per (n, l)");
    }

    {
        auto r = testproc::run(cli + " verify --suite bogus");
        expect(r.exit_code == 2, "verify: unknown suite exits 2");
    }

    {
        auto r = testproc::run(cli + " verify --suite virial --tolerance 1e-30");
        bool ok = r.exit_code == 1;
        if (ok) {
            auto doc = json::parse(r.output, nullptr, false);
            ok = !doc.is_discarded() && !doc["all_pass"].get<bool>();
        }
        expect(ok, "verify: tolerance below the numeric floor exits 1 with failures reported");
    }

    {
        auto r = testproc::run(cli + " verify --suite algebra --tolerance 1e-12");
        bool ok = r.exit_code == 1;
        if (ok) {
            auto doc = json::parse(r.output, nullptr, false);
            ok = !doc.is_discarded() && !doc["all_pass"].get<bool>();
            // the report documents the discretization floor per check
            bool any_fail = false;
            for (const auto& c : doc["checks"])
                if (!c["pass"].get<bool>() && c["residual"].get<double>() > 1e-12)
                    any_fail = true;
            ok = ok && any_fail;
        }
        expect(ok, "verify algebra: tolerance below the grid floor documents the floor, exit 1");
    }

    {
        auto r = testproc::run(cli + " constants");
        bool ok = r.exit_code == 0;
        if (ok) {
            auto doc = json::parse(r.output, nullptr, false);
            ok = !doc.is_discarded() && doc["hbar"]["value"].get<double>() == 1.0 &&
                 near(doc["bohr_per_angstrom"]["value"].get<double>(), 1.0 / 0.529177210903,
                      1e-15) &&
                 near(doc["hartree_per_eV"]["value"].get<double>(), 1.0 / 27.211386245988,
                      1e-15);
            // round trip: parse then dump then parse again
            if (ok)
                ok = json::parse(doc.dump()) == doc;
        }
        expect(ok, "constants: hbar = 1, documented conversions, JSON round-trips");
    }

    {
        const std::string path = "/tmp/kratzer_cli_test_molecules.csv";
        std::ofstream out(path);
        out << "name,De,De_unit,re,re_unit,mass1_amu,mass2_amu\n"
            << "unit,1.0,hartree,1.0,bohr,0.00109716087,0.00109716087\n"
            << "CO,11.226,eV,1.128,angstrom,12.0,15.995\n";
        out.close();
        auto list = testproc::run(cli + " molecules --file " + path);
        bool ok = list.exit_code == 0;
        if (ok) {
            auto doc = json::parse(list.output, nullptr, false);
            ok = !doc.is_discarded() && doc.size() == 2 && doc[0]["name"] == "unit";
        }
        expect(ok, "molecules: lists every record with derived parameters");

        auto one = testproc::run(cli + " molecules --file " + path + " --name CO");
        ok = one.exit_code == 0;
        if (ok) {
            auto doc = json::parse(one.output, nullptr, false);
            ok = !doc.is_discarded() && doc.size() == 1 &&
                 near(doc[0]["re_bohr"].get<double>(), 1.128 / 0.529177210903, 1e-12) &&
                 doc[0]["alpha"].get<double>() < 0.0;
        }
        expect(ok, "molecules: --name restricts and converts units");

        auto missing = testproc::run(cli + " molecules --file " + path + " --name Xe");
        expect(missing.exit_code == 3, "molecules: unknown name exits 3");

        auto spectrum_file = testproc::run(cli + " spectrum --molecules " + path +
                                           " --name CO --n-max 0 --l-max 0");
        auto rows = parse_csv(spectrum_file.output);
        expect(spectrum_file.exit_code == 0 && rows.size() == 2 &&
                   std::stod(rows[1][5]) < 0.0,
               "spectrum: file mode resolves a molecule and emits a bound energy");

        const std::string bad_path = "/tmp/kratzer_cli_test_bad.csv";
        std::ofstream bad(bad_path);
        bad << "name,De,De_unit,re,re_unit,mass1_amu,mass2_amu\n"
            << "X,1.0,parsec,1.0,bohr,1.0,1.0\n";
        bad.close();
        auto bad_run = testproc::run(cli + " molecules --file " + bad_path);
        expect(bad_run.exit_code == 3 && bad_run.output.find("parsec") != std::string::npos,
               "molecules: unknown unit tag exits 3 and names the tag");
    }

    {
        const std::string cmd =
            cli + " spectrum" + canonical + " --n-max 4 --l-max 3 --format csv";
        auto a = testproc::run(cmd);
        auto b = testproc::run(cmd);
        expect(a.exit_code == 0 && a.output == b.output,
               "determinism: identical invocations produce identical bytes");
    }

    if (failures == 0) {
        std::printf("cli_tests: all checks passed\n");
        return 0;
    }
    std::printf("cli_tests: %d check(s) FAILED\n", failures);
    return 1;
}
