#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "kratzer/units.hpp"

using namespace kratzer;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

TEST_CASE("parse_molecule_table: header-only file gives empty list") {
    auto recs = units::parse_molecule_table(std::string(units::molecule_table_header) + "\n");
    CHECK(recs.empty());
}

TEST_CASE("parse_molecule_table: single valid row") {
    auto recs = units::parse_molecule_table(std::string(units::molecule_table_header) +
                                            "\nX,1.0,hartree,1.0,bohr,1.0,1.0\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].name == "X");
    CHECK(recs[0].De_value == 1.0);
    CHECK(recs[0].De_unit == EnergyUnit::hartree);
    CHECK(recs[0].re_value == 1.0);
    CHECK(recs[0].re_unit == LengthUnit::bohr);
    CHECK(recs[0].mass1_amu == 1.0);
    CHECK(recs[0].mass2_amu == 1.0);
    CHECK_FALSE(recs[0].mu_amu.has_value());
}

TEST_CASE("parse_molecule_table: unknown unit tag is named in the error") {
    const std::string text =
        std::string(units::molecule_table_header) + "\nX,1.0,parsec,1.0,bohr,1.0,1.0\n";
    CHECK_THROWS_MATCHES(units::parse_molecule_table(text), unit_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("parsec")));
}

TEST_CASE("parse_molecule_table: malformed row reports the line number") {
    const std::string text = std::string(units::molecule_table_header) +
                             "\nX,1.0,hartree,1.0,bohr,1.0,1.0\nY,oops,hartree,1.0,bohr,1,1\n";
    CHECK_THROWS_MATCHES(units::parse_molecule_table(text), parse_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("line 3")));
}

TEST_CASE("parse_molecule_table: nonpositive value is a domain error") {
    const std::string text =
        std::string(units::molecule_table_header) + "\nX,-1.0,hartree,1.0,bohr,1.0,1.0\n";
    CHECK_THROWS_AS(units::parse_molecule_table(text), domain_error);
}

TEST_CASE("parse_molecule_table: wrong field count and bad header") {
    CHECK_THROWS_AS(
        units::parse_molecule_table(std::string(units::molecule_table_header) + "\nX,1.0\n"),
        parse_error);
    CHECK_THROWS_AS(units::parse_molecule_table("name,De\nX,1\n"), parse_error);
    CHECK_THROWS_AS(units::parse_molecule_table(std::string(units::molecule_table_header) +
                                                ",extra\nX,1,hartree,1,bohr,1,1,9\n"),
                    parse_error);
}

TEST_CASE("parse_molecule_table: optional mu_amu column") {
    auto recs = units::parse_molecule_table(std::string(units::molecule_table_header) +
                                            ",mu_amu\nCO,11.24,eV,1.128,angstrom,12,15.995,\n"
                                            "CO2,11.24,eV,1.128,angstrom,12,15.995,6.0\n");
    REQUIRE(recs.size() == 2);
    CHECK_FALSE(recs[0].mu_amu.has_value());
    REQUIRE(recs[1].mu_amu.has_value());
    CHECK(*recs[1].mu_amu == 6.0);
}

TEST_CASE("parse_molecule_table: quoted names with embedded commas") {
    auto recs = units::parse_molecule_table(std::string(units::molecule_table_header) +
                                            "\n\"X, isotope\",1.0,hartree,1.0,bohr,1.0,1.0\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].name == "X, isotope");
}

TEST_CASE("to_atomic_units: identity inputs") {
    // two equal masses chosen so the reduced mass is one electron mass
    const double m = 2.0 / units::electronmass_per_amu;
    MoleculeRecord rec{"X", 1.0, EnergyUnit::hartree, 1.0, LengthUnit::bohr, m, m, {}};
    auto p = units::to_atomic_units(rec);
    CHECK_THAT(p.De, WithinRel(1.0, 1e-15));
    CHECK_THAT(p.re, WithinRel(1.0, 1e-15));
    CHECK_THAT(p.mu, WithinRel(1.0, 1e-14));
}

TEST_CASE("to_atomic_units: reduced mass from two masses") {
    // 12 * 15.995 / 27.995 amu = 6.856224325772459 amu
    MoleculeRecord rec{"CO", 1.0, EnergyUnit::hartree, 1.0, LengthUnit::bohr, 12.0, 15.995, {}};
    auto p = units::to_atomic_units(rec);
    CHECK_THAT(p.mu, WithinRel(12498.132382316679, 1e-14));
}

TEST_CASE("to_atomic_units: angstrom round trip") {
    MoleculeRecord rec{"X", 1.0, EnergyUnit::hartree, 1.0, LengthUnit::angstrom, 1.0, 1.0, {}};
    auto p = units::to_atomic_units(rec);
    CHECK_THAT(p.re, WithinRel(units::bohr_per_angstrom, 1e-15));
    CHECK_THAT(p.re / units::bohr_per_angstrom, WithinRel(1.0, 1e-15));
}

TEST_CASE("to_atomic_units: energy unit conversions") {
    MoleculeRecord ev{"X", 2.0, EnergyUnit::eV, 1.0, LengthUnit::bohr, 1.0, 1.0, {}};
    CHECK_THAT(units::to_atomic_units(ev).De, WithinRel(2.0 * units::hartree_per_eV, 1e-15));
    MoleculeRecord cm{"X", 500.0, EnergyUnit::inv_cm, 1.0, LengthUnit::bohr, 1.0, 1.0, {}};
    CHECK_THAT(units::to_atomic_units(cm).De, WithinRel(500.0 * units::hartree_per_invcm, 1e-15));
}

TEST_CASE("derive_kratzer: examples") {
    auto k1 = units::derive_kratzer({1.0, 1.0, 1.0});
    CHECK(k1.alpha == -2.0);
    CHECK(k1.beta == 1.0);
    auto k2 = units::derive_kratzer({2.0, 3.0, 1.0});
    CHECK(k2.alpha == -12.0);
    CHECK(k2.beta == 18.0);
    // Coulomb limit is reachable only through the direct constructor
    KratzerParams coulomb(-1.0, 0.0, 1.0);
    CHECK(coulomb.beta == 0.0);
}

TEST_CASE("units: round trips and derive_kratzer invariants hold across a sweep") {
    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> de(1e-3, 50.0), re(0.1, 20.0), mass(0.5, 200.0);
    for (int it = 0; it < 300; ++it) {
        const double De = de(rng), Re = re(rng);
        MoleculeRecord rec{"M", De,       EnergyUnit::eV, Re, LengthUnit::angstrom,
                           mass(rng), mass(rng), {}};
        auto p = units::to_atomic_units(rec);
        // convert back out
        CHECK_THAT(p.De / units::hartree_per_eV, WithinRel(De, 1e-14));
        CHECK_THAT(p.re / units::bohr_per_angstrom, WithinRel(Re, 1e-14));
        auto k = units::derive_kratzer(p);
        CHECK(k.alpha < 0.0);
        CHECK(k.beta > 0.0);
        // beta = -alpha re / 2 exactly (same products, same rounding)
        CHECK(k.beta == -k.alpha * p.re / 2.0);
    }
}
