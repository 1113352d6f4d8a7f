#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "g2p/scenario.hpp"

using namespace g2p;
namespace sc = g2p::scenario;

namespace {

std::string fixtures_dir() {
    const char* env = std::getenv("G2PACKETS_FIXTURES");
    if (env) return env;
    for (const char* c : {"fixtures", "../fixtures", "../../fixtures"})
        if (std::filesystem::exists(c)) return c;
    return "fixtures";
}

sc::Json minimal_scenario() {
    sc::Json j;
    j["p"] = 5;
    j["extension"] = "unramified";
    j["chi"] = sc::Json{{"conductor", 0}, {"uniformizer_value", "1/2"}};
    return j;
}

} // namespace

TEST_CASE("scenario validation produces field-level diagnostics") {
    sc::Json bad;
    bad["extension"] = "weird";
    bad["chi"] = sc::Json{{"conductor", 9}};
    bad["mystery"] = 1;
    try {
        sc::parse_scenario(bad);
        FAIL("expected a validation error");
    } catch (const domain_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("p: required") != std::string::npos);
        CHECK(msg.find("extension: unknown") != std::string::npos);
        CHECK(msg.find("chi.conductor") != std::string::npos);
        CHECK(msg.find("mystery: unknown field") != std::string::npos);
    }

    // valid minimal scenario round-trips
    sc::Scenario s = sc::parse_scenario(minimal_scenario());
    CHECK(s.p == 5);
    CHECK(s.precision == 32);
    sc::Json echo = sc::scenario_to_json(s);
    CHECK(echo["chi"]["uniformizer_value"] == "1/2");
}

TEST_CASE("non-conjugate-symplectic chi is rejected at build time") {
    sc::Json j = minimal_scenario();
    j["chi"]["uniformizer_value"] = "0";  // trivial chi: restriction != omega
    sc::Scenario s = sc::parse_scenario(j);
    CHECK_THROWS_AS(sc::build_place(s), domain_error);
}

TEST_CASE("all shipped fixtures build and report deterministically") {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(fixtures_dir()))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    REQUIRE(files.size() >= 12);
    std::sort(files.begin(), files.end());
    int split = 0, unram = 0, ram = 0, sq1 = 0, moved = 0;
    for (const auto& f : files) {
        CAPTURE(f);
        sc::Scenario s = sc::load_scenario(f);
        sc::Place pl = sc::build_place(s);
        if (s.extension == "split") ++split;
        else if (s.extension == "unramified") ++unram;
        else ++ram;
        if (s.extension != "split") {
            if (pl.data->chi().is_galois_invariant()) ++sq1;
            else ++moved;
        }
        sc::Json a = sc::make_report(pl, "packet", sc::report_packet(pl));
        sc::Place pl2 = sc::build_place(s);
        sc::Json b = sc::make_report(pl2, "packet", sc::report_packet(pl2));
        CHECK(a.dump() == b.dump());
    }
    // the grid covers the whole truth table
    CHECK(split >= 3);
    CHECK(unram >= 3);
    CHECK(ram >= 3);
    CHECK(sq1 >= 3);
    CHECK(moved >= 3);
}

TEST_CASE("packet reports carry the canonical-choice ledger") {
    sc::Scenario s = sc::parse_scenario(minimal_scenario());
    sc::Place pl = sc::build_place(s);
    sc::Json r = sc::make_report(pl, "packet", sc::report_packet(pl));
    CHECK(r["version"] == sc::kVersion);
    CHECK(r["canonical"].contains("nonsquare_unit_u"));
    CHECK(r["canonical"].contains("delta"));
    CHECK(r["canonical"].contains("lambda0"));
    CHECK(r["result"]["s_group_pu3"] == 2);
    CHECK(r["result"]["s_group_g2"] == 1);
    CHECK(r["result"]["pi_minus_vanishes"] == true);
    CHECK(r["result"].contains("satake_g2"));
}

TEST_CASE("epsilon and satake payloads") {
    sc::Scenario s = sc::parse_scenario(minimal_scenario());
    sc::Place pl = sc::build_place(s);
    sc::Json e = sc::report_epsilon(pl);
    CHECK(e.contains("value_re"));
    CHECK(e.contains("snapped_sign"));
    CHECK(e["conductor"] == 0);
    sc::Json sat = sc::report_satake(pl);
    CHECK(sat["g2"]["eigenvalues"].size() == 7);
    CHECK(sat["pu3"]["eigenvalues"].size() == 3);
    CHECK(sat["pu3"]["squared_class"] == true);
}

TEST_CASE("rewrite subcommand payload") {
    sc::Json r = sc::report_rewrite("mu-omega", "Q1", "mu*abs^{1/2}",
                                    "mu^-1*abs^{1/2}");
    CHECK(r["tag"] == "irreducible-induced");
    CHECK(r["parabolic"] == "Q2");
    CHECK(r["quotient_character"] == "mu");
    CHECK(r["steps"].size() >= 4);
    CHECK(r["steps"][0]["kind"] == "to-borel");
    // the split-case expression with a free symbol
    sc::Json r2 = sc::report_rewrite("free:chi", "Q1", "chi*abs^{1/2}",
                                     "chi^-1*abs^{1/2}");
    CHECK(r2["quotient_character"] == "chi");
}

TEST_CASE("expression parser") {
    auto tab = g2::SymbolTable::mu_omega();
    auto mu = g2::FCharExpr::symbol(tab, "mu");
    CHECK(sc::parse_char_expr(tab, "mu") == mu);
    CHECK(sc::parse_char_expr(tab, "mu^2") == mu.pow(2));
    CHECK(sc::parse_char_expr(tab, "mu^-1*abs^{1/2}") ==
          mu.inv().times_abs(Rational(1, 2)));
    CHECK(sc::parse_char_expr(tab, "omega * abs^{-3/2}") ==
          g2::FCharExpr::symbol(tab, "omega").times_abs(Rational(-3, 2)));
    CHECK_THROWS_AS(sc::parse_char_expr(tab, "nu"), domain_error);
    CHECK_THROWS_AS(sc::parse_char_expr(tab, "mu^"), domain_error);
}

TEST_CASE("cubic payload") {
    sc::Scenario s = sc::parse_scenario(minimal_scenario());
    sc::Place pl = sc::build_place(s);
    sc::Json c = sc::report_cubic(
        pl, {Rational(1), Rational(0), Rational(-1), Rational(0)});
    CHECK(c["generic"] == true);
    CHECK(c["etale_class"]["kind"] == "split-triple");
    CHECK(c["orbit_demos"].size() == 4);
}
