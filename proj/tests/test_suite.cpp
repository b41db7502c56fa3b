#include <catch2/catch_amalgamated.hpp>

#include "qcable/suite.hpp"

using namespace qcable;

namespace {

// shrunken grids so the whole suite stays in unit-test time
RunConfig small_config() {
    RunConfig cfg;
    cfg.lemma_N_max = 8;
    cfg.block_N_max = 10;
    cfg.pairing_N_max = 6;
    cfg.oracle_N_max = 8;
    cfg.numeric_limit_N_max = 20;
    cfg.thm1_N_max = 20;
    cfg.thm11_N_max = 12;
    cfg.cable_exact_N_max = 5;
    cfg.cable_numeric_N_max = 12;
    cfg.m_list = {0, 1, 2, 4};
    return cfg;
}

}  // namespace

TEST_CASE("config validation", "[suite]") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.prec_initial = 32;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg = RunConfig{};
    cfg.alpha = 0.7;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg = RunConfig{};
    cfg.alpha = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg = RunConfig{};
    cfg.growth_N_step = 0;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("small suite passes end to end", "[suite][slow]") {
    SuiteReport rep = run_verification_suite(small_config());
    CAPTURE(emit_report(rep, OutputFormat::Csv));
    CHECK(rep.n_fail == 0);
    CHECK(rep.n_unresolved == 0);
    CHECK(rep.n_pass == static_cast<int>(rep.checks.size()));
    // every check carries an anchor
    for (const auto& c : rep.checks) {
        CHECK_FALSE(c.anchor.empty());
        CHECK_FALSE(c.name.empty());
    }
}

TEST_CASE("only-filter runs a single check", "[suite]") {
    SuiteReport rep = run_verification_suite(small_config(), "lm01-2");
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].name == "lm01-2");
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("empty m list still runs the lemma checks", "[suite]") {
    RunConfig cfg = small_config();
    cfg.m_list.clear();
    SuiteReport rep = run_verification_suite(cfg, "lm01-1");
    CHECK(rep.checks.size() == 1);
    rep = run_verification_suite(cfg, "eq03-oracle");
    CHECK(rep.checks.empty());  // cable checks vacuously absent
}

TEST_CASE("growth sweep", "[suite]") {
    RunConfig cfg;
    cfg.growth_m = {0};
    cfg.growth_N_min = 3;
    cfg.growth_N_max = 15;
    cfg.growth_N_step = 2;
    cfg.parity = ParityFilter::Auto;
    SECTION("auto filter keeps S_m members only") {
        auto data = growth_sweep(cfg);
        REQUIRE(data.size() == 1);
        for (const auto& row : data[0].rows) {
            CHECK(in_S_m(0, row.N));
            CHECK_FALSE(row.rec.flagged_zero);
        }
    }
    SECTION("even parity on m=0 flags every row as zero") {
        cfg.parity = ParityFilter::Even;
        cfg.growth_N_min = 2;
        auto data = growth_sweep(cfg);
        for (const auto& row : data[0].rows) CHECK(row.rec.flagged_zero);
    }
    SECTION("m = 4 with auto filter gives an empty sweep with a note") {
        cfg.growth_m = {4};
        auto data = growth_sweep(cfg);
        REQUIRE(data.size() == 1);
        CHECK(data[0].rows.empty());
        CHECK_FALSE(data[0].note.empty());
    }
    SECTION("deterministic emission") {
        cfg.growth_m = {0, 1};
        cfg.growth_N_max = 11;
        auto d1 = growth_sweep(cfg);
        auto d2 = growth_sweep(cfg);
        CHECK(emit_growth(d1, OutputFormat::Csv) == emit_growth(d2, OutputFormat::Csv));
        CHECK(emit_growth(d1, OutputFormat::Json) == emit_growth(d2, OutputFormat::Json));
        std::string csv = emit_growth(d1, OutputFormat::Csv);
        CHECK(csv.find("N,re,im,log_abs,rate,predicted_log_abs,residual,"
                       "parity_factor_abs,in_S_m,prec_used") != std::string::npos);
    }
}

TEST_CASE("report emission round trip", "[suite][io]") {
    SuiteReport rep = run_verification_suite(small_config(), "lm06-classification");
    std::string js = emit_report(rep, OutputFormat::Json);
    auto parsed = nlohmann::json::parse(js);
    CHECK(parsed["totals"]["pass"] == rep.n_pass);
    CHECK(parsed["checks"].size() == rep.checks.size());
    CHECK(parsed.contains("config"));
    // byte-identical on repetition
    SuiteReport rep2 = run_verification_suite(small_config(), "lm06-classification");
    CHECK(emit_report(rep2, OutputFormat::Json) == js);
    CHECK(emit_report(rep2, OutputFormat::Csv) == emit_report(rep, OutputFormat::Csv));
}
