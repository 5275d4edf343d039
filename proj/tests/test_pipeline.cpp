#include "doctest.h"
#include "support.hpp"

#include "starkcheck/pipeline.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>

using namespace starkcheck;
namespace fs = std::filesystem;

namespace {

VerificationReport run(const std::string& name, PipelineConfig cfg = {}) { return run_pipeline(test::fixture(name), cfg); }

bool all_ok(const VerificationReport& r) {
    for (const auto& s : r.stages)
        if (s.status != StageStatus::Ok) return false;
    return true;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("starkcheck_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("sqrt10 end to end") {
    VerificationReport r = run("sqrt10");
    CHECK(all_ok(r));
    CHECK(r.stark_ok == true);
    REQUIRE(r.beta);
    CHECK((*r.beta)[0] == mpq_class(-129, 512));
    CHECK((*r.beta)[1] == mpq_class(127, 512));
    CHECK(r.d == 4);
    CHECK(r.artin->m == 256);
    CHECK(r.regulator_identity == true);
    CHECK(r.popescu->overall == true);
    CHECK(r.burns->statement == 1);
    CHECK(exit_code(r) == 0);
}

TEST_CASE("sqrt3 and sqrt42 end to end") {
    VerificationReport a = run("sqrt3");
    CHECK(all_ok(a));
    CHECK(a.d == 1393);
    CHECK(a.artin->m == 3698415);
    CHECK(a.functionals_equivariant == true);
    CHECK(a.popescu->overall == true);
    CHECK(exit_code(a) == 0);

    VerificationReport b = run("sqrt42");
    CHECK(all_ok(b));
    CHECK(b.d == 54782);
    CHECK(b.artin->m == 191737);
    CHECK(b.burns->statement == 4);
    CHECK(b.class_number == 14);
    CHECK(exit_code(b) == 0);
}

TEST_CASE("reports round trip through JSON") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        VerificationReport r = run(name);
        std::string text = report_to_json(r);
        VerificationReport back = report_from_json(text);
        CHECK(back == r);
        CHECK(report_to_json(back) == text);
    }
}

TEST_CASE("reports are deterministic") {
    std::string a = report_to_json(run("sqrt3"), false);
    std::string b = report_to_json(run("sqrt3"), false);
    CHECK(a == b);
    CHECK(a.find("timings") == std::string::npos);
}

TEST_CASE("stages without L-values or class group data") {
    auto doc = nlohmann::json::parse(*fixture_text("sqrt10"));
    doc.erase("lvalues");
    doc.erase("class_group");
    VerificationReport r = run_pipeline(parse_bundle_text(doc.dump()));
    CHECK(r.stage("artin")->status == StageStatus::Ok);
    CHECK(r.stage("regulator")->status == StageStatus::Ok);
    CHECK(r.stage("beta")->status == StageStatus::Skipped);
    CHECK(r.stage("beta")->message.find("stark stage unavailable") != std::string::npos);
    CHECK(r.stage("burns")->status == StageStatus::Skipped);
    CHECK_FALSE(r.stark_ok);
    CHECK(exit_code(r) == 0);

    doc = nlohmann::json::parse(*fixture_text("sqrt10"));
    doc.erase("class_group");
    r = run_pipeline(parse_bundle_text(doc.dump()));
    CHECK(r.stark_ok == true);
    CHECK(r.stage("burns")->message == "no class group data");
}

TEST_CASE("a false verdict gives exit code 2") {
    // Doubling every L-value makes beta non-rational at the given bound or changes d.
    auto doc = nlohmann::json::parse(*fixture_text("sqrt10"));
    for (auto& v : doc["lvalues"]["values"]) v["re"] = "3.14159265358979323846264338327950288419716939937510582097494459";
    VerificationReport r = run_pipeline(parse_bundle_text(doc.dump()), PipelineConfig{128, false, 0});
    CHECK(r.stark_ok == false);
    CHECK(exit_code(r) == 2);
}

TEST_CASE("a failed stage gives exit code 3") {
    VerificationReport r = run("sqrt10");
    r.stages[1].status = StageStatus::Failed;
    CHECK(exit_code(r) == 3);
    r.stark_ok = false;
    CHECK(exit_code(r) == 2);
}

TEST_CASE("precision from the environment") {
    ::setenv("STARKCHECK_PRECISION", "192", 1);
    CHECK(PipelineConfig::from_env().precision_bits == 192);
    ::setenv("STARKCHECK_PRECISION", "16", 1);
    CHECK_THROWS(PipelineConfig::from_env());
    ::setenv("STARKCHECK_PRECISION", "many", 1);
    CHECK_THROWS(PipelineConfig::from_env());
    ::unsetenv("STARKCHECK_PRECISION");
    CHECK(PipelineConfig::from_env().precision_bits == 128);
}

TEST_CASE("batch runs continue past a corrupt bundle") {
    TempDir dir("batch");
    for (const auto& n : fixture_names()) write_file_atomic((dir.path / (n + ".json")).string(), *fixture_text(n));
    write_file_atomic((dir.path / "broken.json").string(), "{\"schema\": \"stark-bundle/1\", \"field\": 3}");
    auto out = dir.path / "reports";
    BatchResult res = run_batch(dir.path.string(), PipelineConfig{}, 2, out.string());
    REQUIRE(res.entries.size() == 4);
    CHECK(res.exit_code == 3);
    int good = 0;
    for (const auto& e : res.entries) {
        if (fs::path(e.path).stem() == "broken") {
            CHECK_FALSE(e.report);
            CHECK_FALSE(e.error.empty());
        } else {
            REQUIRE(e.report);
            CHECK(exit_code(*e.report) == 0);
            CHECK(fs::exists(out / (fs::path(e.path).stem().string() + ".report.json")));
            ++good;
        }
    }
    CHECK(good == 3);

    std::vector<VerificationReport> reps;
    for (const auto& e : res.entries)
        if (e.report) reps.push_back(*e.report);
    std::string table = summarize(reps);
    CHECK(table.find("Galois abelian") != std::string::npos);
    CHECK(table.find("Non Galois") != std::string::npos);
}

TEST_CASE("batch results do not depend on the number of workers") {
    TempDir dir("batch_jobs");
    for (const auto& n : fixture_names()) write_file_atomic((dir.path / (n + ".json")).string(), *fixture_text(n));
    BatchResult one = run_batch(dir.path.string(), PipelineConfig{}, 1);
    BatchResult four = run_batch(dir.path.string(), PipelineConfig{}, 4);
    REQUIRE(one.entries.size() == four.entries.size());
    for (std::size_t i = 0; i < one.entries.size(); ++i)
        CHECK(report_to_json(*one.entries[i].report, false) == report_to_json(*four.entries[i].report, false));
    CHECK(one.exit_code == 0);
}

TEST_CASE("empty batch") {
    TempDir dir("batch_empty");
    BatchResult res = run_batch(dir.path.string(), PipelineConfig{}, 2);
    CHECK(res.entries.empty());
    CHECK(res.exit_code == 0);
    CHECK(summarize({}).empty());
}

TEST_CASE("discriminant filter") {
    mpz_class X("1000000000000");
    CHECK(discriminant_filter(12, 225, X));
    CHECK(discriminant_filter(12, 225, mpz_class(87480000)));
    CHECK_FALSE(discriminant_filter(12, 225, mpz_class(87480000), false));
    CHECK_FALSE(discriminant_filter(12, 225, mpz_class(87479999)));
    CHECK_FALSE(discriminant_filter(12, 225, 0));
    mpz_class d = 12 * 12 * 12 * mpz_class(225) * 225;
    CHECK(d == 87480000);
}

TEST_CASE("precision failures escalate once") {
    PipelineConfig low;
    low.precision_bits = 32;
    VerificationReport r = run("sqrt3", low);
    CHECK(r.escalated);
    CHECK(r.precision == 64);
    CHECK(r.stark_ok == true);
    CHECK(exit_code(r) == 0);

    low.escalate = false;
    VerificationReport f = run("sqrt3", low);
    CHECK_FALSE(f.escalated);
    REQUIRE(f.stage("inputs"));
    CHECK(f.stage("inputs")->status == StageStatus::Failed);
    CHECK(f.stage("inputs")->message.rfind("PrecisionExhausted: ", 0) == 0);
    CHECK(f.stage("artin")->status == StageStatus::Skipped);
    CHECK(exit_code(f) == 3);
}
