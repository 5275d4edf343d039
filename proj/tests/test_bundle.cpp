#include "doctest.h"
#include "support.hpp"

#include "json.hpp"

#include <filesystem>

using namespace starkcheck;
using nlohmann::json;

namespace {

json fixture_doc(const std::string& name) { return json::parse(*fixture_text(name)); }

std::vector<std::string> issues_of(const json& doc) {
    try {
        (void)parse_bundle_text(doc.dump());
    } catch (const ValidationError& e) {
        return e.issues();
    }
    return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("all embedded fixtures parse") {
    auto names = fixture_names();
    CHECK(names == std::vector<std::string>{"sqrt10", "sqrt3", "sqrt42"});
    for (const auto& n : names) {
        CAPTURE(n);
        FieldBundle b = test::fixture(n);
        CHECK(b.name == n);
        CHECK(b.lvalues.has_value());
        CHECK(b.class_group.has_value());
        CHECK(b.warnings.empty());
    }
    CHECK_FALSE(fixture_text("nope"));
}

TEST_CASE("fixture contents") {
    FieldBundle b = test::fixture("sqrt3");
    CHECK(b.field->degree() == 6);
    CHECK(b.group->order() == 3);
    CHECK(b.rank == 2);
    CHECK(b.lattice.fundamental.size() == 7);
    CHECK(b.metadata.at("disc_K") == "87480000");
    CHECK(b.class_group->trivial());
    CHECK(b.lvalues->stated_bits == 320);
}

TEST_CASE("an automorphism that is not a root of the minimal polynomial is rejected") {
    json doc = fixture_doc("sqrt3");
    for (auto& a : doc["automorphisms"])
        if (a["label"] == "s1") a["poly"][0] = "-70/34";
    auto issues = issues_of(doc);
    REQUIRE_FALSE(issues.empty());
    CHECK(any_contains(issues, "nf_apply_aut check failed"));
    CHECK(any_contains(issues, "'s1'"));
}

TEST_CASE("every violation is reported, not just the first") {
    json doc = fixture_doc("sqrt10");
    doc["sunits"]["torsion_order"] = 4;
    doc["sunits"]["valuations"].erase(1);
    doc["artin"]["alpha_normalization"] = "weird";
    auto issues = issues_of(doc);
    CHECK(issues.size() >= 3);
    CHECK(any_contains(issues, "torsion_order"));
    CHECK(any_contains(issues, "sunits.valuations"));
    CHECK(any_contains(issues, "alpha_normalization"));
}

TEST_CASE("unknown group labels are reported") {
    json doc = fixture_doc("sqrt10");
    doc["places"]["galois_perm"]["t"] = doc["places"]["galois_perm"]["s"];
    CHECK(any_contains(issues_of(doc), "'t'"));
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(parse_bundle_text("{not json"), Error);
    json doc = fixture_doc("sqrt10");
    doc["schema"] = "stark-bundle/99";
    try {
        (void)parse_bundle_text(doc.dump());
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SchemaError);
    }
}

TEST_CASE("optional sections produce warnings") {
    json doc = fixture_doc("sqrt10");
    doc.erase("lvalues");
    doc.erase("class_group");
    FieldBundle b = parse_bundle_text(doc.dump());
    CHECK_FALSE(b.lvalues);
    CHECK_FALSE(b.class_group);
    CHECK(any_contains(b.warnings, "stark stage unavailable"));
    CHECK(any_contains(b.warnings, "class group data absent"));
}

TEST_CASE("automorphism order in the document does not matter") {
    json doc = fixture_doc("sqrt3");
    auto& a = doc["automorphisms"];
    std::swap(a[0], a[2]);
    FieldBundle b = parse_bundle_text(doc.dump());
    FieldBundle ref = test::fixture("sqrt3");
    CHECK(b.group->labels == ref.group->labels);
    CHECK(b.places.galois_perm == ref.places.galois_perm);
}

TEST_CASE("L-values can be replaced in a bundle document") {
    FieldBundle b = test::fixture("sqrt3");
    std::string text = bundle_with_lvalues(*fixture_text("sqrt3"), *b.lvalues, *b.group);
    FieldBundle c = parse_bundle_text(text);
    REQUIRE(c.lvalues);
    REQUIRE(c.lvalues->values.size() == b.lvalues->values.size());
    for (std::size_t i = 0; i < c.lvalues->values.size(); ++i) {
        CHECK(c.lvalues->values[i].re == b.lvalues->values[i].re);
        CHECK(c.lvalues->values[i].angles == b.lvalues->values[i].angles);
    }
}

TEST_CASE("files round trip through atomic writes") {
    auto dir = std::filesystem::temp_directory_path() / "starkcheck_bundle_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "sqrt10.json").string();
    write_file_atomic(path, *fixture_text("sqrt10"));
    CHECK(read_file(path) == *fixture_text("sqrt10"));
    CHECK(parse_bundle(path).name == "sqrt10");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_file(path), Error);
}
