#pragma once

#include "starkcheck/artin.hpp"
#include "starkcheck/burns.hpp"
#include "starkcheck/stark.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace starkcheck {

inline constexpr const char* kBundleSchema = "stark-bundle/1";

struct FieldBundle {
    std::string name;
    std::string origin;
    std::map<std::string, std::string> metadata;
    FieldPtr field;
    int base_degree = 2;
    GroupPtr group;
    PlaceSet places;
    LatticeInput lattice;
    int rank = 1;
    ArtinOptions artin;
    std::optional<ClassGroupData> class_group;
    std::optional<LValueTable> lvalues;
    std::vector<std::string> warnings;
};

// SchemaError for unreadable JSON or an unknown schema version; ValidationError listing
// every violation otherwise.
FieldBundle parse_bundle_text(const std::string& text, const std::string& origin = "<memory>");
FieldBundle parse_bundle(const std::string& path);

// Replaces the lvalues section of a bundle document.
std::string bundle_with_lvalues(const std::string& text, const LValueTable& t, const AbelianGroup& G);

std::string read_file(const std::string& path);
// Writes through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

// Built-in fixtures by name (sqrt10, sqrt3, sqrt42).
std::vector<std::string> fixture_names();
std::optional<std::string> fixture_text(const std::string& name);

}  // namespace starkcheck
