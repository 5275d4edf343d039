#pragma once

#include "starkcheck/artin.hpp"
#include "starkcheck/bundle.hpp"
#include "starkcheck/sunits.hpp"

#include <memory>
#include <string>

namespace starkcheck::test {

inline FieldBundle fixture(const std::string& name) {
    auto text = fixture_text(name);
    if (!text) throw std::runtime_error("no fixture " + name);
    return parse_bundle_text(*text, "fixture:" + name);
}

// A fixture with roots refined and the lattice and Artin system built at the current precision.
struct Context {
    FieldBundle b;
    std::unique_ptr<SUnitLattice> L;
    ArtinSystem A;
    std::vector<Character> chars;

    explicit Context(const std::string& name, long bits = current_precision()) : b(fixture(name)) {
        PlaceSet P = b.places;
        refine_roots(P, b.field->poly(), bits + 32);
        L = std::make_unique<SUnitLattice>(b.group, P, b.lattice);
        A = build_artin_system(*L, b.artin);
        chars = character_table(*b.group);
    }
    int label(const std::string& l) const { return b.group->index_of_label(l); }
};

inline FieldElement poly_elem(const FieldPtr& k, std::vector<mpq_class> c) { return FieldElement(k, Poly(std::move(c))); }

inline mpq_class q(const char* s) { return parse_rational(s); }

}  // namespace starkcheck::test
