#include "starkcheck/bundle.hpp"

#include "starkcheck/error.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace starkcheck {

using json = nlohmann::json;

namespace {

struct Reader {
    std::vector<std::string> issues;

    void fail(const std::string& where, const std::string& what) { issues.push_back(where + ": " + what); }

    const json* member(const json& j, const char* key, const std::string& where, bool required = true) {
        if (!j.is_object()) {
            fail(where, "expected an object");
            return nullptr;
        }
        auto it = j.find(key);
        if (it == j.end()) {
            if (required) fail(where, std::string("missing '") + key + "'");
            return nullptr;
        }
        return &*it;
    }

    std::optional<mpz_class> integer(const json& j, const std::string& where) {
        try {
            if (j.is_number_integer()) return mpz_class(j.get<long>());
            if (j.is_string()) {
                mpz_class z;
                std::string s = j.get<std::string>();
                if (!s.empty() && s[0] == '+') s.erase(0, 1);
                if (z.set_str(s, 10) == 0) return z;
            }
        } catch (const std::exception&) {
        }
        fail(where, "expected an integer");
        return std::nullopt;
    }

    std::optional<mpq_class> rational(const json& j, const std::string& where) {
        try {
            if (j.is_number_integer()) return mpq_class(j.get<long>());
            if (j.is_string()) return parse_rational(j.get<std::string>());
        } catch (const std::exception&) {
        }
        fail(where, "expected a rational string");
        return std::nullopt;
    }

    std::optional<long> small(const json& j, const std::string& where) {
        auto z = integer(j, where);
        if (!z) return std::nullopt;
        if (!z->fits_slong_p()) {
            fail(where, "integer out of range");
            return std::nullopt;
        }
        return z->get_si();
    }

    std::optional<std::string> string(const json& j, const std::string& where) {
        if (j.is_string()) return j.get<std::string>();
        fail(where, "expected a string");
        return std::nullopt;
    }

    bool array(const json& j, const std::string& where) {
        if (j.is_array()) return true;
        fail(where, "expected an array");
        return false;
    }

    std::optional<std::vector<mpq_class>> rational_vector(const json& j, const std::string& where) {
        if (!array(j, where)) return std::nullopt;
        std::vector<mpq_class> v;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto q = rational(j[i], where + "[" + std::to_string(i) + "]");
            if (q) v.push_back(*q);
            else ok = false;
        }
        if (!ok) return std::nullopt;
        return v;
    }

    std::optional<std::vector<mpz_class>> integer_vector(const json& j, const std::string& where) {
        if (!array(j, where)) return std::nullopt;
        std::vector<mpz_class> v;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto q = integer(j[i], where + "[" + std::to_string(i) + "]");
            if (q) v.push_back(*q);
            else ok = false;
        }
        if (!ok) return std::nullopt;
        return v;
    }

    std::optional<IntMatrix> integer_matrix(const json& j, const std::string& where, std::size_t cols) {
        if (!array(j, where)) return std::nullopt;
        IntMatrix m(j.size(), cols);
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto row = integer_vector(j[i], where + "[" + std::to_string(i) + "]");
            if (!row) {
                ok = false;
                continue;
            }
            if (row->size() != cols) {
                fail(where + "[" + std::to_string(i) + "]", "expected " + std::to_string(cols) + " entries");
                ok = false;
                continue;
            }
            for (std::size_t c = 0; c < cols; ++c) m(i, c) = (*row)[c];
        }
        if (!ok) return std::nullopt;
        return m;
    }
};

PlaceKind parse_kind(Reader& r, const json& j, const std::string& where) {
    auto s = r.string(j, where);
    if (s && *s == "finite") return PlaceKind::Finite;
    if (s && *s != "real") r.fail(where, "kind must be real or finite");
    return PlaceKind::Real;
}

// Looks up a per-automorphism entry keyed by label, in canonical group order.
template <class F>
void for_each_label(Reader& r, const json& obj, const AbelianGroup& G, const std::string& where, F&& f) {
    if (!obj.is_object()) {
        r.fail(where, "expected an object keyed by automorphism label");
        return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (G.index_of_label(it.key()) < 0) r.fail(where, "unknown automorphism label '" + it.key() + "'");
    for (std::size_t s = 0; s < G.order(); ++s) {
        auto it = obj.find(G.labels[s]);
        if (it == obj.end()) r.fail(where, "missing entry for '" + G.labels[s] + "'");
        else f(s, *it, where + "." + G.labels[s]);
    }
}

}  // namespace

FieldBundle parse_bundle_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::SchemaError, origin + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != kBundleSchema)
        throw Error(Errc::SchemaError, origin + ": unsupported or missing schema (expected " + std::string(kBundleSchema) + ")");

    Reader r;
    FieldBundle b;
    b.origin = origin;
    if (auto* n = r.member(doc, "name", "bundle", false)) {
        if (auto s = r.string(*n, "name")) b.name = *s;
    }
    if (b.name.empty()) b.name = std::filesystem::path(origin).stem().string();
    if (auto* md = r.member(doc, "metadata", "bundle", false)) {
        if (md->is_object()) {
            for (auto it = md->begin(); it != md->end(); ++it)
                b.metadata[it.key()] = it->is_string() ? it->get<std::string>() : it->dump();
        } else {
            r.fail("metadata", "expected an object");
        }
    }

    // Field and automorphisms; without them nothing else can be checked.
    const json* field = r.member(doc, "field", "bundle");
    if (field) {
        if (auto* mp = r.member(*field, "min_poly", "field")) {
            if (auto coeffs = r.integer_vector(*mp, "field.min_poly")) {
                try {
                    b.field = make_field(*coeffs);
                } catch (const Error& e) {
                    r.fail("field.min_poly", e.what());
                }
            }
        }
        if (auto* bd = r.member(*field, "base_degree", "field", false))
            if (auto v = r.small(*bd, "field.base_degree")) b.base_degree = static_cast<int>(*v);
    }
    std::vector<FieldElement> auts;
    std::vector<std::string> labels;
    if (const json* aj = r.member(doc, "automorphisms", "bundle"); aj && r.array(*aj, "automorphisms") && b.field) {
        for (std::size_t i = 0; i < aj->size(); ++i) {
            const std::string where = "automorphisms[" + std::to_string(i) + "]";
            const json& a = (*aj)[i];
            std::string label = "s" + std::to_string(i);
            if (auto* l = r.member(a, "label", where, false))
                if (auto s = r.string(*l, where + ".label")) label = *s;
            const json* pj = r.member(a, "poly", where);
            if (!pj) continue;
            auto c = r.rational_vector(*pj, where + ".poly");
            if (!c) continue;
            FieldElement q(b.field, Poly(*c));
            if (!q.is_root_of_min_poly()) {
                r.fail(where, "nf_apply_aut check failed: p(q) is not 0 mod p for '" + label + "'");
                continue;
            }
            auts.push_back(q);
            labels.push_back(label);
        }
        if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) r.fail("automorphisms", "labels must be distinct");
    }
    if (b.field && r.issues.empty()) {
        try {
            b.group = build_group(auts, labels);
        } catch (const Error& e) {
            r.fail("automorphisms", e.what());
        }
    }
    if (!b.group) throw ValidationError(Errc::ValidationError, r.issues);
    const AbelianGroup& G = *b.group;

    if (auto* rk = r.member(doc, "rank", "bundle"))
        if (auto v = r.small(*rk, "rank")) b.rank = static_cast<int>(*v);

    // Places.
    bool places_ok = false;
    if (const json* pj = r.member(doc, "places", "bundle")) {
        const std::size_t before = r.issues.size();
        PlaceSet& P = b.places;
        if (auto* roots = r.member(*pj, "roots", "places"); roots && r.array(*roots, "places.roots")) {
            for (std::size_t i = 0; i < roots->size(); ++i) {
                const std::string where = "places.roots[" + std::to_string(i) + "]";
                const json& rj = (*roots)[i];
                RealRoot rr;
                auto* ap = r.member(rj, "approx", where);
                auto* lo = r.member(rj, "lo", where);
                auto* hi = r.member(rj, "hi", where);
                if (!ap || !lo || !hi) continue;
                auto a = r.string(*ap, where + ".approx");
                auto l = r.rational(*lo, where + ".lo");
                auto h = r.rational(*hi, where + ".hi");
                if (!a || !l || !h) continue;
                try {
                    rr.approx = Real(std::string_view(*a));
                } catch (const std::exception&) {
                    r.fail(where + ".approx", "not a decimal");
                    continue;
                }
                rr.lo = *l;
                rr.hi = *h;
                rr.error = Real(*h - *l);
                const Poly& p = b.field->poly();
                if (!(*l < *h) || sgn(p.eval(*l)) * sgn(p.eval(*h)) >= 0) r.fail(where, "p does not change sign on [lo, hi]");
                P.roots.push_back(std::move(rr));
            }
        }
        if (auto* sp = r.member(*pj, "s_places", "places"); sp && r.array(*sp, "places.s_places")) {
            for (std::size_t i = 0; i < sp->size(); ++i) {
                const std::string where = "places.s_places[" + std::to_string(i) + "]";
                BasePlace bp;
                if (auto* l = r.member((*sp)[i], "label", where))
                    if (auto s = r.string(*l, where + ".label")) bp.label = *s;
                if (auto* k = r.member((*sp)[i], "kind", where)) bp.kind = parse_kind(r, *k, where + ".kind");
                P.s_places.push_back(bp);
            }
        }
        if (auto* sk = r.member(*pj, "sk_places", "places"); sk && r.array(*sk, "places.sk_places")) {
            for (std::size_t i = 0; i < sk->size(); ++i) {
                const std::string where = "places.sk_places[" + std::to_string(i) + "]";
                const json& wj = (*sk)[i];
                Place pl;
                if (auto* l = r.member(wj, "label", where))
                    if (auto s = r.string(*l, where + ".label")) pl.label = *s;
                if (auto* k = r.member(wj, "kind", where)) pl.kind = parse_kind(r, *k, where + ".kind");
                if (auto* o = r.member(wj, "over", where))
                    if (auto v = r.small(*o, where + ".over")) pl.over = static_cast<int>(*v);
                if (pl.kind == PlaceKind::Real) {
                    if (auto* ro = r.member(wj, "root", where))
                        if (auto v = r.small(*ro, where + ".root")) pl.root = static_cast<int>(*v);
                } else if (auto* nm = r.member(wj, "norm", where)) {
                    if (auto v = r.integer(*nm, where + ".norm")) pl.norm = *v;
                }
                P.sk_places.push_back(pl);
            }
        }
        if (auto* d = r.member(*pj, "distinguished", "places"); d && r.array(*d, "places.distinguished"))
            for (std::size_t i = 0; i < d->size(); ++i)
                if (auto v = r.small((*d)[i], "places.distinguished[" + std::to_string(i) + "]")) P.distinguished.push_back(static_cast<int>(*v));
        if (auto* dg = r.member(*pj, "decomposition_groups", "places"); dg && r.array(*dg, "places.decomposition_groups")) {
            for (std::size_t i = 0; i < dg->size(); ++i) {
                const std::string where = "places.decomposition_groups[" + std::to_string(i) + "]";
                std::vector<int> sub;
                if (r.array((*dg)[i], where))
                    for (const auto& e : (*dg)[i]) {
                        auto s = r.string(e, where);
                        if (!s) continue;
                        int idx = G.index_of_label(*s);
                        if (idx < 0) r.fail(where, "unknown automorphism label '" + *s + "'");
                        else sub.push_back(idx);
                    }
                P.decomposition_groups.push_back(sub);
            }
        }
        P.galois_perm.assign(G.order(), {});
        if (auto* gp = r.member(*pj, "galois_perm", "places"))
            for_each_label(r, *gp, G, "places.galois_perm", [&](std::size_t s, const json& row, const std::string& where) {
                if (!r.array(row, where)) return;
                for (const auto& e : row)
                    if (auto v = r.small(e, where)) P.galois_perm[s].push_back(static_cast<int>(*v));
            });
        if (r.issues.size() == before) {
            auto issues = validate_places(P, G);
            r.issues.insert(r.issues.end(), issues.begin(), issues.end());
            places_ok = issues.empty();
        }
    }

    // S-units.
    if (const json* su = r.member(doc, "sunits", "bundle"); su && b.field) {
        if (auto* to = r.member(*su, "torsion_order", "sunits"))
            if (auto v = r.small(*to, "sunits.torsion_order")) b.lattice.torsion_order = *v;
        if (b.lattice.torsion_order != 2) r.fail("sunits.torsion_order", "only mu(K) = {+1, -1} is supported (totally real K)");
        if (auto* fj = r.member(*su, "fundamental", "sunits"); fj && r.array(*fj, "sunits.fundamental")) {
            for (std::size_t i = 0; i < fj->size(); ++i) {
                const std::string where = "sunits.fundamental[" + std::to_string(i) + "]";
                if (auto c = r.rational_vector((*fj)[i], where)) {
                    FieldElement e(b.field, Poly(*c));
                    if (e.is_zero()) r.fail(where, "zero is not a unit");
                    b.lattice.fundamental.push_back(e);
                }
            }
        }
        const std::size_t t = b.lattice.fundamental.size();
        if (places_ok && t + 1 != b.places.n_sk()) r.fail("sunits.fundamental", "expected |S_K| - 1 = " + std::to_string(b.places.n_sk() - 1) + " units");
        if (auto* vj = r.member(*su, "valuations", "sunits"))
            if (auto m = r.integer_matrix(*vj, "sunits.valuations", t)) {
                b.lattice.valuations = *m;
                if (places_ok && m->rows != b.places.finite_places().size())
                    r.fail("sunits.valuations", "one row per finite place of S_K required");
            }
    }

    // Optional Artin choices.
    if (const json* aj = r.member(doc, "artin", "bundle", false)) {
        if (auto* bj = r.member(*aj, "betas", "artin", false)) {
            if (auto m = r.integer_matrix(*bj, "artin.betas", b.lattice.fundamental.size())) {
                std::vector<SUnit> betas;
                for (std::size_t i = 0; i < m->rows; ++i) betas.push_back(SUnit{1, m->row(i)});
                if (places_ok && betas.size() != b.places.n_s()) r.fail("artin.betas", "one beta per place of S required");
                b.artin.betas = betas;
            }
        }
        if (auto* nj = r.member(*aj, "alpha_normalization", "artin", false))
            if (auto s = r.string(*nj, "artin.alpha_normalization")) {
                if (*s != "none" && *s != "unit") r.fail("artin.alpha_normalization", "must be none or unit");
                b.artin.normalization = *s;
            }
        if (auto* mj = r.member(*aj, "margin", "artin", false))
            if (auto q = r.rational(*mj, "artin.margin")) {
                if (*q <= 0) r.fail("artin.margin", "must be positive");
                b.artin.margin = *q;
            }
        if (auto* sj = r.member(*aj, "schedule", "artin", false))
            if (auto s = r.string(*sj, "artin.schedule")) {
                if (*s == "linear") b.artin.schedule = N0Schedule::Linear;
                else if (*s == "doubling") b.artin.schedule = N0Schedule::Doubling;
                else r.fail("artin.schedule", "must be linear or doubling");
            }
    }

    // Optional class group.
    if (const json* cj = r.member(doc, "class_group", "bundle", false)) {
        ClassGroupData C;
        const std::size_t before = r.issues.size();
        if (auto* dj = r.member(*cj, "divisors", "class_group"))
            if (auto d = r.integer_vector(*dj, "class_group.divisors")) C.divisors = *d;
        const std::size_t k = C.divisors.size();
        if (k > 0) {
            C.action.assign(G.order(), IntMatrix());
            if (auto* aj = r.member(*cj, "action", "class_group"))
                for_each_label(r, *aj, G, "class_group.action", [&](std::size_t s, const json& m, const std::string& where) {
                    if (auto M = r.integer_matrix(m, where, k)) C.action[s] = *M;
                });
        } else {
            C.action.assign(G.order(), IntMatrix());
        }
        if (auto* pj = r.member(*cj, "place_classes", "class_group", k > 0)) {
            if (auto M = r.integer_matrix(*pj, "class_group.place_classes", k))
                for (std::size_t i = 0; i < M->rows; ++i) C.place_classes.push_back(M->row(i));
        }
        if (k == 0) C.action.clear();
        if (r.issues.size() == before && places_ok) {
            if (k == 0) C.place_classes.assign(b.places.finite_places().size(), {});
            auto issues = validate_class_group(C, G, &b.places);
            r.issues.insert(r.issues.end(), issues.begin(), issues.end());
        }
        b.class_group = C;
    } else {
        b.warnings.push_back("class group data absent: Burns statements not checked");
    }

    // Optional L-values.
    if (const json* lj = r.member(doc, "lvalues", "bundle", false)) {
        LValueTable t;
        if (auto* sb = r.member(*lj, "stated_bits", "lvalues", false))
            if (auto v = r.small(*sb, "lvalues.stated_bits")) t.stated_bits = *v;
        if (auto* vj = r.member(*lj, "values", "lvalues"); vj && r.array(*vj, "lvalues.values")) {
            for (std::size_t i = 0; i < vj->size(); ++i) {
                const std::string where = "lvalues.values[" + std::to_string(i) + "]";
                const json& e = (*vj)[i];
                LValue v;
                v.angles.assign(G.order(), mpq_class(0));
                if (auto* cj = r.member(e, "chi", where))
                    for_each_label(r, *cj, G, where + ".chi", [&](std::size_t s, const json& a, const std::string& w) {
                        if (auto q = r.rational(a, w)) {
                            mpq_class f = *q;
                            mpz_class fl;
                            mpz_fdiv_q(fl.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
                            v.angles[s] = f - mpq_class(fl);
                            v.angles[s].canonicalize();
                        }
                    });
                if (auto* re = r.member(e, "re", where))
                    if (auto s = r.string(*re, where + ".re")) v.re = *s;
                if (auto* im = r.member(e, "im", where, false))
                    if (auto s = r.string(*im, where + ".im")) v.im = *s;
                if (auto* o = r.member(e, "order", where))
                    if (auto s = r.small(*o, where + ".order")) v.order = static_cast<int>(*s);
                t.values.push_back(std::move(v));
            }
        }
        if (places_ok) {
            auto chars = character_table(G);
            auto issues = validate_lvalues(t, chars, b.places);
            r.issues.insert(r.issues.end(), issues.begin(), issues.end());
        }
        b.lvalues = t;
    } else {
        b.warnings.push_back("L-values absent: stark stage unavailable");
    }

    if (!r.issues.empty()) throw ValidationError(Errc::ValidationError, r.issues);
    return b;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::SchemaError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::SchemaError, "cannot write " + tmp);
        out << content;
        if (!out) throw Error(Errc::SchemaError, "write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

FieldBundle parse_bundle(const std::string& path) { return parse_bundle_text(read_file(path), path); }

std::string bundle_with_lvalues(const std::string& text, const LValueTable& t, const AbelianGroup& G) {
    json doc = json::parse(text);
    json values = json::array();
    for (const auto& v : t.values) {
        json chi = json::object();
        for (std::size_t s = 0; s < G.order(); ++s) chi[G.labels[s]] = v.angles[s].get_str();
        values.push_back({{"chi", chi}, {"re", v.re}, {"im", v.im}, {"order", v.order}});
    }
    doc["lvalues"] = {{"stated_bits", t.stated_bits}, {"values", values}};
    return doc.dump(2) + "\n";
}

}  // namespace starkcheck
