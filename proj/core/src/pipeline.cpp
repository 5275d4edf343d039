#include "starkcheck/pipeline.hpp"

#include "starkcheck/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace starkcheck {

using json = nlohmann::json;

PipelineConfig PipelineConfig::from_env() {
    PipelineConfig c;
    if (const char* s = std::getenv("STARKCHECK_PRECISION"); s && *s) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (*end != '\0' || v < 32) throw std::invalid_argument("STARKCHECK_PRECISION must be an integer >= 32");
        c.precision_bits = v;
    }
    return c;
}

const char* stage_status_name(StageStatus s) {
    switch (s) {
    case StageStatus::Ok: return "ok";
    case StageStatus::Failed: return "failed";
    case StageStatus::Skipped: return "skipped";
    }
    return "?";
}

const StageResult* VerificationReport::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.name == name) return &s;
    return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string real_str(const Real& x, int digits = 20) { return x.to_string(digits); }

struct Outcome {
    bool ok = true;
    std::string message;
};

class Runner {
public:
    Runner(const FieldBundle& b, const PipelineConfig& cfg, long bits) : b_(b), cfg_(cfg), bits_(bits) {}

    VerificationReport run();
    bool precision_failure() const { return precision_failure_; }
    const std::string& precision_message() const { return precision_message_; }

private:
    template <class F>
    bool stage(const std::string& name, const std::vector<std::string>& needs, F&& f) {
        StageResult s;
        s.name = name;
        for (const auto& n : needs) {
            const StageResult* dep = rep_.stage(n);
            if (!dep || dep->status != StageStatus::Ok) {
                s.status = StageStatus::Skipped;
                s.message = "requires " + n;
                rep_.stages.push_back(s);
                return false;
            }
        }
        auto t0 = Clock::now();
        try {
            Outcome o = f();
            s.status = o.ok ? StageStatus::Ok : StageStatus::Failed;
            s.message = o.message;
        } catch (const Error& e) {
            s.status = StageStatus::Failed;
            s.message = e.what();
            if (is_precision_error(e.code()) && !precision_failure_) {
                precision_failure_ = true;
                precision_message_ = name + ": " + s.message;
            }
        } catch (const std::exception& e) {
            s.status = StageStatus::Failed;
            s.message = e.what();
        }
        rep_.timings_ms[name] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        rep_.stages.push_back(s);
        return s.status == StageStatus::Ok;
    }

    const FieldBundle& b_;
    const PipelineConfig& cfg_;
    long bits_;
    VerificationReport rep_;
    bool precision_failure_ = false;
    std::string precision_message_;

    std::unique_ptr<SUnitLattice> L_;
    std::vector<Character> chars_;
    RankData rd_;
    std::optional<ArtinSystem> A_;
    std::vector<Real> num_e_, num_full_;
    std::optional<QGroupRing> beta_e_;
};

VerificationReport Runner::run() {
    PrecisionScope scope(bits_);
    const GroupPtr& G = b_.group;
    rep_.name = b_.name;
    rep_.metadata = b_.metadata;
    rep_.labels = G->labels;
    rep_.rank = b_.rank;
    rep_.precision = bits_;
    for (int w : b_.places.distinguished) rep_.distinguished.push_back(b_.places.sk_places[static_cast<std::size_t>(w)].label);
    rep_.warnings = b_.warnings;
    const long wK = b_.lattice.torsion_order;
    const int r = b_.rank;

    stage("inputs", {}, [&] {
        PlaceSet P = b_.places;
        refine_roots(P, b_.field->poly(), bits_ + 32);
        verify_place_action(P, *G);
        L_ = std::make_unique<SUnitLattice>(G, P, b_.lattice);
        rep_.product_formula_defect = real_str(L_->product_formula_defect(), 6);
        chars_ = character_table(*G);
        rd_ = rank_data(r, L_->places(), G, chars_);
        return Outcome{true, ""};
    });

    stage("artin", {"inputs"}, [&] {
        A_ = build_artin_system(*L_, b_.artin);
        CheckList checks = verify_artin_system(*A_, *L_);
        ArtinReport ar{A_->eps, A_->alpha, A_->m, A_->betas, A_->n0, A_->kernel_doubled, A_->inverted_orbits, A_->normalization, checks.items};
        rep_.artin = ar;
        Outcome o;
        o.ok = checks.ok();
        for (const auto& f : checks.failures()) o.message += (o.message.empty() ? "failed checks: " : ", ") + f;
        return o;
    });

    stage("regulator", {"artin"}, [&] {
        Complex prod(Real(1L));
        for (const auto& chi : chars_) prod = prod * stark_regulator(chi, *A_, *L_);
        std::vector<SUnit> basis;
        for (std::size_t j = 0; j < L_->rank(); ++j) basis.push_back(SUnit::basis(L_->rank(), j));
        Real rks = L_->regulator(basis, 0);
        Complex ratio = prod / Complex(Real(A_->m) * rks);
        rep_.regulator_ratio = real_str(ratio.re);
        Real tol = Real::pow2(-(bits_ / 4));
        bool ok = abs(abs(ratio.re) - Real(1L)) < tol && abs(ratio.im) < tol;
        rep_.regulator_identity = ok;
        return Outcome{ok, ok ? "" : "prod R(chi) != +-m R_{K,S}"};
    });

    bool have_lvalues = b_.lvalues.has_value();
    if (!have_lvalues) {
        for (const char* n : {"beta", "recognize", "index", "gamma", "abelian", "burns"})
            rep_.stages.push_back({n, StageStatus::Skipped, "stark stage unavailable: no L-values"});
    }
    long rec_bits = bits_;
    if (have_lvalues) {
        const LValueTable& lv = *b_.lvalues;
        if (lv.stated_bits > 0 && lv.stated_bits < bits_) {
            rec_bits = lv.stated_bits;
            rep_.warnings.push_back("L-values carry " + std::to_string(lv.stated_bits) + " bits, below the working precision");
        }
        stage("beta", {"artin"}, [&] {
            num_e_ = beta_numeric(rd_.chars_rS_prime, chars_, lv, *A_, *L_);
            bool full = true;
            for (const auto& chi : chars_)
                if (!lv.find(chi)) full = false;
            if (full) {
                std::vector<int> all(chars_.size());
                for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
                num_full_ = beta_numeric(all, chars_, lv, *A_, *L_);
            }
            return Outcome{true, full ? "" : "L-values cover e' only"};
        });
        stage("recognize", {"beta"}, [&] {
            mpz_class max_den = cfg_.max_den > 0 ? cfg_.max_den : mpz_class(4 * A_->m * A_->m);
            try {
                BetaResult be = recognize_rationals(num_e_, G, max_den, rec_bits);
                beta_e_ = be.exact;
                rep_.beta_e = be.exact.c;
                rep_.d = be.d;
                rep_.residual = real_str(be.residual, 6);
                if (!num_full_.empty()) rep_.beta = recognize_rationals(num_full_, G, max_den, rec_bits).exact.c;
            } catch (const Error& e) {
                if (e.code() == Errc::RecognitionFailed) rep_.stark_ok = false;
                throw;
            }
            rep_.stark_ok = true;
            return Outcome{true, ""};
        });
        stage("index", {"artin", "recognize"}, [&] {
            const mpz_class& m = A_->m;
            const mpz_class& d = *rep_.d;
            rep_.d_divides_2m = mpz_class(wK * m) % d == 0;
            rep_.d_divides_2m2 = mpz_class(wK * m * m) % d == 0;
            if (!*rep_.d_divides_2m) rep_.warnings.push_back("d does not divide w_K m (empirical observation, not a conjecture)");
            return Outcome{true, ""};
        });
    }

    stage("functionals", {"inputs"}, [&] {
        if (r == 1) return Outcome{true, "not needed for r = 1"};
        bool eq = functionals_equivariant(dual_functionals(*L_), *L_);
        rep_.functionals_equivariant = eq;
        return Outcome{eq, eq ? "" : "dual functionals are not G-equivariant"};
    });

    if (have_lvalues) {
        stage("gamma", {"artin", "recognize", "functionals"}, [&] {
            rep_.popescu = popescu_verdict(*A_, *L_, *beta_e_, *rep_.d, r);
            std::string msg;
            for (const auto& e : rep_.popescu->entries)
                if (!e.divisible_by_d) msg = "gamma not divisible by d";
            return Outcome{true, msg};
        });
        stage("abelian", {"gamma"}, [&] {
            if (!G->is_cyclic()) {
                rep_.warnings.push_back("G is not cyclic: Popescu abelian test undetermined");
                return Outcome{true, "undetermined for non-cyclic G"};
            }
            return Outcome{true, ""};
        });
        if (b_.class_group) {
            stage("burns", {"artin", "recognize"}, [&] {
                const ClassGroupData& C = *b_.class_group;
                ClassGroupData Cs = s_quotient(C, *G);
                rep_.class_number = C.order();
                rep_.burns = classify_statements(*beta_e_, *rep_.d, A_->m, wK, r, C, Cs);
                if (!rep_.burns->monotone) rep_.warnings.push_back("Burns statements are not monotone");
                return Outcome{true, ""};
            });
        } else {
            rep_.stages.push_back({"burns", StageStatus::Skipped, "no class group data"});
        }
    }
    if (b_.class_group) rep_.class_number = b_.class_group->order();
    return rep_;
}

// JSON helpers

json sunit_json(const SUnit& u) {
    json e = json::array();
    for (const auto& x : u.exps) e.push_back(x.get_str());
    return {{"sign", u.sign}, {"exps", e}};
}

SUnit sunit_from(const json& j) {
    SUnit u;
    u.sign = j.at("sign").get<int>();
    for (const auto& x : j.at("exps")) u.exps.emplace_back(x.get<std::string>());
    return u;
}

template <class T>
json str_vec(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

std::vector<mpz_class> mpz_vec(const json& j) {
    std::vector<mpz_class> v;
    for (const auto& x : j) v.emplace_back(x.get<std::string>());
    return v;
}

json group_ring_json(const std::vector<mpq_class>& c, const std::vector<std::string>& labels) {
    json o = json::object();
    for (std::size_t s = 0; s < c.size(); ++s) o[labels[s]] = c[s].get_str();
    return o;
}

std::vector<mpq_class> group_ring_from(const json& j, const std::vector<std::string>& labels) {
    std::vector<mpq_class> c;
    for (const auto& l : labels) c.push_back(parse_rational(j.at(l).get<std::string>()));
    return c;
}

template <class T, class F>
void put(json& o, const char* key, const std::optional<T>& v, F&& f) {
    if (v) o[key] = f(*v);
}

template <class T>
void put(json& o, const char* key, const std::optional<T>& v) {
    if (v) o[key] = *v;
}

template <class T, class F>
void get(const json& o, const char* key, std::optional<T>& v, F&& f) {
    if (auto it = o.find(key); it != o.end()) v = f(*it);
}

template <class T>
void get(const json& o, const char* key, std::optional<T>& v) {
    if (auto it = o.find(key); it != o.end()) v = it->template get<T>();
}

StageStatus status_from(const std::string& s) {
    if (s == "ok") return StageStatus::Ok;
    if (s == "failed") return StageStatus::Failed;
    return StageStatus::Skipped;
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> opt_bool_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<bool>();
}

}  // namespace

VerificationReport run_pipeline(const FieldBundle& b, const PipelineConfig& config) {
    Runner first(b, config, config.precision_bits);
    VerificationReport rep = first.run();
    if (!first.precision_failure() || !config.escalate) return rep;
    Runner second(b, config, 2 * config.precision_bits);
    VerificationReport again = second.run();
    again.escalated = true;
    again.warnings.push_back("rerun at " + std::to_string(2 * config.precision_bits) + " bits after " + first.precision_message());
    return again;
}

LValueTable derive_bundle_lvalues(const FieldBundle& b, const std::vector<mpq_class>& beta, long bits) {
    PrecisionScope scope(bits);
    const GroupPtr& G = b.group;
    if (beta.size() != G->order()) throw Error(Errc::DomainMismatch, "beta needs one coefficient per group element");
    PlaceSet P = b.places;
    refine_roots(P, b.field->poly(), bits + 32);
    SUnitLattice L(G, P, b.lattice);
    ArtinSystem A = build_artin_system(L, b.artin);
    auto chars = character_table(*G);
    RankData rd = rank_data(b.rank, L.places(), G, chars);
    QGroupRing x(G);
    x.c = beta;
    return derive_lvalues(x, rd.chars_rS_prime, chars, A, L, L.places());
}

std::string report_to_json(const VerificationReport& r, bool with_timings) {
    json o;
    o["schema"] = kReportSchema;
    o["name"] = r.name;
    o["metadata"] = r.metadata;
    o["labels"] = r.labels;
    o["rank"] = r.rank;
    o["precision"] = r.precision;
    o["escalated"] = r.escalated;
    o["distinguished"] = r.distinguished;
    json stages = json::array();
    for (const auto& s : r.stages) stages.push_back({{"name", s.name}, {"status", stage_status_name(s.status)}, {"message", s.message}});
    o["stages"] = stages;
    if (r.artin) {
        const ArtinReport& a = *r.artin;
        json eps = json::array(), betas = json::array(), checks = json::array();
        for (const auto& e : a.eps) eps.push_back(sunit_json(e));
        for (const auto& e : a.betas) betas.push_back(sunit_json(e));
        for (const auto& [n, ok] : a.checks) checks.push_back({{"name", n}, {"ok", ok}});
        o["artin"] = {{"eps", eps},          {"alpha", str_vec(a.alpha)},
                      {"m", a.m.get_str()},  {"betas", betas},
                      {"n0", a.n0},          {"kernel_doubled", a.kernel_doubled},
                      {"inverted_orbits", a.inverted_orbits}, {"normalization", a.normalization},
                      {"checks", checks}};
    }
    put(o, "product_formula_defect", r.product_formula_defect);
    put(o, "regulator_ratio", r.regulator_ratio);
    put(o, "regulator_identity", r.regulator_identity);
    auto gr = [&](const std::vector<mpq_class>& c) { return group_ring_json(c, r.labels); };
    put(o, "beta", r.beta, gr);
    put(o, "beta_e", r.beta_e, gr);
    auto zs = [](const mpz_class& z) { return z.get_str(); };
    put(o, "d", r.d, zs);
    put(o, "residual", r.residual);
    put(o, "stark_ok", r.stark_ok);
    put(o, "d_divides_2m", r.d_divides_2m);
    put(o, "d_divides_2m2", r.d_divides_2m2);
    put(o, "functionals_equivariant", r.functionals_equivariant);
    if (r.popescu) {
        json entries = json::array();
        for (const auto& e : r.popescu->entries)
            entries.push_back({{"index", e.index},
                               {"u", sunit_json(e.u)},
                               {"gamma", sunit_json(e.gamma)},
                               {"divisible_by_d", e.divisible_by_d},
                               {"delta", sunit_json(e.delta)},
                               {"square_test", e.square_test},
                               {"abelian_test", opt_bool(e.abelian_test)}});
        o["popescu"] = {{"entries", entries}, {"overall", opt_bool(r.popescu->overall)}, {"failing", r.popescu->failing}};
    }
    put(o, "class_number", r.class_number, zs);
    if (r.burns) {
        const BurnsVerdict& v = *r.burns;
        json st = json::array();
        for (bool x : v.statements) st.push_back(x);
        o["burns"] = {{"integral", v.integral},
                      {"statement", v.statement ? json(*v.statement) : json(nullptr)},
                      {"statements", st},
                      {"monotone", v.monotone},
                      {"d_divides_2m", v.d_divides_2m},
                      {"d_divides_2m2", v.d_divides_2m2},
                      {"twisted_ok", v.twisted_ok},
                      {"extra_2m_on_cl_s", v.extra_2m_on_cl_s}};
    }
    o["warnings"] = r.warnings;
    if (with_timings) o["timings_ms"] = r.timings_ms;
    return o.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
    json o;
    try {
        o = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::SchemaError, e.what());
    }
    if (!o.is_object() || o.value("schema", "") != kReportSchema) throw Error(Errc::SchemaError, "not a stark-report/1 document");
    try {
        VerificationReport r;
        r.name = o.at("name").get<std::string>();
        r.metadata = o.at("metadata").get<std::map<std::string, std::string>>();
        r.labels = o.at("labels").get<std::vector<std::string>>();
        r.rank = o.at("rank").get<int>();
        r.precision = o.at("precision").get<long>();
        r.escalated = o.at("escalated").get<bool>();
        r.distinguished = o.at("distinguished").get<std::vector<std::string>>();
        for (const auto& s : o.at("stages"))
            r.stages.push_back({s.at("name").get<std::string>(), status_from(s.at("status").get<std::string>()), s.at("message").get<std::string>()});
        get(o, "artin", r.artin, [](const json& a) {
            ArtinReport ar;
            for (const auto& e : a.at("eps")) ar.eps.push_back(sunit_from(e));
            ar.alpha = mpz_vec(a.at("alpha"));
            ar.m = mpz_class(a.at("m").get<std::string>());
            for (const auto& e : a.at("betas")) ar.betas.push_back(sunit_from(e));
            ar.n0 = a.at("n0").get<std::vector<long>>();
            ar.kernel_doubled = a.at("kernel_doubled").get<bool>();
            ar.inverted_orbits = a.at("inverted_orbits").get<std::vector<int>>();
            ar.normalization = a.at("normalization").get<std::string>();
            for (const auto& c : a.at("checks")) ar.checks.emplace_back(c.at("name").get<std::string>(), c.at("ok").get<bool>());
            return ar;
        });
        get(o, "product_formula_defect", r.product_formula_defect);
        get(o, "regulator_ratio", r.regulator_ratio);
        get(o, "regulator_identity", r.regulator_identity);
        auto gr = [&](const json& j) { return group_ring_from(j, r.labels); };
        get(o, "beta", r.beta, gr);
        get(o, "beta_e", r.beta_e, gr);
        auto zs = [](const json& j) { return mpz_class(j.get<std::string>()); };
        get(o, "d", r.d, zs);
        get(o, "residual", r.residual);
        get(o, "stark_ok", r.stark_ok);
        get(o, "d_divides_2m", r.d_divides_2m);
        get(o, "d_divides_2m2", r.d_divides_2m2);
        get(o, "functionals_equivariant", r.functionals_equivariant);
        get(o, "popescu", r.popescu, [](const json& p) {
            PopescuVerdict v;
            for (const auto& e : p.at("entries")) {
                PopescuEntry x;
                x.index = e.at("index").get<int>();
                x.u = sunit_from(e.at("u"));
                x.gamma = sunit_from(e.at("gamma"));
                x.divisible_by_d = e.at("divisible_by_d").get<bool>();
                x.delta = sunit_from(e.at("delta"));
                x.square_test = e.at("square_test").get<bool>();
                x.abelian_test = opt_bool_from(e.at("abelian_test"));
                v.entries.push_back(std::move(x));
            }
            v.overall = opt_bool_from(p.at("overall"));
            v.failing = p.at("failing").get<std::vector<int>>();
            return v;
        });
        get(o, "class_number", r.class_number, zs);
        get(o, "burns", r.burns, [](const json& b) {
            BurnsVerdict v;
            v.integral = b.at("integral").get<bool>();
            if (!b.at("statement").is_null()) v.statement = b.at("statement").get<int>();
            v.statements = b.at("statements").get<std::vector<bool>>();
            v.monotone = b.at("monotone").get<bool>();
            v.d_divides_2m = b.at("d_divides_2m").get<bool>();
            v.d_divides_2m2 = b.at("d_divides_2m2").get<bool>();
            v.twisted_ok = b.at("twisted_ok").get<bool>();
            v.extra_2m_on_cl_s = b.at("extra_2m_on_cl_s").get<bool>();
            return v;
        });
        r.warnings = o.at("warnings").get<std::vector<std::string>>();
        if (auto it = o.find("timings_ms"); it != o.end()) r.timings_ms = it->get<std::map<std::string, double>>();
        return r;
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaError, std::string("malformed report: ") + e.what());
    }
}

int exit_code(const VerificationReport& r) {
    bool false_verdict = (r.stark_ok && !*r.stark_ok) || (r.popescu && r.popescu->overall && !*r.popescu->overall) ||
                         (r.burns && (!r.burns->integral || !r.burns->statements.at(3)));
    if (false_verdict) return 2;
    for (const auto& s : r.stages)
        if (s.status == StageStatus::Failed) return 3;
    return 0;
}

BatchResult run_batch(const std::string& dir, const PipelineConfig& config, unsigned jobs, const std::string& out_dir) {
    namespace fs = std::filesystem;
    BatchResult out;
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename().string().find(".report.") == std::string::npos)
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    out.entries.resize(files.size());
    if (!out_dir.empty()) fs::create_directories(out_dir);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) {
            BatchEntry& e = out.entries[i];
            e.path = files[i];
            try {
                FieldBundle b = parse_bundle(files[i]);
                e.report = run_pipeline(b, config);
                if (!out_dir.empty())
                    write_file_atomic((fs::path(out_dir) / (fs::path(files[i]).stem().string() + ".report.json")).string(),
                                      report_to_json(*e.report));
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool any_false = false, any_error = false;
    for (const auto& e : out.entries) {
        if (!e.report) {
            any_error = true;
            continue;
        }
        int c = exit_code(*e.report);
        any_false = any_false || c == 2;
        any_error = any_error || c == 3;
    }
    out.exit_code = any_false ? 2 : any_error ? 3 : 0;
    return out;
}

namespace {

std::string type_row(const std::string& t) {
    if (t == "abelian") return "Galois abelian";
    if (t == "non-abelian") return "Galois non-abelian";
    if (t == "non-galois") return "Non Galois";
    return "Unknown";
}

std::string render(const std::string& title, const std::string& corner, const std::vector<std::string>& rows,
                   const std::vector<mpz_class>& cols, const std::map<std::pair<std::string, mpz_class>, long>& counts) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{corner};
    for (const auto& c : cols) head.push_back(c.get_str());
    head.push_back("Total");
    cells.push_back(head);
    std::vector<long> col_tot(cols.size(), 0);
    long grand = 0;
    for (const auto& row : rows) {
        std::vector<std::string> line{row};
        long tot = 0;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            auto it = counts.find({row, cols[i]});
            long n = it == counts.end() ? 0 : it->second;
            line.push_back(std::to_string(n));
            tot += n;
            col_tot[i] += n;
        }
        line.push_back(std::to_string(tot));
        grand += tot;
        cells.push_back(line);
    }
    std::vector<std::string> last{"Total"};
    for (long n : col_tot) last.push_back(std::to_string(n));
    last.push_back(std::to_string(grand));
    cells.push_back(last);

    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    std::ostringstream os;
    os << title << "\n";
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) os << " | ";
            os << (i ? std::string(width[i] - line[i].size(), ' ') + line[i] : line[i] + std::string(width[i] - line[i].size(), ' '));
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace

std::string summarize(const std::vector<VerificationReport>& reports) {
    if (reports.empty()) return "";
    const std::vector<std::string> types{"Galois abelian", "Galois non-abelian", "Non Galois"};
    std::set<mpz_class> hs;
    std::map<std::pair<std::string, mpz_class>, long> table1;
    std::map<std::string, std::map<std::pair<std::string, mpz_class>, long>> by_type;
    bool unknown = false;
    for (const auto& r : reports) {
        auto it = r.metadata.find("galois_type");
        std::string t = type_row(it == r.metadata.end() ? "" : it->second);
        unknown = unknown || t == "Unknown";
        mpz_class h = r.class_number.value_or(mpz_class(0));
        hs.insert(h);
        ++table1[{t, h}];
        std::string st = r.burns && r.burns->statement ? "Statement " + std::to_string(*r.burns->statement) : "None";
        ++by_type[t][{st, h}];
    }
    std::vector<mpz_class> cols(hs.begin(), hs.end());
    std::vector<std::string> rows = types;
    if (unknown) rows.push_back("Unknown");
    std::string out = render("Summary of data (h_K = 0: class group not supplied)", "Types \\ h_K", rows, cols, table1);
    for (const auto& t : rows) {
        if (!by_type.count(t)) continue;
        std::vector<std::string> st{"Statement 1", "Statement 2", "Statement 3", "Statement 4"};
        for (const auto& [k, n] : by_type[t])
            if (k.first == "None" && std::find(st.begin(), st.end(), "None") == st.end()) st.push_back("None");
        out += "\n" + render("Annihilation statements: " + t, "Statements \\ h_K", st, cols, by_type[t]);
    }
    return out;
}

bool discriminant_filter(const mpz_class& disc_k, const mpz_class& conductor_norm, const mpz_class& X, bool inclusive) {
    mpz_class v = disc_k * disc_k * disc_k * conductor_norm * conductor_norm;
    return inclusive ? v <= X : v < X;
}

}  // namespace starkcheck
