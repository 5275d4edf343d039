// starkcheck: verify Stark, Popescu and Burns conjectures on field bundles.

#include "starkcheck/pipeline.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

using namespace starkcheck;

namespace {

std::string sunit_str(const SUnit& u) {
    std::ostringstream os;
    os << (u.sign < 0 ? "-[" : "[");
    for (std::size_t j = 0; j < u.exps.size(); ++j) os << (j ? ", " : "") << u.exps[j];
    os << "]";
    return os.str();
}

std::string group_ring_str(const std::vector<mpq_class>& c, const std::vector<std::string>& labels) {
    std::ostringstream os;
    for (std::size_t s = 0; s < c.size(); ++s) os << (s ? " + " : "") << "(" << c[s] << ")*" << labels[s];
    return os.str();
}

const char* yes_no(const std::optional<bool>& b) { return !b ? "n/a" : *b ? "true" : "false"; }

void print_report(const VerificationReport& r, std::ostream& os) {
    os << r.name << "  precision " << r.precision << (r.escalated ? " (escalated)" : "") << "  r = " << r.rank << "\n";
    for (const auto& s : r.stages) {
        os << "  " << s.name << ": " << stage_status_name(s.status);
        if (!s.message.empty()) os << " (" << s.message << ")";
        os << "\n";
    }
    if (r.artin) {
        os << "  alpha =";
        for (const auto& a : r.artin->alpha) os << " " << a;
        os << "\n  m = " << r.artin->m << "\n";
    }
    if (r.regulator_ratio) os << "  prod R(chi) / (m R_KS) = " << *r.regulator_ratio << "\n";
    if (r.beta) os << "  beta = " << group_ring_str(*r.beta, r.labels) << "\n";
    if (r.beta_e) os << "  beta e' = " << group_ring_str(*r.beta_e, r.labels) << "\n";
    if (r.d) os << "  d = " << *r.d << "  d | w_K m: " << yes_no(r.d_divides_2m) << "  d | w_K m^2: " << yes_no(r.d_divides_2m2) << "\n";
    if (r.popescu)
        for (const auto& e : r.popescu->entries)
            os << "  gamma_" << e.index + 1 << " = " << sunit_str(e.gamma) << "  delta_" << e.index + 1 << " = " << sunit_str(e.delta) << "\n";
    os << "  stark: " << yes_no(r.stark_ok) << "  popescu: " << yes_no(r.popescu ? r.popescu->overall : std::nullopt);
    if (r.burns) {
        os << "  burns statement: " << (r.burns->statement ? std::to_string(*r.burns->statement) : "none")
           << "  twisted: " << (r.burns->twisted_ok ? "true" : "false");
    }
    os << "\n";
    for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
}

void print_validation(const std::exception& e) {
    auto* v = dynamic_cast<const ValidationError*>(&e);
    if (!v) {
        std::cerr << "error: " << e.what() << "\n";
        return;
    }
    std::cerr << "error: invalid bundle\n";
    for (const auto& s : v->issues()) std::cerr << "  " << s << "\n";
}

FieldBundle load_bundle(const std::string& arg) {
    if (arg.rfind("fixture:", 0) == 0) {
        auto t = fixture_text(arg.substr(8));
        if (!t) throw Error(Errc::SchemaError, "unknown fixture " + arg.substr(8));
        return parse_bundle_text(*t, arg);
    }
    return parse_bundle(arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of Stark, Popescu and Burns conjectures for abelian K/k"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    try {
        cfg = PipelineConfig::from_env();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::string max_den;
    bool no_escalate = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision_bits, "Working precision in bits (default 128 or $STARKCHECK_PRECISION)")
            ->check(CLI::Range(32L, 1L << 20));
        sub->add_option("--max-den", max_den, "Largest denominator accepted in recognition (default 4 m^2)");
        sub->add_flag("--no-escalate", no_escalate, "Do not rerun at doubled precision");
    };

    auto* verify = app.add_subcommand("verify", "Run the full pipeline on one bundle (path or fixture:<name>)");
    std::string bundle_path, report_path;
    bool print_json = false;
    verify->add_option("bundle", bundle_path)->required();
    verify->add_option("--report", report_path, "Write the JSON report here");
    verify->add_flag("--json", print_json, "Print the JSON report instead of the summary");
    add_common(verify);

    auto* batch = app.add_subcommand("batch", "Verify every bundle in a directory");
    std::string dir, out_dir;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    batch->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
    batch->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
    batch->add_option("--out", out_dir, "Report directory (default <dir>/reports)");
    add_common(batch);

    auto* fixture = app.add_subcommand("fixture", "Print a built-in bundle");
    std::string fixture_name;
    bool list = false;
    fixture->add_option("name", fixture_name);
    fixture->add_flag("--list", list, "List built-in fixtures");

    auto* summ = app.add_subcommand("summarize", "Tabulate reports by Galois type, h_K and Burns statement");
    std::vector<std::string> reports;
    summ->add_option("reports", reports)->required()->check(CLI::ExistingFile);

    auto* derive = app.add_subcommand("derive-lvalues", "Add L-values implied by an exact beta e' to a bundle");
    std::string derive_in, derive_out;
    std::vector<std::string> beta_terms;
    long derive_bits = 320;
    derive->add_option("bundle", derive_in)->required();
    derive->add_option("--beta", beta_terms, "label=p/q for every group element")->required();
    derive->add_option("--precision", derive_bits, "Bits for the derived values")->check(CLI::Range(64L, 1L << 16));
    derive->add_option("-o,--output", derive_out, "Output bundle (default stdout)");

    CLI11_PARSE(app, argc, argv);
    cfg.escalate = !no_escalate;

    try {
        if (!max_den.empty()) cfg.max_den = mpz_class(max_den);
        if (*verify) {
            FieldBundle b;
            try {
                b = load_bundle(bundle_path);
            } catch (const Error& e) {
                print_validation(e);
                return 3;
            }
            VerificationReport r = run_pipeline(b, cfg);
            if (!report_path.empty()) write_file_atomic(report_path, report_to_json(r));
            if (print_json) std::cout << report_to_json(r);
            else print_report(r, std::cout);
            return exit_code(r);
        }
        if (*batch) {
            if (out_dir.empty()) out_dir = (std::filesystem::path(dir) / "reports").string();
            BatchResult res = run_batch(dir, cfg, jobs, out_dir);
            std::vector<VerificationReport> rs;
            for (const auto& e : res.entries) {
                if (e.report) {
                    std::cout << e.path << ": exit " << exit_code(*e.report) << "\n";
                    rs.push_back(*e.report);
                } else {
                    std::cout << e.path << ": error: " << e.error << "\n";
                }
            }
            std::cout << summarize(rs);
            return res.exit_code;
        }
        if (*fixture) {
            if (list || fixture_name.empty()) {
                for (const auto& n : fixture_names()) std::cout << n << "\n";
                return 0;
            }
            auto t = fixture_text(fixture_name);
            if (!t) {
                std::cerr << "error: unknown fixture " << fixture_name << "\n";
                return 3;
            }
            std::cout << *t;
            return 0;
        }
        if (*summ) {
            std::vector<VerificationReport> rs;
            for (const auto& p : reports) rs.push_back(report_from_json(read_file(p)));
            std::cout << summarize(rs);
            return 0;
        }
        if (*derive) {
            std::string text;
            if (derive_in.rfind("fixture:", 0) == 0) {
                auto t = fixture_text(derive_in.substr(8));
                if (!t) throw Error(Errc::SchemaError, "unknown fixture " + derive_in.substr(8));
                text = *t;
            } else {
                text = read_file(derive_in);
            }
            FieldBundle b = parse_bundle_text(text, derive_in);
            std::vector<mpq_class> beta(b.group->order(), mpq_class(0));
            std::vector<bool> seen(beta.size(), false);
            for (const auto& term : beta_terms) {
                auto eq = term.find('=');
                int s = eq == std::string::npos ? -1 : b.group->index_of_label(term.substr(0, eq));
                if (s < 0) throw Error(Errc::SchemaError, "bad --beta term " + term);
                beta[static_cast<std::size_t>(s)] = parse_rational(term.substr(eq + 1));
                seen[static_cast<std::size_t>(s)] = true;
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw Error(Errc::SchemaError, "--beta must give every group element");
            LValueTable t = derive_bundle_lvalues(b, beta, derive_bits);
            std::string out = bundle_with_lvalues(text, t, *b.group);
            if (derive_out.empty()) std::cout << out;
            else write_file_atomic(derive_out, out);
            return 0;
        }
    } catch (const Error& e) {
        print_validation(e);
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
