#pragma once

#include "starkcheck/bundle.hpp"
#include "starkcheck/popescu.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace starkcheck {

inline constexpr const char* kReportSchema = "stark-report/1";

struct PipelineConfig {
    long precision_bits = 128;
    bool escalate = true;       // one rerun at doubled precision on a tolerance failure
    mpz_class max_den = 0;      // 0: 4 m^2

    // precision_bits from STARKCHECK_PRECISION when set.
    static PipelineConfig from_env();
};

enum class StageStatus { Ok, Failed, Skipped };

const char* stage_status_name(StageStatus s);

struct StageResult {
    std::string name;
    StageStatus status = StageStatus::Skipped;
    std::string message;
    bool operator==(const StageResult&) const = default;
};

struct ArtinReport {
    std::vector<SUnit> eps;
    std::vector<mpz_class> alpha;
    mpz_class m;
    std::vector<SUnit> betas;
    std::vector<long> n0;
    bool kernel_doubled = false;
    std::vector<int> inverted_orbits;
    std::string normalization;
    std::vector<std::pair<std::string, bool>> checks;
    bool operator==(const ArtinReport&) const = default;
};

struct VerificationReport {
    std::string name;
    std::map<std::string, std::string> metadata;
    std::vector<std::string> labels;  // group elements, canonical order
    int rank = 0;
    long precision = 0;
    bool escalated = false;
    std::vector<std::string> distinguished;
    std::vector<StageResult> stages;

    std::optional<ArtinReport> artin;
    std::optional<std::string> product_formula_defect;
    std::optional<std::string> regulator_ratio;  // prod R(chi) / (m R_{K,S}), should be +-1
    std::optional<bool> regulator_identity;

    std::optional<std::vector<mpq_class>> beta;    // all characters, when every L-value is given
    std::optional<std::vector<mpq_class>> beta_e;  // beta e'
    std::optional<mpz_class> d;
    std::optional<std::string> residual;
    std::optional<bool> stark_ok;
    std::optional<bool> d_divides_2m;
    std::optional<bool> d_divides_2m2;

    std::optional<bool> functionals_equivariant;
    std::optional<PopescuVerdict> popescu;
    std::optional<mpz_class> class_number;
    std::optional<BurnsVerdict> burns;

    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms;

    const StageResult* stage(const std::string& name) const;
    bool operator==(const VerificationReport&) const = default;
};

VerificationReport run_pipeline(const FieldBundle& b, const PipelineConfig& config = {});

// L-values L*(chi) = A(chi) R(chi) for the e' characters, from an exact beta given in canonical
// group order. Used to bootstrap fixtures whose L-values are not published.
LValueTable derive_bundle_lvalues(const FieldBundle& b, const std::vector<mpq_class>& beta, long bits);

std::string report_to_json(const VerificationReport& r, bool with_timings = true);
VerificationReport report_from_json(const std::string& text);

// 0 all verdicts true, 2 some conjecture verdict false, 3 input or stage error.
int exit_code(const VerificationReport& r);

struct BatchEntry {
    std::string path;
    std::optional<VerificationReport> report;
    std::string error;  // parse or validation failure
};

struct BatchResult {
    std::vector<BatchEntry> entries;  // sorted by path
    int exit_code = 0;
};

// Every *.json in `dir`, in parallel. Reports go to out_dir/<stem>.report.json when out_dir is non-empty.
BatchResult run_batch(const std::string& dir, const PipelineConfig& config, unsigned jobs, const std::string& out_dir = "");

// The Tables 1-4 layout: Galois type x h_K counts, then lowest Burns statement x h_K per type.
std::string summarize(const std::vector<VerificationReport>& reports);

// Delta_k^3 N(f)^2 <= X (or < X when not inclusive).
bool discriminant_filter(const mpz_class& disc_k, const mpz_class& conductor_norm, const mpz_class& X, bool inclusive = true);

}  // namespace starkcheck
