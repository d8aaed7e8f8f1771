#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "codebook.hpp"

namespace aqc {

enum class ReportKind { ErrorRate, Info, Disturbance };

ReportKind report_kind_from_string(const std::string& name);
std::string report_kind_name(ReportKind kind);

// A reproducible sweep: one row per (n_pairs, channel, decoder) combination.
// Seeds are mandatory; nothing defaults from the clock.
struct ExperimentConfig {
    ReportKind report = ReportKind::ErrorRate;
    std::vector<int> n_pairs;                // used unless codebook_file set
    GenerateStrategy strategy = GenerateStrategy::Cyclic;
    std::string codebook_file;               // explicit codebook instead
    std::vector<std::string> channels;
    std::vector<std::string> decoders;       // ignored for disturbance
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string output;                      // optional output path
    std::string format = "csv";              // csv | json

    static ExperimentConfig from_json(const std::string& text);
};

// One CSV/JSON record. Column order is fixed:
//   n_pairs, cycles, channel, decoder, trials, exact, closed_form, mc, ci, seed
// Field semantics per report kind:
//   error_rate:  mc = failure rate, exact = enumerated failure probability,
//                closed_form = prod 2^(1-k_c)           (noiseless, N <= 12)
//   info:        mc = plug-in MI (bits), exact = enumerated-channel MI,
//                closed_form = prod 2^(1-k_c)           (noiseless, N <= 12)
//   disturbance: mc = per-pair EPR-data rate, decoder = "-",
//                exact = closed_form = channel's exact EPR probability
struct ReportRow {
    int n_pairs = 0;
    std::string cycles;   // half-lengths joined with '+', e.g. "4+2"
    std::string channel;
    std::string decoder;
    std::int64_t trials = 0;
    std::optional<double> exact;
    std::optional<double> closed_form;
    double mc = 0.0;
    std::optional<double> ci;
    std::uint64_t seed = 0;
};

std::string format_cycles(const CycleDecomposition& cycles);

std::vector<ReportRow> run_experiment(const ExperimentConfig& config);

extern const char* const kReportCsvHeader;
std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string rows_to_json(const std::vector<ReportRow>& rows);

// Re-reads a CSV report and revalidates its closed_form column against
// recomputation (from the cycles column, or from the channel for disturbance
// rows). Throws Error(Config) naming the first offending row.
void check_report_csv(const std::string& csv_text);

}  // namespace aqc
