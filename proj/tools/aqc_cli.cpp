// Command-line front end for the aqc shared library. Talks to the core only
// through the public C API.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqc/aqc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;      // bad flags, bad config, bad input files
constexpr int kExitConstraint = 2; // TooLarge / RetryExhausted

int exit_code_for(aqc_status status) {
    switch (status) {
        case AQC_OK:
            return kExitOk;
        case AQC_ERROR_TOO_LARGE:
        case AQC_ERROR_RETRY_EXHAUSTED:
            return kExitConstraint;
        default:
            return kExitUsage;
    }
}

int fail(aqc_status status) {
    std::cerr << "error: " << aqc_last_error() << " ["
              << aqc_status_name(status) << "]\n";
    return exit_code_for(status);
}

struct StringDeleter {
    void operator()(char* s) const { aqc_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct CodebookDeleter {
    void operator()(aqc_codebook* cb) const { aqc_codebook_free(cb); }
};
using Codebook = std::unique_ptr<aqc_codebook, CodebookDeleter>;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return bool(out);
}

int run_gen_codebook(int n_pairs, std::uint64_t seed,
                     const std::string& strategy, const std::string& out_path) {
    aqc_codebook* raw = nullptr;
    if (auto s = aqc_codebook_generate(n_pairs, seed, strategy.c_str(), &raw)) {
        return fail(s);
    }
    Codebook cb(raw);

    char* json = nullptr;
    if (auto s = aqc_codebook_to_json(cb.get(), &json)) return fail(s);
    ApiString json_guard(json);
    if (!write_file(out_path, json)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitUsage;
    }

    for (int bit : {0, 1}) {
        char* line = nullptr;
        if (auto s = aqc_codebook_letter_sequence(cb.get(), bit, &line)) {
            return fail(s);
        }
        ApiString line_guard(line);
        std::cout << line << "\n";
    }
    return kExitOk;
}

int run_transmit(const std::string& codebook_path, int bit,
                 const std::string& channel, std::uint64_t seed) {
    std::string doc;
    if (!read_file(codebook_path, doc)) {
        std::cerr << "error: cannot read '" << codebook_path << "'\n";
        return kExitUsage;
    }
    aqc_codebook* raw = nullptr;
    if (auto s = aqc_codebook_from_json(doc.c_str(), &raw)) return fail(s);
    Codebook cb(raw);

    char* transcript = nullptr;
    if (auto s = aqc_transmit(cb.get(), bit, channel.c_str(), seed,
                              &transcript)) {
        return fail(s);
    }
    ApiString guard(transcript);
    std::cout << transcript << "\n";
    return kExitOk;
}

int run_experiment(const std::string& config_path, const std::string& out_path,
                   const std::string& format) {
    std::string config;
    if (!read_file(config_path, config)) {
        std::cerr << "error: cannot read '" << config_path << "'\n";
        return kExitUsage;
    }
    char* report = nullptr;
    if (auto s = aqc_experiment_run(
            config.c_str(), format.empty() ? nullptr : format.c_str(),
            &report)) {
        return fail(s);
    }
    ApiString guard(report);

    // --out wins; then the config's "output"; otherwise stdout. The library
    // already validated the config, so parse tolerantly here.
    std::string target = out_path;
    if (target.empty()) {
        const auto doc = nlohmann::json::parse(config, nullptr, false);
        if (doc.is_object() && doc.contains("output") &&
            doc["output"].is_string()) {
            target = doc["output"].get<std::string>();
        }
    }
    if (target.empty()) {
        std::cout << report;
        return kExitOk;
    }
    if (!write_file(target, report)) {
        std::cerr << "error: cannot write '" << target << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_report_check(const std::string& csv_path) {
    std::string csv;
    if (!read_file(csv_path, csv)) {
        std::cerr << "error: cannot read '" << csv_path << "'\n";
        return kExitUsage;
    }
    if (auto s = aqc_report_check_csv(csv.c_str())) return fail(s);
    std::cout << "report OK\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-arrangement coding simulator"};
    app.set_version_flag("--version", aqc_version());
    app.require_subcommand(1);

    // gen-codebook
    auto* gen = app.add_subcommand(
        "gen-codebook", "Generate a codebook file and print letter sequences");
    int pairs = 0;
    std::uint64_t gen_seed = 0;
    std::string strategy = "cyclic";
    std::string gen_out = "codebook.json";
    gen->add_option("--pairs", pairs, "Number of EPR pairs N (>= 2)")
        ->required();
    gen->add_option("--seed", gen_seed, "RNG seed (required, never implicit)")
        ->required();
    gen->add_option("--strategy", strategy, "cyclic | rejection")
        ->capture_default_str();
    gen->add_option("--out", gen_out, "Codebook JSON output path")
        ->capture_default_str();

    // transmit
    auto* transmit = app.add_subcommand(
        "transmit", "Run one transmission and print the transcript");
    std::string cb_path;
    int bit = 0;
    std::string channel = "noiseless";
    std::uint64_t tx_seed = 0;
    transmit->add_option("--codebook", cb_path, "Codebook JSON file")
        ->required();
    transmit->add_option("--bit", bit, "Bit to send (0 or 1)")->required();
    transmit->add_option("--channel", channel,
                         "noiseless | flip:p | intercept:theta")
        ->capture_default_str();
    transmit->add_option("--seed", tx_seed, "RNG seed")->required();

    // experiment
    auto* experiment = app.add_subcommand(
        "experiment", "Run a sweep from a JSON config and emit a report");
    std::string config_path;
    std::string exp_out;
    std::string exp_format;
    experiment->add_option("config", config_path, "Experiment config JSON")
        ->required();
    experiment->add_option("--out", exp_out,
                           "Report path (overrides the config's output)");
    experiment->add_option("--format", exp_format,
                           "csv | json (overrides the config's format)");

    // report
    auto* report = app.add_subcommand("report", "Inspect report files");
    std::string check_path;
    report->add_option("--check", check_path,
                       "Revalidate a CSV report's closed-form column")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (gen->parsed()) {
        return run_gen_codebook(pairs, gen_seed, strategy, gen_out);
    }
    if (transmit->parsed()) {
        return run_transmit(cb_path, bit, channel, tx_seed);
    }
    if (experiment->parsed()) {
        return run_experiment(config_path, exp_out, exp_format);
    }
    if (report->parsed()) {
        return run_report_check(check_path);
    }
    return kExitUsage;
}
