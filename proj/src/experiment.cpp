#include "experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "textutil.hpp"

namespace aqc {

ReportKind report_kind_from_string(const std::string& name) {
    if (name == "error_rate") return ReportKind::ErrorRate;
    if (name == "info") return ReportKind::Info;
    if (name == "disturbance") return ReportKind::Disturbance;
    throw Error(ErrorCode::Config,
                "unknown report kind '" + name +
                    "' (expected error_rate | info | disturbance)");
}

std::string report_kind_name(ReportKind kind) {
    switch (kind) {
        case ReportKind::ErrorRate:   return "error_rate";
        case ReportKind::Info:        return "info";
        case ReportKind::Disturbance: return "disturbance";
    }
    return "?";
}

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& value, const char* field) {
    std::vector<std::string> out;
    if (value.is_string()) {
        out.push_back(value.get<std::string>());
    } else if (value.is_array()) {
        for (const auto& item : value) {
            if (!item.is_string()) {
                throw Error(ErrorCode::Config,
                            std::string("field '") + field +
                                "' must hold strings");
            }
            out.push_back(item.get<std::string>());
        }
    } else {
        throw Error(ErrorCode::Config,
                    std::string("field '") + field +
                        "' must be a string or list of strings");
    }
    if (out.empty()) {
        throw Error(ErrorCode::Config,
                    std::string("field '") + field + "' is empty");
    }
    return out;
}

std::vector<int> int_list(const json& value, const char* field) {
    std::vector<int> out;
    if (value.is_number_integer()) {
        out.push_back(value.get<int>());
    } else if (value.is_array()) {
        for (const auto& item : value) {
            if (!item.is_number_integer()) {
                throw Error(ErrorCode::Config,
                            std::string("field '") + field +
                                "' must hold integers");
            }
            out.push_back(item.get<int>());
        }
    } else {
        throw Error(ErrorCode::Config,
                    std::string("field '") + field +
                        "' must be an integer or list of integers");
    }
    if (out.empty()) {
        throw Error(ErrorCode::Config,
                    std::string("field '") + field + "' is empty");
    }
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Config,
                    std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::Config, "config must be a JSON object");
    }

    ExperimentConfig config;
    if (doc.contains("report")) {
        config.report = report_kind_from_string(doc["report"].get<std::string>());
    }

    const bool has_n_pairs = doc.contains("n_pairs");
    const bool has_file = doc.contains("codebook_file");
    if (has_n_pairs == has_file) {
        throw Error(ErrorCode::Config,
                    "config needs exactly one of 'n_pairs' or 'codebook_file'");
    }
    if (has_n_pairs) config.n_pairs = int_list(doc["n_pairs"], "n_pairs");
    if (has_file) config.codebook_file = doc["codebook_file"].get<std::string>();

    if (doc.contains("codebook_strategy")) {
        const auto name = doc["codebook_strategy"].get<std::string>();
        if (name == "cyclic") {
            config.strategy = GenerateStrategy::Cyclic;
        } else if (name == "rejection" || name == "rejection-uniform") {
            config.strategy = GenerateStrategy::RejectionUniform;
        } else {
            throw Error(ErrorCode::Config,
                        "field 'codebook_strategy' must be cyclic | rejection, "
                        "got '" + name + "'");
        }
    }

    if (!doc.contains("channel")) {
        throw Error(ErrorCode::Config, "config missing field 'channel'");
    }
    config.channels = string_list(doc["channel"], "channel");
    for (const auto& spec : config.channels) {
        ChannelModel::parse(spec);  // fail fast with the field in hand
    }

    if (config.report != ReportKind::Disturbance) {
        if (!doc.contains("decoder")) {
            throw Error(ErrorCode::Config, "config missing field 'decoder'");
        }
        config.decoders = string_list(doc["decoder"], "decoder");
        for (const auto& name : config.decoders) decoder_from_string(name);
    }

    if (!doc.contains("trials")) {
        throw Error(ErrorCode::Config, "config missing field 'trials'");
    }
    config.trials = doc["trials"].get<std::int64_t>();
    if (config.trials < 1) {
        throw Error(ErrorCode::Config, "field 'trials' must be >= 1");
    }

    if (!doc.contains("seed")) {
        throw Error(ErrorCode::Config,
                    "config missing field 'seed' (seeds are never defaulted)");
    }
    config.seed = doc["seed"].get<std::uint64_t>();

    if (doc.contains("output")) config.output = doc["output"].get<std::string>();
    if (doc.contains("format")) {
        config.format = doc["format"].get<std::string>();
        if (config.format != "csv" && config.format != "json") {
            throw Error(ErrorCode::Config,
                        "field 'format' must be csv | json");
        }
    }
    return config;
}

std::string format_cycles(const CycleDecomposition& cycles) {
    std::string out;
    for (std::size_t i = 0; i < cycles.half_lengths.size(); ++i) {
        if (i > 0) out.push_back('+');
        out += std::to_string(cycles.half_lengths[i]);
    }
    return out;
}

namespace {

CodeBook load_codebook_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open codebook file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return codebook_from_json(buffer.str());
}

// Codebook seeds depend on the sweep slot, not on the channel/decoder axes,
// so every row at a given n_pairs sees the same codebook.
constexpr std::uint64_t kCodebookStream = 0xC0DEB00C;

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentConfig& config) {
    std::vector<CodeBook> codebooks;
    if (!config.codebook_file.empty()) {
        codebooks.push_back(load_codebook_file(config.codebook_file));
    } else {
        for (std::size_t i = 0; i < config.n_pairs.size(); ++i) {
            Rng rng(derive_seed(config.seed, kCodebookStream + i));
            codebooks.push_back(
                CodeBook::generate(config.n_pairs[i], rng, config.strategy));
        }
    }

    const std::vector<std::string> decoders =
        config.report == ReportKind::Disturbance ? std::vector<std::string>{"-"}
                                                 : config.decoders;

    std::vector<ReportRow> rows;
    std::uint64_t row_index = 0;
    for (const auto& cb : codebooks) {
        for (const auto& channel_spec : config.channels) {
            const ChannelModel channel = ChannelModel::parse(channel_spec);
            for (const auto& decoder_spec : decoders) {
                const std::uint64_t row_seed =
                    derive_seed(config.seed, row_index++);
                ReportRow row;
                row.n_pairs = cb.n_pairs();
                row.cycles = format_cycles(cb.cycles());
                row.channel = channel.to_string();
                row.decoder = decoder_spec;
                row.trials = config.trials;
                row.seed = row_seed;

                switch (config.report) {
                    case ReportKind::ErrorRate: {
                        const auto report = estimate_error_rate(
                            cb, channel, decoder_from_string(decoder_spec),
                            config.trials, row_seed);
                        row.mc = report.mc_estimate;
                        row.ci = report.mc_ci_halfwidth;
                        if (report.has_exact) {
                            row.exact = report.exact_prob;
                            row.closed_form = report.closed_form_prob;
                        }
                        break;
                    }
                    case ReportKind::Info: {
                        const auto report = info_report(
                            cb, channel, decoder_from_string(decoder_spec),
                            config.trials, row_seed);
                        row.mc = report.mutual_information_bits;
                        if (report.has_exact) {
                            row.exact = report.exact_mutual_information_bits;
                            row.closed_form =
                                false_matching_anticorr_prob(cb.cycles());
                        }
                        break;
                    }
                    case ReportKind::Disturbance: {
                        const auto report = disturbance_report(
                            cb, channel, config.trials, row_seed);
                        row.mc = report.mc_epr_rate;
                        row.ci = report.mc_ci_halfwidth;
                        row.exact = report.exact_epr_prob;
                        row.closed_form = report.exact_epr_prob;
                        break;
                    }
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

const char* const kReportCsvHeader =
    "n_pairs,cycles,channel,decoder,trials,exact,closed_form,mc,ci,seed";

namespace {

std::string opt_to_string(const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : std::string();
}

}  // namespace

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = kReportCsvHeader;
    out.push_back('\n');
    for (const auto& row : rows) {
        out += std::to_string(row.n_pairs);
        out += ',' + row.cycles;
        out += ',' + row.channel;
        out += ',' + row.decoder;
        out += ',' + std::to_string(row.trials);
        out += ',' + opt_to_string(row.exact);
        out += ',' + opt_to_string(row.closed_form);
        out += ',' + format_double(row.mc);
        out += ',' + opt_to_string(row.ci);
        out += ',' + std::to_string(row.seed);
        out.push_back('\n');
    }
    return out;
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj;
        obj["n_pairs"] = row.n_pairs;
        obj["cycles"] = row.cycles;
        obj["channel"] = row.channel;
        obj["decoder"] = row.decoder;
        obj["trials"] = row.trials;
        obj["exact"] =
            row.exact ? nlohmann::ordered_json(*row.exact) : nullptr;
        obj["closed_form"] =
            row.closed_form ? nlohmann::ordered_json(*row.closed_form)
                            : nullptr;
        obj["mc"] = row.mc;
        obj["ci"] = row.ci ? nlohmann::ordered_json(*row.ci) : nullptr;
        obj["seed"] = row.seed;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

CycleDecomposition parse_cycles(const std::string& text, int line_no) {
    CycleDecomposition cycles;
    for (const auto& token : split(text, '+')) {
        try {
            cycles.half_lengths.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw Error(ErrorCode::Config,
                        "line " + std::to_string(line_no) +
                            ": bad cycles entry '" + text + "'");
        }
    }
    return cycles;
}

}  // namespace

void check_report_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line != kReportCsvHeader) {
        throw Error(ErrorCode::Config,
                    "line 1: header mismatch, expected '" +
                        std::string(kReportCsvHeader) + "'");
    }
    int line_no = 1;
    int checked = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 10) {
            throw Error(ErrorCode::Config,
                        "line " + std::to_string(line_no) + ": expected 10 "
                        "fields, got " + std::to_string(fields.size()));
        }
        const std::string& n_pairs_text = fields[0];
        const std::string& cycles_text = fields[1];
        const std::string& channel_text = fields[2];
        const std::string& decoder_text = fields[3];
        const std::string& closed_form_text = fields[6];

        const auto cycles = parse_cycles(cycles_text, line_no);
        int cycle_sum = 0;
        for (int k : cycles.half_lengths) cycle_sum += k;
        if (cycle_sum != std::stoi(n_pairs_text)) {
            throw Error(ErrorCode::Config,
                        "line " + std::to_string(line_no) +
                            ": cycles '" + cycles_text +
                            "' do not sum to n_pairs " + n_pairs_text);
        }
        if (closed_form_text.empty()) continue;

        const double recorded =
            parse_double(closed_form_text, "closed_form column");
        const double recomputed =
            decoder_text == "-"
                ? true_pair_epr_probability(ChannelModel::parse(channel_text))
                : false_matching_anticorr_prob(cycles);
        if (std::abs(recorded - recomputed) > 1e-12) {
            throw Error(ErrorCode::Config,
                        "line " + std::to_string(line_no) +
                            ": closed_form " + closed_form_text +
                            " disagrees with recomputed " +
                            format_double(recomputed));
        }
        ++checked;
    }
    if (checked == 0 && line_no == 1) {
        throw Error(ErrorCode::Config, "report has no data rows");
    }
}

}  // namespace aqc
