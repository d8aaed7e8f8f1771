#include "aqc/aqc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "analysis.hpp"
#include "codebook.hpp"
#include "experiment.hpp"
#include "protocol.hpp"
#include "quantum.hpp"

struct aqc_codebook {
    aqc::CodeBook impl;
};

namespace {

thread_local std::string g_last_error;

aqc_status status_from(aqc::ErrorCode code) {
    using aqc::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return AQC_ERROR_INVALID_ARGUMENT;
        case ErrorCode::EmptyInput:      return AQC_ERROR_EMPTY_INPUT;
        case ErrorCode::OddLength:       return AQC_ERROR_ODD_LENGTH;
        case ErrorCode::LabelCount:      return AQC_ERROR_LABEL_COUNT;
        case ErrorCode::SizeMismatch:    return AQC_ERROR_SIZE_MISMATCH;
        case ErrorCode::Overlap:         return AQC_ERROR_OVERLAP;
        case ErrorCode::TooSmall:        return AQC_ERROR_TOO_SMALL;
        case ErrorCode::TooLarge:        return AQC_ERROR_TOO_LARGE;
        case ErrorCode::RetryExhausted:  return AQC_ERROR_RETRY_EXHAUSTED;
        case ErrorCode::LengthMismatch:  return AQC_ERROR_LENGTH_MISMATCH;
        case ErrorCode::Config:          return AQC_ERROR_CONFIG;
        case ErrorCode::Io:              return AQC_ERROR_IO;
    }
    return AQC_ERROR_INTERNAL;
}

// Runs the body, translating exceptions into status codes + message.
template <typename Fn>
aqc_status guarded(Fn&& body) {
    try {
        body();
        g_last_error.clear();
        return AQC_OK;
    } catch (const aqc::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return AQC_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AQC_ERROR_INTERNAL;
    }
}

aqc_status require(bool condition, const char* message) {
    if (condition) return AQC_OK;
    g_last_error = message;
    return AQC_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

aqc::GenerateStrategy strategy_from(const char* name) {
    const std::string s = name;
    if (s == "cyclic") return aqc::GenerateStrategy::Cyclic;
    if (s == "rejection" || s == "rejection-uniform") {
        return aqc::GenerateStrategy::RejectionUniform;
    }
    throw aqc::Error(aqc::ErrorCode::InvalidArgument,
                     "unknown strategy '" + s +
                         "' (expected cyclic | rejection)");
}

}  // namespace

extern "C" {

const char* aqc_version(void) { return "1.0.0"; }

const char* aqc_status_name(aqc_status status) {
    switch (status) {
        case AQC_OK:                     return "ok";
        case AQC_ERROR_INVALID_ARGUMENT: return "invalid_argument";
        case AQC_ERROR_EMPTY_INPUT:      return "empty_input";
        case AQC_ERROR_ODD_LENGTH:       return "odd_length";
        case AQC_ERROR_LABEL_COUNT:      return "label_count";
        case AQC_ERROR_SIZE_MISMATCH:    return "size_mismatch";
        case AQC_ERROR_OVERLAP:          return "overlap";
        case AQC_ERROR_TOO_SMALL:        return "too_small";
        case AQC_ERROR_TOO_LARGE:        return "too_large";
        case AQC_ERROR_RETRY_EXHAUSTED:  return "retry_exhausted";
        case AQC_ERROR_LENGTH_MISMATCH:  return "length_mismatch";
        case AQC_ERROR_CONFIG:           return "config_error";
        case AQC_ERROR_IO:               return "io_error";
        case AQC_ERROR_INTERNAL:         return "internal_error";
    }
    return "unknown";
}

const char* aqc_last_error(void) { return g_last_error.c_str(); }

void aqc_string_free(char* text) { std::free(text); }

void aqc_codebook_free(aqc_codebook* cb) { delete cb; }

aqc_status aqc_codebook_generate(int n_pairs, uint64_t seed,
                                 const char* strategy, aqc_codebook** out) {
    if (auto s = require(strategy && out, "null argument")) return s;
    return guarded([&] {
        aqc::Rng rng(seed);
        *out = new aqc_codebook{
            aqc::CodeBook::generate(n_pairs, rng, strategy_from(strategy))};
    });
}

aqc_status aqc_codebook_from_sequences(const char* s0_text,
                                       const char* s1_text,
                                       aqc_codebook** out) {
    if (auto s = require(s0_text && s1_text && out, "null argument")) return s;
    return guarded([&] {
        *out = new aqc_codebook{
            aqc::CodeBook::validate(aqc::parse_letter_sequence(s0_text),
                                    aqc::parse_letter_sequence(s1_text))};
    });
}

aqc_status aqc_codebook_from_json(const char* text, aqc_codebook** out) {
    if (auto s = require(text && out, "null argument")) return s;
    return guarded([&] {
        *out = new aqc_codebook{aqc::codebook_from_json(text)};
    });
}

aqc_status aqc_codebook_to_json(const aqc_codebook* cb, char** out) {
    if (auto s = require(cb && out, "null argument")) return s;
    return guarded([&] { *out = copy_string(aqc::codebook_to_json(cb->impl)); });
}

aqc_status aqc_codebook_letter_sequence(const aqc_codebook* cb, int bit,
                                        char** out) {
    if (auto s = require(cb && out, "null argument")) return s;
    if (auto s = require(bit == 0 || bit == 1, "bit must be 0 or 1")) return s;
    return guarded([&] {
        *out = copy_string(
            aqc::format_letter_sequence(cb->impl.matching(bit)));
    });
}

int aqc_codebook_n_pairs(const aqc_codebook* cb) {
    return cb == nullptr ? -1 : cb->impl.n_pairs();
}

aqc_status aqc_codebook_cycles(const aqc_codebook* cb, int* out, int capacity,
                               int* count) {
    if (auto s = require(cb && count && (out != nullptr || capacity == 0),
                         "null argument")) {
        return s;
    }
    return guarded([&] {
        const auto& halves = cb->impl.cycles().half_lengths;
        *count = static_cast<int>(halves.size());
        for (int i = 0; i < capacity && i < *count; ++i) out[i] = halves[i];
    });
}

aqc_status aqc_transmit(const aqc_codebook* cb, int bit, const char* channel,
                        uint64_t seed, char** transcript_json) {
    if (auto s = require(cb && channel && transcript_json, "null argument")) {
        return s;
    }
    return guarded([&] {
        const auto transcript = aqc::run_transmission(
            cb->impl, bit, aqc::ChannelModel::parse(channel), seed);
        *transcript_json = copy_string(aqc::transcript_to_json(transcript));
    });
}

aqc_status aqc_experiment_run(const char* config_json,
                              const char* format_override,
                              char** report_text) {
    if (auto s = require(config_json && report_text, "null argument")) return s;
    return guarded([&] {
        auto config = aqc::ExperimentConfig::from_json(config_json);
        if (format_override != nullptr) {
            const std::string format = format_override;
            if (format != "csv" && format != "json") {
                throw aqc::Error(aqc::ErrorCode::Config,
                                 "format override must be csv | json");
            }
            config.format = format;
        }
        const auto rows = aqc::run_experiment(config);
        *report_text = copy_string(config.format == "json"
                                       ? aqc::rows_to_json(rows)
                                       : aqc::rows_to_csv(rows));
    });
}

aqc_status aqc_report_check_csv(const char* csv_text) {
    if (auto s = require(csv_text != nullptr, "null argument")) return s;
    return guarded([&] { aqc::check_report_csv(csv_text); });
}

}  // extern "C"
