#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "codebook.hpp"
#include "protocol.hpp"
#include "quantum.hpp"

namespace aqc {

enum class DecoderKind { Statistical, Conclusive };

DecoderKind decoder_from_string(const std::string& name);
std::string decoder_name(DecoderKind kind);

inline constexpr int kMaxEnumerationPairs = 12;  // 2^N outcome patterns

// Brute-force oracle: visits every noiseless outcome pattern of the
// transmitted matching (one per assignment of per-pair orientations), each
// with probability 2^(-N). Exact statistics are built by weighting decoder
// runs over this support.
void enumerate_noiseless(const Matching& true_matching,
                         const std::function<void(const OutcomeVector&)>& visit);

// Closed form prod_c 2^(1 - k_c): the noiseless probability that every pair
// of the non-transmitted matching shows EPR data. Equals the statistical
// decoder's Ambiguous probability and the conclusive decoder's Inconclusive
// probability.
double false_matching_anticorr_prob(const CycleDecomposition& cycles);

// Exact noiseless failure probability of a decoder (wrong bit, Ambiguous or
// Inconclusive), averaged over a uniform source bit, by full enumeration.
double exact_failure_probability(const CodeBook& cb, DecoderKind decoder,
                                 Bit initial_guess = kDefaultInitialGuess);

struct PairsExaminedStats {
    double expected_unconditional = 0.0;  // Inconclusive runs examine all 2N
    double expected_given_decision = 0.0;
    double decision_probability = 0.0;
};

// Exact expectation of decode_conclusive's pairs_examined under noiseless
// enumeration for one transmitted bit, and averaged over a uniform bit.
PairsExaminedStats expected_pairs_examined_for_bit(const CodeBook& cb, Bit bit,
                                                   Bit initial_guess);
PairsExaminedStats expected_pairs_examined(
    const CodeBook& cb, Bit initial_guess = kDefaultInitialGuess);

// --- confidence intervals ----------------------------------------------------

// 95% half-width by normal approximation; falls back to an exact
// Clopper-Pearson interval when fewer than 10 failures were seen.
double binomial_ci_halfwidth(std::int64_t successes, std::int64_t trials);

// Exact binomial (Clopper-Pearson) 95% bounds, via bisection on the tail.
std::pair<double, double> clopper_pearson(std::int64_t successes,
                                          std::int64_t trials);

// --- entropy / information ----------------------------------------------------

// Plug-in (maximum-likelihood) entropy in bits of an empirical distribution.
double plugin_entropy_bits(const std::vector<std::int64_t>& counts);

// Plug-in mutual information in bits of an empirical joint distribution,
// counts indexed [row][col].
double plugin_mutual_information_bits(
    const std::vector<std::vector<std::int64_t>>& joint);

// --- Monte Carlo reports --------------------------------------------------------

struct ErrorReport {
    int n_pairs = 0;
    CycleDecomposition cycles;
    std::string channel;
    DecoderKind decoder = DecoderKind::Statistical;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double mc_estimate = 0.0;
    double mc_ci_halfwidth = 0.0;
    std::int64_t wrong_bit_failures = 0;
    std::int64_t undecided_failures = 0;  // Ambiguous / Inconclusive
    // Filled when the channel is noiseless and N <= 12.
    bool has_exact = false;
    double exact_prob = 0.0;
    double closed_form_prob = 0.0;
};

// Uniform random bit per trial; failure = wrong bit, Ambiguous or
// Inconclusive. Per-trial seeds derive from (seed, trial index), so the
// estimate is independent of any internal scheduling.
ErrorReport estimate_error_rate(const CodeBook& cb, const ChannelModel& channel,
                                DecoderKind decoder, std::int64_t trials,
                                std::uint64_t seed,
                                Bit initial_guess = kDefaultInitialGuess);

struct InfoReport {
    std::int64_t sample_count = 0;
    double source_entropy_bits = 0.0;
    double mutual_information_bits = 0.0;
    // Analytic MI of the exact noiseless channel, when computable (N <= 12).
    bool has_exact = false;
    double exact_mutual_information_bits = 0.0;
};

// Empirical entropy of the uniform bit source and plug-in MI between the
// sent bit and the decoder decision (failures kept as a third symbol).
InfoReport info_report(const CodeBook& cb, const ChannelModel& channel,
                       DecoderKind decoder, std::int64_t trials,
                       std::uint64_t seed,
                       Bit initial_guess = kDefaultInitialGuess);

struct DisturbanceReport {
    std::int64_t pairs_sampled = 0;
    double mc_epr_rate = 0.0;      // fraction of true pairs showing EPR data
    double mc_ci_halfwidth = 0.0;
    double exact_epr_prob = 0.0;   // oracle / closed-form value
};

// Fraction of true pairs still showing EPR data under `channel`, against the
// exact value (two-qubit oracle for intercept-resend, closed form otherwise).
DisturbanceReport disturbance_report(const CodeBook& cb,
                                     const ChannelModel& channel,
                                     std::int64_t trials, std::uint64_t seed);

// Exact per-pair EPR-data probability under a channel.
double true_pair_epr_probability(const ChannelModel& channel);

}  // namespace aqc
