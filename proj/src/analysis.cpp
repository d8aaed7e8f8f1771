#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace aqc {

DecoderKind decoder_from_string(const std::string& name) {
    if (name == "statistical") return DecoderKind::Statistical;
    if (name == "conclusive") return DecoderKind::Conclusive;
    throw Error(ErrorCode::InvalidArgument,
                "unknown decoder '" + name +
                    "' (expected statistical | conclusive)");
}

std::string decoder_name(DecoderKind kind) {
    return kind == DecoderKind::Statistical ? "statistical" : "conclusive";
}

void enumerate_noiseless(
    const Matching& true_matching,
    const std::function<void(const OutcomeVector&)>& visit) {
    const int n = true_matching.n_pairs();
    if (n > kMaxEnumerationPairs) {
        throw Error(ErrorCode::TooLarge,
                    "enumeration limited to " +
                        std::to_string(kMaxEnumerationPairs) +
                        " pairs, got " + std::to_string(n));
    }
    const std::uint64_t patterns = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        std::vector<Spin> spins(true_matching.n_positions(), Spin::Up);
        for (int i = 0; i < n; ++i) {
            const Pair& p = true_matching.pairs()[i];
            const bool up_at_lo = ((mask >> i) & 1) == 0;
            spins[p.lo - 1] = up_at_lo ? Spin::Up : Spin::Down;
            spins[p.hi - 1] = up_at_lo ? Spin::Down : Spin::Up;
        }
        visit(OutcomeVector(std::move(spins)));
    }
}

double false_matching_anticorr_prob(const CycleDecomposition& cycles) {
    int exponent = 0;
    for (int k : cycles.half_lengths) {
        if (k < 2) {
            throw Error(ErrorCode::InvalidArgument,
                        "cycle half-lengths must be >= 2");
        }
        exponent += 1 - k;
    }
    // Dyadic, so ldexp is exact.
    return std::ldexp(1.0, exponent);
}

namespace {

DecodeResult run_decoder(const OutcomeVector& outcomes, const CodeBook& cb,
                         DecoderKind decoder, Bit initial_guess) {
    if (decoder == DecoderKind::Statistical) {
        return decode_statistical(outcomes, cb);
    }
    OutcomeVector copy = outcomes;
    return decode_conclusive(copy, cb, initial_guess);
}

bool is_failure(const DecodeResult& r, Bit true_bit) {
    const auto bit = decided_bit(r.decision);
    return !bit.has_value() || *bit != true_bit;
}

int decision_symbol(Decision d) {
    switch (d) {
        case Decision::Bit0: return 0;
        case Decision::Bit1: return 1;
        default:             return 2;
    }
}

}  // namespace

double exact_failure_probability(const CodeBook& cb, DecoderKind decoder,
                                 Bit initial_guess) {
    const double weight = std::ldexp(1.0, -cb.n_pairs());
    double failure = 0.0;
    for (Bit bit : {0, 1}) {
        enumerate_noiseless(encode(bit, cb), [&](const OutcomeVector& out) {
            if (is_failure(run_decoder(out, cb, decoder, initial_guess), bit)) {
                failure += 0.5 * weight;
            }
        });
    }
    return failure;
}

PairsExaminedStats expected_pairs_examined_for_bit(const CodeBook& cb, Bit bit,
                                                   Bit initial_guess) {
    const double weight = std::ldexp(1.0, -cb.n_pairs());
    PairsExaminedStats stats;
    double decided_pairs = 0.0;
    enumerate_noiseless(encode(bit, cb), [&](const OutcomeVector& out) {
        OutcomeVector copy = out;
        const DecodeResult r = decode_conclusive(copy, cb, initial_guess);
        stats.expected_unconditional += weight * r.pairs_examined;
        if (decided_bit(r.decision)) {
            stats.decision_probability += weight;
            decided_pairs += weight * r.pairs_examined;
        }
    });
    stats.expected_given_decision =
        stats.decision_probability > 0
            ? decided_pairs / stats.decision_probability
            : 0.0;
    return stats;
}

PairsExaminedStats expected_pairs_examined(const CodeBook& cb,
                                           Bit initial_guess) {
    const auto b0 = expected_pairs_examined_for_bit(cb, 0, initial_guess);
    const auto b1 = expected_pairs_examined_for_bit(cb, 1, initial_guess);
    PairsExaminedStats stats;
    stats.expected_unconditional =
        0.5 * (b0.expected_unconditional + b1.expected_unconditional);
    stats.decision_probability =
        0.5 * (b0.decision_probability + b1.decision_probability);
    const double decided_pairs =
        0.5 * (b0.expected_given_decision * b0.decision_probability +
               b1.expected_given_decision * b1.decision_probability);
    stats.expected_given_decision =
        stats.decision_probability > 0
            ? decided_pairs / stats.decision_probability
            : 0.0;
    return stats;
}

// --- confidence intervals ----------------------------------------------------

namespace {

constexpr double kZ95 = 1.959963984540054;

double binomial_cdf(std::int64_t m, std::int64_t n, double p) {
    if (m < 0) return 0.0;
    if (m >= n) return 1.0;
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    double sum = 0.0;
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    for (std::int64_t i = 0; i <= m; ++i) {
        const double log_term = std::lgamma(double(n) + 1) -
                                std::lgamma(double(i) + 1) -
                                std::lgamma(double(n - i) + 1) +
                                double(i) * log_p + double(n - i) * log_q;
        sum += std::exp(log_term);
    }
    return std::min(sum, 1.0);
}

// Smallest p with binomial_cdf(m, n, p) <= target (the CDF decreases in p).
double invert_cdf(std::int64_t m, std::int64_t n, double target) {
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (binomial_cdf(m, n, mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> clopper_pearson(std::int64_t successes,
                                          std::int64_t trials) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw Error(ErrorCode::InvalidArgument, "bad binomial counts");
    }
    const double alpha = 0.05;
    const double lower =
        successes == 0 ? 0.0
                       : invert_cdf(successes - 1, trials, 1.0 - alpha / 2);
    const double upper =
        successes == trials ? 1.0 : invert_cdf(successes, trials, alpha / 2);
    return {lower, upper};
}

double binomial_ci_halfwidth(std::int64_t successes, std::int64_t trials) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw Error(ErrorCode::InvalidArgument, "bad binomial counts");
    }
    if (successes < 10 || trials - successes < 10) {
        const auto [lo, hi] = clopper_pearson(successes, trials);
        return 0.5 * (hi - lo);
    }
    const double p = double(successes) / double(trials);
    return kZ95 * std::sqrt(p * (1.0 - p) / double(trials));
}

// --- entropy / information -----------------------------------------------------

namespace {

double entropy_bits_from_probs(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double mutual_information_bits_from_probs(
    const std::vector<std::vector<double>>& joint) {
    std::vector<double> row_sums(joint.size(), 0.0);
    std::vector<double> col_sums(joint.empty() ? 0 : joint[0].size(), 0.0);
    for (std::size_t r = 0; r < joint.size(); ++r) {
        for (std::size_t c = 0; c < joint[r].size(); ++c) {
            row_sums[r] += joint[r][c];
            col_sums[c] += joint[r][c];
        }
    }
    double mi = 0.0;
    for (std::size_t r = 0; r < joint.size(); ++r) {
        for (std::size_t c = 0; c < joint[r].size(); ++c) {
            const double p = joint[r][c];
            if (p > 0.0) {
                mi += p * std::log2(p / (row_sums[r] * col_sums[c]));
            }
        }
    }
    return mi;
}

}  // namespace

double plugin_entropy_bits(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    if (total <= 0) {
        throw Error(ErrorCode::InvalidArgument, "entropy needs samples");
    }
    std::vector<double> probs;
    probs.reserve(counts.size());
    for (auto c : counts) probs.push_back(double(c) / double(total));
    return entropy_bits_from_probs(probs);
}

double plugin_mutual_information_bits(
    const std::vector<std::vector<std::int64_t>>& joint) {
    std::int64_t total = 0;
    for (const auto& row : joint) {
        for (auto c : row) total += c;
    }
    if (total <= 0) {
        throw Error(ErrorCode::InvalidArgument, "MI needs samples");
    }
    std::vector<std::vector<double>> probs(joint.size());
    for (std::size_t r = 0; r < joint.size(); ++r) {
        for (auto c : joint[r]) probs[r].push_back(double(c) / double(total));
    }
    return mutual_information_bits_from_probs(probs);
}

// --- Monte Carlo -----------------------------------------------------------------

namespace {

// Per-trial seeds make every trial a self-contained stream; splitting the
// index range across workers cannot change any count.
template <typename Counter>
Counter run_trials(std::int64_t trials,
                   const std::function<void(std::int64_t, Counter&)>& body) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, 8);
    if (trials < (std::int64_t{1} << 16) || workers == 1) {
        Counter total{};
        for (std::int64_t i = 0; i < trials; ++i) body(i, total);
        return total;
    }
    const std::int64_t chunk = (trials + workers - 1) / workers;
    std::vector<Counter> parts(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::int64_t begin = std::int64_t(w) * chunk;
            const std::int64_t end = std::min(trials, begin + chunk);
            for (std::int64_t i = begin; i < end; ++i) body(i, parts[w]);
        });
    }
    for (auto& t : threads) t.join();
    Counter total{};
    for (const auto& part : parts) total.merge(part);
    return total;
}

}  // namespace

ErrorReport estimate_error_rate(const CodeBook& cb, const ChannelModel& channel,
                                DecoderKind decoder, std::int64_t trials,
                                std::uint64_t seed, Bit initial_guess) {
    if (trials < 1) {
        throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
    }
    struct Counter {
        std::int64_t wrong = 0;
        std::int64_t undecided = 0;
        void merge(const Counter& o) {
            wrong += o.wrong;
            undecided += o.undecided;
        }
    };
    const Counter counts = run_trials<Counter>(
        trials, [&](std::int64_t trial, Counter& acc) {
            Rng rng(derive_seed(seed, std::uint64_t(trial)));
            const Bit bit = rng.next_bool() ? 1 : 0;
            OutcomeVector out = sample_outcomes(encode(bit, cb), channel, rng);
            const DecodeResult r =
                decoder == DecoderKind::Statistical
                    ? decode_statistical(out, cb)
                    : decode_conclusive(out, cb, initial_guess);
            const auto decided = decided_bit(r.decision);
            if (!decided.has_value()) {
                ++acc.undecided;
            } else if (*decided != bit) {
                ++acc.wrong;
            }
        });

    ErrorReport report;
    report.n_pairs = cb.n_pairs();
    report.cycles = cb.cycles();
    report.channel = channel.to_string();
    report.decoder = decoder;
    report.trials = trials;
    report.seed = seed;
    report.wrong_bit_failures = counts.wrong;
    report.undecided_failures = counts.undecided;
    const std::int64_t failures = counts.wrong + counts.undecided;
    report.mc_estimate = double(failures) / double(trials);
    report.mc_ci_halfwidth = binomial_ci_halfwidth(failures, trials);
    if (channel.kind == ChannelKind::Noiseless &&
        cb.n_pairs() <= kMaxEnumerationPairs) {
        report.has_exact = true;
        report.exact_prob = exact_failure_probability(cb, decoder, initial_guess);
        report.closed_form_prob = false_matching_anticorr_prob(cb.cycles());
    }
    return report;
}

InfoReport info_report(const CodeBook& cb, const ChannelModel& channel,
                       DecoderKind decoder, std::int64_t trials,
                       std::uint64_t seed, Bit initial_guess) {
    if (trials < 100) {
        throw Error(ErrorCode::InvalidArgument,
                    "info report needs trials >= 100");
    }
    struct Counter {
        std::int64_t joint[2][3] = {{0, 0, 0}, {0, 0, 0}};
        void merge(const Counter& o) {
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 3; ++c) joint[r][c] += o.joint[r][c];
            }
        }
    };
    const Counter counts = run_trials<Counter>(
        trials, [&](std::int64_t trial, Counter& acc) {
            Rng rng(derive_seed(seed, std::uint64_t(trial)));
            const Bit bit = rng.next_bool() ? 1 : 0;
            OutcomeVector out = sample_outcomes(encode(bit, cb), channel, rng);
            const DecodeResult r =
                decoder == DecoderKind::Statistical
                    ? decode_statistical(out, cb)
                    : decode_conclusive(out, cb, initial_guess);
            ++acc.joint[bit][decision_symbol(r.decision)];
        });

    InfoReport report;
    report.sample_count = trials;
    report.source_entropy_bits = plugin_entropy_bits(
        {counts.joint[0][0] + counts.joint[0][1] + counts.joint[0][2],
         counts.joint[1][0] + counts.joint[1][1] + counts.joint[1][2]});
    report.mutual_information_bits = plugin_mutual_information_bits(
        {{counts.joint[0][0], counts.joint[0][1], counts.joint[0][2]},
         {counts.joint[1][0], counts.joint[1][1], counts.joint[1][2]}});

    if (channel.kind == ChannelKind::Noiseless &&
        cb.n_pairs() <= kMaxEnumerationPairs) {
        // Exact channel matrix by enumeration; MI of that channel is the
        // analytic reference for the plug-in estimate.
        std::vector<std::vector<double>> joint(2, std::vector<double>(3, 0.0));
        const double weight = 0.5 * std::ldexp(1.0, -cb.n_pairs());
        for (Bit bit : {0, 1}) {
            enumerate_noiseless(
                encode(bit, cb), [&](const OutcomeVector& out) {
                    const DecodeResult r =
                        run_decoder(out, cb, decoder, initial_guess);
                    joint[bit][decision_symbol(r.decision)] += weight;
                });
        }
        report.has_exact = true;
        report.exact_mutual_information_bits =
            mutual_information_bits_from_probs(joint);
    }
    return report;
}

double true_pair_epr_probability(const ChannelModel& channel) {
    switch (channel.kind) {
        case ChannelKind::Noiseless:
            return 1.0;
        case ChannelKind::FlipNoise: {
            // Anticorrelation survives iff both spins flip or neither does.
            const double p = channel.flip_prob;
            return p * p + (1.0 - p) * (1.0 - p);
        }
        case ChannelKind::InterceptResend:
            return intercept_epr_probability(channel.theta);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown channel kind");
}

DisturbanceReport disturbance_report(const CodeBook& cb,
                                     const ChannelModel& channel,
                                     std::int64_t trials, std::uint64_t seed) {
    if (trials < 100) {
        throw Error(ErrorCode::InvalidArgument,
                    "disturbance report needs trials >= 100");
    }
    struct Counter {
        std::int64_t epr = 0;
        std::int64_t pairs = 0;
        void merge(const Counter& o) {
            epr += o.epr;
            pairs += o.pairs;
        }
    };
    const Counter counts = run_trials<Counter>(
        trials, [&](std::int64_t trial, Counter& acc) {
            Rng rng(derive_seed(seed, std::uint64_t(trial)));
            const Bit bit = rng.next_bool() ? 1 : 0;
            const Matching& sent = encode(bit, cb);
            OutcomeVector out = sample_outcomes(sent, channel, rng);
            for (const auto& p : sent.pairs()) {
                ++acc.pairs;
                if (classify_pair_data(out.at(p.lo), out.at(p.hi)) ==
                    PairData::EprData) {
                    ++acc.epr;
                }
            }
        });

    DisturbanceReport report;
    report.pairs_sampled = counts.pairs;
    report.mc_epr_rate = double(counts.epr) / double(counts.pairs);
    report.mc_ci_halfwidth = binomial_ci_halfwidth(counts.epr, counts.pairs);
    report.exact_epr_prob = true_pair_epr_probability(channel);
    return report;
}

}  // namespace aqc
