#include "protocol.hpp"

#include <json.hpp>

namespace aqc {

std::string decision_name(Decision d) {
    switch (d) {
        case Decision::Bit0:         return "0";
        case Decision::Bit1:         return "1";
        case Decision::Ambiguous:    return "ambiguous";
        case Decision::Inconclusive: return "inconclusive";
    }
    return "?";
}

const Matching& encode(Bit bit, const CodeBook& cb) {
    if (bit != 0 && bit != 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "bit must be 0 or 1, got " + std::to_string(bit));
    }
    return cb.matching(bit);
}

namespace {

void check_length(const OutcomeVector& outcomes, const CodeBook& cb) {
    if (outcomes.n_positions() != cb.s0().n_positions()) {
        throw Error(ErrorCode::LengthMismatch,
                    "outcome vector has " +
                        std::to_string(outcomes.n_positions()) +
                        " positions, codebook expects " +
                        std::to_string(cb.s0().n_positions()));
    }
}

int count_epr_pairs(const OutcomeVector& outcomes, const Matching& m) {
    int count = 0;
    for (const auto& p : m.pairs()) {
        if (classify_pair_data(outcomes.at(p.lo), outcomes.at(p.hi)) ==
            PairData::EprData) {
            ++count;
        }
    }
    return count;
}

}  // namespace

DecodeResult decode_statistical(const OutcomeVector& outcomes,
                                const CodeBook& cb) {
    check_length(outcomes, cb);
    DecodeResult result;
    result.anticorr_s0 = count_epr_pairs(outcomes, cb.s0());
    result.anticorr_s1 = count_epr_pairs(outcomes, cb.s1());
    result.pairs_examined = 2 * cb.n_pairs();
    result.particles_examined = outcomes.n_positions();
    if (result.anticorr_s0 > result.anticorr_s1) {
        result.decision = Decision::Bit0;
    } else if (result.anticorr_s1 > result.anticorr_s0) {
        result.decision = Decision::Bit1;
    } else {
        result.decision = Decision::Ambiguous;
    }
    return result;
}

DecodeResult decode_conclusive(OutcomeVector& outcomes, const CodeBook& cb,
                               Bit initial_guess) {
    check_length(outcomes, cb);
    if (initial_guess != 0 && initial_guess != 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "initial guess must be 0 or 1");
    }

    DecodeResult result;
    int next_pair[2] = {0, 0};  // per matching, next canonical pair to test
    int particles = 0;
    Bit guess = initial_guess;

    auto examine = [&](ParticleIndex pos) {
        if (!outcomes.measured_mask[pos - 1]) ++particles;
        return outcomes.examine(pos);
    };

    const int n = cb.n_pairs();
    while (next_pair[0] < n || next_pair[1] < n) {
        int candidate = 1 - guess;  // the matching assumed to be non-EPR
        if (next_pair[candidate] == n) {
            guess = 1 - guess;
            candidate = 1 - guess;
        }
        const Pair p = cb.matching(candidate).pairs()[next_pair[candidate]++];
        const Spin a = examine(p.lo);
        const Spin b = examine(p.hi);
        ++result.pairs_examined;
        if (classify_pair_data(a, b) == PairData::EprData) {
            (candidate == 0 ? result.anticorr_s0 : result.anticorr_s1)++;
        } else {
            // Conclusive non-EPR datum: s_candidate is not the transmitted
            // arrangement, so the bit is the current guess.
            result.decision =
                guess == 0 ? Decision::Bit0 : Decision::Bit1;
            result.particles_examined = particles;
            return result;
        }
        guess = 1 - guess;
    }

    result.decision = Decision::Inconclusive;
    result.particles_examined = particles;
    return result;
}

Transcript run_transmission(const CodeBook& cb, Bit bit,
                            const ChannelModel& channel, std::uint64_t seed,
                            Bit initial_guess) {
    Rng rng(seed);
    Transcript t{.seed = seed, .bit = bit, .channel = channel,
                 .outcomes = sample_outcomes(encode(bit, cb), channel, rng)};
    t.statistical = decode_statistical(t.outcomes, cb);
    t.conclusive = decode_conclusive(t.outcomes, cb, initial_guess);
    return t;
}

std::string transcript_to_json(const Transcript& t) {
    nlohmann::ordered_json doc;
    doc["seed"] = t.seed;
    doc["bit"] = t.bit;
    doc["channel"] = t.channel.to_string();
    doc["outcomes"] = t.outcomes.to_string();
    doc["statistical"] = {
        {"decision", decision_name(t.statistical.decision)},
        {"counts", {t.statistical.anticorr_s0, t.statistical.anticorr_s1}},
    };
    doc["conclusive"] = {
        {"decision", decision_name(t.conclusive.decision)},
        {"pairs_examined", t.conclusive.pairs_examined},
    };
    return doc.dump();
}

}  // namespace aqc
