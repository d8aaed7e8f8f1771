#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "codebook.hpp"
#include "quantum.hpp"

namespace aqc {

using Bit = int;  // 0 or 1

enum class Decision : std::uint8_t {
    Bit0,
    Bit1,
    Ambiguous,     // statistical tie
    Inconclusive,  // no conclusive non-EPR datum found
};

inline std::optional<Bit> decided_bit(Decision d) {
    if (d == Decision::Bit0) return 0;
    if (d == Decision::Bit1) return 1;
    return std::nullopt;
}

std::string decision_name(Decision d);

struct DecodeResult {
    Decision decision = Decision::Inconclusive;
    int pairs_examined = 0;
    int particles_examined = 0;
    // EPR-data counts among examined pairs, per candidate matching.
    int anticorr_s0 = 0;
    int anticorr_s1 = 0;
};

// Which arrangement Alice physically transmits for `bit`.
const Matching& encode(Bit bit, const CodeBook& cb);

// Examines every pair of both matchings and picks the one with more EPR
// data; equal counts give Ambiguous. Under a noiseless channel the true
// matching always scores N.
DecodeResult decode_statistical(const OutcomeVector& outcomes,
                                const CodeBook& cb);

// Alternating-guess conclusive decoding: with current guess b, examine the
// next untested pair of the assumed non-EPR matching s_(1-b), in canonical
// pair order, reading spins lazily (each particle measured once, tracked in
// outcomes.measured_mask). A conclusive non-EPR datum on a pair of s_m rules
// s_m out, deciding bit 1-m; exhausting both matchings is Inconclusive.
DecodeResult decode_conclusive(OutcomeVector& outcomes, const CodeBook& cb,
                               Bit initial_guess = kDefaultInitialGuess);

inline constexpr Bit kDefaultInitialGuess = 1;

// One replayable transmission: encode -> channel sample -> both decoders.
struct Transcript {
    std::uint64_t seed = 0;
    Bit bit = 0;
    ChannelModel channel;
    OutcomeVector outcomes{std::vector<Spin>{}};
    DecodeResult statistical;
    DecodeResult conclusive;
};

Transcript run_transmission(const CodeBook& cb, Bit bit,
                            const ChannelModel& channel, std::uint64_t seed,
                            Bit initial_guess = kDefaultInitialGuess);

// {"seed":..., "bit":..., "channel":"...", "outcomes":"UD...",
//  "statistical":{"decision":...,"counts":[c0,c1]},
//  "conclusive":{"decision":...,"pairs_examined":...}}
std::string transcript_to_json(const Transcript& t);

}  // namespace aqc
