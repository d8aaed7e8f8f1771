#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace aqc {

// Particle positions are 1-based throughout (1..2N); serialized formats say
// so explicitly.
using ParticleIndex = int;

// One EPR pairing between two positions, stored with lo < hi.
struct Pair {
    ParticleIndex lo = 0;
    ParticleIndex hi = 0;

    friend bool operator==(const Pair&, const Pair&) = default;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

Pair make_pair_canonical(ParticleIndex a, ParticleIndex b);

// A perfect matching on positions 1..2N: the physical arrangement of EPR
// pairs, written in text form as a letter sequence ("A B B A ...").
class Matching {
public:
    // Validates the perfect-matching invariant and canonicalizes pair order.
    static Matching from_pairs(std::vector<Pair> pairs);

    int n_pairs() const { return static_cast<int>(pairs_.size()); }
    int n_positions() const { return 2 * n_pairs(); }
    const std::vector<Pair>& pairs() const { return pairs_; }

    // Position paired with `pos` (1-based).
    ParticleIndex partner(ParticleIndex pos) const;

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    Matching() = default;
    std::vector<Pair> pairs_;     // sorted by lo
    std::vector<int> partner_;    // partner_[pos-1], 1-based values
};

// Alternating-cycle structure of the union of two disjoint matchings; the
// multiset of half-lengths k_c (each cycle has k_c edges from each matching).
struct CycleDecomposition {
    std::vector<int> half_lengths;  // sorted descending, each >= 2, sum == N

    friend bool operator==(const CycleDecomposition&,
                           const CycleDecomposition&) = default;
};

enum class GenerateStrategy {
    Cyclic,            // one 2N-cycle over shuffled positions; alternate edges
    RejectionUniform,  // uniform over ordered pairs of disjoint matchings
};

// The shared secret: two edge-disjoint perfect matchings encoding bit 0/1,
// plus the derived cycle decomposition.
class CodeBook {
public:
    static CodeBook validate(Matching s0, Matching s1);

    static CodeBook generate(int n_pairs, Rng& rng, GenerateStrategy strategy,
                             int retry_cap = kDefaultRetryCap);

    const Matching& s0() const { return s0_; }
    const Matching& s1() const { return s1_; }
    const Matching& matching(int bit) const { return bit == 0 ? s0_ : s1_; }
    int n_pairs() const { return s0_.n_pairs(); }
    const CycleDecomposition& cycles() const { return cycles_; }

    static constexpr int kDefaultRetryCap = 1000;

private:
    CodeBook() = default;
    Matching s0_;
    Matching s1_;
    CycleDecomposition cycles_;
};

// --- letter-sequence text format -------------------------------------------

// Parses a whitespace/comma-separated list of 2N labels, each occurring
// exactly twice; positions sharing a label become one pair.
Matching parse_letter_sequence(const std::string& text);

// Inverse of parse: labels assigned in first-occurrence order A..Z, AA, AB...
// Tokens separated by single spaces, no trailing newline.
std::string format_letter_sequence(const Matching& m);

// Label for a 0-based pair index: 0 -> "A", 25 -> "Z", 26 -> "AA".
std::string pair_label(int index);

// --- supporting operations --------------------------------------------------

// Walks alternating s0/s1 edges. Inputs must be disjoint perfect matchings of
// equal size (validated).
CycleDecomposition cycle_decomposition(const Matching& s0, const Matching& s1);

// Uniform perfect matching on positions 1..2n.
Matching random_matching(int n_pairs, Rng& rng);

// --- structured (JSON) document --------------------------------------------

// {"positions": "1-based", "n_pairs": N, "s0": [[lo,hi],...], "s1": [...]}
std::string codebook_to_json(const CodeBook& cb);
CodeBook codebook_from_json(const std::string& text);

}  // namespace aqc
