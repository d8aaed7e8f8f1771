#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "codebook.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace aqc {

enum class Spin : std::uint8_t { Up, Down };

inline Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }
inline char spin_char(Spin s) { return s == Spin::Up ? 'U' : 'D'; }

// z-basis results for one transmission, one spin per position 1..2N. Spins
// are fixed at sampling time; the mask records which positions a decoder has
// examined and only ever gains entries.
struct OutcomeVector {
    std::vector<Spin> spins;
    std::vector<bool> measured_mask;

    explicit OutcomeVector(std::vector<Spin> s)
        : spins(std::move(s)), measured_mask(spins.size(), false) {}

    int n_positions() const { return static_cast<int>(spins.size()); }
    Spin at(ParticleIndex pos) const { return spins[pos - 1]; }

    Spin examine(ParticleIndex pos) {
        measured_mask[pos - 1] = true;
        return spins[pos - 1];
    }

    std::string to_string() const;  // "UDDU..." in position order
};

enum class ChannelKind { Noiseless, FlipNoise, InterceptResend };

// Noiseless is the protocol's own setting. FlipNoise applies an independent
// per-particle spin flip after the ideal draw. InterceptResend measures both
// particles of every true pair at basis angle theta (radians from z) and
// resends the eigenstates.
struct ChannelModel {
    ChannelKind kind = ChannelKind::Noiseless;
    double flip_prob = 0.0;
    double theta = 0.0;

    static ChannelModel noiseless() { return {}; }
    static ChannelModel flip_noise(double p);
    static ChannelModel intercept_resend(double theta);

    // "noiseless" | "flip:p" | "intercept:theta"
    static ChannelModel parse(const std::string& spec);
    std::string to_string() const;
};

enum class PairData : std::uint8_t { EprData, ConclusiveNonEpr };

// (Up,Down)/(Down,Up) -> EprData; (Up,Up)/(Down,Down) -> ConclusiveNonEpr.
inline PairData classify_pair_data(Spin a, Spin b) {
    return a == b ? PairData::ConclusiveNonEpr : PairData::EprData;
}

// One z-measurement draw for every particle of a transmitted arrangement.
OutcomeVector sample_outcomes(const Matching& true_matching,
                              const ChannelModel& channel, Rng& rng);

// --- exact two-qubit oracle ---------------------------------------------------

// Dense amplitudes over the z-product basis {UU, UD, DU, DD}.
struct TwoQubitState {
    std::array<std::complex<double>, 4> amplitudes{};
};

struct TwoQubitPrep {
    enum class Kind { Singlet, Product } kind = Kind::Singlet;
    // Product: each particle in an eigenstate of the spin component at angle
    // theta from z (x-z plane); `up` selects the +1 eigenstate.
    double theta = 0.0;
    bool a_up = true;
    bool b_up = false;

    static TwoQubitPrep singlet() { return {}; }
    static TwoQubitPrep product(double theta, bool a_up, bool b_up) {
        return {Kind::Product, theta, a_up, b_up};
    }
};

TwoQubitState prepare_two_qubit(const TwoQubitPrep& prep);

// Exact outcome distribution {UU, UD, DU, DD} when both qubits are measured
// along `basis_angle`; probabilities sum to 1 within 1e-12.
std::array<double, 4> two_qubit_oracle(const TwoQubitPrep& prep,
                                       double basis_angle);

// Oracle-backed probability that a singlet still shows z-anticorrelation
// after an intercept-resend attack at `theta`.
double intercept_epr_probability(double theta);

// --- codeword-state diagnostics ------------------------------------------------

inline constexpr int kMaxStatePairs = 8;  // state dimension 4^N

// Tr rho^2 of the 2N-particle codeword state (tensor product of singlets per
// the matching), built as an explicit state vector. Pure states give 1.
double global_state_purity(const Matching& matching);

// <Psi_a|Psi_b> of two codeword states on the same 2N positions, by explicit
// state-vector construction.
std::complex<double> codeword_overlap(const Matching& a, const Matching& b);
std::complex<double> codeword_overlap(const CodeBook& cb);

}  // namespace aqc
