#include "quantum.hpp"

#include <cmath>

#include "textutil.hpp"

namespace aqc {

std::string OutcomeVector::to_string() const {
    std::string out;
    out.reserve(spins.size());
    for (Spin s : spins) out.push_back(spin_char(s));
    return out;
}

// --- channel model -------------------------------------------------------------

ChannelModel ChannelModel::flip_noise(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "flip probability must lie in [0, 1]");
    }
    ChannelModel ch;
    ch.kind = ChannelKind::FlipNoise;
    ch.flip_prob = p;
    return ch;
}

ChannelModel ChannelModel::intercept_resend(double theta) {
    if (!(theta >= 0.0 && theta <= M_PI)) {
        throw Error(ErrorCode::InvalidArgument,
                    "intercept basis angle must lie in [0, pi]");
    }
    ChannelModel ch;
    ch.kind = ChannelKind::InterceptResend;
    ch.theta = theta;
    return ch;
}

ChannelModel ChannelModel::parse(const std::string& spec) {
    if (spec == "noiseless") return noiseless();
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    if (colon != std::string::npos) {
        const std::string arg = spec.substr(colon + 1);
        if (head == "flip") {
            return flip_noise(parse_double(arg, "flip probability"));
        }
        if (head == "intercept") {
            return intercept_resend(parse_double(arg, "basis angle"));
        }
    }
    throw Error(ErrorCode::InvalidArgument,
                "unknown channel spec '" + spec +
                    "' (expected noiseless | flip:p | intercept:theta)");
}

std::string ChannelModel::to_string() const {
    switch (kind) {
        case ChannelKind::Noiseless:
            return "noiseless";
        case ChannelKind::FlipNoise:
            return "flip:" + format_double(flip_prob);
        case ChannelKind::InterceptResend:
            return "intercept:" + format_double(theta);
    }
    return "noiseless";
}

// --- sampling --------------------------------------------------------------------

namespace {

std::vector<Spin> sample_ideal(const Matching& m, Rng& rng) {
    std::vector<Spin> spins(m.n_positions(), Spin::Up);
    for (const auto& p : m.pairs()) {
        const bool up_at_lo = rng.next_bool();
        spins[p.lo - 1] = up_at_lo ? Spin::Up : Spin::Down;
        spins[p.hi - 1] = up_at_lo ? Spin::Down : Spin::Up;
    }
    return spins;
}

}  // namespace

OutcomeVector sample_outcomes(const Matching& true_matching,
                              const ChannelModel& channel, Rng& rng) {
    switch (channel.kind) {
        case ChannelKind::Noiseless:
            return OutcomeVector(sample_ideal(true_matching, rng));

        case ChannelKind::FlipNoise: {
            auto spins = sample_ideal(true_matching, rng);
            for (auto& s : spins) {
                if (rng.bernoulli(channel.flip_prob)) s = flip(s);
            }
            return OutcomeVector(std::move(spins));
        }

        case ChannelKind::InterceptResend: {
            // The eavesdropper's theta-basis results on a singlet are
            // perfectly anticorrelated; each resent eigenstate then collapses
            // to z independently with P(Up) = cos^2(theta/2) for theta-up,
            // sin^2(theta/2) for theta-down.
            const double c2 = std::pow(std::cos(channel.theta / 2), 2);
            const double s2 = 1.0 - c2;
            std::vector<Spin> spins(true_matching.n_positions(), Spin::Up);
            for (const auto& p : true_matching.pairs()) {
                const bool eve_up_at_lo = rng.next_bool();
                const double p_up_lo = eve_up_at_lo ? c2 : s2;
                const double p_up_hi = eve_up_at_lo ? s2 : c2;
                spins[p.lo - 1] =
                    rng.bernoulli(p_up_lo) ? Spin::Up : Spin::Down;
                spins[p.hi - 1] =
                    rng.bernoulli(p_up_hi) ? Spin::Up : Spin::Down;
            }
            return OutcomeVector(std::move(spins));
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown channel kind");
}

// --- exact two-qubit oracle ---------------------------------------------------

namespace {

// Eigenstates of the spin component at angle theta from z, in the x-z plane.
std::array<double, 2> basis_vector(double theta, bool up) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    if (up) return {c, s};
    return {-s, c};
}

}  // namespace

TwoQubitState prepare_two_qubit(const TwoQubitPrep& prep) {
    TwoQubitState state;
    if (prep.kind == TwoQubitPrep::Kind::Singlet) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        state.amplitudes = {0.0, inv_sqrt2, -inv_sqrt2, 0.0};
        return state;
    }
    const auto a = basis_vector(prep.theta, prep.a_up);
    const auto b = basis_vector(prep.theta, prep.b_up);
    for (int ia = 0; ia < 2; ++ia) {
        for (int ib = 0; ib < 2; ++ib) {
            state.amplitudes[2 * ia + ib] = a[ia] * b[ib];
        }
    }
    return state;
}

std::array<double, 4> two_qubit_oracle(const TwoQubitPrep& prep,
                                       double basis_angle) {
    const TwoQubitState state = prepare_two_qubit(prep);
    std::array<double, 4> dist{};
    for (int oa = 0; oa < 2; ++oa) {
        const auto va = basis_vector(basis_angle, oa == 0);
        for (int ob = 0; ob < 2; ++ob) {
            const auto vb = basis_vector(basis_angle, ob == 0);
            std::complex<double> amp = 0.0;
            for (int ia = 0; ia < 2; ++ia) {
                for (int ib = 0; ib < 2; ++ib) {
                    amp += va[ia] * vb[ib] * state.amplitudes[2 * ia + ib];
                }
            }
            dist[2 * oa + ob] = std::norm(amp);
        }
    }
    return dist;
}

double intercept_epr_probability(double theta) {
    // Average of the two (equally likely) eavesdropper outcomes.
    double total = 0.0;
    for (bool a_up : {true, false}) {
        const auto dist =
            two_qubit_oracle(TwoQubitPrep::product(theta, a_up, !a_up), 0.0);
        total += dist[1] + dist[2];  // UD + DU
    }
    return total / 2.0;
}

// --- codeword-state diagnostics --------------------------------------------------

namespace {

std::vector<std::complex<double>> codeword_state(const Matching& m) {
    if (m.n_pairs() > kMaxStatePairs) {
        throw Error(ErrorCode::TooLarge,
                    "state-vector construction limited to " +
                        std::to_string(kMaxStatePairs) + " pairs, got " +
                        std::to_string(m.n_pairs()));
    }
    const int n_qubits = m.n_positions();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<std::complex<double>> state(dim);
    // Basis index bit (pos-1) holds the z outcome of position pos, 0 = Up.
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double amp = 1.0;
        for (const auto& p : m.pairs()) {
            const int bit_lo = (idx >> (p.lo - 1)) & 1;
            const int bit_hi = (idx >> (p.hi - 1)) & 1;
            if (bit_lo == bit_hi) {
                amp = 0.0;
                break;
            }
            amp *= (bit_lo == 0) ? inv_sqrt2 : -inv_sqrt2;
        }
        state[idx] = amp;
    }
    return state;
}

}  // namespace

double global_state_purity(const Matching& matching) {
    const auto state = codeword_state(matching);
    double norm_sq = 0.0;
    for (const auto& amp : state) norm_sq += std::norm(amp);
    // Tr rho^2 for rho = |psi><psi| equals <psi|psi>^2.
    return norm_sq * norm_sq;
}

std::complex<double> codeword_overlap(const Matching& a, const Matching& b) {
    if (a.n_pairs() != b.n_pairs()) {
        throw Error(ErrorCode::SizeMismatch,
                    "overlap needs matchings on the same positions");
    }
    const auto va = codeword_state(a);
    const auto vb = codeword_state(b);
    std::complex<double> overlap = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        overlap += std::conj(va[i]) * vb[i];
    }
    return overlap;
}

std::complex<double> codeword_overlap(const CodeBook& cb) {
    return codeword_overlap(cb.s0(), cb.s1());
}

}  // namespace aqc
