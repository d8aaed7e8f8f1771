#include "codebook.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace aqc {

Pair make_pair_canonical(ParticleIndex a, ParticleIndex b) {
    if (a == b) {
        throw Error(ErrorCode::InvalidArgument,
                    "pair endpoints must differ, got (" + std::to_string(a) +
                        ", " + std::to_string(b) + ")");
    }
    return a < b ? Pair{a, b} : Pair{b, a};
}

Matching Matching::from_pairs(std::vector<Pair> pairs) {
    if (pairs.empty()) {
        throw Error(ErrorCode::EmptyInput, "matching has no pairs");
    }
    for (auto& p : pairs) p = make_pair_canonical(p.lo, p.hi);
    std::sort(pairs.begin(), pairs.end());

    const int n_positions = 2 * static_cast<int>(pairs.size());
    std::vector<int> partner(n_positions, 0);
    for (const auto& p : pairs) {
        for (ParticleIndex pos : {p.lo, p.hi}) {
            if (pos < 1 || pos > n_positions) {
                throw Error(ErrorCode::InvalidArgument,
                            "position " + std::to_string(pos) +
                                " outside 1.." + std::to_string(n_positions));
            }
        }
        if (partner[p.lo - 1] != 0 || partner[p.hi - 1] != 0) {
            throw Error(ErrorCode::InvalidArgument,
                        "position " + std::to_string(partner[p.lo - 1] != 0
                                                         ? p.lo
                                                         : p.hi) +
                            " appears in more than one pair");
        }
        partner[p.lo - 1] = p.hi;
        partner[p.hi - 1] = p.lo;
    }
    // Every position covered: guaranteed by the pigeonhole once no position
    // repeats and all 2N slots are filled, but check anyway for clear errors.
    for (int pos = 1; pos <= n_positions; ++pos) {
        if (partner[pos - 1] == 0) {
            throw Error(ErrorCode::InvalidArgument,
                        "position " + std::to_string(pos) + " is unpaired");
        }
    }

    Matching m;
    m.pairs_ = std::move(pairs);
    m.partner_ = std::move(partner);
    return m;
}

ParticleIndex Matching::partner(ParticleIndex pos) const {
    if (pos < 1 || pos > n_positions()) {
        throw Error(ErrorCode::InvalidArgument,
                    "position " + std::to_string(pos) + " outside 1.." +
                        std::to_string(n_positions()));
    }
    return partner_[pos - 1];
}

// --- letter-sequence text format -------------------------------------------

std::string pair_label(int index) {
    // Spreadsheet-style: A..Z, AA, AB, ...
    std::string label;
    int k = index;
    while (true) {
        label.insert(label.begin(), static_cast<char>('A' + k % 26));
        k = k / 26 - 1;
        if (k < 0) break;
    }
    return label;
}

Matching parse_letter_sequence(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));

    if (tokens.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty letter sequence");
    }
    if (tokens.size() % 2 != 0) {
        throw Error(ErrorCode::OddLength,
                    "letter sequence has odd length " +
                        std::to_string(tokens.size()));
    }

    std::map<std::string, std::vector<int>> positions;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        positions[tokens[i]].push_back(static_cast<int>(i) + 1);
    }

    std::vector<Pair> pairs;
    for (const auto& [label, where] : positions) {
        if (where.size() != 2) {
            throw Error(ErrorCode::LabelCount,
                        "label '" + label + "' occurs " +
                            std::to_string(where.size()) +
                            " times, expected 2");
        }
        pairs.push_back(make_pair_canonical(where[0], where[1]));
    }
    return Matching::from_pairs(std::move(pairs));
}

std::string format_letter_sequence(const Matching& m) {
    std::vector<int> label_of_pos(m.n_positions(), -1);
    int next = 0;
    for (int pos = 1; pos <= m.n_positions(); ++pos) {
        if (label_of_pos[pos - 1] >= 0) continue;
        label_of_pos[pos - 1] = next;
        label_of_pos[m.partner(pos) - 1] = next;
        ++next;
    }
    std::string out;
    for (int pos = 1; pos <= m.n_positions(); ++pos) {
        if (pos > 1) out.push_back(' ');
        out += pair_label(label_of_pos[pos - 1]);
    }
    return out;
}

// --- codebook ----------------------------------------------------------------

CycleDecomposition cycle_decomposition(const Matching& s0, const Matching& s1) {
    if (s0.n_pairs() != s1.n_pairs()) {
        throw Error(ErrorCode::SizeMismatch,
                    "matchings differ in size: " + std::to_string(s0.n_pairs()) +
                        " vs " + std::to_string(s1.n_pairs()));
    }
    const int n_positions = s0.n_positions();
    std::vector<bool> seen(n_positions + 1, false);
    std::vector<int> half_lengths;

    for (int start = 1; start <= n_positions; ++start) {
        if (seen[start]) continue;
        // Walk s0, s1, s0, ... edges until the cycle closes.
        int length = 0;
        int pos = start;
        bool use_s0 = true;
        do {
            seen[pos] = true;
            pos = use_s0 ? s0.partner(pos) : s1.partner(pos);
            use_s0 = !use_s0;
            ++length;
        } while (pos != start);
        // A cycle visits an even number of vertices, half via each matching.
        half_lengths.push_back(length / 2);
    }
    std::sort(half_lengths.rbegin(), half_lengths.rend());
    return CycleDecomposition{std::move(half_lengths)};
}

CodeBook CodeBook::validate(Matching s0, Matching s1) {
    if (s0.n_pairs() != s1.n_pairs()) {
        throw Error(ErrorCode::SizeMismatch,
                    "matchings differ in size: " + std::to_string(s0.n_pairs()) +
                        " vs " + std::to_string(s1.n_pairs()));
    }
    if (s0.n_pairs() < 2) {
        throw Error(ErrorCode::TooSmall,
                    "a codebook needs at least 2 pairs; disjoint perfect "
                    "matchings do not exist on 2 positions");
    }
    for (const auto& p : s0.pairs()) {
        if (s1.partner(p.lo) == p.hi) {
            throw Error(ErrorCode::Overlap,
                        "pair (" + std::to_string(p.lo) + ", " +
                            std::to_string(p.hi) +
                            ") occupies the same position in both sequences");
        }
    }
    CodeBook cb;
    cb.cycles_ = cycle_decomposition(s0, s1);
    cb.s0_ = std::move(s0);
    cb.s1_ = std::move(s1);
    return cb;
}

Matching random_matching(int n_pairs, Rng& rng) {
    if (n_pairs < 1) {
        throw Error(ErrorCode::TooSmall, "matching needs at least one pair");
    }
    std::vector<int> order(2 * n_pairs);
    for (int i = 0; i < 2 * n_pairs; ++i) order[i] = i + 1;
    rng.shuffle(order);
    // Pairing consecutive entries of a uniform permutation hits every perfect
    // matching with equal multiplicity (2^N N! permutations each).
    std::vector<Pair> pairs;
    pairs.reserve(n_pairs);
    for (int i = 0; i < n_pairs; ++i) {
        pairs.push_back(make_pair_canonical(order[2 * i], order[2 * i + 1]));
    }
    return Matching::from_pairs(std::move(pairs));
}

CodeBook CodeBook::generate(int n_pairs, Rng& rng, GenerateStrategy strategy,
                            int retry_cap) {
    if (n_pairs < 2) {
        throw Error(ErrorCode::TooSmall,
                    "codebook generation needs n_pairs >= 2");
    }
    switch (strategy) {
        case GenerateStrategy::Cyclic: {
            std::vector<int> order(2 * n_pairs);
            for (int i = 0; i < 2 * n_pairs; ++i) order[i] = i + 1;
            rng.shuffle(order);
            std::vector<Pair> e0, e1;
            for (int i = 0; i < n_pairs; ++i) {
                e0.push_back(
                    make_pair_canonical(order[2 * i], order[2 * i + 1]));
                e1.push_back(make_pair_canonical(
                    order[2 * i + 1], order[(2 * i + 2) % (2 * n_pairs)]));
            }
            return validate(Matching::from_pairs(std::move(e0)),
                            Matching::from_pairs(std::move(e1)));
        }
        case GenerateStrategy::RejectionUniform: {
            // Both matchings are redrawn on every attempt so accepted pairs
            // are uniform over ordered disjoint pairs.
            for (int attempt = 0; attempt < retry_cap; ++attempt) {
                Matching s0 = random_matching(n_pairs, rng);
                Matching s1 = random_matching(n_pairs, rng);
                bool overlap = false;
                for (const auto& p : s0.pairs()) {
                    if (s1.partner(p.lo) == p.hi) {
                        overlap = true;
                        break;
                    }
                }
                if (!overlap) return validate(std::move(s0), std::move(s1));
            }
            throw Error(ErrorCode::RetryExhausted,
                        "no disjoint matching pair found in " +
                            std::to_string(retry_cap) + " attempts");
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown generation strategy");
}

// --- structured document ------------------------------------------------------

std::string codebook_to_json(const CodeBook& cb) {
    nlohmann::ordered_json doc;
    doc["positions"] = "1-based";
    doc["n_pairs"] = cb.n_pairs();
    auto pairs_to_json = [](const Matching& m) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& p : m.pairs()) arr.push_back({p.lo, p.hi});
        return arr;
    };
    doc["s0"] = pairs_to_json(cb.s0());
    doc["s1"] = pairs_to_json(cb.s1());
    return doc.dump(2) + "\n";
}

CodeBook codebook_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Config,
                    std::string("codebook document is not valid JSON: ") +
                        e.what());
    }
    for (const char* field : {"n_pairs", "s0", "s1"}) {
        if (!doc.contains(field)) {
            throw Error(ErrorCode::Config,
                        std::string("codebook document missing field '") +
                            field + "'");
        }
    }
    auto matching_from = [&](const char* field) {
        std::vector<Pair> pairs;
        for (const auto& entry : doc.at(field)) {
            if (!entry.is_array() || entry.size() != 2) {
                throw Error(ErrorCode::Config,
                            std::string("field '") + field +
                                "' must contain [lo, hi] pairs");
            }
            pairs.push_back(make_pair_canonical(entry[0].get<int>(),
                                                entry[1].get<int>()));
        }
        return Matching::from_pairs(std::move(pairs));
    };
    Matching s0 = matching_from("s0");
    Matching s1 = matching_from("s1");
    const int declared = doc.at("n_pairs").get<int>();
    if (declared != s0.n_pairs() || declared != s1.n_pairs()) {
        throw Error(ErrorCode::SizeMismatch,
                    "declared n_pairs " + std::to_string(declared) +
                        " does not match the pair lists");
    }
    return CodeBook::validate(std::move(s0), std::move(s1));
}

}  // namespace aqc
