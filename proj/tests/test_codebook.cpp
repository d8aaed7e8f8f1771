#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "codebook.hpp"

using namespace aqc;

namespace {

// The 12-position reference sequences used throughout the suite.
const std::string kRefS1 = "A B B C D A E F E F C D";
const std::string kRefS0 = "B A D C D A E E F F B C";

std::vector<Pair> pairs_of(std::initializer_list<std::pair<int, int>> list) {
    std::vector<Pair> out;
    for (auto [a, b] : list) out.push_back(make_pair_canonical(a, b));
    return out;
}

// Independent cycle oracle: union-find over positions, merging across the
// edges of both matchings; component sizes are the cycle lengths.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> cycle_half_lengths_oracle(const Matching& a,
                                           const Matching& b) {
    UnionFind uf(a.n_positions());
    for (const auto& p : a.pairs()) uf.unite(p.lo - 1, p.hi - 1);
    for (const auto& p : b.pairs()) uf.unite(p.lo - 1, p.hi - 1);
    std::map<int, int> sizes;
    for (int v = 0; v < a.n_positions(); ++v) ++sizes[uf.find(v)];
    std::vector<int> halves;
    for (const auto& [root, size] : sizes) halves.push_back(size / 2);
    std::sort(halves.rbegin(), halves.rend());
    return halves;
}

std::set<Pair> edge_set(const Matching& m) {
    return {m.pairs().begin(), m.pairs().end()};
}

}  // namespace

TEST_CASE("parse_letter_sequence on the reference sequences") {
    const Matching s1 = parse_letter_sequence(kRefS1);
    CHECK(s1.n_pairs() == 6);
    CHECK(s1.pairs() == pairs_of({{1, 6}, {2, 3}, {4, 11}, {5, 12}, {7, 9},
                                  {8, 10}}));

    const Matching s0 = parse_letter_sequence(kRefS0);
    CHECK(s0.pairs() == pairs_of({{1, 11}, {2, 6}, {3, 5}, {4, 12}, {7, 8},
                                  {9, 10}}));
}

TEST_CASE("parse_letter_sequence basics and errors") {
    CHECK(parse_letter_sequence("A A").pairs() == pairs_of({{1, 2}}));
    CHECK(parse_letter_sequence("A,B,B,A").pairs() ==
          pairs_of({{1, 4}, {2, 3}}));
    CHECK(parse_letter_sequence("  x y \n y x ").n_pairs() == 2);

    CHECK_THROWS_WITH_AS(parse_letter_sequence("A B A"),
                         doctest::Contains("'B' occurs 1"), Error);
    try {
        parse_letter_sequence("A B A");
        FAIL("expected LabelCountError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LabelCount);
    }
    try {
        parse_letter_sequence("A B B");
        FAIL("expected OddLength");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddLength);
    }
    try {
        parse_letter_sequence("  \t \n");
        FAIL("expected EmptyInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyInput);
    }
    // Three occurrences is a label-count problem, not an odd-length one.
    try {
        parse_letter_sequence("A A A B B C");
        FAIL("expected LabelCountError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LabelCount);
    }
}

TEST_CASE("format_letter_sequence") {
    CHECK(format_letter_sequence(parse_letter_sequence("A A")) == "A A");
    CHECK(format_letter_sequence(parse_letter_sequence(kRefS1)) == kRefS1);

    // The reference S0 string uses a different label assignment; formatting
    // must reproduce the same matching up to renaming.
    const Matching s0 = parse_letter_sequence(kRefS0);
    CHECK(parse_letter_sequence(format_letter_sequence(s0)) == s0);
}

TEST_CASE("pair labels extend past Z spreadsheet-style") {
    CHECK(pair_label(0) == "A");
    CHECK(pair_label(25) == "Z");
    CHECK(pair_label(26) == "AA");
    CHECK(pair_label(27) == "AB");
    CHECK(pair_label(51) == "AZ");
    CHECK(pair_label(52) == "BA");
    CHECK(pair_label(701) == "ZZ");
    CHECK(pair_label(702) == "AAA");

    // A 30-pair matching formats and parses back.
    std::vector<Pair> pairs;
    for (int i = 0; i < 30; ++i) {
        pairs.push_back(make_pair_canonical(2 * i + 1, 2 * i + 2));
    }
    const Matching wide = Matching::from_pairs(pairs);
    CHECK(parse_letter_sequence(format_letter_sequence(wide)) == wide);
}

TEST_CASE("parse/format round-trip property") {
    Rng rng(0xA11CE);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 1 + int(rng.next_below(40));
        const Matching m = random_matching(n, rng);
        CHECK(parse_letter_sequence(format_letter_sequence(m)) == m);
    }
}

TEST_CASE("Matching::from_pairs validation") {
    CHECK_THROWS_AS(Matching::from_pairs({}), Error);
    CHECK_THROWS_AS(make_pair_canonical(3, 3), Error);
    // Position out of range for the implied 1..2N window.
    CHECK_THROWS_AS(Matching::from_pairs(pairs_of({{1, 5}, {2, 3}})), Error);
    // Position repeated across pairs.
    CHECK_THROWS_AS(Matching::from_pairs(pairs_of({{1, 2}, {2, 3}})), Error);
    // Canonical ordering is applied regardless of input order.
    const Matching m = Matching::from_pairs(pairs_of({{4, 3}, {2, 1}}));
    CHECK(m.pairs() == pairs_of({{1, 2}, {3, 4}}));
    CHECK(m.partner(1) == 2);
    CHECK(m.partner(4) == 3);
}

TEST_CASE("validate_codebook accepts the reference pair and derives cycles") {
    const CodeBook cb = CodeBook::validate(parse_letter_sequence(kRefS0),
                                           parse_letter_sequence(kRefS1));
    CHECK(cb.n_pairs() == 6);
    CHECK(cb.cycles().half_lengths == std::vector<int>{4, 2});
}

TEST_CASE("validate_codebook rejects overlap, size mismatch, tiny inputs") {
    const Matching m = parse_letter_sequence("A B B A C C");
    try {
        CodeBook::validate(m, m);
        FAIL("expected OverlapError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Overlap);
        // Error names the first offending pair in canonical order.
        CHECK(std::string(e.what()).find("(1, 4)") != std::string::npos);
    }
    try {
        CodeBook::validate(parse_letter_sequence("A A B B"),
                           parse_letter_sequence(kRefS1));
        FAIL("expected SizeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeMismatch);
    }
    try {
        CodeBook::validate(parse_letter_sequence("A A"),
                           parse_letter_sequence("A A"));
        FAIL("expected TooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooSmall);
    }
}

TEST_CASE("hand-checked 4-position codebook") {
    const CodeBook cb =
        CodeBook::validate(Matching::from_pairs(pairs_of({{1, 2}, {3, 4}})),
                           Matching::from_pairs(pairs_of({{1, 3}, {2, 4}})));
    CHECK(cb.cycles().half_lengths == std::vector<int>{2});
}

TEST_CASE("overlap detection agrees with a set-intersection oracle") {
    Rng rng(0xBEEF);
    int overlaps_seen = 0;
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 2 + int(rng.next_below(5));
        const Matching a = random_matching(n, rng);
        const Matching b = random_matching(n, rng);
        std::set<Pair> shared;
        const auto ea = edge_set(a);
        for (const auto& p : edge_set(b)) {
            if (ea.count(p)) shared.insert(p);
        }
        bool threw = false;
        try {
            CodeBook::validate(a, b);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Overlap);
            threw = true;
        }
        CHECK(threw == !shared.empty());
        if (threw) ++overlaps_seen;
    }
    CHECK(overlaps_seen > 0);  // the generator must exercise both branches
}

TEST_CASE("cycle decomposition matches the union-find oracle") {
    Rng rng(0x5EED);
    int valid_seen = 0;
    while (valid_seen < 60) {
        const int n = 2 + int(rng.next_below(7));
        const Matching a = random_matching(n, rng);
        const Matching b = random_matching(n, rng);
        try {
            const CodeBook cb = CodeBook::validate(a, b);
            ++valid_seen;
            CHECK(cb.cycles().half_lengths == cycle_half_lengths_oracle(a, b));
        } catch (const Error&) {
            // overlapping draw; skip
        }
    }
}

TEST_CASE("codebook invariants hold for generated codebooks") {
    Rng rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 2 + int(rng.next_below(9));
        const auto strategy = (iter % 2 == 0) ? GenerateStrategy::Cyclic
                                              : GenerateStrategy::RejectionUniform;
        const CodeBook cb = CodeBook::generate(n, rng, strategy);

        int sum = 0;
        for (int k : cb.cycles().half_lengths) {
            CHECK(k >= 2);
            sum += k;
        }
        CHECK(sum == n);
        CHECK(edge_set(cb.s0()).size() == std::size_t(n));
        CHECK(edge_set(cb.s1()).size() == std::size_t(n));

        // Union is 2-regular: every position has one partner per matching.
        for (int pos = 1; pos <= 2 * n; ++pos) {
            CHECK(cb.s0().partner(pos) != pos);
            CHECK(cb.s1().partner(pos) != pos);
            CHECK(cb.s0().partner(pos) != cb.s1().partner(pos));
        }
    }
}

TEST_CASE("cyclic generation yields a single cycle of half-length N") {
    for (int n = 2; n <= 12; ++n) {
        Rng rng(100 + n);
        const CodeBook cb = CodeBook::generate(n, rng, GenerateStrategy::Cyclic);
        CHECK(cb.cycles().half_lengths == std::vector<int>{n});
    }
}

TEST_CASE("generation is deterministic in (n_pairs, seed, strategy)") {
    for (auto strategy : {GenerateStrategy::Cyclic,
                          GenerateStrategy::RejectionUniform}) {
        Rng rng_a(42), rng_b(42), rng_c(43);
        const CodeBook a = CodeBook::generate(6, rng_a, strategy);
        const CodeBook b = CodeBook::generate(6, rng_b, strategy);
        const CodeBook c = CodeBook::generate(6, rng_c, strategy);
        CHECK(a.s0() == b.s0());
        CHECK(a.s1() == b.s1());
        const bool same_as_c = a.s0() == c.s0() && a.s1() == c.s1();
        CHECK_FALSE(same_as_c);
    }
}

TEST_CASE("generation size floor") {
    Rng rng(1);
    CHECK_THROWS_AS(CodeBook::generate(1, rng, GenerateStrategy::Cyclic),
                    Error);
    try {
        CodeBook::generate(0, rng, GenerateStrategy::RejectionUniform);
        FAIL("expected TooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooSmall);
    }
}

namespace {

// All perfect matchings on positions 1..2n, by always pairing the smallest
// free position with every possible partner.
void all_matchings_rec(std::vector<int>& free_positions,
                       std::vector<Pair>& current,
                       std::vector<std::vector<Pair>>& out) {
    if (free_positions.empty()) {
        out.push_back(current);
        return;
    }
    const int first = free_positions.front();
    for (std::size_t j = 1; j < free_positions.size(); ++j) {
        const int partner = free_positions[j];
        std::vector<int> rest;
        for (std::size_t k = 1; k < free_positions.size(); ++k) {
            if (k != j) rest.push_back(free_positions[k]);
        }
        current.push_back(make_pair_canonical(first, partner));
        all_matchings_rec(rest, current, out);
        current.pop_back();
    }
}

std::vector<std::vector<Pair>> all_matchings(int n_pairs) {
    std::vector<int> positions(2 * n_pairs);
    std::iota(positions.begin(), positions.end(), 1);
    std::vector<std::vector<Pair>> out;
    std::vector<Pair> current;
    all_matchings_rec(positions, current, out);
    return out;
}

}  // namespace

TEST_CASE("rejection sampling is uniform over disjoint matching pairs") {
    // Ground truth on 8 positions: 105 perfect matchings; each one is
    // edge-disjoint from exactly 60 others, giving 6300 ordered pairs.
    const auto matchings = all_matchings(4);
    REQUIRE(matchings.size() == 105);

    std::map<std::vector<Pair>, int> index;
    for (std::size_t i = 0; i < matchings.size(); ++i) {
        index[matchings[i]] = static_cast<int>(i);
    }

    std::set<std::pair<int, int>> disjoint_pairs;
    for (std::size_t i = 0; i < matchings.size(); ++i) {
        const std::set<Pair> ei(matchings[i].begin(), matchings[i].end());
        for (std::size_t j = 0; j < matchings.size(); ++j) {
            bool shares = false;
            for (const auto& p : matchings[j]) {
                if (ei.count(p)) {
                    shares = true;
                    break;
                }
            }
            if (!shares) disjoint_pairs.insert({int(i), int(j)});
        }
    }
    REQUIRE(disjoint_pairs.size() == 6300);

    const int draws = 100000;
    Rng rng(0xD15C0);
    std::map<std::pair<int, int>, int> counts;
    for (int d = 0; d < draws; ++d) {
        const CodeBook cb =
            CodeBook::generate(4, rng, GenerateStrategy::RejectionUniform);
        counts[{index.at(cb.s0().pairs()), index.at(cb.s1().pairs())}]++;
    }
    for (const auto& [cell, count] : counts) {
        CHECK(disjoint_pairs.count(cell) == 1);
        (void)count;
    }

    // Per-cell 3-sigma check. With 6300 cells a ~0.3% violation rate is the
    // expected behaviour of a perfectly uniform sampler, so allow that many
    // (with headroom) rather than demanding zero.
    const double expected = double(draws) / 6300.0;
    const double sigma = std::sqrt(expected * (1.0 - 1.0 / 6300.0));
    int violations = 0;
    double chi_square = 0.0;
    for (const auto& cell : disjoint_pairs) {
        const auto it = counts.find(cell);
        const double observed = it == counts.end() ? 0.0 : it->second;
        if (std::abs(observed - expected) > 3.0 * sigma) ++violations;
        chi_square += (observed - expected) * (observed - expected) / expected;
    }
    CHECK(violations <= 60);

    // Aggregate goodness of fit: chi-square with 6299 degrees of freedom.
    const double df = 6299.0;
    CHECK(std::abs(chi_square - df) <= 3.0 * std::sqrt(2.0 * df));
}

TEST_CASE("rejection cap exhaustion reports RetryExhausted") {
    Rng rng(9);
    try {
        CodeBook::generate(2, rng, GenerateStrategy::RejectionUniform,
                           /*retry_cap=*/0);
        FAIL("expected RetryExhausted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RetryExhausted);
    }
}

TEST_CASE("codebook JSON document round-trips") {
    Rng rng(21);
    const CodeBook cb =
        CodeBook::generate(5, rng, GenerateStrategy::RejectionUniform);
    const std::string doc = codebook_to_json(cb);
    CHECK(doc.find("\"positions\": \"1-based\"") != std::string::npos);
    CHECK(doc.find("\"n_pairs\": 5") != std::string::npos);

    const CodeBook back = codebook_from_json(doc);
    CHECK(back.s0() == cb.s0());
    CHECK(back.s1() == cb.s1());
    CHECK(back.cycles() == cb.cycles());
}

TEST_CASE("codebook JSON rejects malformed documents") {
    CHECK_THROWS_AS(codebook_from_json("not json"), Error);
    CHECK_THROWS_AS(codebook_from_json("{\"n_pairs\": 2, \"s0\": []}"), Error);
    try {
        codebook_from_json(
            R"({"n_pairs": 3, "s0": [[1,2],[3,4]], "s1": [[1,3],[2,4]]})");
        FAIL("expected SizeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeMismatch);
    }
    try {
        codebook_from_json(
            R"({"n_pairs": 2, "s0": [[1,2],[3,4]], "s1": [[1,2],[3,4]]})");
        FAIL("expected OverlapError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Overlap);
    }
}
