#include <set>

#include "doctest.h"
#include "honeykit/honeygen.hpp"

using namespace honeykit;

namespace {

void check_contract(const HoneywordSet& h, const std::string& p, std::size_t n) {
    CHECK(h.honeywords.size() == n);
    std::set<std::string> uniq(h.honeywords.begin(), h.honeywords.end());
    CHECK(uniq.size() == n);
    CHECK(uniq.count(p) == 0);
}

}  // namespace

TEST_CASE("every strategy meets the honeyword-set contract deterministically") {
    std::vector<std::string> train{"bike123", "qwerty99", "hunter22", "dragonfly",
                                   "pass!word", "summer2020", "letmein1", "hello123"};
    std::vector<PasswordMultiset> users{
        {"a@x.com", {"bike123", "bike123z"}},
        {"b@x.com", {"summer2020", "summer2020!"}},
        {"c@x.com", {"hunter22", "hunter22xx"}},
    };
    auto list = train_model(ModelKind::List, train);
    auto markov = train_model(ModelKind::Markov, train, 3, 0.01);
    auto tmodel = train_template_model(users, ModelKind::List);
    auto index = NeighborIndex::build(train);
    auto clf = GenClassifier::train_from_simulation(150, 5);

    std::vector<Strategy> strategies{
        Strategy::independent(*list),
        Strategy::independent(*markov),
        Strategy::strength(*markov),
        Strategy::targeted(*tmodel),
        Strategy::cbt(3),
        Strategy::cbt_star(),
        Strategy::chm(index),
        Strategy::fixed_class_strategy(32),
        Strategy::random_class_strategy(),
        Strategy::classified(clf),
    };
    // property: contract and determinism across varied inputs and sizes
    const std::vector<std::string> inputs{"bike123z", "summer2020", "hunter22",
                                          "Qq1!Qq1!"};
    for (const auto& st : strategies) {
        for (std::size_t pi = 0; pi < inputs.size(); ++pi) {
            std::size_t n = 2 + pi;  // 2..5, within every strategy's support here
            if (st.kind == StrategyKind::Targeted) n = std::min<std::size_t>(n, 3);
            Rng r1(77 + pi), r2(77 + pi);
            auto h1 = generate_honeywords(st, inputs[pi], n, r1);
            auto h2 = generate_honeywords(st, inputs[pi], n, r2);
            check_contract(h1, inputs[pi], n);
            CHECK(h1.honeywords == h2.honeywords);
        }
    }
}

TEST_CASE("strength variant pins the length") {
    std::vector<std::string> train{"abcd", "efgh", "ijkl", "mnopqr", "stuvwx",
                                   "yz1234", "qwerty", "as1df8"};
    auto markov = train_model(ModelKind::Markov, train, 2, 0.05);
    Rng rng(1);
    auto h = generate_honeywords(Strategy::strength(*markov), "bike12", 10, rng);
    for (const auto& w : h.honeywords) CHECK(w.size() == 6);
}

TEST_CASE("targeted substitution and small-support failure") {
    std::vector<PasswordMultiset> users{{"a@x.com", {"bike123", "bike123z"}}};
    auto tmodel = train_template_model(users, ModelKind::List);  // support: {<T>z}
    Rng rng(2);
    auto h = generate_honeywords(Strategy::targeted(*tmodel), "pass99", 1, rng);
    CHECK(h.honeywords[0] == "pass99z");

    Rng rng2(3);
    CHECK_THROWS_AS(generate_honeywords(Strategy::targeted(*tmodel), "pass99", 2, rng2),
                    GenerationError);
}

TEST_CASE("insufficient support reported for tiny list models") {
    std::vector<std::string> train{"aaaa", "bbbb"};
    auto list = train_model(ModelKind::List, train);
    Rng rng(4);
    CHECK_THROWS_AS(generate_honeywords(Strategy::independent(*list), "cccc", 5, rng),
                    GenerationError);
    // cbt with t=0 can never produce a distinct candidate
    Rng rng2(5);
    CHECK_THROWS_AS(generate_honeywords(Strategy::cbt(0), "abcd", 1, rng2),
                    GenerationError);
}

TEST_CASE("fixed strategy draws from class 32") {
    Rng rng(6);
    auto h = generate_honeywords(Strategy::fixed_class_strategy(32), "whatever1", 12, rng);
    for (const auto& w : h.honeywords) {
        CHECK(w.size() == 14);
        bool u = false, l = false, s = false, n = false;
        for (char c : w) {
            u |= is_upper(c);
            l |= is_lower(c);
            s |= is_symbol(c);
            n |= is_digit_c(c);
        }
        CHECK((u && l && s && n));
    }
}

TEST_CASE("sweetwords: size, membership, uniform position of p") {
    Rng rng(7);
    HoneywordSet h;
    for (int i = 0; i < 9; ++i) h.honeywords.push_back("hw" + std::to_string(i));
    const std::string p = "the-real-one";

    std::vector<int> pos_counts(10, 0);
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        auto sw = sweetwords(h, p, rng);
        REQUIRE(sw.size() == 10);
        int seen = 0;
        for (std::size_t i = 0; i < sw.size(); ++i)
            if (sw[i] == p) {
                ++pos_counts[i];
                ++seen;
            }
        REQUIRE(seen == 1);
    }
    // chi-square against uniform over 10 slots, df=9, p=0.01 threshold 21.67
    double expected = trials / 10.0, stat = 0.0;
    for (int c : pos_counts) stat += (c - expected) * (c - expected) / expected;
    CHECK(stat < 21.67);
}

TEST_CASE("attacker pools: list support is enumerated exhaustively") {
    std::vector<std::string> train{"aa11", "bb22", "cc33", "aa11"};
    auto list = train_model(ModelKind::List, train);
    Rng rng(8);
    auto pool = regenerate_pool(Strategy::independent(*list), "aa11", 100, rng);
    CHECK(pool.probabilistic);
    REQUIRE(pool.candidates.size() == 2);  // support minus p
    for (const auto& [cand, pr] : pool.candidates) {
        CHECK(cand != "aa11");
        CHECK(pr > 0.0);
    }
}
