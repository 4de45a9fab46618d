#pragma once
// Monte-Carlo estimation of the false-positive and false-negative
// probabilities. A false-positive trial wins when attacker A guesses at
// least alpha honeywords within its beta-attempt budget; a false-negative
// trial wins when attacker B's top-alpha sweetwords include the password
// without alpha honeywords.
//
// Sweeps share the per-trial draws across alpha values (common random
// numbers), so FPP is nonincreasing and FNP nondecreasing in alpha by
// construction. Per-trial RNG streams are derived from the master seed, so
// results are independent of the thread count.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "honeykit/attack.hpp"
#include "honeykit/corpus.hpp"
#include "honeykit/edit.hpp"
#include "honeykit/honeygen.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

enum class Hardness : unsigned char { Easy, Medium, Hard };

inline const char* to_string(Hardness h) {
    switch (h) {
        case Hardness::Easy: return "easy";
        case Hardness::Medium: return "medium";
        case Hardness::Hard: return "hard";
    }
    return "?";
}

// Easy: some sweetword appears verbatim in x. Medium: some sweetword shares
// a substring of length >= 4 with some element of x. Hard: neither.
inline Hardness hardness(const HoneywordSet& h, const std::string& p,
                         const std::vector<std::string>& x) {
    std::unordered_set<std::string> xs(x.begin(), x.end());
    if (xs.count(p)) return Hardness::Easy;
    for (const auto& w : h.honeywords)
        if (xs.count(w)) return Hardness::Easy;
    std::unordered_set<std::uint32_t> grams;
    for (const auto& xp : x) {
        auto g = four_grams(xp);
        grams.insert(g.begin(), g.end());
    }
    if (shares_substring4(p, grams)) return Hardness::Medium;
    for (const auto& w : h.honeywords)
        if (shares_substring4(w, grams)) return Hardness::Medium;
    return Hardness::Hard;
}

enum class AttackerVariant { UserSim, AlgoVote, Mixed };

struct ExperimentConfig {
    std::size_t n = 19;        // honeywords per account
    std::size_t beta = 1000;   // attacker A's login budget
    std::uint64_t fpp_trials = 0;
    std::uint64_t fnp_trials = 10000;
    std::uint64_t seed = 1;
    Strategy strategy;
    AttackerVariant attacker = AttackerVariant::UserSim;
    MetricKind metric = MetricKind::ExactFirstThenEdit;
    const GenClassifier* classifier = nullptr;  // AlgoVote / Mixed

    // Account source: a corpus of multisets, or per-trial simulated
    // algorithmic accounts (a uniform generator class per account).
    const std::vector<PasswordMultiset>* corpus = nullptr;
    bool simulated_algo = false;
    int algo_passwords_per_account = 100;
    std::size_t x_cap = std::size_t(-1);

    int threads = 1;

    void validate() const {
        if (n < 1 || n > 1000) throw std::invalid_argument("n must be in 1..1000");
        if (beta < 1) throw std::invalid_argument("beta must be >= 1");
        if (!simulated_algo && corpus == nullptr)
            throw std::invalid_argument("no account source configured");
        if ((attacker == AttackerVariant::AlgoVote || attacker == AttackerVariant::Mixed) &&
            classifier == nullptr)
            throw std::invalid_argument("attacker variant needs a classifier");
    }
};

struct Estimate {
    double value = std::nan("");
    double lo = std::nan("");
    double hi = std::nan("");
    std::uint64_t wins = 0;
    std::uint64_t trials = 0;
};

inline Estimate wilson_estimate(std::uint64_t wins, std::uint64_t trials) {
    Estimate e;
    e.wins = wins;
    e.trials = trials;
    if (trials == 0) return e;
    const double z = 1.959963984540054;  // 95%
    double nn = double(trials), ph = double(wins) / nn;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (ph + z2 / (2.0 * nn)) / denom;
    double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    e.value = ph;
    e.lo = std::max(0.0, center - half);
    e.hi = std::min(1.0, center + half);
    return e;
}

struct SweepRow {
    std::size_t alpha = 0;
    Estimate fpp;
    Estimate fnp_all;
    Estimate fnp_easy;
    Estimate fnp_medium;
    Estimate fnp_hard;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::uint64_t fpp_aborts = 0;
    std::uint64_t fnp_aborts = 0;
    std::array<std::uint64_t, 3> bucket_counts{};  // easy, medium, hard
};

namespace detail {

struct TrialAccount {
    std::string p;
    std::vector<std::string> x;
};

inline TrialAccount draw_trial_account(const ExperimentConfig& cfg, Rng& rng) {
    TrialAccount acc;
    if (cfg.simulated_algo) {
        int cls = int(rng.uniform(kNumClasses)) + 1;
        acc.p = generate(cls, rng);
        std::size_t m = std::size_t(std::max(1, cfg.algo_passwords_per_account)) - 1;
        m = std::min(m, cfg.x_cap);
        for (std::size_t i = 0; i < m; ++i) acc.x.push_back(generate(cls, rng));
    } else {
        auto d = draw_account(*cfg.corpus, rng, cfg.x_cap);
        acc.p = std::move(d.password);
        acc.x = std::move(d.others);
    }
    return acc;
}

template <class Fn>
inline void parallel_trials(std::uint64_t trials, int threads, Fn&& fn) {
    int nt = std::max(1, threads);
    if (nt == 1 || trials < 2) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (trials + std::uint64_t(nt) - 1) / std::uint64_t(nt);
    for (int w = 0; w < nt; ++w) {
        std::uint64_t lo = std::uint64_t(w) * chunk;
        std::uint64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::uint64_t t = lo; t < hi; ++t) fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

inline constexpr std::uint64_t kFnpStream = 0x666e7031;  // "fnp1"
inline constexpr std::uint64_t kFppStream = 0x66707031;  // "fpp1"

}  // namespace detail

// Runs fnp_trials B-trials and fpp_trials A-trials, evaluating every alpha in
// `alphas` against shared per-trial draws. Trials that fail honeyword
// generation abort and are excluded from the estimates.
inline SweepResult run_experiment(const ExperimentConfig& cfg,
                                  const std::vector<std::size_t>& alphas) {
    cfg.validate();
    for (std::size_t a : alphas)
        if (a < 1 || a > cfg.n)
            throw std::invalid_argument("alpha must satisfy 1 <= alpha <= n");
    Rng master(cfg.seed);

    // FNP: rank of p in B's preference order decides every alpha at once.
    std::vector<std::int32_t> rank(cfg.fnp_trials, -1);
    std::vector<unsigned char> bucket(cfg.fnp_trials, 0);
    detail::parallel_trials(cfg.fnp_trials, cfg.threads, [&](std::uint64_t t) {
        Rng rng = master.stream(detail::kFnpStream, t);
        try {
            auto acc = detail::draw_trial_account(cfg, rng);
            HoneywordSet h = generate_honeywords(cfg.strategy, acc.p, cfg.n, rng);
            bucket[t] = static_cast<unsigned char>(hardness(h, acc.p, acc.x));
            auto sw = sweetwords(h, acc.p, rng);
            std::vector<std::size_t> order;
            switch (cfg.attacker) {
                case AttackerVariant::UserSim:
                    order = rank_sweetwords_user(sw, acc.x, cfg.metric);
                    break;
                case AttackerVariant::AlgoVote:
                    order = rank_sweetwords_algo(sw, acc.x, *cfg.classifier);
                    break;
                case AttackerVariant::Mixed:
                    order = rank_sweetwords_mixed(sw, acc.x, cfg.metric, *cfg.classifier);
                    break;
            }
            std::size_t p_index = 0;
            for (std::size_t i = 0; i < sw.size(); ++i)
                if (sw[i] == acc.p) {
                    p_index = i;
                    break;
                }
            for (std::size_t r = 0; r < order.size(); ++r)
                if (order[r] == p_index) {
                    rank[t] = std::int32_t(r);
                    break;
                }
        } catch (const GenerationError&) {
            rank[t] = -1;
        }
    });

    // FPP: |G intersect H| decides every alpha at once.
    std::vector<std::int32_t> hits(cfg.fpp_trials, -1);
    detail::parallel_trials(cfg.fpp_trials, cfg.threads, [&](std::uint64_t t) {
        Rng rng = master.stream(detail::kFppStream, t);
        try {
            auto acc = detail::draw_trial_account(cfg, rng);
            HoneywordSet h = generate_honeywords(cfg.strategy, acc.p, cfg.n, rng);
            AttackerGuess g = attacker_A(cfg.strategy, acc.p, cfg.beta, rng);
            std::set<std::string> hs(h.honeywords.begin(), h.honeywords.end());
            std::int32_t c = 0;
            for (const auto& w : g.guesses)
                if (hs.count(w)) ++c;
            hits[t] = c;
        } catch (const GenerationError&) {
            hits[t] = -1;
        }
    });

    SweepResult out;
    std::uint64_t fnp_ok = 0;
    std::array<std::uint64_t, 3> bucket_n{};
    for (std::uint64_t t = 0; t < cfg.fnp_trials; ++t) {
        if (rank[t] < 0) {
            ++out.fnp_aborts;
            continue;
        }
        ++fnp_ok;
        ++bucket_n[bucket[t]];
    }
    out.bucket_counts = bucket_n;
    std::uint64_t fpp_ok = 0;
    for (std::uint64_t t = 0; t < cfg.fpp_trials; ++t) {
        if (hits[t] < 0)
            ++out.fpp_aborts;
        else
            ++fpp_ok;
    }

    for (std::size_t a : alphas) {
        SweepRow row;
        row.alpha = a;
        std::uint64_t fpp_wins = 0;
        for (std::uint64_t t = 0; t < cfg.fpp_trials; ++t)
            if (hits[t] >= 0 && std::uint64_t(hits[t]) >= a) ++fpp_wins;
        if (cfg.fpp_trials) row.fpp = wilson_estimate(fpp_wins, fpp_ok);

        std::uint64_t wins_all = 0;
        std::array<std::uint64_t, 3> wins_bucket{};
        for (std::uint64_t t = 0; t < cfg.fnp_trials; ++t) {
            if (rank[t] < 0) continue;
            if (std::uint64_t(rank[t]) < a) {
                ++wins_all;
                ++wins_bucket[bucket[t]];
            }
        }
        if (cfg.fnp_trials) {
            row.fnp_all = wilson_estimate(wins_all, fnp_ok);
            row.fnp_easy = wilson_estimate(wins_bucket[0], bucket_n[0]);
            row.fnp_medium = wilson_estimate(wins_bucket[1], bucket_n[1]);
            row.fnp_hard = wilson_estimate(wins_bucket[2], bucket_n[2]);
        }
        out.rows.push_back(row);
    }
    return out;
}

inline void write_csv(std::ostream& os, const SweepResult& res,
                      std::uint64_t fpp_trials, std::uint64_t fnp_trials) {
    os << "alpha,fpp,fpp_lo,fpp_hi,fnp_all,fnp_all_lo,fnp_all_hi,"
          "fnp_easy,fnp_easy_lo,fnp_easy_hi,fnp_medium,fnp_medium_lo,fnp_medium_hi,"
          "fnp_hard,fnp_hard_lo,fnp_hard_hi,fpp_trials,fnp_trials,fpp_aborts,fnp_aborts\n";
    auto put = [&os](double v) {
        char buf[32];
        if (std::isnan(v))
            os << ",nan";
        else {
            std::snprintf(buf, sizeof buf, ",%.6f", v);
            os << buf;
        }
    };
    for (const auto& r : res.rows) {
        os << r.alpha;
        put(r.fpp.value);
        put(r.fpp.lo);
        put(r.fpp.hi);
        for (const auto* e : {&r.fnp_all, &r.fnp_easy, &r.fnp_medium, &r.fnp_hard}) {
            put(e->value);
            put(e->lo);
            put(e->hi);
        }
        os << ',' << fpp_trials << ',' << fnp_trials << ',' << res.fpp_aborts << ','
           << res.fnp_aborts << '\n';
    }
}

}  // namespace honeykit
