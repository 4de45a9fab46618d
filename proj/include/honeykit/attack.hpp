#pragma once
// False-positive attacker A (regenerates the defender's honeyword process
// and guesses likely honeywords) and false-negative attacker B (ranks the
// sweetwords by similarity to the user's other passwords, or by generator
// classification for algorithmic passwords).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "honeykit/classify.hpp"
#include "honeykit/edit.hpp"
#include "honeykit/honeygen.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

enum class MetricKind { NormalizedEdit, LcsOverlap, ExactFirstThenEdit };

inline const char* to_string(MetricKind m) {
    switch (m) {
        case MetricKind::NormalizedEdit: return "normalized-edit";
        case MetricKind::LcsOverlap: return "lcs-overlap";
        case MetricKind::ExactFirstThenEdit: return "exact-then-edit";
    }
    return "?";
}

// sim(a,a) = 1, symmetric, range [0,1]. ExactFirstThenEdit caps non-equal
// pairs below 1 so exact reuse always dominates.
inline double similarity(MetricKind m, const std::string& a, const std::string& b) {
    switch (m) {
        case MetricKind::NormalizedEdit: return normalized_edit_similarity(a, b);
        case MetricKind::LcsOverlap: return lcs_overlap_similarity(a, b);
        case MetricKind::ExactFirstThenEdit:
            if (a == b) return 1.0;
            return std::min(normalized_edit_similarity(a, b), 0.999);
    }
    return 0.0;
}

struct AttackerGuess {
    std::vector<std::string> guesses;
};

// Attacker A: regenerate a candidate pool through the defender's strategy on
// p; rank by candidate probability when the strategy exposes one, otherwise
// sample distinct candidates uniformly. Pool size = max(10*beta, 10^4).
inline AttackerGuess attacker_A(const Strategy& st, const std::string& p,
                                std::size_t beta, Rng& rng) {
    AttackerGuess g;
    if (beta == 0) return g;
    std::size_t draws = std::max(beta * 10, std::size_t(10000));
    CandidatePool pool = regenerate_pool(st, p, draws, rng);
    if (pool.probabilistic) {
        std::sort(pool.candidates.begin(), pool.candidates.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                  });
    } else {
        rng.shuffle(pool.candidates);
    }
    std::size_t take = std::min(beta, pool.candidates.size());
    g.guesses.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        g.guesses.push_back(std::move(pool.candidates[i].first));
    return g;
}

namespace detail {

// Indices of sweetwords sorted by score descending; equal scores keep list
// order, so ties resolve uniformly through the sweetword shuffle.
inline std::vector<std::size_t> order_by_score(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    return order;
}

}  // namespace detail

// Full preference order of attacker B for user-chosen passwords: each
// sweetword scores the similarity to its most similar element of x.
inline std::vector<std::size_t> rank_sweetwords_user(
    const std::vector<std::string>& sweetwords, const std::vector<std::string>& x,
    MetricKind metric) {
    std::vector<double> scores(sweetwords.size(), 0.0);
    for (std::size_t i = 0; i < sweetwords.size(); ++i)
        for (const auto& xp : x)
            scores[i] = std::max(scores[i], similarity(metric, sweetwords[i], xp));
    return detail::order_by_score(scores);
}

// Preference order for algorithmically generated passwords: vote a generator
// class from x, then score each sweetword of x's modal length by the
// confidence for that class.
inline std::vector<std::size_t> rank_sweetwords_algo(
    const std::vector<std::string>& sweetwords, const std::vector<std::string>& x,
    const GenClassifier& clf) {
    int voted = clf.vote(x);
    std::map<std::size_t, std::size_t> len_counts;
    for (const auto& xp : x) ++len_counts[xp.size()];
    std::size_t modal_len = 0, modal_count = 0;
    for (const auto& [len, cnt] : len_counts)
        if (cnt > modal_count) modal_len = len, modal_count = cnt;
    std::vector<double> scores(sweetwords.size(), 0.0);
    for (std::size_t i = 0; i < sweetwords.size(); ++i) {
        if (sweetwords[i].size() != modal_len) continue;
        scores[i] = clf.classify(sweetwords[i])[std::size_t(voted - 1)];
    }
    return detail::order_by_score(scores);
}

// Mixed-case attacker: use the algorithmic attacker when strictly more than
// half of the sweetwords look algorithmically generated (length 14 and a
// confident class), otherwise the similarity attacker.
inline bool looks_algorithmic(const GenClassifier& clf, const std::string& w) {
    if (int(w.size()) != kGeneratedLength) return false;
    auto s = clf.classify(w);
    double best = 0.0;
    for (double v : s) best = std::max(best, v);
    return best >= 0.5;
}

inline std::vector<std::size_t> rank_sweetwords_mixed(
    const std::vector<std::string>& sweetwords, const std::vector<std::string>& x,
    MetricKind metric, const GenClassifier& clf) {
    std::size_t shaped = 0;
    for (const auto& w : sweetwords)
        if (looks_algorithmic(clf, w)) ++shaped;
    if (shaped * 2 > sweetwords.size()) return rank_sweetwords_algo(sweetwords, x, clf);
    return rank_sweetwords_user(sweetwords, x, metric);
}

namespace detail {

inline AttackerGuess take_top(const std::vector<std::string>& sweetwords,
                              const std::vector<std::size_t>& order, std::size_t alpha) {
    if (alpha < 1 || alpha >= sweetwords.size())
        throw std::invalid_argument("alpha must satisfy 1 <= alpha <= n");
    AttackerGuess g;
    g.guesses.reserve(alpha);
    for (std::size_t i = 0; i < alpha; ++i) g.guesses.push_back(sweetwords[order[i]]);
    return g;
}

}  // namespace detail

// x empty degenerates to a uniform alpha-subset via the sweetword shuffle.
inline AttackerGuess attacker_B_user(const std::vector<std::string>& sweetwords,
                                     const std::vector<std::string>& x, std::size_t alpha,
                                     MetricKind metric) {
    return detail::take_top(sweetwords, rank_sweetwords_user(sweetwords, x, metric), alpha);
}

inline AttackerGuess attacker_B_algo(const std::vector<std::string>& sweetwords,
                                     const std::vector<std::string>& x, std::size_t alpha,
                                     const GenClassifier& clf) {
    return detail::take_top(sweetwords, rank_sweetwords_algo(sweetwords, x, clf), alpha);
}

inline AttackerGuess attacker_B_mixed(const std::vector<std::string>& sweetwords,
                                      const std::vector<std::string>& x, std::size_t alpha,
                                      MetricKind metric, const GenClassifier& clf) {
    return detail::take_top(sweetwords, rank_sweetwords_mixed(sweetwords, x, metric, clf),
                            alpha);
}

}  // namespace honeykit
