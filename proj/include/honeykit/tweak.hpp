#pragma once
// Chaffing by tweaking: CBT{t} replaces the last t characters with random
// characters of the same class, CBT* randomizes case and digits in place.
// The hybrid CHM pipeline retrieves similar training passwords through a
// character-2-gram cosine index and tweaks each retrieved base.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "honeykit/chars.hpp"
#include "honeykit/errors.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

namespace detail {

inline char same_class_replacement(char orig, Rng& rng) {
    const std::string& set = class_alphabet(class_of(orig));
    if (set.size() < 2) return orig;
    auto pos = set.find(orig);
    std::size_t i = std::size_t(rng.uniform(set.size() - 1));
    return set[i + (i >= pos ? 1 : 0)];
}

}  // namespace detail

// Replace the last min(t,|p|) characters by uniformly random characters of
// the same class (letter/digit/symbol), each different from the original.
inline std::string cbt_t(const std::string& p, int t, Rng& rng) {
    if (t < 0) throw std::invalid_argument("cbt_t: t must be >= 0");
    std::string out = p;
    std::size_t k = std::min(std::size_t(t), p.size());
    for (std::size_t i = p.size() - k; i < p.size(); ++i)
        out[i] = detail::same_class_replacement(p[i], rng);
    return out;
}

// Per character: uppercase lowercased w.p. 0.3, lowercase capitalized
// w.p. 0.03, digit changed to a different digit w.p. 0.05, symbols fixed.
inline std::string cbt_star(const std::string& p, Rng& rng) {
    std::string out = p;
    for (char& c : out) {
        if (is_upper(c)) {
            if (rng.bernoulli(0.3)) c = char(c - 'A' + 'a');
        } else if (is_lower(c)) {
            if (rng.bernoulli(0.03)) c = char(c - 'a' + 'A');
        } else if (is_digit_c(c)) {
            if (rng.bernoulli(0.05)) c = detail::same_class_replacement(c, rng);
        }
    }
    return out;
}

// Character-2-gram cosine nearest neighbors over a password vocabulary.
class NeighborIndex {
public:
    static NeighborIndex build(const std::vector<std::string>& vocabulary) {
        NeighborIndex idx;
        std::set<std::string> uniq(vocabulary.begin(), vocabulary.end());
        idx.vocab_.assign(uniq.begin(), uniq.end());
        idx.norms_.resize(idx.vocab_.size());
        for (std::uint32_t id = 0; id < idx.vocab_.size(); ++id) {
            auto grams = gram_counts(idx.vocab_[id]);
            double sq = 0.0;
            for (const auto& [g, c] : grams) {
                sq += double(c) * double(c);
                idx.inverted_[g].emplace_back(id, c);
            }
            idx.norms_[id] = std::sqrt(sq);
        }
        return idx;
    }

    std::size_t vocabulary_size() const { return vocab_.size(); }

    struct Result {
        std::vector<std::string> neighbors;
        bool truncated = false;  // vocabulary smaller than the request
    };

    // Top-k by cosine similarity, ties broken lexicographically; an exact
    // occurrence of p in the vocabulary is excluded. Zero-similarity slots
    // are filled in lexicographic order.
    Result nearest(const std::string& p, std::size_t k = 9) const {
        Result res;
        auto pg = gram_counts(p);
        double pnorm = 0.0;
        for (const auto& [_, c] : pg) pnorm += double(c) * double(c);
        pnorm = std::sqrt(pnorm);

        std::unordered_map<std::uint32_t, double> dot;
        for (const auto& [g, c] : pg) {
            auto it = inverted_.find(g);
            if (it == inverted_.end()) continue;
            for (const auto& [id, vc] : it->second)
                dot[id] += double(c) * double(vc);
        }
        std::vector<std::pair<double, std::uint32_t>> scored;
        scored.reserve(dot.size());
        for (const auto& [id, d] : dot) {
            if (vocab_[id] == p) continue;
            double denom = pnorm * norms_[id];
            if (denom > 0.0) scored.emplace_back(d / denom, id);
        }
        std::sort(scored.begin(), scored.end(), [this](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return vocab_[a.second] < vocab_[b.second];
        });
        std::vector<bool> used(vocab_.size(), false);
        for (const auto& [_, id] : scored) {
            if (res.neighbors.size() == k) break;
            res.neighbors.push_back(vocab_[id]);
            used[id] = true;
        }
        // fill with zero-similarity vocabulary entries, lexicographic
        for (std::uint32_t id = 0; id < vocab_.size() && res.neighbors.size() < k; ++id) {
            if (used[id] || vocab_[id] == p) continue;
            res.neighbors.push_back(vocab_[id]);
        }
        res.truncated = res.neighbors.size() < k;
        return res;
    }

    void save(std::ostream& out) const {
        out << "honeykit-index v1\n";
        out << "gram_size 2\n";
        out << "vocabulary " << vocab_.size() << '\n';
        for (const auto& v : vocab_) out << v << '\n';
    }

    static NeighborIndex load(std::istream& in) {
        std::string line;
        if (!std::getline(in, line) || line != "honeykit-index v1")
            throw std::runtime_error("not a honeykit index file");
        std::string word;
        int gs = 0;
        std::size_t n = 0;
        if (!(in >> word >> gs) || word != "gram_size" || gs != 2)
            throw std::runtime_error("index file: bad gram_size");
        if (!(in >> word >> n) || word != "vocabulary")
            throw std::runtime_error("index file: bad vocabulary header");
        in.ignore();
        std::vector<std::string> vocab;
        vocab.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::getline(in, line)) throw std::runtime_error("index file: truncated");
            vocab.push_back(line);
        }
        return build(vocab);
    }

private:
    static std::unordered_map<std::uint32_t, std::uint32_t> gram_counts(
        const std::string& s) {
        std::unordered_map<std::uint32_t, std::uint32_t> g;
        for (std::size_t i = 0; i + 2 <= s.size(); ++i) {
            std::uint32_t v = (std::uint32_t(static_cast<unsigned char>(s[i])) << 8) |
                              std::uint32_t(static_cast<unsigned char>(s[i + 1]));
            ++g[v];
        }
        return g;
    }

    std::vector<std::string> vocab_;  // sorted
    std::vector<double> norms_;
    std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>
        inverted_;
};

// CHM: tweak the password and its 9 nearest vocabulary neighbors,
// ceil((n+1)/10) tweaks per base, then dedupe/shuffle/trim to n distinct
// honeywords (never the password itself).
inline std::vector<std::string> chm_generate(const NeighborIndex& index,
                                             const std::string& p, std::size_t n,
                                             Rng& rng) {
    if (n < 1) throw std::invalid_argument("chm_generate: n must be >= 1");
    std::vector<std::string> bases{p};
    auto nn = index.nearest(p, 9);
    bases.insert(bases.end(), nn.neighbors.begin(), nn.neighbors.end());
    std::size_t per_base = (n + 1 + 9) / 10;  // ceil((n+1)/10)

    std::set<std::string> pool;
    for (const auto& base : bases)
        for (std::size_t i = 0; i < per_base; ++i) {
            std::string t = cbt_star(base, rng);
            if (t != p) pool.insert(std::move(t));
        }

    std::uint64_t budget = 1000 * std::uint64_t(n);
    for (std::uint64_t attempt = 0; pool.size() < n && attempt < budget; ++attempt) {
        std::string t = cbt_star(bases[attempt % bases.size()], rng);
        if (t != p) pool.insert(std::move(t));
    }
    if (pool.size() < n)
        throw GenerationError(GenError::insufficient_diversity,
                              "chm could not produce n distinct honeywords");

    std::vector<std::string> out(pool.begin(), pool.end());
    rng.shuffle(out);
    out.resize(n);
    return out;
}

}  // namespace honeykit
