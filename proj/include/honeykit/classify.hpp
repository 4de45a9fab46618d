#pragma once
// Feature-based probabilistic classifier over the 38 generator classes
// (naive Bayes over composition features). Passwords whose length is not 14
// score zero for every class.

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "honeykit/algogen.hpp"
#include "honeykit/chars.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

namespace clf_detail {

inline constexpr int kNumFeatures = 9;
// upper count, lower count, symbol count, digit count, ambiguous count,
// non-core-symbol count, cv-alternation flag, memorable-shape flag,
// fragment-dictionary hits
inline constexpr int kFeatureBins[kNumFeatures] = {15, 15, 15, 15, 15, 15, 2, 2, 4};

inline const std::set<std::string>& fragment_set() {
    static const std::set<std::string> s(word_fragments().begin(),
                                         word_fragments().end());
    return s;
}

inline std::array<int, kNumFeatures> extract(const std::string& pw) {
    std::array<int, kNumFeatures> f{};
    int upper = 0, lower = 0, symbol = 0, digit = 0, ambig = 0, noncore = 0;
    for (char c : pw) {
        if (is_upper(c)) ++upper;
        else if (is_lower(c)) ++lower;
        else if (is_digit_c(c)) ++digit;
        else ++symbol;
        if (is_ambiguous(c)) ++ambig;
        if (is_symbol(c) && kCoreSymbols.find(c) == std::string::npos) ++noncore;
    }
    f[0] = std::min(upper, 14);
    f[1] = std::min(lower, 14);
    f[2] = std::min(symbol, 14);
    f[3] = std::min(digit, 14);
    f[4] = std::min(ambig, 14);
    f[5] = std::min(noncore, 14);
    bool letters_only = upper + lower == int(pw.size()) && !pw.empty();
    if (letters_only) {
        bool alt = true;
        auto is_vowel = [](char c) {
            char l = is_upper(c) ? char(c - 'A' + 'a') : c;
            return kVowels.find(l) != std::string::npos;
        };
        for (std::size_t i = 0; i + 1 < pw.size() && alt; ++i)
            if (is_vowel(pw[i]) == is_vowel(pw[i + 1])) alt = false;
        f[6] = alt ? 1 : 0;
    }
    if (pw.size() == 14 && !is_letter(pw[4]) && !is_letter(pw[9])) {
        bool rest_lower = true;
        for (std::size_t i = 0; i < 14 && rest_lower; ++i)
            if (i != 4 && i != 9 && !is_lower(pw[i])) rest_lower = false;
        f[7] = rest_lower ? 1 : 0;
    }
    if (pw.size() == 14) {
        int hits = 0;
        const auto& frags = fragment_set();
        for (std::size_t a : {std::size_t(0), std::size_t(5), std::size_t(10)})
            if (frags.count(pw.substr(a, 4))) ++hits;
        f[8] = hits;
    }
    return f;
}

}  // namespace clf_detail

class GenClassifier {
public:
    // samples_per_class[y] holds training passwords of class y+1; every class
    // needs at least one sample.
    static GenClassifier train(const std::vector<std::vector<std::string>>& samples) {
        if (int(samples.size()) != kNumClasses)
            throw std::invalid_argument("need samples for all 38 classes");
        GenClassifier c;
        for (int y = 0; y < kNumClasses; ++y) {
            if (samples[std::size_t(y)].empty())
                throw std::invalid_argument("missing samples for class " +
                                            std::to_string(y + 1));
            for (const auto& pw : samples[std::size_t(y)]) {
                auto f = clf_detail::extract(pw);
                for (int k = 0; k < clf_detail::kNumFeatures; ++k)
                    c.counts_[std::size_t(y)][std::size_t(k)][std::size_t(f[std::size_t(k)])]++;
            }
        }
        c.finalize();
        return c;
    }

    static GenClassifier train_from_simulation(int samples_per_class, std::uint64_t seed) {
        Rng master(seed);
        std::vector<std::vector<std::string>> samples(kNumClasses);
        for (int y = 0; y < kNumClasses; ++y) {
            Rng rng = master.stream(0x636c6673, std::uint64_t(y));  // "clfs"
            samples[std::size_t(y)].reserve(std::size_t(samples_per_class));
            for (int i = 0; i < samples_per_class; ++i)
                samples[std::size_t(y)].push_back(generate(y + 1, rng));
        }
        return train(samples);
    }

    // Normalized posterior over the 38 classes; all-zero when |p| != 14.
    std::array<double, kNumClasses> classify(const std::string& p) const {
        std::array<double, kNumClasses> out{};
        if (int(p.size()) != kGeneratedLength) return out;
        auto f = clf_detail::extract(p);
        std::array<double, kNumClasses> ll{};
        double best = -1e300;
        for (int y = 0; y < kNumClasses; ++y) {
            double s = 0.0;
            for (int k = 0; k < clf_detail::kNumFeatures; ++k)
                s += loglik_[std::size_t(y)][std::size_t(k)][std::size_t(f[std::size_t(k)])];
            ll[std::size_t(y)] = s;
            best = std::max(best, s);
        }
        double z = 0.0;
        for (int y = 0; y < kNumClasses; ++y) {
            out[std::size_t(y)] = std::exp(ll[std::size_t(y)] - best);
            z += out[std::size_t(y)];
        }
        for (auto& v : out) v /= z;
        return out;
    }

    int predict(const std::string& p) const {
        auto s = classify(p);
        int arg = 0;
        for (int y = 1; y < kNumClasses; ++y)
            if (s[std::size_t(y)] > s[std::size_t(arg)]) arg = y;
        return arg + 1;
    }

    // Majority vote of per-element argmax classes; ties resolved by summed
    // confidence, then by lowest class index. Elements that score zero
    // everywhere (wrong length) cast no vote.
    int vote(const std::vector<std::string>& x) const {
        if (x.empty()) throw std::invalid_argument("vote: empty multiset");
        std::array<int, kNumClasses> votes{};
        std::array<double, kNumClasses> conf{};
        for (const auto& pw : x) {
            auto s = classify(pw);
            int arg = 0;
            double total = 0.0;
            for (int y = 0; y < kNumClasses; ++y) {
                total += s[std::size_t(y)];
                if (s[std::size_t(y)] > s[std::size_t(arg)]) arg = y;
            }
            if (total == 0.0) continue;
            votes[std::size_t(arg)]++;
            conf[std::size_t(arg)] += s[std::size_t(arg)];
        }
        int best = 0;
        for (int y = 1; y < kNumClasses; ++y) {
            if (votes[std::size_t(y)] > votes[std::size_t(best)] ||
                (votes[std::size_t(y)] == votes[std::size_t(best)] &&
                 conf[std::size_t(y)] > conf[std::size_t(best)]))
                best = y;
        }
        return best + 1;
    }

    void save(std::ostream& out) const {
        out << "honeykit-classifier v1\n";
        for (int y = 0; y < kNumClasses; ++y)
            for (int k = 0; k < clf_detail::kNumFeatures; ++k) {
                for (int b = 0; b < clf_detail::kFeatureBins[k]; ++b)
                    out << counts_[std::size_t(y)][std::size_t(k)][std::size_t(b)]
                        << (b + 1 < clf_detail::kFeatureBins[k] ? ' ' : '\n');
            }
    }

    static GenClassifier load(std::istream& in) {
        std::string line;
        if (!std::getline(in, line) || line != "honeykit-classifier v1")
            throw std::runtime_error("not a honeykit classifier file");
        GenClassifier c;
        for (int y = 0; y < kNumClasses; ++y)
            for (int k = 0; k < clf_detail::kNumFeatures; ++k)
                for (int b = 0; b < clf_detail::kFeatureBins[k]; ++b)
                    if (!(in >> c.counts_[std::size_t(y)][std::size_t(k)][std::size_t(b)]))
                        throw std::runtime_error("classifier file: truncated");
        c.finalize();
        return c;
    }

private:
    void finalize() {
        for (int y = 0; y < kNumClasses; ++y)
            for (int k = 0; k < clf_detail::kNumFeatures; ++k) {
                double total = 0.0;
                for (int b = 0; b < clf_detail::kFeatureBins[k]; ++b)
                    total += double(counts_[std::size_t(y)][std::size_t(k)][std::size_t(b)] + 1);
                for (int b = 0; b < clf_detail::kFeatureBins[k]; ++b)
                    loglik_[std::size_t(y)][std::size_t(k)][std::size_t(b)] = std::log(
                        double(counts_[std::size_t(y)][std::size_t(k)][std::size_t(b)] + 1) /
                        total);
            }
    }

    using CountRow = std::array<std::array<std::uint64_t, 15>, clf_detail::kNumFeatures>;
    using LogRow = std::array<std::array<double, 15>, clf_detail::kNumFeatures>;
    std::array<CountRow, kNumClasses> counts_{};
    std::array<LogRow, kNumClasses> loglik_{};
};

// Row-stochastic empirical confusion matrix: row y = distribution of
// predicted classes for true class y+1.
inline std::vector<std::array<double, kNumClasses>> confusion_matrix(
    const GenClassifier& clf, const std::vector<std::vector<std::string>>& test) {
    if (int(test.size()) != kNumClasses)
        throw std::invalid_argument("need test samples for all 38 classes");
    std::vector<std::array<double, kNumClasses>> cm(kNumClasses);
    for (int y = 0; y < kNumClasses; ++y) {
        if (test[std::size_t(y)].empty())
            throw std::invalid_argument("empty test set for class " + std::to_string(y + 1));
        for (const auto& pw : test[std::size_t(y)])
            cm[std::size_t(y)][std::size_t(clf.predict(pw) - 1)] += 1.0;
        for (auto& v : cm[std::size_t(y)]) v /= double(test[std::size_t(y)].size());
    }
    return cm;
}

}  // namespace honeykit
