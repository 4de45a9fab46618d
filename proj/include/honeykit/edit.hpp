#pragma once
// String distances used by attackers and the hardness partition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace honeykit {

// Damerau-Levenshtein distance (optimal string alignment: substitutions,
// insertions, deletions and adjacent transpositions, each cost 1).
inline std::size_t damerau_levenshtein(const std::string& a, const std::string& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                cur[j] = std::min(cur[j], prev2[j - 2] + 1);
        }
        std::swap(prev2, prev);
        std::swap(prev, cur);
    }
    return prev[m];
}

// 1 - d/max(|a|,|b|), in [0,1]; identical strings (including two empties) -> 1.
inline double normalized_edit_similarity(const std::string& a, const std::string& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t denom = std::max(a.size(), b.size());
    double d = double(damerau_levenshtein(a, b));
    return 1.0 - d / double(denom);
}

struct CommonSubstring {
    std::size_t length = 0;
    std::size_t pos_a = 0;  // leftmost start in a for the maximal length
};

// Longest common substring; ties on length resolved to the leftmost
// occurrence in `a`.
inline CommonSubstring longest_common_substring(const std::string& a, const std::string& b) {
    CommonSubstring best;
    if (a.empty() || b.empty()) return best;
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) {
                cur[j] = prev[j - 1] + 1;
                std::size_t start = i - cur[j];
                if (cur[j] > best.length ||
                    (cur[j] == best.length && start < best.pos_a)) {
                    best.length = cur[j];
                    best.pos_a = start;
                }
            } else {
                cur[j] = 0;
            }
        }
        std::swap(prev, cur);
    }
    return best;
}

inline double lcs_overlap_similarity(const std::string& a, const std::string& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    auto c = longest_common_substring(a, b);
    return 2.0 * double(c.length) / double(a.size() + b.size());
}

// Fast test for a common substring of length >= 4 (equivalent to sharing a
// character 4-gram).
inline std::unordered_set<std::uint32_t> four_grams(const std::string& s) {
    std::unordered_set<std::uint32_t> g;
    if (s.size() < 4) return g;
    for (std::size_t i = 0; i + 4 <= s.size(); ++i) {
        std::uint32_t v = 0;
        for (std::size_t k = 0; k < 4; ++k)
            v = (v << 8) | static_cast<unsigned char>(s[i + k]);
        g.insert(v);
    }
    return g;
}

inline bool shares_substring4(const std::string& a,
                              const std::unordered_set<std::uint32_t>& b_grams) {
    if (a.size() < 4 || b_grams.empty()) return false;
    for (std::size_t i = 0; i + 4 <= a.size(); ++i) {
        std::uint32_t v = 0;
        for (std::size_t k = 0; k < 4; ++k)
            v = (v << 8) | static_cast<unsigned char>(a[i + k]);
        if (b_grams.count(v)) return true;
    }
    return false;
}

}  // namespace honeykit
