#pragma once
// Simulated algorithmic password generators (the 38 manager configurations)
// and the password-composition-policy random walk.
//
// Real manager binaries are not available, so the generators are simulated
// from each configuration's flag semantics:
//   - EasyToSay: alternating consonant/vowel letters over the enabled cases.
//   - EasyToRead: enabled classes balanced as equally as the length allows,
//     ambiguous characters (l,1,I,O,0,o) excluded, positions shuffled.
//   - AllChars: uniform over the union of enabled alphabets, with at least
//     one character of every enabled class.
//   - 1Password Random: as AllChars but with a 14-symbol set and a 0.2
//     uppercase ratio, matching that generator's lowercase-heavy output.
//   - 1Password Memorable: three 4-letter fragments joined by separators
//     (digits, or digits and symbols, per the flags).
// Passwords are always length 14.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "honeykit/chars.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

inline constexpr int kGeneratedLength = 14;
inline constexpr int kNumClasses = 38;

enum class Manager : unsigned char { LastPass, OnePassword };
enum class GenType : unsigned char {
    EasyToSay,
    EasyToRead,
    AllChars,
    RandomPassword,
    MemorablePassword
};

struct GeneratorClass {
    int index;  // 1..38
    Manager manager;
    GenType type;
    bool upper, lower, symbol, number;
};

inline const std::vector<GeneratorClass>& generator_classes() {
    using M = Manager;
    using T = GenType;
    static const std::vector<GeneratorClass> table = {
        {1, M::LastPass, T::EasyToSay, false, true, false, false},
        {2, M::LastPass, T::EasyToSay, true, false, false, false},
        {3, M::LastPass, T::EasyToSay, true, true, false, false},
        {4, M::LastPass, T::EasyToRead, false, false, true, false},
        {5, M::LastPass, T::EasyToRead, false, false, false, true},
        {6, M::LastPass, T::EasyToRead, false, false, true, true},
        {7, M::LastPass, T::EasyToRead, false, true, false, false},
        {8, M::LastPass, T::EasyToRead, false, true, true, false},
        {9, M::LastPass, T::EasyToRead, false, true, false, true},
        {10, M::LastPass, T::EasyToRead, false, true, true, true},
        {11, M::LastPass, T::EasyToRead, true, false, false, false},
        {12, M::LastPass, T::EasyToRead, true, false, true, false},
        {13, M::LastPass, T::EasyToRead, true, false, false, true},
        {14, M::LastPass, T::EasyToRead, true, false, true, true},
        {15, M::LastPass, T::EasyToRead, true, true, false, false},
        {16, M::LastPass, T::EasyToRead, true, true, true, false},
        {17, M::LastPass, T::EasyToRead, true, true, false, true},
        {18, M::LastPass, T::EasyToRead, true, true, true, true},
        {19, M::LastPass, T::AllChars, false, false, false, true},
        {20, M::LastPass, T::AllChars, false, false, true, true},
        {21, M::LastPass, T::AllChars, false, true, false, false},
        {22, M::LastPass, T::AllChars, false, true, true, false},
        {23, M::LastPass, T::AllChars, false, true, false, true},
        {24, M::LastPass, T::AllChars, false, true, true, true},
        {25, M::LastPass, T::AllChars, true, false, false, false},
        {26, M::LastPass, T::AllChars, true, false, true, false},
        {27, M::LastPass, T::AllChars, true, false, false, true},
        {28, M::LastPass, T::AllChars, true, false, true, true},
        {29, M::LastPass, T::AllChars, true, true, false, false},
        {30, M::LastPass, T::AllChars, true, true, true, false},
        {31, M::LastPass, T::AllChars, true, true, false, true},
        {32, M::LastPass, T::AllChars, true, true, true, true},
        {33, M::OnePassword, T::RandomPassword, true, true, true, false},
        {34, M::OnePassword, T::RandomPassword, true, true, false, false},
        {35, M::OnePassword, T::RandomPassword, true, true, true, true},
        {36, M::OnePassword, T::RandomPassword, true, true, false, true},
        {37, M::OnePassword, T::MemorablePassword, false, true, false, true},
        {38, M::OnePassword, T::MemorablePassword, false, true, true, true},
    };
    return table;
}

inline const GeneratorClass& generator_class(int index) {
    if (index < 1 || index > kNumClasses)
        throw std::out_of_range("generator class index " + std::to_string(index));
    return generator_classes()[std::size_t(index - 1)];
}

inline const std::string kConsonants = "bcdfghjklmnpqrstvwxyz";
inline const std::string kVowels = "aeiou";

// 2000 pronounceable 4-letter fragments used by the memorable generator and
// by the classifier's fragment-dictionary feature.
inline const std::vector<std::string>& word_fragments() {
    static const std::vector<std::string> frags = [] {
        std::vector<std::string> out;
        out.reserve(2000);
        for (char c1 : kConsonants)
            for (char v1 : kVowels)
                for (char c2 : kConsonants)
                    for (char v2 : kVowels) {
                        out.push_back(std::string{c1, v1, c2, v2});
                        if (out.size() == 2000) return out;
                    }
        return out;
    }();
    return frags;
}

namespace detail {

inline std::string strip_ambiguous(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!is_ambiguous(c)) out.push_back(c);
    return out;
}

inline char pick_excluding(Rng& rng, const std::string& set, char orig) {
    // Uniform over set \ {orig}; caller guarantees |set| > 1 when orig is in set.
    auto pos = set.find(orig);
    if (pos == std::string::npos) return set[rng.uniform(set.size())];
    std::size_t i = rng.uniform(set.size() - 1);
    return set[i + (i >= pos ? 1 : 0)];
}

inline bool covers_enabled(const std::string& pw, const GeneratorClass& g) {
    bool u = false, l = false, s = false, n = false;
    for (char c : pw) {
        if (is_upper(c)) u = true;
        else if (is_lower(c)) l = true;
        else if (is_digit_c(c)) n = true;
        else s = true;
    }
    return (!g.upper || u) && (!g.lower || l) && (!g.symbol || s) && (!g.number || n);
}

}  // namespace detail

inline std::string generate(const GeneratorClass& g, Rng& rng) {
    switch (g.type) {
        case GenType::EasyToSay: {
            for (;;) {
                std::string pw;
                pw.reserve(kGeneratedLength);
                for (int i = 0; i < kGeneratedLength; ++i) {
                    char c = (i % 2 == 0) ? rng.pick(kConsonants) : rng.pick(kVowels);
                    bool up = g.upper && (!g.lower || rng.bernoulli(0.5));
                    pw.push_back(up ? char(c - 'a' + 'A') : c);
                }
                if (detail::covers_enabled(pw, g)) return pw;
            }
        }
        case GenType::EasyToRead: {
            std::vector<std::string> sets;
            if (g.upper) sets.push_back(detail::strip_ambiguous(kUpper));
            if (g.lower) sets.push_back(detail::strip_ambiguous(kLower));
            if (g.symbol) sets.push_back(kSymbols);
            if (g.number) sets.push_back(detail::strip_ambiguous(kDigits));
            const std::size_t k = sets.size();
            std::vector<int> counts(k, kGeneratedLength / int(k));
            int rem = kGeneratedLength % int(k);
            std::vector<std::size_t> order(k);
            for (std::size_t i = 0; i < k; ++i) order[i] = i;
            rng.shuffle(order);
            for (int i = 0; i < rem; ++i) counts[order[std::size_t(i)]]++;
            std::vector<char> chars;
            chars.reserve(kGeneratedLength);
            for (std::size_t i = 0; i < k; ++i)
                for (int j = 0; j < counts[i]; ++j) chars.push_back(rng.pick(sets[i]));
            rng.shuffle(chars);
            return std::string(chars.begin(), chars.end());
        }
        case GenType::AllChars:
        case GenType::RandomPassword: {
            const bool one_p = g.type == GenType::RandomPassword;
            const std::string& syms = one_p ? kCoreSymbols : kSymbols;
            const double upper_ratio = one_p ? 0.2 : 0.5;
            // Weighted blocks: letters (both cases as one block when both
            // enabled), symbols, digits.
            std::size_t letter_w = (g.upper && g.lower) ? 52 : (g.upper || g.lower) ? 26 : 0;
            std::size_t sym_w = g.symbol ? syms.size() : 0;
            std::size_t dig_w = g.number ? 10 : 0;
            std::size_t total = letter_w + sym_w + dig_w;
            for (;;) {
                std::string pw;
                pw.reserve(kGeneratedLength);
                for (int i = 0; i < kGeneratedLength; ++i) {
                    std::uint64_t r = rng.uniform(total);
                    if (r < letter_w) {
                        char c = rng.pick(kLower);
                        bool up = g.upper && (!g.lower || rng.bernoulli(upper_ratio));
                        pw.push_back(up ? char(c - 'a' + 'A') : c);
                    } else if (r < letter_w + sym_w) {
                        pw.push_back(rng.pick(syms));
                    } else {
                        pw.push_back(rng.pick(kDigits));
                    }
                }
                if (detail::covers_enabled(pw, g)) return pw;
            }
        }
        case GenType::MemorablePassword: {
            const std::string seps = g.symbol ? kDigits + kSymbols : kDigits;
            const auto& frags = word_fragments();
            std::string pw = rng.pick(frags);
            pw += rng.pick(seps);
            pw += rng.pick(frags);
            pw += rng.pick(seps);
            pw += rng.pick(frags);
            return pw;
        }
    }
    throw std::logic_error("unreachable generator type");
}

inline std::string generate(int class_index, Rng& rng) {
    return generate(generator_class(class_index), rng);
}

// ---------------------------------------------------------------------------
// Password composition policies and the configuration random walk.

enum ReqBit : unsigned {
    kReqLetter = 1u << 0,
    kReqUpper = 1u << 1,
    kReqLower = 1u << 2,
    kReqSymbol = 1u << 3,
    kReqNumber = 1u << 4,
};

struct PolicyRule {
    enum class Kind : unsigned char { None, Require, AtLeast } kind = Kind::None;
    unsigned require_mask = 0;  // Require
    int at_least = 0;           // AtLeast: k of {U,L,S,N}
};

struct PasswordPolicy {
    std::string site;
    int min_len = 1;
    int max_len = -1;  // -1: unbounded
    PolicyRule rule;
};

inline bool satisfies(const std::string& p, const PasswordPolicy& pol) {
    if (int(p.size()) < pol.min_len) return false;
    if (pol.max_len >= 0 && int(p.size()) > pol.max_len) return false;
    bool u = false, l = false, s = false, n = false;
    for (char c : p) {
        if (is_upper(c)) u = true;
        else if (is_lower(c)) l = true;
        else if (is_digit_c(c)) n = true;
        else s = true;
    }
    switch (pol.rule.kind) {
        case PolicyRule::Kind::None: return true;
        case PolicyRule::Kind::Require: {
            unsigned m = pol.rule.require_mask;
            if ((m & kReqLetter) && !(u || l)) return false;
            if ((m & kReqUpper) && !u) return false;
            if ((m & kReqLower) && !l) return false;
            if ((m & kReqSymbol) && !s) return false;
            if ((m & kReqNumber) && !n) return false;
            return true;
        }
        case PolicyRule::Kind::AtLeast:
            return (int(u) + int(l) + int(s) + int(n)) >= pol.rule.at_least;
    }
    return true;
}

// Generator configuration carried through the walk: enabled classes + length.
enum CfgBit : unsigned { kCfgU = 1, kCfgL = 2, kCfgS = 4, kCfgN = 8 };

struct GenConfig {
    unsigned classes = kCfgL;
    int length = 8;
};

// Minimum configuration satisfying a policy. A site that imposes no
// composition rule leaves the generator unconstrained: full alphabet at the
// site's minimum length.
inline GenConfig min_config(const PasswordPolicy& pol) {
    GenConfig cfg;
    cfg.length = std::max(1, pol.min_len);
    switch (pol.rule.kind) {
        case PolicyRule::Kind::None:
            cfg.classes = kCfgU | kCfgL | kCfgS | kCfgN;
            break;
        case PolicyRule::Kind::Require: {
            unsigned c = 0, m = pol.rule.require_mask;
            if (m & kReqLetter) c |= kCfgL;
            if (m & kReqUpper) c |= kCfgU;
            if (m & kReqLower) c |= kCfgL;
            if (m & kReqSymbol) c |= kCfgS;
            if (m & kReqNumber) c |= kCfgN;
            cfg.classes = c ? c : kCfgL;
            break;
        }
        case PolicyRule::Kind::AtLeast: {
            static const unsigned pref[4] = {kCfgU, kCfgL, kCfgS, kCfgN};
            unsigned c = 0;
            for (int i = 0; i < pol.rule.at_least && i < 4; ++i) c |= pref[i];
            cfg.classes = c ? c : kCfgL;
            break;
        }
    }
    return cfg;
}

// Alphabet-level conflict: no password this configuration can emit satisfies
// the policy. Generated passwords contain every enabled class, so class
// coverage is exact.
inline bool config_conflicts(const GenConfig& cfg, const PasswordPolicy& pol) {
    if (cfg.length < pol.min_len) return true;
    if (pol.max_len >= 0 && cfg.length > pol.max_len) return true;
    unsigned c = cfg.classes;
    switch (pol.rule.kind) {
        case PolicyRule::Kind::None: return false;
        case PolicyRule::Kind::Require: {
            unsigned m = pol.rule.require_mask;
            if ((m & kReqLetter) && !(c & (kCfgU | kCfgL))) return true;
            if ((m & kReqUpper) && !(c & kCfgU)) return true;
            if ((m & kReqLower) && !(c & kCfgL)) return true;
            if ((m & kReqSymbol) && !(c & kCfgS)) return true;
            if ((m & kReqNumber) && !(c & kCfgN)) return true;
            return false;
        }
        case PolicyRule::Kind::AtLeast: {
            int types = int(bool(c & kCfgU)) + int(bool(c & kCfgL)) +
                        int(bool(c & kCfgS)) + int(bool(c & kCfgN));
            return types < pol.rule.at_least;
        }
    }
    return false;
}

// Sample-level conflict: draw one password from the configuration and test it.
inline bool config_conflicts_sampled(const GenConfig& cfg, const PasswordPolicy& pol,
                                     Rng& rng) {
    std::string alpha;
    if (cfg.classes & kCfgU) alpha += kUpper;
    if (cfg.classes & kCfgL) alpha += kLower;
    if (cfg.classes & kCfgS) alpha += kSymbols;
    if (cfg.classes & kCfgN) alpha += kDigits;
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::string pw;
        for (int i = 0; i < cfg.length; ++i) pw.push_back(rng.pick(alpha));
        bool u = false, l = false, s = false, n = false;
        for (char c : pw) {
            if (is_upper(c)) u = true;
            else if (is_lower(c)) l = true;
            else if (is_digit_c(c)) n = true;
            else s = true;
        }
        if ((cfg.classes & kCfgU) && !u) continue;
        if ((cfg.classes & kCfgL) && !l) continue;
        if ((cfg.classes & kCfgS) && !s) continue;
        if ((cfg.classes & kCfgN) && !n) continue;
        return !satisfies(pw, pol);
    }
    return true;  // cannot even cover its own classes at this length
}

// The 20-site policy table (composition rules retrieved May 2023).
inline std::vector<PasswordPolicy> builtin_top20_policies() {
    auto req = [](std::string site, int mn, int mx, unsigned mask) {
        PasswordPolicy p;
        p.site = std::move(site);
        p.min_len = mn;
        p.max_len = mx;
        p.rule.kind = PolicyRule::Kind::Require;
        p.rule.require_mask = mask;
        return p;
    };
    auto none = [](std::string site, int mn) {
        PasswordPolicy p;
        p.site = std::move(site);
        p.min_len = mn;
        return p;
    };
    auto atleast = [](std::string site, int mn, int mx, int k) {
        PasswordPolicy p;
        p.site = std::move(site);
        p.min_len = mn;
        p.max_len = mx;
        p.rule.kind = PolicyRule::Kind::AtLeast;
        p.rule.at_least = k;
        return p;
    };
    const unsigned lsn = kReqLetter | kReqSymbol | kReqNumber;
    return {
        req("google.com", 8, -1, lsn),
        req("youtube.com", 8, -1, lsn),
        req("facebook.com", 6, -1, lsn),
        req("twitter.com", 8, -1, lsn),
        req("instagram.com", 6, -1, lsn),
        atleast("baidu.com", 8, 14, 2),
        none("wikipedia.org", 8),
        req("yandex.ru", 6, -1, kReqUpper | kReqLower | kReqNumber),
        none("yahoo.com", 9),
        none("xvideos.com", 1),
        none("pornhub.com", 6),
        none("amazon.com", 6),
        req("tiktok.com", 8, 20, lsn),
        atleast("live.com", 8, -1, 2),
        none("openai.com", 8),
        none("reddit.com", 8),
        none("linkedin.com", 6),
        none("netflix.com", 6),
        atleast("office.com", 8, -1, 2),
        none("twitch.tv", 8),
    };
}

// Tranco statistics rows: fraction of sites NOT requiring U, L, S, N.
struct PolicyStatistics {
    std::string name;
    double not_requiring[4];  // U, L, S, N
    int sites = 101;
};

inline std::vector<PolicyStatistics> builtin_tranco_statistics() {
    return {
        {"tranco-10k", {0.817, 0.784, 0.803, 0.712}, 101},
        {"tranco-100k", {0.794, 0.792, 0.763, 0.825}, 101},
        {"tranco-1m", {0.837, 0.841, 0.863, 0.820}, 101},
    };
}

struct WalkStats {
    double avg_conflicts = 0.0;
    double p_conflict = 0.0;
    double avg_run_before_conflict = 0.0;
    std::uint64_t trials = 0;
};

struct PolicyWalkOptions {
    bool sample_level = false;  // per-sample conflict test instead of alphabet-level
};

namespace detail {

inline WalkStats finish_walk(std::uint64_t total_conflicts, std::uint64_t trials,
                             std::size_t nsites) {
    WalkStats w;
    w.trials = trials;
    w.avg_conflicts = double(total_conflicts) / double(trials);
    std::uint64_t transitions = std::uint64_t(nsites - 1);
    w.p_conflict = w.avg_conflicts / double(transitions);
    w.avg_run_before_conflict = w.avg_conflicts > 0.0
                                    ? double(transitions) / w.avg_conflicts
                                    : double(nsites);
    return w;
}

}  // namespace detail

// Random walk over a fixed policy list: each trial permutes the list, starts
// from the first site's minimum configuration, and counts conflicts.
inline WalkStats policy_walk(const std::vector<PasswordPolicy>& policies,
                             std::uint64_t trials, std::uint64_t seed,
                             PolicyWalkOptions opt = {}) {
    if (policies.empty()) throw std::invalid_argument("empty policy list");
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    Rng master(seed);
    std::uint64_t total = 0;
    std::vector<std::size_t> order(policies.size());
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = master.stream(0x706f6c69, t);  // "poli"
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        GenConfig cfg = min_config(policies[order[0]]);
        for (std::size_t i = 1; i < order.size(); ++i) {
            const auto& pol = policies[order[i]];
            bool conflict = opt.sample_level ? config_conflicts_sampled(cfg, pol, rng)
                                             : config_conflicts(cfg, pol);
            if (conflict) {
                ++total;
                cfg = min_config(pol);
            }
        }
    }
    return detail::finish_walk(total, trials, policies.size());
}

// Random walk over simulated sites: each site requires exactly one
// uniformly-chosen class with that class's marginal rate (otherwise nothing).
// Sites carry no length constraints; an initial no-requirement site yields a
// letters+digits default configuration.
inline WalkStats policy_walk(const PolicyStatistics& stats, std::uint64_t trials,
                             std::uint64_t seed) {
    if (stats.sites < 2) throw std::invalid_argument("need at least 2 sites");
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    static const unsigned bits[4] = {kCfgU, kCfgL, kCfgS, kCfgN};
    Rng master(seed);
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = master.stream(0x7472616e, t);  // "tran"
        unsigned cfg = 0;
        for (int i = 0; i < stats.sites; ++i) {
            std::size_t k = std::size_t(rng.uniform(4));
            unsigned req = rng.bernoulli(1.0 - stats.not_requiring[k]) ? bits[k] : 0u;
            if (i == 0) {
                cfg = req ? req : (kCfgL | kCfgN);
                continue;
            }
            if (req & ~cfg) {
                ++total;
                cfg = req;
            }
        }
    }
    return detail::finish_walk(total, trials, std::size_t(stats.sites));
}

// Policy file parser. One policy per line:
//   site min_len[..max_len] require(letter,symbol,number) | atleast(2) | none
// '#' starts a comment.
inline std::vector<PasswordPolicy> parse_policy_file(std::istream& in) {
    std::vector<PasswordPolicy> out;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("policy file line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string site, lens, rule;
        if (!(ls >> site)) continue;
        if (!(ls >> lens >> rule)) fail("expected: site min[..max] rule");
        PasswordPolicy p;
        p.site = site;
        auto dots = lens.find("..");
        try {
            if (dots == std::string::npos) {
                p.min_len = std::stoi(lens);
            } else {
                p.min_len = std::stoi(lens.substr(0, dots));
                p.max_len = std::stoi(lens.substr(dots + 2));
            }
        } catch (const std::exception&) {
            fail("bad length spec '" + lens + "'");
        }
        if (p.min_len < 1) fail("min length must be >= 1");
        if (rule == "none") {
            p.rule.kind = PolicyRule::Kind::None;
        } else if (rule.rfind("require(", 0) == 0 && rule.back() == ')') {
            p.rule.kind = PolicyRule::Kind::Require;
            std::string args = rule.substr(8, rule.size() - 9);
            std::istringstream as(args);
            std::string tok;
            while (std::getline(as, tok, ',')) {
                if (tok == "letter") p.rule.require_mask |= kReqLetter;
                else if (tok == "upper") p.rule.require_mask |= kReqUpper;
                else if (tok == "lower") p.rule.require_mask |= kReqLower;
                else if (tok == "symbol") p.rule.require_mask |= kReqSymbol;
                else if (tok == "number") p.rule.require_mask |= kReqNumber;
                else fail("unknown requirement '" + tok + "'");
            }
            if (!p.rule.require_mask) fail("require() needs at least one class");
        } else if (rule.rfind("atleast(", 0) == 0 && rule.back() == ')') {
            p.rule.kind = PolicyRule::Kind::AtLeast;
            try {
                p.rule.at_least = std::stoi(rule.substr(8, rule.size() - 9));
            } catch (const std::exception&) {
                fail("bad atleast() count");
            }
            if (p.rule.at_least < 1 || p.rule.at_least > 4) fail("atleast(k): k in 1..4");
        } else {
            fail("unknown rule '" + rule + "'");
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace honeykit
