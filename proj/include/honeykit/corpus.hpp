#pragma once
// Credential-dump ingestion: cleaning, joining by email/username, the
// train/test split, and account draws for the experiments.
//
// Input format: newline-delimited `email<TAB>password` UTF-8. Lines without
// exactly one tab are rejected (tabs cannot appear in passwords). Multiset
// files are `user_key<TAB>pw1<US>pw2...` with US = 0x1f.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "honeykit/algogen.hpp"
#include "honeykit/chars.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

struct Credential {
    std::string email;
    std::string password;
};

enum class CleanReason {
    accepted,
    non_ascii,   // password has a byte outside printable ASCII
    space,       // password contains a space
    hex_run,     // password contains >= 20 consecutive hex characters
    too_short,   // |password| < 4
    too_long,    // |password| > 30
    email_non_ascii,
    email_space,
};

inline const char* to_string(CleanReason r) {
    switch (r) {
        case CleanReason::accepted: return "accepted";
        case CleanReason::non_ascii: return "non_ascii";
        case CleanReason::space: return "space";
        case CleanReason::hex_run: return "hex_run";
        case CleanReason::too_short: return "too_short";
        case CleanReason::too_long: return "too_long";
        case CleanReason::email_non_ascii: return "email_non_ascii";
        case CleanReason::email_space: return "email_space";
    }
    return "unknown";
}

namespace detail {

inline bool is_hex_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// Printable ASCII except space. Control bytes count as non-ASCII for this
// filter's purpose (they are not text).
inline bool printable_ascii(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u >= 0x21 && u <= 0x7e;
}

}  // namespace detail

inline CleanReason clean_credential(const Credential& c) {
    for (char ch : c.password) {
        if (ch == ' ') continue;  // reported separately below
        if (!detail::printable_ascii(ch)) return CleanReason::non_ascii;
    }
    if (c.password.find(' ') != std::string::npos) return CleanReason::space;
    std::size_t run = 0;
    for (char ch : c.password) {
        run = detail::is_hex_char(ch) ? run + 1 : 0;
        if (run >= 20) return CleanReason::hex_run;
    }
    if (c.password.size() < 4) return CleanReason::too_short;
    if (c.password.size() > 30) return CleanReason::too_long;
    for (char ch : c.email) {
        if (ch == ' ') return CleanReason::email_space;
        if (!detail::printable_ascii(ch)) return CleanReason::email_non_ascii;
    }
    return CleanReason::accepted;
}

struct PasswordMultiset {
    std::string user_key;                 // canonical (smallest) email, lowercased
    std::vector<std::string> passwords;   // sorted; duplicates = multiset counts
};

struct CleanedDump {
    std::vector<Credential> kept;
    std::map<CleanReason, std::uint64_t> rejected;
    std::uint64_t malformed_lines = 0;
};

inline CleanedDump clean_dump(std::istream& in) {
    CleanedDump out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            ++out.malformed_lines;
            continue;
        }
        Credential c{line.substr(0, tab), line.substr(tab + 1)};
        CleanReason r = clean_credential(c);
        if (r == CleanReason::accepted)
            out.kept.push_back(std::move(c));
        else
            ++out.rejected[r];
    }
    return out;
}

namespace detail {

inline std::string lower_copy(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
    return s;
}

inline std::string username_part(const std::string& email) {
    auto at = email.find('@');
    return at == std::string::npos ? email : email.substr(0, at);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t(0));
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace detail

// Groups credentials by (lowercased) email, then merges groups that share a
// username part and at least one password, to fixpoint. Multisets with fewer
// than 2 or more than 1000 passwords are dropped.
inline std::vector<PasswordMultiset> join_by_email_and_username(
    const std::vector<Credential>& creds) {
    std::map<std::string, std::vector<std::string>> by_email;
    for (const auto& c : creds)
        by_email[detail::lower_copy(c.email)].push_back(c.password);

    std::vector<const std::string*> emails;
    emails.reserve(by_email.size());
    for (const auto& [email, _] : by_email) emails.push_back(&email);

    detail::UnionFind uf(emails.size());
    // (username, password) incidence drives the transitive merge.
    std::unordered_map<std::string, std::size_t> seen;
    seen.reserve(creds.size());
    for (std::size_t i = 0; i < emails.size(); ++i) {
        std::string user = detail::username_part(*emails[i]);
        const auto& pws = by_email.at(*emails[i]);
        for (const auto& pw : pws) {
            std::string key = user + '\x1f' + pw;
            auto [it, inserted] = seen.emplace(std::move(key), i);
            if (!inserted) uf.unite(it->second, i);
        }
    }

    std::map<std::size_t, PasswordMultiset> components;
    for (std::size_t i = 0; i < emails.size(); ++i) {
        std::size_t root = uf.find(i);
        auto& ms = components[root];
        if (ms.user_key.empty() || *emails[i] < ms.user_key) ms.user_key = *emails[i];
        const auto& pws = by_email.at(*emails[i]);
        ms.passwords.insert(ms.passwords.end(), pws.begin(), pws.end());
    }

    std::vector<PasswordMultiset> out;
    for (auto& [_, ms] : components) {
        if (ms.passwords.size() < 2 || ms.passwords.size() > 1000) continue;
        std::sort(ms.passwords.begin(), ms.passwords.end());
        out.push_back(std::move(ms));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.user_key < b.user_key; });
    return out;
}

struct CorpusSplit {
    std::vector<PasswordMultiset> train;
    std::vector<PasswordMultiset> test;
    std::uint64_t split_seed = 0;
    bool empty_test_warning = false;
};

inline CorpusSplit split(std::vector<PasswordMultiset> multisets, double fraction,
                         std::uint64_t seed) {
    if (multisets.empty()) throw std::invalid_argument("empty_corpus");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("fraction must be in (0,1)");
    std::sort(multisets.begin(), multisets.end(),
              [](const auto& a, const auto& b) { return a.user_key < b.user_key; });
    Rng rng(seed);
    rng = rng.stream(0x73706c69);  // "spli"
    std::vector<std::size_t> order(multisets.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    rng.shuffle(order);
    std::size_t train_n =
        std::size_t(std::llround(fraction * double(multisets.size())));
    train_n = std::min(train_n, multisets.size());
    CorpusSplit out;
    out.split_seed = seed;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto& dst = i < train_n ? out.train : out.test;
        dst.push_back(std::move(multisets[order[i]]));
    }
    out.empty_test_warning = out.test.empty();
    return out;
}

struct DrawnAccount {
    std::string password;          // p
    std::vector<std::string> others;  // x, drawn without replacement
};

// Uniform multiset, then p and the members of x without replacement. x_cap
// bounds |x| (x_cap = 1 reproduces the single-known-password setting).
inline DrawnAccount draw_account(const std::vector<PasswordMultiset>& test, Rng& rng,
                                 std::size_t x_cap = std::size_t(-1)) {
    if (test.empty()) throw std::invalid_argument("empty test corpus");
    const auto& ms = test[rng.uniform(test.size())];
    std::vector<std::string> pool = ms.passwords;
    std::size_t pi = std::size_t(rng.uniform(pool.size()));
    DrawnAccount out;
    out.password = pool[pi];
    pool.erase(pool.begin() + std::ptrdiff_t(pi));
    std::size_t take = std::min(x_cap, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
        std::size_t j = i + std::size_t(rng.uniform(pool.size() - i));
        std::swap(pool[i], pool[j]);
        out.others.push_back(pool[i]);
    }
    return out;
}

// Mixed-population construction: per multiset pick one generator class
// uniformly and replace each password independently with probability pi by a
// fresh sample from that class.
inline std::vector<PasswordMultiset> mix_with_algorithmic(
    std::vector<PasswordMultiset> test, double pi, std::uint64_t seed) {
    if (pi < 0.0 || pi > 1.0) throw std::invalid_argument("pi must be in [0,1]");
    Rng master(seed);
    for (std::size_t u = 0; u < test.size(); ++u) {
        Rng rng = master.stream(0x6d697875, u);  // "mixu"
        int cls = int(rng.uniform(kNumClasses)) + 1;
        for (auto& pw : test[u].passwords)
            if (rng.bernoulli(pi)) pw = generate(cls, rng);
        std::sort(test[u].passwords.begin(), test[u].passwords.end());
    }
    return test;
}

struct CorpusStats {
    std::uint64_t total_users = 0;
    std::uint64_t total_passwords = 0;
    double avg_passwords_per_user = 0.0;
    double avg_distinct_per_user = 0.0;
    double pct_reusing = 0.0;  // users with at least one repeated password
};

inline CorpusStats compute_stats(const std::vector<PasswordMultiset>& multisets) {
    CorpusStats s;
    s.total_users = multisets.size();
    std::uint64_t distinct_sum = 0, reusing = 0;
    for (const auto& ms : multisets) {
        s.total_passwords += ms.passwords.size();
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < ms.passwords.size(); ++i)
            if (i == 0 || ms.passwords[i] != ms.passwords[i - 1]) ++d;
        distinct_sum += d;
        if (d < ms.passwords.size()) ++reusing;
    }
    if (s.total_users) {
        s.avg_passwords_per_user = double(s.total_passwords) / double(s.total_users);
        s.avg_distinct_per_user = double(distinct_sum) / double(s.total_users);
        s.pct_reusing = 100.0 * double(reusing) / double(s.total_users);
    }
    return s;
}

inline constexpr char kUnitSep = '\x1f';

inline void write_multisets(std::ostream& out,
                            const std::vector<PasswordMultiset>& multisets) {
    for (const auto& ms : multisets) {
        out << ms.user_key << '\t';
        for (std::size_t i = 0; i < ms.passwords.size(); ++i) {
            if (i) out << kUnitSep;
            out << ms.passwords[i];
        }
        out << '\n';
    }
}

inline std::vector<PasswordMultiset> read_multisets(std::istream& in) {
    std::vector<PasswordMultiset> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("bad multiset record: missing tab");
        PasswordMultiset ms;
        ms.user_key = line.substr(0, tab);
        std::size_t pos = tab + 1;
        while (pos <= line.size()) {
            auto us = line.find(kUnitSep, pos);
            if (us == std::string::npos) {
                ms.passwords.push_back(line.substr(pos));
                break;
            }
            ms.passwords.push_back(line.substr(pos, us - pos));
            pos = us + 1;
        }
        std::sort(ms.passwords.begin(), ms.passwords.end());
        out.push_back(std::move(ms));
    }
    return out;
}

// Flattened password multiset (training input for the password models).
inline std::vector<std::string> all_passwords(
    const std::vector<PasswordMultiset>& multisets) {
    std::vector<std::string> out;
    for (const auto& ms : multisets)
        out.insert(out.end(), ms.passwords.begin(), ms.passwords.end());
    return out;
}

}  // namespace honeykit
