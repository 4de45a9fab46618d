#pragma once
// Probabilistic password models: List, PCFG, Markov and their uniform
// mixture, plus template extraction for the targeted (#) variants.
//
// PCFG segments a password into maximal same-class runs over L (letters),
// D (digits), S (symbols); the structure distribution is the empirical
// frequency of segment signatures and each terminal distribution is the
// empirical frequency of segment strings among all segments of that class
// and length. The Markov chain of order s emits end-of-sequence as a symbol
// and supports add-delta smoothing over the alphabet plus eos.
//
// Template models reserve byte 0x01 as the shared-substring placeholder; it
// carries its own segment class so the same model machinery trains over
// templates unchanged.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "honeykit/chars.hpp"
#include "honeykit/corpus.hpp"
#include "honeykit/edit.hpp"
#include "honeykit/errors.hpp"
#include "honeykit/rng.hpp"

namespace honeykit {

inline constexpr int kMaxSampledLength = 30;
inline constexpr int kEosSymbol = 256;

enum class ModelKind { List, Pcfg, Markov, Combo };

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::List: return "list";
        case ModelKind::Pcfg: return "pcfg";
        case ModelKind::Markov: return "markov";
        case ModelKind::Combo: return "combo";
    }
    return "?";
}

inline std::optional<ModelKind> model_kind_from(const std::string& s) {
    if (s == "list") return ModelKind::List;
    if (s == "pcfg") return ModelKind::Pcfg;
    if (s == "markov") return ModelKind::Markov;
    if (s == "combo") return ModelKind::Combo;
    return std::nullopt;
}

inline std::uint64_t corpus_digest(const std::vector<std::string>& corpus) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto eat = [&h](unsigned char b) {
        h ^= b;
        h *= 0x100000001b3ULL;
    };
    for (const auto& s : corpus) {
        for (char c : s) eat(static_cast<unsigned char>(c));
        eat(0xff);
    }
    return h;
}

// Maximal same-class runs. Throws on characters outside the alphabet.
inline std::vector<std::pair<CharClass, std::string>> segment(const std::string& p) {
    std::vector<std::pair<CharClass, std::string>> out;
    for (char c : p) {
        CharClass cls = class_of(c);
        if (out.empty() || out.back().first != cls)
            out.emplace_back(cls, std::string());
        out.back().second.push_back(c);
    }
    return out;
}

inline std::string signature_of(const std::string& p) {
    std::string sig;
    for (const auto& [cls, run] : segment(p)) {
        sig.push_back(class_letter(cls));
        sig += std::to_string(run.size());
    }
    return sig;
}

namespace detail {

// Sorted (value, count) table with categorical sampling.
struct CountTable {
    std::vector<std::pair<std::string, std::uint64_t>> entries;  // sorted by value
    std::uint64_t total = 0;

    void add(const std::string& v) { entries.emplace_back(v, 1); }

    void finalize() {
        std::sort(entries.begin(), entries.end());
        std::size_t w = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (w && entries[w - 1].first == entries[i].first)
                entries[w - 1].second += entries[i].second;
            else
                entries[w++] = entries[i];
        }
        entries.resize(w);
        total = 0;
        for (const auto& [_, c] : entries) total += c;
    }

    std::uint64_t count(const std::string& v) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), v,
                                   [](const auto& e, const std::string& s) {
                                       return e.first < s;
                                   });
        return (it != entries.end() && it->first == v) ? it->second : 0;
    }

    const std::string& sample(Rng& rng) const {
        std::uint64_t x = rng.uniform(total);
        for (const auto& [v, c] : entries) {
            if (x < c) return v;
            x -= c;
        }
        return entries.back().first;
    }
};

inline void write_table(std::ostream& out, const char* tag, const CountTable& t) {
    out << tag << ' ' << t.entries.size() << '\n';
    for (const auto& [v, c] : t.entries) out << c << ' ' << v << '\n';
}

inline CountTable read_table(std::istream& in, const char* tag) {
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || word != tag)
        throw std::runtime_error("model file: expected section " + std::string(tag));
    in.ignore();
    CountTable t;
    t.entries.reserve(n);
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("model file: truncated");
        auto sp = line.find(' ');
        t.entries.emplace_back(line.substr(sp + 1),
                               std::stoull(line.substr(0, sp)));
        t.total += t.entries.back().second;
    }
    return t;
}

}  // namespace detail

class PasswordModel {
public:
    virtual ~PasswordModel() = default;
    virtual ModelKind kind() const = 0;
    virtual double prob(const std::string& p) const = 0;
    virtual std::string sample(Rng& rng) const = 0;
    virtual void save_body(std::ostream& out) const = 0;
    // List-like models expose their support so attackers can enumerate it.
    virtual const std::vector<std::pair<std::string, std::uint64_t>>* support() const {
        return nullptr;
    }

    bool templates = false;  // trained on pwd_str templates
    std::uint64_t digest = 0;

    void save(std::ostream& out) const {
        out << "honeykit-model v1\n";
        out << "kind " << to_string(kind()) << '\n';
        out << "templates " << int(templates) << '\n';
        out << "digest " << digest << '\n';
        save_body(out);
    }
};

class ListModel final : public PasswordModel {
public:
    ModelKind kind() const override { return ModelKind::List; }

    double prob(const std::string& p) const override {
        return table_.total ? double(table_.count(p)) / double(table_.total) : 0.0;
    }

    std::string sample(Rng& rng) const override {
        if (!table_.total) throw GenerationError(GenError::insufficient_support, "empty list model");
        return table_.sample(rng);
    }

    const std::vector<std::pair<std::string, std::uint64_t>>* support() const override {
        return &table_.entries;
    }

    void save_body(std::ostream& out) const override {
        detail::write_table(out, "table", table_);
    }

    static ListModel train(const std::vector<std::string>& corpus) {
        if (corpus.empty()) throw std::invalid_argument("empty corpus");
        ListModel m;
        for (const auto& p : corpus) m.table_.add(p);
        m.table_.finalize();
        m.digest = corpus_digest(corpus);
        return m;
    }

    static ListModel load_body(std::istream& in) {
        ListModel m;
        m.table_ = detail::read_table(in, "table");
        return m;
    }

private:
    detail::CountTable table_;
};

class PcfgModel final : public PasswordModel {
public:
    ModelKind kind() const override { return ModelKind::Pcfg; }

    double prob(const std::string& p) const override {
        auto segs = segment(p);
        std::string sig;
        for (const auto& [cls, run] : segs) {
            sig.push_back(class_letter(cls));
            sig += std::to_string(run.size());
        }
        if (!structures_.total) return 0.0;
        double pr = double(structures_.count(sig)) / double(structures_.total);
        if (pr == 0.0) return 0.0;
        for (const auto& [cls, run] : segs) {
            auto it = terminals_.find({class_letter(cls), int(run.size())});
            if (it == terminals_.end() || !it->second.total) return 0.0;
            pr *= double(it->second.count(run)) / double(it->second.total);
            if (pr == 0.0) return 0.0;
        }
        return pr;
    }

    std::string sample(Rng& rng) const override {
        if (!structures_.total)
            throw GenerationError(GenError::insufficient_support, "empty pcfg model");
        const std::string& sig = structures_.sample(rng);
        std::string out;
        std::size_t i = 0;
        while (i < sig.size()) {
            char cls = sig[i++];
            int len = 0;
            while (i < sig.size() && sig[i] >= '0' && sig[i] <= '9')
                len = len * 10 + (sig[i++] - '0');
            out += terminals_.at({cls, len}).sample(rng);
        }
        return out;
    }

    void save_body(std::ostream& out) const override {
        detail::write_table(out, "structures", structures_);
        out << "terminal_tables " << terminals_.size() << '\n';
        for (const auto& [key, table] : terminals_) {
            out << "class " << key.first << ' ' << key.second << '\n';
            detail::write_table(out, "terms", table);
        }
    }

    static PcfgModel train(const std::vector<std::string>& corpus) {
        if (corpus.empty()) throw std::invalid_argument("empty corpus");
        PcfgModel m;
        for (const auto& p : corpus) {
            auto segs = segment(p);
            std::string sig;
            for (const auto& [cls, run] : segs) {
                sig.push_back(class_letter(cls));
                sig += std::to_string(run.size());
                m.terminals_[{class_letter(cls), int(run.size())}].add(run);
            }
            m.structures_.add(sig);
        }
        m.structures_.finalize();
        for (auto& [_, t] : m.terminals_) t.finalize();
        m.digest = corpus_digest(corpus);
        return m;
    }

    static PcfgModel load_body(std::istream& in) {
        PcfgModel m;
        m.structures_ = detail::read_table(in, "structures");
        std::string word;
        std::size_t n = 0;
        if (!(in >> word >> n) || word != "terminal_tables")
            throw std::runtime_error("model file: expected terminal_tables");
        for (std::size_t i = 0; i < n; ++i) {
            char cls;
            int len;
            if (!(in >> word >> cls >> len) || word != "class")
                throw std::runtime_error("model file: expected class header");
            in.ignore();
            m.terminals_[{cls, len}] = detail::read_table(in, "terms");
        }
        return m;
    }

private:
    detail::CountTable structures_;
    std::map<std::pair<char, int>, detail::CountTable> terminals_;
};

class MarkovModel final : public PasswordModel {
public:
    ModelKind kind() const override { return ModelKind::Markov; }

    int order() const { return order_; }
    double delta() const { return delta_; }

    double prob(const std::string& p) const override {
        double pr = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            pr *= cond_prob(context_at(p, i), int(static_cast<unsigned char>(p[i])));
            if (pr == 0.0) return 0.0;
        }
        pr *= cond_prob(context_at(p, p.size()), kEosSymbol);
        return pr;
    }

    std::string sample(Rng& rng) const override {
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::string out;
            bool dead = false;
            while (int(out.size()) < kMaxSampledLength) {
                int sym = sample_symbol(context_at(out, out.size()), rng, dead);
                if (dead) break;
                if (sym == kEosSymbol) return out;
                out.push_back(char(sym));
            }
            if (!dead) return out;  // length cap reached
        }
        throw GenerationError(GenError::dead_end,
                              "markov sampling hit unseen contexts (delta=0)");
    }

    void save_body(std::ostream& out) const override {
        out << "order " << order_ << '\n';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", delta_);
        out << "delta " << buf << '\n';
        out << "alphabet " << (extended_ ? "sigma+tag" : "sigma") << '\n';
        std::uint64_t lines = 0;
        for (const auto& [_, d] : contexts_) lines += d.counts.size();
        out << "transitions " << lines << '\n';
        for (const auto& [ctx, d] : contexts_)
            for (const auto& [sym, cnt] : d.counts)
                out << cnt << ' ' << sym << ' ' << ctx << '\n';
    }

    static MarkovModel train(const std::vector<std::string>& corpus, int order,
                             double delta) {
        if (order < 1) throw std::invalid_argument("markov order must be >= 1");
        if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
        MarkovModel m;
        m.order_ = order;
        m.delta_ = delta;
        for (const auto& p : corpus) {
            for (char c : p)
                if (c == kTemplateTag) m.extended_ = true;
            for (std::size_t i = 0; i < p.size(); ++i)
                m.bump(m.context_at(p, i), int(static_cast<unsigned char>(p[i])));
            m.bump(m.context_at(p, p.size()), kEosSymbol);
        }
        for (auto& [_, d] : m.contexts_) d.finalize();
        m.digest = corpus_digest(corpus);
        return m;
    }

    static MarkovModel load_body(std::istream& in) {
        MarkovModel m;
        std::string word, line;
        if (!(in >> word >> m.order_) || word != "order")
            throw std::runtime_error("model file: expected order");
        if (!(in >> word >> m.delta_) || word != "delta")
            throw std::runtime_error("model file: expected delta");
        std::string alpha;
        if (!(in >> word >> alpha) || word != "alphabet")
            throw std::runtime_error("model file: expected alphabet");
        m.extended_ = alpha == "sigma+tag";
        std::uint64_t lines = 0;
        if (!(in >> word >> lines) || word != "transitions")
            throw std::runtime_error("model file: expected transitions");
        in.ignore();
        for (std::uint64_t i = 0; i < lines; ++i) {
            if (!std::getline(in, line)) throw std::runtime_error("model file: truncated");
            auto s1 = line.find(' ');
            auto s2 = line.find(' ', s1 + 1);
            std::uint64_t cnt = std::stoull(line.substr(0, s1));
            int sym = std::stoi(line.substr(s1 + 1, s2 - s1 - 1));
            std::string ctx = s2 + 1 <= line.size() ? line.substr(s2 + 1) : std::string();
            auto& d = m.contexts_[ctx];
            d.counts.emplace_back(sym, cnt);
        }
        for (auto& [_, d] : m.contexts_) d.finalize();
        return m;
    }

private:
    struct Dist {
        std::vector<std::pair<int, std::uint64_t>> counts;  // sorted by symbol
        std::uint64_t total = 0;

        void finalize() {
            std::sort(counts.begin(), counts.end());
            std::size_t w = 0;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                if (w && counts[w - 1].first == counts[i].first)
                    counts[w - 1].second += counts[i].second;
                else
                    counts[w++] = counts[i];
            }
            counts.resize(w);
            total = 0;
            for (const auto& [_, c] : counts) total += c;
        }

        std::uint64_t count(int sym) const {
            auto it = std::lower_bound(counts.begin(), counts.end(),
                                       std::make_pair(sym, std::uint64_t(0)));
            return (it != counts.end() && it->first == sym) ? it->second : 0;
        }
    };

    std::string context_at(const std::string& p, std::size_t i) const {
        std::size_t m = std::min(i, std::size_t(order_));
        return p.substr(i - m, m);
    }

    void bump(const std::string& ctx, int sym) {
        auto& d = contexts_[ctx];
        d.counts.emplace_back(sym, 1);
    }

    std::size_t alphabet_size() const { return kSigma.size() + (extended_ ? 1 : 0); }

    // Ordered symbol universe: alphabet bytes ascending (tag first when
    // extended), then eos.
    int nth_symbol(std::size_t i) const {
        if (extended_) {
            if (i == 0) return int(static_cast<unsigned char>(kTemplateTag));
            --i;
        }
        if (i < kSigma.size()) return int(static_cast<unsigned char>(kSigma[i]));
        return kEosSymbol;
    }

    double cond_prob(const std::string& ctx, int sym) const {
        auto it = contexts_.find(ctx);
        double denom_smooth = delta_ * double(alphabet_size() + 1);
        if (it == contexts_.end()) {
            if (delta_ == 0.0) return 0.0;
            return 1.0 / double(alphabet_size() + 1);
        }
        const Dist& d = it->second;
        return (double(d.count(sym)) + delta_) / (double(d.total) + denom_smooth);
    }

    int sample_symbol(const std::string& ctx, Rng& rng, bool& dead) const {
        dead = false;
        auto it = contexts_.find(ctx);
        if (it == contexts_.end() && delta_ == 0.0) {
            dead = true;
            return kEosSymbol;
        }
        if (delta_ == 0.0) {
            const Dist& d = it->second;
            std::uint64_t x = rng.uniform(d.total);
            for (const auto& [sym, c] : d.counts) {
                if (x < c) return sym;
                x -= c;
            }
            return d.counts.back().first;
        }
        const Dist* d = it == contexts_.end() ? nullptr : &it->second;
        double mass = (d ? double(d->total) : 0.0) + delta_ * double(alphabet_size() + 1);
        double x = rng.uniform_real() * mass;
        for (std::size_t i = 0; i <= alphabet_size(); ++i) {
            int sym = nth_symbol(i);
            double w = (d ? double(d->count(sym)) : 0.0) + delta_;
            if (x < w) return sym;
            x -= w;
        }
        return kEosSymbol;
    }

    int order_ = 1;
    double delta_ = 0.0;
    bool extended_ = false;
    std::map<std::string, Dist> contexts_;
};

class ComboModel final : public PasswordModel {
public:
    ModelKind kind() const override { return ModelKind::Combo; }

    double prob(const std::string& p) const override {
        return (list_->prob(p) + pcfg_->prob(p) + markov_->prob(p)) / 3.0;
    }

    std::string sample(Rng& rng) const override {
        switch (rng.uniform(3)) {
            case 0: return list_->sample(rng);
            case 1: return pcfg_->sample(rng);
            default: return markov_->sample(rng);
        }
    }

    void save_body(std::ostream& out) const override {
        list_->save_body(out);
        pcfg_->save_body(out);
        markov_->save_body(out);
    }

    static ComboModel train(const std::vector<std::string>& corpus, int order,
                            double delta) {
        ComboModel m;
        m.list_ = std::make_unique<ListModel>(ListModel::train(corpus));
        m.pcfg_ = std::make_unique<PcfgModel>(PcfgModel::train(corpus));
        m.markov_ = std::make_unique<MarkovModel>(MarkovModel::train(corpus, order, delta));
        m.digest = corpus_digest(corpus);
        return m;
    }

    static ComboModel load_body(std::istream& in) {
        ComboModel m;
        m.list_ = std::make_unique<ListModel>(ListModel::load_body(in));
        m.pcfg_ = std::make_unique<PcfgModel>(PcfgModel::load_body(in));
        m.markov_ = std::make_unique<MarkovModel>(MarkovModel::load_body(in));
        return m;
    }

    const ListModel& list() const { return *list_; }
    const PcfgModel& pcfg() const { return *pcfg_; }
    const MarkovModel& markov() const { return *markov_; }

private:
    std::unique_ptr<ListModel> list_;
    std::unique_ptr<PcfgModel> pcfg_;
    std::unique_ptr<MarkovModel> markov_;
};

inline std::unique_ptr<PasswordModel> train_model(ModelKind kind,
                                                  const std::vector<std::string>& corpus,
                                                  int order = 5, double delta = 0.01) {
    switch (kind) {
        case ModelKind::List:
            return std::make_unique<ListModel>(ListModel::train(corpus));
        case ModelKind::Pcfg:
            return std::make_unique<PcfgModel>(PcfgModel::train(corpus));
        case ModelKind::Markov:
            return std::make_unique<MarkovModel>(MarkovModel::train(corpus, order, delta));
        case ModelKind::Combo:
            return std::make_unique<ComboModel>(ComboModel::train(corpus, order, delta));
    }
    throw std::logic_error("unknown model kind");
}

inline std::unique_ptr<PasswordModel> load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "honeykit-model v1")
        throw std::runtime_error("not a honeykit model file");
    std::string word, kind_s;
    int templates = 0;
    std::uint64_t digest = 0;
    if (!(in >> word >> kind_s) || word != "kind")
        throw std::runtime_error("model file: expected kind");
    if (!(in >> word >> templates) || word != "templates")
        throw std::runtime_error("model file: expected templates");
    if (!(in >> word >> digest) || word != "digest")
        throw std::runtime_error("model file: expected digest");
    in.ignore();
    auto kind = model_kind_from(kind_s);
    if (!kind) throw std::runtime_error("model file: unknown kind " + kind_s);
    std::unique_ptr<PasswordModel> m;
    switch (*kind) {
        case ModelKind::List:
            m = std::make_unique<ListModel>(ListModel::load_body(in));
            break;
        case ModelKind::Pcfg:
            m = std::make_unique<PcfgModel>(PcfgModel::load_body(in));
            break;
        case ModelKind::Markov:
            m = std::make_unique<MarkovModel>(MarkovModel::load_body(in));
            break;
        case ModelKind::Combo:
            m = std::make_unique<ComboModel>(ComboModel::load_body(in));
            break;
    }
    m->templates = templates != 0;
    m->digest = digest;
    return m;
}

// ---------------------------------------------------------------------------
// Templates for the targeted (#) variants.

// Longest common substring of p1 and p2 with length >= 4, replaced in p1 by
// the placeholder. Identical inputs yield the degenerate pure-placeholder
// template. Ties break to the leftmost occurrence in p1.
inline std::optional<std::string> extract_template(const std::string& p1,
                                                   const std::string& p2) {
    auto c = longest_common_substring(p1, p2);
    if (c.length < 4) return std::nullopt;
    std::string t = p1.substr(0, c.pos_a);
    t.push_back(kTemplateTag);
    t += p1.substr(c.pos_a + c.length);
    return t;
}

// All unordered pairs within each user's multiset, both substitution
// directions; pure-placeholder templates are discarded.
inline std::vector<std::string> template_corpus(
    const std::vector<PasswordMultiset>& users) {
    static const std::string pure(1, kTemplateTag);
    std::vector<std::string> out;
    auto add = [&out](const std::string& a, const std::string& b) {
        auto t = extract_template(a, b);
        if (t && *t != pure) out.push_back(std::move(*t));
    };
    for (const auto& ms : users) {
        for (std::size_t i = 0; i < ms.passwords.size(); ++i) {
            for (std::size_t j = i + 1; j < ms.passwords.size(); ++j) {
                add(ms.passwords[i], ms.passwords[j]);
                add(ms.passwords[j], ms.passwords[i]);
            }
        }
    }
    return out;
}

inline std::unique_ptr<PasswordModel> train_template_model(
    const std::vector<PasswordMultiset>& users, ModelKind base_kind, int order = 5,
    double delta = 0.01) {
    auto corpus = template_corpus(users);
    if (corpus.empty()) throw std::invalid_argument("empty template multiset");
    auto m = train_model(base_kind, corpus, order, delta);
    m->templates = true;
    return m;
}

}  // namespace honeykit
