#pragma once
// Unified honeyword generation: model-based (independent / strength /
// targeted), tweak-based (CBT{t}, CBT*, CHM) and generator-based (fixed /
// random / classified class) strategies, all enforcing the honeyword-set
// contract: exactly n distinct honeywords, never the account password.

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "honeykit/algogen.hpp"
#include "honeykit/classify.hpp"
#include "honeykit/errors.hpp"
#include "honeykit/models.hpp"
#include "honeykit/rng.hpp"
#include "honeykit/tweak.hpp"

namespace honeykit {

struct HoneywordSet {
    std::vector<std::string> honeywords;  // distinct, none equal to the password
};

enum class StrategyKind {
    Independent,      // model samples
    Strength,         // model samples restricted to |candidate| == |p|
    Targeted,         // template-model samples with pwd_str <- p
    CbtT,             // tweak last t characters
    CbtStar,          // case/digit tweaking
    Chm,              // neighbor retrieval + tweaking
    FixedClass,       // one fixed generator class (default 32)
    RandomClass,      // a uniformly random generator class per account
    ClassifiedClass,  // the class predicted from the account password
};

struct Strategy {
    StrategyKind kind = StrategyKind::Independent;
    const PasswordModel* model = nullptr;
    const NeighborIndex* index = nullptr;
    const GenClassifier* classifier = nullptr;
    int tweak_count = 4;   // CbtT
    int fixed_class = 32;  // FixedClass

    static Strategy independent(const PasswordModel& m) {
        return {StrategyKind::Independent, &m, nullptr, nullptr, 0, 0};
    }
    static Strategy strength(const PasswordModel& m) {
        return {StrategyKind::Strength, &m, nullptr, nullptr, 0, 0};
    }
    static Strategy targeted(const PasswordModel& template_model) {
        if (!template_model.templates)
            throw std::invalid_argument("targeted strategy needs a template model");
        return {StrategyKind::Targeted, &template_model, nullptr, nullptr, 0, 0};
    }
    static Strategy cbt(int t) {
        return {StrategyKind::CbtT, nullptr, nullptr, nullptr, t, 0};
    }
    static Strategy cbt_star() {
        return {StrategyKind::CbtStar, nullptr, nullptr, nullptr, 0, 0};
    }
    static Strategy chm(const NeighborIndex& idx) {
        return {StrategyKind::Chm, nullptr, &idx, nullptr, 0, 0};
    }
    static Strategy fixed_class_strategy(int cls = 32) {
        return {StrategyKind::FixedClass, nullptr, nullptr, nullptr, 0, cls};
    }
    static Strategy random_class_strategy() {
        return {StrategyKind::RandomClass, nullptr, nullptr, nullptr, 0, 0};
    }
    static Strategy classified(const GenClassifier& clf) {
        return {StrategyKind::ClassifiedClass, nullptr, nullptr, &clf, 0, 0};
    }
};

namespace detail {

inline std::string substitute_template(const std::string& tmpl, const std::string& p) {
    std::string out;
    for (char c : tmpl) {
        if (c == kTemplateTag)
            out += p;
        else
            out.push_back(c);
    }
    return out;
}

}  // namespace detail

inline HoneywordSet generate_honeywords(const Strategy& st, const std::string& p,
                                        std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (st.kind == StrategyKind::Chm) return {chm_generate(*st.index, p, n, rng)};

    int cls = 0;
    switch (st.kind) {
        case StrategyKind::FixedClass: cls = st.fixed_class; break;
        case StrategyKind::RandomClass: cls = int(rng.uniform(kNumClasses)) + 1; break;
        case StrategyKind::ClassifiedClass: cls = st.classifier->predict(p); break;
        default: break;
    }

    auto candidate = [&]() -> std::string {
        switch (st.kind) {
            case StrategyKind::Independent: return st.model->sample(rng);
            case StrategyKind::Strength: return st.model->sample(rng);
            case StrategyKind::Targeted:
                return detail::substitute_template(st.model->sample(rng), p);
            case StrategyKind::CbtT: return cbt_t(p, st.tweak_count, rng);
            case StrategyKind::CbtStar: return cbt_star(p, rng);
            default: return generate(cls, rng);
        }
    };

    HoneywordSet out;
    std::set<std::string> used;
    std::uint64_t budget = 1000 * std::uint64_t(n);
    for (std::uint64_t attempt = 0; attempt < budget && out.honeywords.size() < n;
         ++attempt) {
        std::string c = candidate();
        if (c == p) continue;
        if (st.kind == StrategyKind::Strength && c.size() != p.size()) continue;
        if (!used.insert(c).second) continue;
        out.honeywords.push_back(std::move(c));
    }
    if (out.honeywords.size() < n)
        throw GenerationError(GenError::insufficient_support,
                              "rejection budget exhausted before n distinct honeywords");
    return out;
}

// H u {p} in uniformly random order (attacker B's view).
inline std::vector<std::string> sweetwords(const HoneywordSet& h, const std::string& p,
                                           Rng& rng) {
    std::vector<std::string> out = h.honeywords;
    out.push_back(p);
    rng.shuffle(out);
    return out;
}

// ---------------------------------------------------------------------------
// Candidate pools for the false-positive attacker, who regenerates the
// defender's process. Model-backed strategies expose candidate probabilities
// for ranking; list-backed ones are enumerated exhaustively.

struct CandidatePool {
    std::vector<std::pair<std::string, double>> candidates;  // distinct
    bool probabilistic = false;
};

inline CandidatePool regenerate_pool(const Strategy& st, const std::string& p,
                                     std::size_t draws, Rng& rng) {
    CandidatePool pool;
    auto add_sampled = [&](std::set<std::string>& seen, std::string&& c, double pr) {
        if (c == p) return;
        if (st.kind == StrategyKind::Strength && c.size() != p.size()) return;
        if (seen.insert(c).second) pool.candidates.emplace_back(std::move(c), pr);
    };

    switch (st.kind) {
        case StrategyKind::Independent:
        case StrategyKind::Strength: {
            pool.probabilistic = true;
            if (const auto* sup = st.model->support()) {
                double total = 0.0;
                for (const auto& [_, c] : *sup) total += double(c);
                for (const auto& [v, c] : *sup) {
                    if (v == p) continue;
                    if (st.kind == StrategyKind::Strength && v.size() != p.size()) continue;
                    pool.candidates.emplace_back(v, double(c) / total);
                }
            } else {
                std::set<std::string> seen;
                for (std::size_t i = 0; i < draws; ++i) {
                    std::string c = st.model->sample(rng);
                    double pr = 0.0;
                    if (c != p && seen.find(c) == seen.end()) pr = st.model->prob(c);
                    add_sampled(seen, std::move(c), pr);
                }
            }
            break;
        }
        case StrategyKind::Targeted: {
            pool.probabilistic = true;
            std::map<std::string, double> best;
            if (const auto* sup = st.model->support()) {
                double total = 0.0;
                for (const auto& [_, c] : *sup) total += double(c);
                for (const auto& [tmpl, c] : *sup) {
                    std::string cand = detail::substitute_template(tmpl, p);
                    if (cand == p) continue;
                    double pr = double(c) / total;
                    auto [it, ins] = best.emplace(std::move(cand), pr);
                    if (!ins && pr > it->second) it->second = pr;
                }
            } else {
                for (std::size_t i = 0; i < draws; ++i) {
                    std::string tmpl = st.model->sample(rng);
                    std::string cand = detail::substitute_template(tmpl, p);
                    if (cand == p) continue;
                    double pr = st.model->prob(tmpl);
                    auto [it, ins] = best.emplace(std::move(cand), pr);
                    if (!ins && pr > it->second) it->second = pr;
                }
            }
            for (auto& [cand, pr] : best) pool.candidates.emplace_back(cand, pr);
            break;
        }
        case StrategyKind::CbtT:
        case StrategyKind::CbtStar: {
            std::set<std::string> seen;
            for (std::size_t i = 0; i < draws; ++i) {
                std::string c = st.kind == StrategyKind::CbtT
                                    ? cbt_t(p, st.tweak_count, rng)
                                    : cbt_star(p, rng);
                add_sampled(seen, std::move(c), 0.0);
            }
            break;
        }
        case StrategyKind::Chm: {
            std::vector<std::string> bases{p};
            auto nn = st.index->nearest(p, 9);
            bases.insert(bases.end(), nn.neighbors.begin(), nn.neighbors.end());
            std::set<std::string> seen;
            for (std::size_t i = 0; i < draws; ++i) {
                std::string c = cbt_star(bases[i % bases.size()], rng);
                add_sampled(seen, std::move(c), 0.0);
            }
            break;
        }
        case StrategyKind::FixedClass:
        case StrategyKind::ClassifiedClass: {
            int cls = st.kind == StrategyKind::FixedClass ? st.fixed_class
                                                          : st.classifier->predict(p);
            std::set<std::string> seen;
            for (std::size_t i = 0; i < draws; ++i)
                add_sampled(seen, generate(cls, rng), 0.0);
            break;
        }
        case StrategyKind::RandomClass: {
            std::set<std::string> seen;
            for (std::size_t i = 0; i < draws; ++i) {
                int cls = int(rng.uniform(kNumClasses)) + 1;
                add_sampled(seen, generate(cls, rng), 0.0);
            }
            break;
        }
    }
    return pool;
}

}  // namespace honeykit
