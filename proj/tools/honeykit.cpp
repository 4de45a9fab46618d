// honeykit command-line front end: corpus cleaning, model training, honeyword
// generation, classification, FPP/FNP estimation, alpha sweeps, the password
// policy walk, and corpus mixing.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "honeykit/attack.hpp"
#include "honeykit/classify.hpp"
#include "honeykit/corpus.hpp"
#include "honeykit/experiment.hpp"
#include "honeykit/honeygen.hpp"
#include "honeykit/models.hpp"
#include "honeykit/tweak.hpp"

using json = nlohmann::ordered_json;
using namespace honeykit;

namespace {

std::string out_path(const std::string& path) {
    const char* dir = std::getenv("HONEYKIT_OUT");
    if (!dir || !*dir || path.empty() || path[0] == '/') return path;
    return std::string(dir) + "/" + path;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(out_path(path), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path(path));
    return f;
}

std::uint64_t file_digest(const std::string& path) {
    auto f = open_in(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (f.read(buf, sizeof buf) || f.gcount())
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    return h;
}

std::string hex64(std::uint64_t v) {
    char b[17];
    std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(v));
    return b;
}

// Strategy spec: list | pcfg | markov | combo (suffix * or #), cbt<N>, cbt*,
// chm, fixed[:class], random, classified.
//
// Resources live on the heap so the Strategy's non-owning pointers stay valid
// when a StrategyResources value is moved around.
struct StrategyResources {
    std::unique_ptr<PasswordModel> model;
    std::unique_ptr<NeighborIndex> index;
    std::unique_ptr<GenClassifier> classifier;
    Strategy strategy;
};

StrategyResources load_strategy(const std::string& spec, const std::string& model_path,
                                const std::string& index_path,
                                const std::string& classifier_path) {
    StrategyResources r;
    auto need_model = [&](bool want_templates) -> const PasswordModel& {
        if (model_path.empty())
            throw CLI::ValidationError("--model is required for strategy " + spec);
        auto f = open_in(model_path);
        r.model = load_model(f);
        if (want_templates != r.model->templates)
            throw CLI::ValidationError(want_templates
                                           ? "strategy " + spec + " needs a template (#) model"
                                           : "strategy " + spec + " needs a plain model");
        return *r.model;
    };
    if (spec == "cbt*") {
        r.strategy = Strategy::cbt_star();
    } else if (spec.rfind("cbt", 0) == 0 && spec.size() > 3) {
        r.strategy = Strategy::cbt(std::stoi(spec.substr(3)));
    } else if (spec == "chm") {
        if (index_path.empty()) throw CLI::ValidationError("--index is required for chm");
        auto f = open_in(index_path);
        r.index = std::make_unique<NeighborIndex>(NeighborIndex::load(f));
        r.strategy = Strategy::chm(*r.index);
    } else if (spec == "fixed" || spec.rfind("fixed:", 0) == 0) {
        int cls = spec == "fixed" ? 32 : std::stoi(spec.substr(6));
        generator_class(cls);  // validate
        r.strategy = Strategy::fixed_class_strategy(cls);
    } else if (spec == "random") {
        r.strategy = Strategy::random_class_strategy();
    } else if (spec == "classified") {
        if (classifier_path.empty())
            throw CLI::ValidationError("--classifier is required for classified");
        auto f = open_in(classifier_path);
        r.classifier = std::make_unique<GenClassifier>(GenClassifier::load(f));
        r.strategy = Strategy::classified(*r.classifier);
    } else {
        std::string base = spec;
        bool star = false, hash = false;
        if (!base.empty() && (base.back() == '*' || base.back() == '#')) {
            star = base.back() == '*';
            hash = base.back() == '#';
            base.pop_back();
        }
        if (!model_kind_from(base))
            throw CLI::ValidationError("unknown strategy: " + spec);
        const auto& m = need_model(hash);
        r.strategy = hash ? Strategy::targeted(m)
                          : (star ? Strategy::strength(m) : Strategy::independent(m));
    }
    return r;
}

std::vector<std::size_t> parse_alphas(const std::string& s, std::size_t n) {
    std::vector<std::size_t> out;
    auto dots = s.find("..");
    if (dots != std::string::npos) {
        std::size_t lo = std::stoull(s.substr(0, dots));
        std::size_t hi = std::stoull(s.substr(dots + 2));
        for (std::size_t a = lo; a <= hi; ++a) out.push_back(a);
    } else {
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ',')) out.push_back(std::stoull(tok));
    }
    for (std::size_t a : out)
        if (a < 1 || a > n)
            throw CLI::ValidationError("alpha " + std::to_string(a) + " outside 1..n");
    if (out.empty()) throw CLI::ValidationError("empty alpha range");
    return out;
}

MetricKind parse_metric(const std::string& s) {
    if (s == "normalized-edit") return MetricKind::NormalizedEdit;
    if (s == "lcs-overlap") return MetricKind::LcsOverlap;
    if (s == "exact-then-edit") return MetricKind::ExactFirstThenEdit;
    throw CLI::ValidationError("unknown metric: " + s);
}

// Shared experiment options wired into fpp / fnp / sweep.
struct ExperimentCli {
    std::string corpus_path;
    bool algo_sim = false;
    int algo_per_account = 100;
    std::string strategy_spec = "list";
    std::string model_path, index_path, classifier_path;
    std::string attacker = "user";
    std::string metric = "exact-then-edit";
    std::size_t n = 19, beta = 1000;
    std::uint64_t trials = 10000, seed = 1;
    std::uint64_t x_cap = std::uint64_t(-1);
    int threads = 1;

    void attach(CLI::App* cmd, bool with_attacker) {
        cmd->add_option("--corpus", corpus_path, "multiset file with test accounts");
        cmd->add_flag("--algo-sim", algo_sim,
                      "simulate algorithmic accounts (uniform generator class)");
        cmd->add_option("--algo-per-account", algo_per_account,
                        "passwords per simulated account");
        cmd->add_option("--strategy", strategy_spec, "honeyword strategy")->required();
        cmd->add_option("--model", model_path, "password model file");
        cmd->add_option("--index", index_path, "neighbor index file (chm)");
        cmd->add_option("--classifier", classifier_path, "classifier file");
        cmd->add_option("-n,--honeywords", n, "honeywords per account");
        cmd->add_option("--beta", beta, "attacker A login budget");
        cmd->add_option("--trials", trials, "trials per estimate");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--x-cap", x_cap, "cap on |x| (0 = blind attacker)");
        cmd->add_option("--threads", threads, "worker threads");
        if (with_attacker) {
            cmd->add_option("--attacker", attacker, "user | algo | mixed");
            cmd->add_option("--metric", metric,
                            "normalized-edit | lcs-overlap | exact-then-edit");
        }
    }

    // Heap-allocated so the config's pointers into the corpus/classifier
    // members stay valid for the caller.
    struct Loaded {
        StrategyResources res;
        std::unique_ptr<GenClassifier> attacker_clf;
        std::vector<PasswordMultiset> corpus;
        ExperimentConfig cfg;
    };

    std::unique_ptr<Loaded> load(bool fpp, bool fnp) {
        auto l = std::make_unique<Loaded>();
        l->res = load_strategy(strategy_spec, model_path, index_path, classifier_path);
        l->cfg.strategy = l->res.strategy;
        l->cfg.n = n;
        l->cfg.beta = beta;
        l->cfg.seed = seed;
        l->cfg.threads = threads;
        l->cfg.x_cap = std::size_t(x_cap);
        l->cfg.fpp_trials = fpp ? trials : 0;
        l->cfg.fnp_trials = fnp ? trials : 0;
        if (algo_sim) {
            l->cfg.simulated_algo = true;
            l->cfg.algo_passwords_per_account = algo_per_account;
        } else {
            if (corpus_path.empty())
                throw CLI::ValidationError("--corpus or --algo-sim is required");
            auto f = open_in(corpus_path);
            l->corpus = read_multisets(f);
            if (l->corpus.empty()) throw CLI::ValidationError("empty corpus file");
            l->cfg.corpus = &l->corpus;
        }
        if (attacker == "user") {
            l->cfg.attacker = AttackerVariant::UserSim;
        } else if (attacker == "algo" || attacker == "mixed") {
            l->cfg.attacker = attacker == "algo" ? AttackerVariant::AlgoVote
                                                 : AttackerVariant::Mixed;
            if (l->res.classifier) {
                l->cfg.classifier = l->res.classifier.get();
            } else {
                if (classifier_path.empty())
                    throw CLI::ValidationError("--classifier required for attacker " + attacker);
                auto f = open_in(classifier_path);
                l->attacker_clf = std::make_unique<GenClassifier>(GenClassifier::load(f));
                l->cfg.classifier = l->attacker_clf.get();
            }
        } else {
            throw CLI::ValidationError("unknown attacker: " + attacker);
        }
        l->cfg.metric = parse_metric(metric);
        return l;
    }

    json manifest(const std::vector<std::size_t>& alphas) const {
        json m;
        m["strategy"] = strategy_spec;
        m["n"] = n;
        m["beta"] = beta;
        m["trials"] = trials;
        m["seed"] = seed;
        m["attacker"] = attacker;
        m["metric"] = metric;
        m["alphas"] = alphas;
        if (x_cap != std::uint64_t(-1)) m["x_cap"] = x_cap;
        if (algo_sim) {
            m["accounts"] = "simulated-algo";
            m["algo_per_account"] = algo_per_account;
        } else {
            m["corpus"] = corpus_path;
            m["corpus_digest"] = hex64(file_digest(corpus_path));
        }
        if (!model_path.empty()) m["model_digest"] = hex64(file_digest(model_path));
        if (!index_path.empty()) m["index_digest"] = hex64(file_digest(index_path));
        if (!classifier_path.empty())
            m["classifier_digest"] = hex64(file_digest(classifier_path));
        std::string flat = m.dump();
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char ch : flat) {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ULL;
        }
        m["config_digest"] = hex64(h);
        return m;
    }
};

void print_estimate(const char* name, const Estimate& e) {
    if (e.trials == 0) {
        std::printf("%s n/a (no trials)\n", name);
        return;
    }
    std::printf("%s %.6f  ci95 [%.6f, %.6f]  wins %llu/%llu\n", name, e.value, e.lo, e.hi,
                static_cast<unsigned long long>(e.wins),
                static_cast<unsigned long long>(e.trials));
}

int cmd_clean(const std::string& input, const std::string& output,
              const std::string& manifest_path) {
    auto in = open_in(input);
    auto dump = clean_dump(in);
    auto multisets = join_by_email_and_username(dump.kept);
    {
        auto out = open_out(output);
        write_multisets(out, multisets);
    }
    auto stats = compute_stats(multisets);
    if (multisets.empty())
        std::fprintf(stderr, "warning: no multisets survived joining (singletons only?)\n");

    json m;
    m["input"] = input;
    m["kept_credentials"] = dump.kept.size();
    m["malformed_lines"] = dump.malformed_lines;
    json rej = json::object();
    for (const auto& [reason, count] : dump.rejected) rej[to_string(reason)] = count;
    m["rejected"] = rej;
    m["total_users"] = stats.total_users;
    m["total_passwords"] = stats.total_passwords;
    m["avg_passwords_per_user"] = stats.avg_passwords_per_user;
    m["avg_distinct_per_user"] = stats.avg_distinct_per_user;
    m["pct_users_reusing"] = stats.pct_reusing;
    if (!manifest_path.empty()) {
        auto mf = open_out(manifest_path);
        mf << m.dump(2) << '\n';
    }
    std::cout << m.dump(2) << '\n';
    return 0;
}

int cmd_train(const std::string& kind, const std::string& input, const std::string& output,
              int order, double delta, int samples_per_class, std::uint64_t seed) {
    if (kind == "classifier") {
        auto clf = GenClassifier::train_from_simulation(samples_per_class, seed);
        auto out = open_out(output);
        clf.save(out);
        std::printf("trained classifier  samples_per_class %d  seed %llu\n",
                    samples_per_class, static_cast<unsigned long long>(seed));
        return 0;
    }
    auto in = open_in(input);
    auto multisets = read_multisets(in);
    if (kind == "index") {
        auto index = NeighborIndex::build(all_passwords(multisets));
        auto out = open_out(output);
        index.save(out);
        std::printf("built index  vocabulary %zu\n", index.vocabulary_size());
        return 0;
    }
    std::string base = kind;
    bool hash = false;
    if (!base.empty() && base.back() == '#') {
        hash = true;
        base.pop_back();
    }
    auto mk = model_kind_from(base);
    if (!mk) throw CLI::ValidationError("unknown model kind: " + kind);
    std::unique_ptr<PasswordModel> model;
    if (hash)
        model = train_template_model(multisets, *mk, order, delta);
    else
        model = train_model(*mk, all_passwords(multisets), order, delta);
    auto out = open_out(output);
    model->save(out);
    std::printf("trained %s  order %d  delta %g  corpus_digest %s\n", kind.c_str(), order,
                delta, hex64(model->digest).c_str());
    return 0;
}

int cmd_gen(const std::string& spec, const std::string& model_path,
            const std::string& index_path, const std::string& classifier_path,
            const std::string& password, std::size_t n, std::uint64_t seed) {
    auto res = load_strategy(spec, model_path, index_path, classifier_path);
    Rng rng(seed);
    auto h = generate_honeywords(res.strategy, password, n, rng);
    for (const auto& w : h.honeywords) std::cout << w << '\n';
    return 0;
}

int cmd_classify(const std::string& classifier_path, const std::string& password, int top) {
    auto f = open_in(classifier_path);
    auto clf = GenClassifier::load(f);
    auto scores = clf.classify(password);
    std::vector<int> order(kNumClasses);
    for (int i = 0; i < kNumClasses; ++i) order[std::size_t(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores[std::size_t(a)] > scores[std::size_t(b)];
    });
    for (int i = 0; i < top && i < kNumClasses; ++i) {
        int y = order[std::size_t(i)];
        const auto& g = generator_class(y + 1);
        std::printf("class %2d  score %.6f  %s %s%s%s%s%s\n", y + 1,
                    scores[std::size_t(y)],
                    g.manager == Manager::LastPass ? "lastpass" : "1password",
                    g.type == GenType::EasyToSay ? "easy-to-say"
                    : g.type == GenType::EasyToRead ? "easy-to-read"
                    : g.type == GenType::AllChars ? "all-chars"
                    : g.type == GenType::RandomPassword ? "random" : "memorable",
                    g.upper ? " U" : "", g.lower ? " L" : "", g.symbol ? " S" : "",
                    g.number ? " N" : "");
    }
    std::printf("predicted %d\n", clf.predict(password));
    return 0;
}

int cmd_policy_walk(const std::string& policies, std::uint64_t trials, std::uint64_t seed,
                    bool sample_level) {
    WalkStats w;
    if (policies == "top20") {
        w = policy_walk(builtin_top20_policies(), trials, seed,
                        PolicyWalkOptions{sample_level});
    } else {
        bool matched = false;
        for (const auto& row : builtin_tranco_statistics())
            if (policies == row.name) {
                w = policy_walk(row, trials, seed);
                matched = true;
            }
        if (!matched) {
            auto f = open_in(policies);
            auto list = parse_policy_file(f);
            w = policy_walk(list, trials, seed, PolicyWalkOptions{sample_level});
        }
    }
    std::printf("avg_conflicts %.6f\n", w.avg_conflicts);
    std::printf("p_conflict %.6f\n", w.p_conflict);
    std::printf("avg_run_before_conflict %.6f\n", w.avg_run_before_conflict);
    return 0;
}

int cmd_mix(const std::string& input, const std::string& output, double pi,
            std::uint64_t seed) {
    auto in = open_in(input);
    auto multisets = read_multisets(in);
    auto mixed = mix_with_algorithmic(std::move(multisets), pi, seed);
    auto out = open_out(output);
    write_multisets(out, mixed);
    std::printf("mixed %zu multisets  pi %g  seed %llu\n", mixed.size(), pi,
                static_cast<unsigned long long>(seed));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"honeyword generation and evaluation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key-value config file; flags win");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    // clean
    std::string clean_in, clean_out, clean_manifest;
    auto* clean = app.add_subcommand("clean", "clean and join a credential dump");
    clean->add_option("--input", clean_in, "email<TAB>password dump")->required();
    clean->add_option("--output", clean_out, "multiset output file")->required();
    clean->add_option("--manifest", clean_manifest, "manifest JSON path");

    // train
    std::string train_kind, train_in, train_out;
    int train_order = 5, train_spc = 8000;
    double train_delta = 0.01;
    std::uint64_t train_seed = 1;
    auto* train = app.add_subcommand(
        "train", "train a model (list|pcfg|markov|combo[#]), classifier or index");
    train->add_option("--kind", train_kind)->required();
    train->add_option("--input", train_in, "multiset file (models and index)");
    train->add_option("--output", train_out)->required();
    train->add_option("--order", train_order, "markov order");
    train->add_option("--delta", train_delta, "markov smoothing");
    train->add_option("--samples-per-class", train_spc, "classifier training size");
    train->add_option("--seed", train_seed, "classifier simulation seed");

    // gen
    std::string gen_spec, gen_model, gen_index, gen_clf, gen_password;
    std::size_t gen_n = 19;
    std::uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate honeywords for one password");
    gen->add_option("--strategy", gen_spec)->required();
    gen->add_option("--password", gen_password)->required();
    gen->add_option("-n,--honeywords", gen_n);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--model", gen_model);
    gen->add_option("--index", gen_index);
    gen->add_option("--classifier", gen_clf);

    // classify
    std::string cls_clf, cls_password;
    int cls_top = 5;
    auto* cls = app.add_subcommand("classify", "score a password against the 38 classes");
    cls->add_option("--classifier", cls_clf)->required();
    cls->add_option("--password", cls_password)->required();
    cls->add_option("--top", cls_top);

    // fpp / fnp / sweep
    ExperimentCli fpp_cli, fnp_cli, sweep_cli;
    std::size_t fpp_alpha = 1, fnp_alpha = 1;
    auto* fpp = app.add_subcommand("fpp", "estimate the false-positive probability");
    fpp_cli.attach(fpp, false);
    fpp->add_option("--alpha", fpp_alpha);
    auto* fnp = app.add_subcommand("fnp", "estimate the false-negative probability");
    fnp_cli.attach(fnp, true);
    fnp->add_option("--alpha", fnp_alpha);
    std::string sweep_alphas = "1..19", sweep_out = "sweep.csv", sweep_manifest;
    std::uint64_t sweep_fpp_trials = 0;
    auto* sweep = app.add_subcommand("sweep", "alpha sweep; writes a CSV");
    sweep_cli.attach(sweep, true);
    sweep->add_option("--alphas", sweep_alphas, "range lo..hi or comma list");
    sweep->add_option("--output", sweep_out, "CSV path");
    sweep->add_option("--manifest", sweep_manifest, "manifest JSON path");
    sweep->add_option("--fpp-trials", sweep_fpp_trials,
                      "attacker-A trials (0 = same as --trials)");

    // policy-walk
    std::string pw_policies = "top20";
    std::uint64_t pw_trials = 1000000, pw_seed = 1;
    bool pw_sample_level = false;
    auto* pwalk = app.add_subcommand("policy-walk", "password-policy random walk");
    pwalk->add_option("--policies", pw_policies,
                      "top20 | tranco-10k | tranco-100k | tranco-1m | file");
    pwalk->add_option("--trials", pw_trials);
    pwalk->add_option("--seed", pw_seed);
    pwalk->add_flag("--sample-level", pw_sample_level, "per-sample conflict checks");

    // mix
    std::string mix_in, mix_out;
    double mix_pi = 0.33;
    std::uint64_t mix_seed = 1;
    auto* mix = app.add_subcommand("mix", "replace passwords with generator output");
    mix->add_option("--input", mix_in)->required();
    mix->add_option("--output", mix_out)->required();
    mix->add_option("--pi", mix_pi, "replacement probability");
    mix->add_option("--seed", mix_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (clean->parsed()) return cmd_clean(clean_in, clean_out, clean_manifest);
        if (train->parsed())
            return cmd_train(train_kind, train_in, train_out, train_order, train_delta,
                             train_spc, train_seed);
        if (gen->parsed())
            return cmd_gen(gen_spec, gen_model, gen_index, gen_clf, gen_password, gen_n,
                           gen_seed);
        if (cls->parsed()) return cmd_classify(cls_clf, cls_password, cls_top);
        if (fpp->parsed()) {
            auto l = fpp_cli.load(true, false);
            auto res = run_experiment(l->cfg, {fpp_alpha});
            print_estimate("fpp", res.rows[0].fpp);
            std::printf("aborts %llu\n", static_cast<unsigned long long>(res.fpp_aborts));
            return 0;
        }
        if (fnp->parsed()) {
            auto l = fnp_cli.load(false, true);
            auto res = run_experiment(l->cfg, {fnp_alpha});
            print_estimate("fnp_all", res.rows[0].fnp_all);
            print_estimate("fnp_easy", res.rows[0].fnp_easy);
            print_estimate("fnp_medium", res.rows[0].fnp_medium);
            print_estimate("fnp_hard", res.rows[0].fnp_hard);
            std::printf("bucket_shares easy %.4f medium %.4f hard %.4f\n",
                        double(res.bucket_counts[0]) /
                            double(std::max<std::uint64_t>(1, l->cfg.fnp_trials - res.fnp_aborts)),
                        double(res.bucket_counts[1]) /
                            double(std::max<std::uint64_t>(1, l->cfg.fnp_trials - res.fnp_aborts)),
                        double(res.bucket_counts[2]) /
                            double(std::max<std::uint64_t>(1, l->cfg.fnp_trials - res.fnp_aborts)));
            std::printf("aborts %llu\n", static_cast<unsigned long long>(res.fnp_aborts));
            return 0;
        }
        if (sweep->parsed()) {
            auto l = sweep_cli.load(true, true);
            if (sweep_fpp_trials) l->cfg.fpp_trials = sweep_fpp_trials;
            auto alphas = parse_alphas(sweep_alphas, l->cfg.n);
            auto res = run_experiment(l->cfg, alphas);
            {
                auto out = open_out(sweep_out);
                write_csv(out, res, l->cfg.fpp_trials, l->cfg.fnp_trials);
            }
            json m = sweep_cli.manifest(alphas);
            m["fpp_trials"] = l->cfg.fpp_trials;
            m["fpp_aborts"] = res.fpp_aborts;
            m["fnp_aborts"] = res.fnp_aborts;
            m["csv"] = sweep_out;
            m["csv_digest"] = hex64(file_digest(out_path(sweep_out)));
            if (!sweep_manifest.empty()) {
                auto mf = open_out(sweep_manifest);
                mf << m.dump(2) << '\n';
            }
            std::cout << m.dump(2) << '\n';
            return 0;
        }
        if (pwalk->parsed())
            return cmd_policy_walk(pw_policies, pw_trials, pw_seed, pw_sample_level);
        if (mix->parsed()) return cmd_mix(mix_in, mix_out, mix_pi, mix_seed);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
