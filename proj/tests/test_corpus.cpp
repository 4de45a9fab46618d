#include <sstream>

#include "doctest.h"
#include "honeykit/corpus.hpp"

using namespace honeykit;

TEST_CASE("cleaning predicate") {
    CHECK(clean_credential({"a@b.com", "bike123"}) == CleanReason::accepted);
    CHECK(clean_credential({"a@b.com", "abc"}) == CleanReason::too_short);
    CHECK(clean_credential({"a@b.com", "deadbeefdeadbeefdead1"}) == CleanReason::hex_run);
    CHECK(clean_credential({"a@b.com", "pass word"}) == CleanReason::space);
    CHECK(clean_credential({"a@b.com", "caf\xc3\xa9pass"}) == CleanReason::non_ascii);
    CHECK(clean_credential({"a@b.com", std::string(31, 'x')}) == CleanReason::too_long);
    CHECK(clean_credential({"a b@x.com", "bike123"}) == CleanReason::email_space);
    CHECK(clean_credential({"\xc3\xa9@x.com", "bike123"}) == CleanReason::email_non_ascii);
    // 19 hex chars is fine, 20 is not
    CHECK(clean_credential({"a@b.com", std::string(19, 'a') + "zz"}) == CleanReason::accepted);
    CHECK(clean_credential({"a@b.com", std::string(20, 'a') + "zz"}) == CleanReason::hex_run);
}

TEST_CASE("cleaning is idempotent") {
    std::vector<Credential> creds = {
        {"a@b.com", "bike123"}, {"a@b.com", "abc"}, {"c@d.com", "hello!pass"}};
    std::vector<Credential> once;
    for (const auto& c : creds)
        if (clean_credential(c) == CleanReason::accepted) once.push_back(c);
    for (const auto& c : once) CHECK(clean_credential(c) == CleanReason::accepted);
}

TEST_CASE("dump parsing rejects malformed lines") {
    std::istringstream in(
        "a@b.com\tbike123\n"
        "no-tab-line\n"
        "a@b.com\ttab\tinside\n"
        "b@c.com\tqwerty99\n");
    auto dump = clean_dump(in);
    CHECK(dump.kept.size() == 2);
    CHECK(dump.malformed_lines == 2);
}

TEST_CASE("join merges by username and shared password") {
    // same username, shared password -> one multiset
    std::vector<Credential> creds = {
        {"a@x.com", "pass1"}, {"a@x.com", "pass2"}, {"a@y.com", "pass2"}, {"a@y.com", "pass3"}};
    auto ms = join_by_email_and_username(creds);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].user_key == "a@x.com");
    CHECK(ms[0].passwords == std::vector<std::string>{"pass1", "pass2", "pass2", "pass3"});
}

TEST_CASE("join drops singletons and respects username boundaries") {
    std::vector<Credential> creds = {
        {"a@x.com", "only1"},                          // singleton -> dropped
        {"a@x.com", "pw1"}, {"b@y.com", "pw1"},        // different usernames
        {"b@y.com", "pw3"},
    };
    auto ms = join_by_email_and_username(creds);
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].user_key == "a@x.com");
    CHECK(ms[0].passwords.size() == 2);
    CHECK(ms[1].user_key == "b@y.com");
}

TEST_CASE("join merge is transitive within a username") {
    std::vector<Credential> creds = {
        {"u@a.com", "p1"}, {"u@a.com", "p2"},
        {"u@b.com", "p2"}, {"u@b.com", "p3"},
        {"u@c.com", "p3"}, {"u@c.com", "p4"},
    };
    auto ms = join_by_email_and_username(creds);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].passwords.size() == 6);
    // fixpoint: no two multisets share a username and a password
}

TEST_CASE("join folds email case before grouping") {
    std::vector<Credential> creds = {
        {"Alice@X.com", "pass1"}, {"alice@x.com", "pass2"},
        {"ALICE@y.com", "pass2"}, {"alice@y.com", "pass3"}};
    auto ms = join_by_email_and_username(creds);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].user_key == "alice@x.com");
    CHECK(ms[0].passwords.size() == 4);
}

TEST_CASE("join reaches a fixpoint on random inputs") {
    Rng rng(31);
    for (int round = 0; round < 20; ++round) {
        std::vector<Credential> creds;
        int n = 30 + int(rng.uniform(40));
        for (int i = 0; i < n; ++i) {
            std::string user = std::string(1, char('a' + rng.uniform(5)));
            std::string host = std::string(1, char('p' + rng.uniform(4))) + ".com";
            std::string pw = "pw" + std::to_string(rng.uniform(8)) + "##";
            creds.push_back({user + "@" + host, pw});
        }
        auto ms = join_by_email_and_username(creds);
        // no two multisets may share both a username part and a password
        for (std::size_t a = 0; a < ms.size(); ++a)
            for (std::size_t b = a + 1; b < ms.size(); ++b) {
                auto ua = ms[a].user_key.substr(0, ms[a].user_key.find('@'));
                auto ub = ms[b].user_key.substr(0, ms[b].user_key.find('@'));
                if (ua != ub) continue;
                for (const auto& pw : ms[a].passwords)
                    CHECK(std::find(ms[b].passwords.begin(), ms[b].passwords.end(), pw) ==
                          ms[b].passwords.end());
            }
        for (const auto& m : ms) {
            CHECK(m.passwords.size() >= 2);
            CHECK(m.passwords.size() <= 1000);
        }
    }
}

TEST_CASE("join respects multiset size bounds") {
    std::vector<Credential> creds;
    for (int i = 0; i < 1001; ++i)
        creds.push_back({"big@x.com", "pw" + std::to_string(i)});
    creds.push_back({"ok@x.com", "pass1"});
    creds.push_back({"ok@x.com", "pass2"});
    auto ms = join_by_email_and_username(creds);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].user_key == "ok@x.com");
}

TEST_CASE("split ratio, determinism and edge sizes") {
    std::vector<PasswordMultiset> multisets;
    for (int i = 0; i < 10; ++i)
        multisets.push_back({"u" + std::to_string(i) + "@x.com",
                             {"pass" + std::to_string(i), "word" + std::to_string(i)}});
    auto s1 = split(multisets, 0.8, 42);
    CHECK(s1.train.size() == 8);
    CHECK(s1.test.size() == 2);
    auto s2 = split(multisets, 0.8, 42);
    for (std::size_t i = 0; i < s1.train.size(); ++i)
        CHECK(s1.train[i].user_key == s2.train[i].user_key);

    // user-level disjointness
    for (const auto& tr : s1.train)
        for (const auto& te : s1.test) CHECK(tr.user_key != te.user_key);

    auto s3 = split({multisets[0]}, 0.8, 1);
    CHECK(s3.train.size() == 1);
    CHECK(s3.test.empty());
    CHECK(s3.empty_test_warning);

    CHECK_THROWS_AS(split({}, 0.8, 1), std::invalid_argument);
    CHECK_THROWS_AS(split(multisets, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split(multisets, 1.0, 1), std::invalid_argument);

    // rounding rule across small sizes: |train| = round(0.8 n)
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<PasswordMultiset> v(multisets.begin(),
                                        multisets.begin() + std::ptrdiff_t(std::min(n, multisets.size())));
        while (v.size() < n)
            v.push_back({"extra" + std::to_string(v.size()) + "@x.com", {"a1b2", "c3d4"}});
        auto s = split(v, 0.8, 9);
        CHECK(s.train.size() == std::size_t(std::llround(0.8 * double(n))));
    }
}

TEST_CASE("draw_account: multiset semantics and cap") {
    std::vector<PasswordMultiset> test{{"u@x.com", {"alpha", "alpha", "beta"}}};
    Rng rng(5);
    int saw_alpha_p = 0;
    for (int i = 0; i < 200; ++i) {
        auto d = draw_account(test, rng);
        CHECK(d.others.size() == 2);
        if (d.password == "alpha") {
            ++saw_alpha_p;
            // remaining multiset must be {alpha, beta}
            std::vector<std::string> sorted = d.others;
            std::sort(sorted.begin(), sorted.end());
            CHECK(sorted == std::vector<std::string>{"alpha", "beta"});
        }
    }
    CHECK(saw_alpha_p > 0);

    std::vector<PasswordMultiset> abc{{"u@x.com", {"a1a1", "b2b2", "c3c3"}}};
    for (int i = 0; i < 50; ++i) {
        auto d = draw_account(abc, rng, 1);
        CHECK(d.others.size() == 1);
        CHECK(d.others[0] != d.password);
    }
    for (int i = 0; i < 20; ++i) {
        auto d = draw_account(abc, rng, 0);
        CHECK(d.others.empty());
    }
}

TEST_CASE("mix_with_algorithmic replaces per-password with probability pi") {
    std::vector<PasswordMultiset> users;
    for (int u = 0; u < 400; ++u) {
        PasswordMultiset ms;
        ms.user_key = "u" + std::to_string(u) + "@x.com";
        for (int k = 0; k < 5; ++k) ms.passwords.push_back("origpw" + std::to_string(k));
        std::sort(ms.passwords.begin(), ms.passwords.end());
        users.push_back(ms);
    }
    auto same = mix_with_algorithmic(users, 0.0, 17);
    for (std::size_t u = 0; u < users.size(); ++u)
        CHECK(same[u].passwords == users[u].passwords);

    auto all = mix_with_algorithmic(users, 1.0, 17);
    for (const auto& ms : all)
        for (const auto& pw : ms.passwords) CHECK(pw.size() == 14);

    auto third = mix_with_algorithmic(users, 0.33, 17);
    std::size_t replaced = 0, total = 0;
    for (const auto& ms : third)
        for (const auto& pw : ms.passwords) {
            ++total;
            if (pw.size() == 14) ++replaced;
        }
    double frac = double(replaced) / double(total);
    CHECK(frac == doctest::Approx(0.33).epsilon(0.1));  // 2000 draws, 3 sigma ~ 0.031
}

TEST_CASE("multiset file round-trip and stats") {
    std::vector<PasswordMultiset> users{
        {"a@x.com", {"pw1", "pw1", "pw2"}},
        {"b@y.com", {"qq99", "rr88"}},
    };
    std::ostringstream out;
    write_multisets(out, users);
    std::istringstream in(out.str());
    auto back = read_multisets(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].passwords == users[0].passwords);
    CHECK(back[1].user_key == "b@y.com");

    auto stats = compute_stats(users);
    CHECK(stats.total_users == 2);
    CHECK(stats.total_passwords == 5);
    CHECK(stats.avg_passwords_per_user == doctest::Approx(2.5));
    CHECK(stats.avg_distinct_per_user == doctest::Approx(2.0));
    CHECK(stats.pct_reusing == doctest::Approx(50.0));
}
