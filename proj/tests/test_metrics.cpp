#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "creditlens/error.hpp"
#include "creditlens/metrics.hpp"
#include "creditlens/status.hpp"
#include "support.hpp"

using namespace creditlens;

namespace {

EventTable events_of(const Corpus& c) {
    return build_events(c, CreditMapping::standard(), AckTaxonomy::standard());
}

ContributionEvent ev(std::string doi, std::string id, Role role, CreditType type, Gender g) {
    return {doi, "id:" + id, id, role, type, g};
}

}  // namespace

TEST_SUITE("metrics") {
    TEST_CASE("paper-level example gives man 1/2 and woman 1/3") {
        const auto events = events_of(fixture::paper_level_example()).events;
        const auto r = paper_level_ar(events, Role::InvestigationAnalysis);
        REQUIRE(r.observations.size() == 2);
        for (const auto& o : r.observations) {
            if (o.gender == Gender::Man) {
                CHECK(o.ar() == Rational{1, 2});
            } else {
                CHECK(o.gender == Gender::Woman);
                CHECK(o.ar() == Rational{1, 3});
                CHECK(o.contributors == 3);
            }
        }
        CHECK(paper_level_ar(events, Role::Writing).observations.empty());
    }

    TEST_CASE("collaboration example gives 2/3 and 1/3") {
        const auto events = events_of(fixture::collaboration_example()).events;
        const auto pairs = collaboration_ar(events, Role::InvestigationAnalysis);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].man_id == "M1");
        CHECK(pairs[0].woman_id == "W1");
        CHECK(pairs[0].shared_papers == 3);
        CHECK(pairs[0].man_ar() == Rational{2, 3});
        CHECK(pairs[0].woman_ar() == Rational{1, 3});
        CHECK(collaboration_ar(events, Role::Writing).empty());
    }

    TEST_CASE("build_events unions author roles and acknowledgment roles") {
        const auto c = parse_corpus(
            R"({"year":2020,"doi":"d1","authors":[{"person_id":"a","given_name":"Al","family_name":"Ames","credit_roles":["Data curation"],"gender":"man"}],"acknowledgees":[{"person_id":"b","given_name":"Bea","family_name":"Bird","gender":"woman"}],"ack_text":"We thank Bea Bird for helpful discussion."})"
            "\n");
        const auto t = events_of(c);
        REQUIRE(t.events.size() == 2);
        CHECK(t.events[0].credit_type == CreditType::Author);
        CHECK(t.events[0].role == Role::InvestigationAnalysis);
        CHECK(t.events[1].credit_type == CreditType::Acknowledgee);
        CHECK(t.events[1].role == Role::PeerCommunication);
    }

    TEST_CASE("an author also thanked yields one author event per role") {
        const auto c = parse_corpus(
            R"({"year":2020,"doi":"d1","authors":[{"person_id":"a","given_name":"Al","family_name":"Ames","credit_roles":["Investigation"],"gender":"man"}],"acknowledgees":[{"person_id":"a","given_name":"Al","family_name":"Ames","gender":"man"}],"ack_text":"We thank Al Ames for data analysis and discussion."})"
            "\n");
        const auto t = events_of(c);
        REQUIRE(t.events.size() == 1);
        CHECK(t.events[0].credit_type == CreditType::Author);
    }

    TEST_CASE("unmapped CRediT role propagates") {
        const auto c = parse_corpus(
            R"({"year":2020,"doi":"d1","authors":[{"given_name":"Al","family_name":"Ames","credit_roles":["Catering"]}],"acknowledgees":[],"ack_text":""})"
            "\n");
        CHECK_THROWS_AS(events_of(c), UnmappedRoleError);
    }

    TEST_CASE("single-gender roles are skipped and counted") {
        std::vector<ContributionEvent> e = {
            ev("d1", "m1", Role::InvestigationAnalysis, CreditType::Author, Gender::Man),
            ev("d1", "m2", Role::InvestigationAnalysis, CreditType::Acknowledgee, Gender::Man),
            ev("d2", "m1", Role::InvestigationAnalysis, CreditType::Author, Gender::Man),
            ev("d2", "w1", Role::InvestigationAnalysis, CreditType::Author, Gender::Woman),
        };
        const auto r = paper_level_ar(e, Role::InvestigationAnalysis);
        CHECK(r.observations.size() == 2);
        CHECK(r.single_gender_papers == 1);
        CHECK(r.observations[0].ar() == Rational{1, 1});
    }

    TEST_CASE("pairs always authors give (1, 1); threshold drops thin pairs") {
        std::vector<ContributionEvent> e;
        for (std::string d : {"d1", "d2"}) {
            e.push_back(ev(d, "m", Role::Writing, CreditType::Author, Gender::Man));
            e.push_back(ev(d, "w", Role::Writing, CreditType::Author, Gender::Woman));
        }
        const auto pairs = collaboration_ar(e, Role::Writing);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].man_ar() == Rational{1, 1});
        CHECK(pairs[0].woman_ar() == Rational{1, 1});
        CHECK(collaboration_ar(e, Role::Writing, {3, false}).empty());
        e.push_back(ev("d1", "m2", Role::Writing, CreditType::Acknowledgee, Gender::Man));
        CHECK(collaboration_ar(e, Role::Writing, {1, true}).size() == 3);
    }

    TEST_CASE("relative difference") {
        const std::vector<double> w = {0.65}, m = {0.70};
        CHECK(relative_difference(w, m) == doctest::Approx(-0.0714285714));
        CHECK(relative_difference(m, m) == 0.0);
        const std::vector<double> w2 = {0.9}, m2 = {0.45};
        CHECK(relative_difference(w2, m2) == doctest::Approx(1.0));
        const std::vector<double> zero = {0.0}, none;
        CHECK_THROWS_AS(relative_difference(w, zero), DegenerateError);
        CHECK_THROWS_AS(relative_difference(none, m), DegenerateError);
        // r -> 1/(1 + r) - 1 when the arguments swap
        const double r = relative_difference(w2, m2);
        CHECK(relative_difference(m2, w2) == doctest::Approx(1.0 / (1.0 + r) - 1.0));
    }

    TEST_CASE("acknowledgees by author count") {
        auto c = parse_corpus(
            R"({"year":2020,"doi":"a","authors":[{"given_name":"A","family_name":"A"},{"given_name":"B","family_name":"B"},{"given_name":"C","family_name":"C"}],"acknowledgees":[{"given_name":"X","family_name":"X"},{"given_name":"Y","family_name":"Y"}],"ack_text":""})"
            "\n"
            R"({"year":2020,"doi":"b","authors":[{"given_name":"A","family_name":"A"},{"given_name":"B","family_name":"B"},{"given_name":"C","family_name":"C"}],"acknowledgees":[{"given_name":"X","family_name":"X"},{"given_name":"Y","family_name":"Y"},{"given_name":"Z","family_name":"Z"},{"given_name":"W","family_name":"W"}],"ack_text":""})"
            "\n"
            R"({"year":2020,"doi":"c","authors":[{"given_name":"A","family_name":"A"}],"acknowledgees":[],"ack_text":""})"
            "\n");
        const auto b = ack_by_author_count(c);
        REQUIRE(b.size() == 2);
        CHECK(b[0].author_count == 1);
        CHECK(b[0].mean_acknowledgees == 0.0);
        CHECK(std::isnan(b[0].ci_lower));
        CHECK(b[1].author_count == 3);
        CHECK(b[1].mean_acknowledgees == 3.0);
        CHECK(b[1].papers == 2);
        CHECK(b[1].ci_lower < 3.0);
        CHECK(b[1].ci_upper > 3.0);
    }

    TEST_CASE("role proportions and homogeneity") {
        std::vector<ContributionEvent> e;
        for (int i = 0; i < 10; ++i) {
            for (Gender g : {Gender::Woman, Gender::Man}) {
                const std::string id = std::to_string(i) + (g == Gender::Woman ? "w" : "m");
                e.push_back(ev("d" + std::to_string(i), id, Role::InvestigationAnalysis, CreditType::Author, g));
                e.push_back(ev("d" + std::to_string(i), id, Role::Writing, CreditType::Author, g));
            }
        }
        const auto p = role_proportions(e, CreditType::Author);
        CHECK(p.proportion(Gender::Woman, Role::InvestigationAnalysis) == 0.5);
        CHECK(p.proportion(Gender::Man, Role::Writing) == 0.5);
        const auto t = p.homogeneity_test();
        REQUIRE(t.has_value());
        CHECK(t->statistic == doctest::Approx(0.0));
        CHECK(t->df == 1.0);

        std::vector<ContributionEvent> only_ia;
        for (const auto& x : e) {
            if (x.role == Role::InvestigationAnalysis) only_ia.push_back(x);
        }
        const auto single = role_proportions(only_ia, CreditType::Author).homogeneity_test();
        REQUIRE(single.has_value());
        CHECK(single->statistic == 0.0);
        CHECK(single->p_value == 1.0);
        CHECK_FALSE(role_proportions(only_ia, CreditType::Acknowledgee).homogeneity_test().has_value());
    }

    TEST_CASE("aggregations equal brute-force recomputation") {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            CAPTURE(seed);
            const Corpus corpus = fixture::random_corpus(seed, 200);
            const auto events = events_of(corpus).events;
            for (Role role : kSharedRoles) {
                std::vector<oracle::PaperAr> fast;
                for (const auto& o : paper_level_ar(events, role).observations) {
                    fast.push_back({o.doi, o.gender, o.authors, o.contributors});
                }
                std::sort(fast.begin(), fast.end());
                CHECK(fast == oracle::naive_paper_level(events, role));

                std::vector<oracle::Pair> pairs;
                for (const auto& p : collaboration_ar(events, role)) {
                    pairs.push_back({p.man_id, p.woman_id, p.shared_papers, p.man_authored, p.woman_authored});
                }
                CHECK(pairs == oracle::naive_pairs(events, role));
            }
            const auto buckets = ack_by_author_count(corpus);
            const auto naive = oracle::naive_ack_buckets(corpus);
            REQUIRE(buckets.size() == naive.size());
            for (std::size_t i = 0; i < naive.size(); ++i) {
                CHECK(buckets[i].author_count == naive[i].authors);
                CHECK(buckets[i].mean_acknowledgees == doctest::Approx(naive[i].mean).epsilon(1e-12));
                CHECK(buckets[i].papers == naive[i].papers);
            }
            for (CreditType type : {CreditType::Author, CreditType::Acknowledgee}) {
                const auto p = role_proportions(events, type);
                const auto counts = oracle::naive_role_counts(events, type);
                for (Gender g : {Gender::Woman, Gender::Man}) {
                    std::map<Role, std::size_t> nonzero;
                    if (p.counts.count(g)) {
                        for (const auto& [r, n] : p.counts.at(g)) {
                            if (n > 0) nonzero[r] = n;
                        }
                    }
                    const auto it = counts.find(g);
                    CHECK(nonzero == (it == counts.end() ? std::map<Role, std::size_t>{} : it->second));
                }
            }
        }
    }
}
