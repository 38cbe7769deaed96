#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "creditlens/corpus.hpp"
#include "creditlens/credit_map.hpp"
#include "creditlens/error.hpp"
#include "support.hpp"

using namespace creditlens;

namespace {

const char* kPaper =
    R"({"doi":"10.1/a","year":2019,"disciplines":["Biology","Medicine"],"authors":[{"person_id":"S1","given_name":"Ana","family_name":"Silva","credit_roles":["Investigation","Writing – review & editing"],"gender":"woman"},{"person_id":null,"given_name":"J.","family_name":"Kim","credit_roles":["Software"]}],"acknowledgees":[{"person_id":"S2","given_name":"Paul","family_name":"Roy","gender":"m"}],"ack_text":"We thank Paul Roy for data."})";

}  // namespace

TEST_SUITE("corpus") {
    TEST_CASE("parse keeps every field") {
        const auto c = parse_corpus(std::string(kPaper) + "\n");
        REQUIRE(c.papers.size() == 1);
        const auto& p = c.papers[0];
        CHECK(p.year == 2019);
        CHECK(p.disciplines == std::vector<std::string>{"Biology", "Medicine"});
        CHECK(p.authors[0].gender == Gender::Woman);
        CHECK_FALSE(p.authors[1].person_id.has_value());
        CHECK_FALSE(p.authors[1].gender.has_value());
        CHECK(p.acknowledgees[0].gender == Gender::Man);
        CHECK(c.load_report.empty());
    }

    TEST_CASE("write then parse round-trips") {
        auto c = parse_corpus(std::string(kPaper) + "\n");
        std::ostringstream out;
        write_corpus(out, c);
        const auto again = parse_corpus(out.str());
        CHECK(again.papers == c.papers);
        std::ostringstream out2;
        write_corpus(out2, again);
        CHECK(out2.str() == out.str());
    }

    TEST_CASE("bad lines and duplicates go to the load report") {
        const std::string text = std::string(kPaper) + "\n" + "{broken\n" + kPaper + "\n" +
                                 R"({"doi":"10.1/b","year":2020,"authors":[]})" + "\n" +
                                 R"({"doi":"10.1/c","year":2020,"authors":[{"given_name":"A","family_name":"B"},{"given_name":"A","family_name":"B"}]})" +
                                 "\n\n";
        const auto c = parse_corpus(text, "mem");
        CHECK(c.papers.size() == 2);
        REQUIRE(c.load_report.size() == 4);
        CHECK(c.load_report[0].line == 2);
        CHECK(c.load_report[1].message.find("duplicate doi") != std::string::npos);
        CHECK(c.papers[1].authors.size() == 1);
    }

    TEST_CASE("missing and empty files") {
        CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), InputError);
        const auto tmp = std::filesystem::temp_directory_path() / "creditlens_empty.jsonl";
        { std::ofstream(tmp) << "\n{bad}\n"; }
        CHECK_THROWS_AS(load_corpus(tmp), EmptyCorpusError);
        std::filesystem::remove(tmp);
    }

    TEST_CASE("validation findings are warnings, not errors") {
        const std::string text =
            R"({"doi":"d","year":2020,"authors":[{"person_id":"X","given_name":"A","family_name":"Bee","credit_roles":["Catering"]},{"given_name":"C","family_name":"Dee"}],"acknowledgees":[{"person_id":"Y","given_name":"Eve","family_name":"Fox"}],"ack_text":"We thank Eva Fox for help."})"
            "\n";
        auto c = parse_corpus(text);
        std::vector<LoadIssue> issues;
        c.scholars = parse_scholars(R"({"person_id":"X","total_citations":3})" "\n", issues);
        const auto r = validate(c, CreditMapping::standard());
        CHECK(r.count(IssueKind::UnknownRole) == 1);
        CHECK(r.count(IssueKind::MissingCreditRoles) == 1);
        CHECK(r.count(IssueKind::NameMismatch) == 1);
        CHECK(r.count(IssueKind::UnknownScholar) == 1);
    }

    TEST_CASE("scholar table parsing") {
        std::vector<LoadIssue> issues;
        const auto t = parse_scholars(
            R"({"person_id":"A","total_citations":10,"gender":"female","disciplines":["Physics"]})" "\n"
            R"({"person_id":"A","total_citations":11})" "\n"
            R"({"person_id":"B","total_citations":-1})" "\n",
            issues);
        CHECK(t.size() == 1);
        CHECK(t.at("A").gender == Gender::Woman);
        CHECK(issues.size() == 2);
    }

    TEST_CASE("index and contributor counts") {
        const auto c = parse_corpus(std::string(kPaper) + "\n");
        const auto idx = build_index(c);
        CHECK(idx.by_doi.at("10.1/a") == 0);
        CHECK(idx.by_person.at("S1").size() == 1);
        CHECK(idx.by_discipline.at("Medicine") == std::vector<std::size_t>{0});
        const auto s = contributor_counts(c);
        CHECK(s.author_mentions == 2);
        CHECK(s.acknowledgee_mentions == 1);
        CHECK(s.identified_fraction() == 1.0);
        CHECK(s.contributors_by_discipline.at({"Biology", Gender::Woman}) == 1);
        CHECK(s.contributors_by_discipline.at({"Biology", Gender::Unknown}) == 1);
    }

    TEST_CASE("fnv1a64 reference values") {
        CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
        CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    }
}
