#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "creditlens/ack_classifier.hpp"
#include "creditlens/error.hpp"
#include "creditlens/report.hpp"
#include "support.hpp"

using namespace creditlens;

namespace {

RoleSet parse_labels(const std::string& field) {
    RoleSet out;
    std::stringstream ss(field);
    std::string label;
    while (std::getline(ss, label, ',')) {
        if (label.empty()) continue;
        auto r = parse_role(label);
        REQUIRE_MESSAGE(r.has_value(), label);
        out.insert(*r);
    }
    return out;
}

PaperRecord paper_with(std::vector<std::pair<std::string, std::string>> names, std::string text) {
    PaperRecord p;
    p.doi = "10.1/x";
    p.authors.push_back({"AU", "Ada", "Author", {"Conceptualization"}, Gender::Woman});
    for (auto& [given, family] : names) p.acknowledgees.push_back({std::nullopt, given, family, std::nullopt});
    p.ack_text = std::move(text);
    return p;
}

}  // namespace

TEST_SUITE("classifier") {
    TEST_CASE("sentence segmentation respects abbreviations and initials") {
        const auto s = segment_sentences(
            "We thank Dr. J. Smith, Prof. A.-M. Dubois et al. for help. Data were provided "
            "by the U.S. survey (see e.g. ref. 3)! Thanks to all? Yes.");
        REQUIRE(s.size() == 4);
        CHECK(s[0] == "We thank Dr. J. Smith, Prof. A.-M. Dubois et al. for help.");
        CHECK(s[3] == "Yes.");
        CHECK(segment_sentences("").empty());
        CHECK(segment_sentences("No terminal period") == std::vector<std::string>{"No terminal period"});
    }

    TEST_CASE("lemmatizer reduces plural nouns") {
        CHECK(lemmatize("experiments") == "experiment");
        CHECK(lemmatize("analyses") == "analysis");
        CHECK(lemmatize("discussions") == "discussion");
        CHECK(lemmatize("data") == "data");
        CHECK(lemmatize("studies") == "study");
        CHECK(lemmatize("approaches") == "approach");
        CHECK(lemmatize("access") == "access");
        CHECK(lemmatize("analysis") == "analysis");
        CHECK(lemmatize("grants") == "grant");
        CHECK(lemmatize("its") == "its");
    }

    TEST_CASE("golden sentences") {
        const auto taxonomy = AckTaxonomy::standard();
        std::stringstream in(fixture::read_file(CREDITLENS_FIXTURE_DIR "/classifier_golden.tsv"));
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            REQUIRE(tab != std::string::npos);
            const std::string sentence = line.substr(0, tab);
            CAPTURE(sentence);
            CHECK(classify_sentence(sentence, taxonomy) == parse_labels(line.substr(tab + 1)));
            ++n;
        }
        CHECK(n >= 40);
    }

    TEST_CASE("every keyword of every category is reachable") {
        const auto taxonomy = AckTaxonomy::standard();
        for (const auto& [role, words] : taxonomy.categories()) {
            for (const auto& w : words) {
                CAPTURE(w);
                std::string sentence = "We thank A for " + w + ".";
                if (role == Role::MaterialResources && w == "data") sentence = "We thank A for providing data.";
                CHECK(classify_sentence(sentence, taxonomy).count(role) == 1);
            }
        }
    }

    TEST_CASE("each suppressor cancels work, each promoter switches data") {
        const auto taxonomy = AckTaxonomy::standard();
        for (const char* s : {"foundation", "funded", "funding", "grant"}) {
            CAPTURE(s);
            CHECK(classify_sentence(std::string("We thank A for work ") + s + ".", taxonomy).empty());
        }
        for (const char* p : {"providing", "provide", "provided", "database"}) {
            CAPTURE(p);
            CHECK(classify_sentence(std::string("We thank A for data ") + p + ".", taxonomy) ==
                  RoleSet{Role::MaterialResources});
        }
        // Promoters are surface forms: "provides" does not switch.
        CHECK(classify_sentence("A provides data.", taxonomy) == RoleSet{Role::InvestigationAnalysis});
    }

    TEST_CASE("rule scope is one sentence") {
        const auto taxonomy = AckTaxonomy::standard();
        auto p = paper_with({{"Anna", "Berg"}}, "We thank Anna Berg for her work. It was funded by a grant.");
        const auto r = assign_roles(p, taxonomy);
        REQUIRE(r.assignments.size() == 1);
        CHECK(r.assignments[0].role == Role::InvestigationAnalysis);
        CHECK(r.assignments[0].keyword == "work");
    }

    TEST_CASE("multi-person multi-role sentence credits every named person with every role") {
        const auto taxonomy = AckTaxonomy::standard();
        auto p = paper_with({{"Anna", "Berg"}, {"Tom", "Lund"}},
                            "We thank Anna Berg and T. Lund for data analysis and helpful discussion.");
        const auto r = assign_roles(p, taxonomy);
        REQUIRE(r.assignments.size() == 4);
        CHECK(r.assignments[0].acknowledgee_index == 0);
        CHECK(r.assignments[0].role == Role::InvestigationAnalysis);
        CHECK(r.assignments[1].role == Role::PeerCommunication);
        CHECK(r.assignments[2].acknowledgee_index == 1);
        CHECK(r.diagnostics.empty());
    }

    TEST_CASE("same role in two sentences is reported once, with the first evidence") {
        const auto taxonomy = AckTaxonomy::standard();
        auto p = paper_with({{"Anna", "Berg"}},
                            "We thank Anna Berg for the measurements. Anna Berg also helped with the code.");
        const auto r = assign_roles(p, taxonomy);
        REQUIRE(r.assignments.size() == 1);
        CHECK(r.assignments[0].sentence_index == 0);
        CHECK(r.assignments[0].keyword == "measurement");
    }

    TEST_CASE("authors are never acknowledgees of their own paper") {
        const auto taxonomy = AckTaxonomy::standard();
        auto p = paper_with({{"Ada", "Author"}, {"Anna", "Berg"}},
                            "We thank Ada Author and Anna Berg for technical assistance.");
        const auto r = assign_roles(p, taxonomy);
        REQUIRE(r.assignments.size() == 1);
        CHECK(r.assignments[0].acknowledgee_index == 1);
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagnosticKind::AcknowledgedAuthor);
    }

    TEST_CASE("empty acknowledgment text gives no assignments") {
        auto p = paper_with({}, "");
        CHECK(assign_roles(p, AckTaxonomy::standard()).assignments.empty());
    }

    TEST_CASE("bundled taxonomy config equals the built-in taxonomy") {
        CHECK(AckTaxonomy::load(CREDITLENS_DATA_DIR "/ack_taxonomy.json") == AckTaxonomy::standard());
    }

    TEST_CASE("ambiguous keyword without a rule is a config error") {
        CHECK_THROWS_AS(AckTaxonomy::from_json(
                            R"({"categories": {"Writing": ["text"], "PeerCommunication": ["text"]}})"),
                        ConfigError);
        CHECK_THROWS_AS(AckTaxonomy::from_json(R"({"categories": {"Funding": ["money"]}})"), ConfigError);
    }

    TEST_CASE("classification of the corpus fixture matches the golden files") {
        const Corpus corpus = load_corpus(CREDITLENS_FIXTURE_DIR "/classify_corpus.jsonl");
        for (unsigned workers : {1u, 3u}) {
            const auto result = classify_corpus(corpus, AckTaxonomy::standard(), workers);
            std::ostringstream a, d;
            write_assignments(a, corpus, result);
            write_diagnostics(d, result);
            CHECK(a.str() == fixture::read_file(CREDITLENS_FIXTURE_DIR "/classify_golden.jsonl"));
            CHECK(d.str() == fixture::read_file(CREDITLENS_FIXTURE_DIR "/classify_diagnostics_golden.jsonl"));
        }
    }
}
