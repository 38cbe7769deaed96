#include "creditlens/ack_classifier.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "creditlens/error.hpp"
#include "creditlens/text.hpp"

namespace creditlens {

namespace {

const std::map<std::string_view, std::string_view> kIrregularPlurals = {
    {"analyses", "analysis"},   {"hypotheses", "hypothesis"}, {"syntheses", "synthesis"},
    {"theses", "thesis"},       {"diagnoses", "diagnosis"},   {"bases", "basis"},
    {"criteria", "criterion"},  {"phenomena", "phenomenon"},  {"data", "data"},
    {"media", "media"},         {"species", "species"},       {"series", "series"},
    {"news", "news"},           {"children", "child"},        {"people", "person"},
    {"indices", "index"},       {"matrices", "matrix"},       {"appendices", "appendix"},
    {"men", "man"},             {"women", "woman"},           {"feet", "foot"},
};

constexpr std::array<std::string_view, 12> kAbbreviations = {
    "Dr", "Drs", "Prof", "Mr", "Ms", "Mrs", "St", "al", "e.g", "i.e", "cf", "vs"};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

// The whitespace-delimited word ending right before `pos`, without leading
// brackets or quotes.
std::string_view word_before(std::string_view text, std::size_t pos) {
    std::size_t start = pos;
    while (start > 0 && !std::isspace(static_cast<unsigned char>(text[start - 1]))) --start;
    std::string_view w = text.substr(start, pos - start);
    while (!w.empty() && (w.front() == '(' || w.front() == '[' || w.front() == '"' ||
                          w.front() == '\'')) {
        w.remove_prefix(1);
    }
    return w;
}

bool period_is_guarded(std::string_view text, std::size_t pos) {
    const std::string_view w = word_before(text, pos);
    if (w.size() == 1 && std::isupper(static_cast<unsigned char>(w.front()))) return true;
    // "J.-P." style compound initials.
    if (w.size() >= 2 && w[w.size() - 2] == '-' &&
        std::isupper(static_cast<unsigned char>(w.back()))) {
        return true;
    }
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), w) != kAbbreviations.end();
}

Role role_from_config(const std::string& name) {
    const auto role = parse_role(name);
    if (!role) throw ConfigError("taxonomy: unknown category '" + name + "'");
    if (!is_acknowledgment_role(*role)) {
        throw ConfigError("taxonomy: '" + name + "' is not an acknowledgment category");
    }
    return *role;
}

std::set<std::string> lemma_set(std::initializer_list<const char*> words) {
    std::set<std::string> out;
    for (const char* w : words) out.insert(lemmatize(w));
    return out;
}

bool same_person(const std::optional<std::string>& id_a, std::string_view given_a,
                 std::string_view family_a, const std::optional<std::string>& id_b,
                 std::string_view given_b, std::string_view family_b) {
    if (id_a && id_b) return *id_a == *id_b;
    return name_key(given_a) == name_key(given_b) && name_key(family_a) == name_key(family_b);
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
        const std::string_view s = trim(text.substr(start, end - start));
        if (!s.empty()) out.emplace_back(s);
        start = end;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_terminator(text[i])) continue;
        std::size_t j = i;
        while (j + 1 < text.size() && is_terminator(text[j + 1])) ++j;
        std::size_t k = j + 1;
        while (k < text.size() && is_closer(text[k])) ++k;
        const bool at_boundary = k >= text.size() || std::isspace(static_cast<unsigned char>(text[k]));
        if (!at_boundary) {
            i = j;
            continue;
        }
        if (j == i && text[i] == '.' && period_is_guarded(text, i)) continue;
        if (j == i && text[i] == '.') {
            // a lowercase word or a number after the period means it was an abbreviation
            std::size_t n = k;
            while (n < text.size() && std::isspace(static_cast<unsigned char>(text[n]))) ++n;
            if (n < text.size() && (std::islower(static_cast<unsigned char>(text[n])) ||
                                    std::isdigit(static_cast<unsigned char>(text[n])))) {
                continue;
            }
        }
        emit(k);
        i = k - 1;
    }
    emit(text.size());
    return out;
}

std::string lemmatize(std::string_view w) {
    if (auto it = kIrregularPlurals.find(w); it != kIrregularPlurals.end()) {
        return std::string(it->second);
    }
    if (w.size() <= 3) return std::string(w);
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || ends_with(w, "ics")) {
        return std::string(w);
    }
    if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
    for (std::string_view suffix : {"sses", "shes", "ches", "xes", "zzes"}) {
        if (ends_with(w, suffix)) return std::string(w.substr(0, w.size() - 2));
    }
    if (ends_with(w, "s")) return std::string(w.substr(0, w.size() - 1));
    return std::string(w);
}

std::vector<std::string> extract_lemmas(std::string_view sentence) {
    std::vector<std::string> out;
    for (const auto& t : tokenize_words(sentence)) out.push_back(lemmatize(t.key));
    return out;
}

AckTaxonomy AckTaxonomy::standard() {
    AckTaxonomy t;
    t.categories_[Role::InvestigationAnalysis] =
        lemma_set({"assistance", "experiment", "help", "measurement", "analysis", "collection",
                   "design", "interpretation", "code", "data", "work", "preparation"});
    t.categories_[Role::MaterialResources] = lemma_set({"access", "data"});
    t.categories_[Role::Writing] = lemma_set({"writing"});
    t.categories_[Role::PeerCommunication] = lemma_set({"discussion", "review"});

    auto plain = [&](const char* kw, Role r) {
        t.rules_[kw] = DisambiguationRule{kw, {}, {}, r, std::nullopt};
    };
    t.rules_["work"] = DisambiguationRule{
        "work", lemma_set({"foundation", "funded", "funding", "grant"}), {},
        Role::InvestigationAnalysis, std::nullopt};
    t.rules_["data"] = DisambiguationRule{
        "data", {}, {"providing", "provide", "provided", "database"},
        Role::InvestigationAnalysis, Role::MaterialResources};
    plain("analysis", Role::InvestigationAnalysis);
    plain("preparation", Role::InvestigationAnalysis);
    plain("review", Role::PeerCommunication);
    plain("collection", Role::InvestigationAnalysis);
    plain("writing", Role::Writing);
    plain("design", Role::InvestigationAnalysis);
    plain("interpretation", Role::InvestigationAnalysis);
    plain("code", Role::InvestigationAnalysis);
    return t;
}

AckTaxonomy AckTaxonomy::from_json(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("taxonomy: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_object()) {
        throw ConfigError("taxonomy: missing \"categories\" object");
    }
    AckTaxonomy t;
    try {
        for (const auto& [name, words] : doc["categories"].items()) {
            auto& set = t.categories_[role_from_config(name)];
            for (const auto& w : words) set.insert(lemmatize(ascii_lower(w.get<std::string>())));
        }
        if (doc.contains("rules")) {
            for (const auto& r : doc["rules"]) {
                DisambiguationRule rule;
                rule.keyword = lemmatize(ascii_lower(r.at("keyword").get<std::string>()));
                for (const auto& s : r.value("suppressors", json::array())) {
                    rule.suppressors.insert(lemmatize(ascii_lower(s.get<std::string>())));
                }
                for (const auto& s : r.value("promoters", json::array())) {
                    rule.promoters.insert(ascii_lower(s.get<std::string>()));
                }
                rule.default_category = role_from_config(r.at("default").get<std::string>());
                if (r.contains("switched")) {
                    rule.switched_category = role_from_config(r["switched"].get<std::string>());
                }
                if (!rule.promoters.empty() && !rule.switched_category) {
                    throw ConfigError("taxonomy: rule '" + rule.keyword +
                                      "' has promoters but no switched category");
                }
                if (t.rules_.count(rule.keyword) != 0) {
                    throw ConfigError("taxonomy: two rules for '" + rule.keyword + "'");
                }
                t.rules_[rule.keyword] = std::move(rule);
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("taxonomy: ") + e.what());
    }
    t.check();
    return t;
}

AckTaxonomy AckTaxonomy::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read taxonomy: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void AckTaxonomy::check() const {
    std::map<std::string, int> seen;
    for (const auto& [role, words] : categories_) {
        for (const auto& w : words) ++seen[w];
    }
    for (const auto& [word, n] : seen) {
        if (n > 1 && rules_.count(word) == 0) {
            throw ConfigError("taxonomy: keyword '" + word +
                              "' is in several categories but has no disambiguation rule");
        }
    }
}

std::vector<KeywordHit> classify_sentence_hits(std::string_view sentence,
                                               const AckTaxonomy& taxonomy) {
    const auto tokens = tokenize_words(sentence);
    std::set<std::string> lemmas;
    std::set<std::string> surface;
    for (const auto& t : tokens) {
        surface.insert(t.key);
        lemmas.insert(lemmatize(t.key));
    }
    auto any_in = [](const std::set<std::string>& needles, const std::set<std::string>& hay) {
        return std::any_of(needles.begin(), needles.end(),
                           [&](const std::string& n) { return hay.count(n) != 0; });
    };

    std::set<KeywordHit> hits;
    for (const auto& [role, words] : taxonomy.categories()) {
        for (const auto& kw : words) {
            if (lemmas.count(kw) == 0) continue;
            auto rule = taxonomy.rules().find(kw);
            if (rule == taxonomy.rules().end()) {
                hits.insert({role, kw});
                continue;
            }
            const DisambiguationRule& r = rule->second;
            if (any_in(r.suppressors, lemmas)) continue;
            if (r.switched_category && any_in(r.promoters, surface)) {
                hits.insert({*r.switched_category, kw});
            } else {
                hits.insert({r.default_category, kw});
            }
        }
    }
    return {hits.begin(), hits.end()};
}

RoleSet classify_sentence(std::string_view sentence, const AckTaxonomy& taxonomy) {
    RoleSet out;
    for (const auto& h : classify_sentence_hits(sentence, taxonomy)) out.insert(h.role);
    return out;
}

std::string_view to_string(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::UnlocatedName: return "unlocated_name";
        case DiagnosticKind::AcknowledgedAuthor: return "acknowledged_author";
    }
    return "";
}

bool is_paper_author(const PaperRecord& paper, const AckEntry& ack) {
    return std::any_of(paper.authors.begin(), paper.authors.end(), [&](const AuthorEntry& a) {
        return same_person(a.person_id, a.given_name, a.family_name, ack.person_id,
                           ack.given_name, ack.family_name);
    });
}

AssignmentResult assign_roles(const PaperRecord& paper, const AckTaxonomy& taxonomy) {
    AssignmentResult result;
    if (paper.acknowledgees.empty()) return result;

    std::vector<bool> skip(paper.acknowledgees.size(), false);
    for (std::size_t a = 0; a < paper.acknowledgees.size(); ++a) {
        const auto& ack = paper.acknowledgees[a];
        if (is_paper_author(paper, ack)) {
            skip[a] = true;
            result.diagnostics.push_back({paper.doi, DiagnosticKind::AcknowledgedAuthor, a,
                                          ack.given_name + " " + ack.family_name});
        }
    }

    std::vector<bool> located(paper.acknowledgees.size(), false);
    std::set<std::pair<std::size_t, Role>> assigned;
    const auto sentences = segment_sentences(paper.ack_text);
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        const auto tokens = tokenize_words(sentences[s]);
        std::vector<KeywordHit> hits;
        bool classified = false;
        for (std::size_t a = 0; a < paper.acknowledgees.size(); ++a) {
            const auto& ack = paper.acknowledgees[a];
            if (!mentions_person(tokens, ack.given_name, ack.family_name)) continue;
            located[a] = true;
            if (skip[a]) continue;
            if (!classified) {
                hits = classify_sentence_hits(sentences[s], taxonomy);
                classified = true;
            }
            // First keyword per role is the evidence.
            std::set<Role> done;
            for (const auto& h : hits) {
                if (!done.insert(h.role).second) continue;
                if (!assigned.insert({a, h.role}).second) continue;
                result.assignments.push_back({paper.doi, a, h.role, s, h.keyword});
            }
        }
    }
    for (std::size_t a = 0; a < paper.acknowledgees.size(); ++a) {
        if (!located[a]) {
            const auto& ack = paper.acknowledgees[a];
            result.diagnostics.push_back({paper.doi, DiagnosticKind::UnlocatedName, a,
                                          ack.given_name + " " + ack.family_name});
        }
    }
    std::stable_sort(result.assignments.begin(), result.assignments.end(),
                     [](const RoleAssignment& x, const RoleAssignment& y) {
                         return std::tie(x.sentence_index, x.acknowledgee_index, x.role) <
                                std::tie(y.sentence_index, y.acknowledgee_index, y.role);
                     });
    return result;
}

AssignmentResult classify_corpus(const Corpus& corpus, const AckTaxonomy& taxonomy,
                                 unsigned workers) {
    const std::size_t n = corpus.papers.size();
    std::vector<AssignmentResult> per_paper(n);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            per_paper[i] = assign_roles(corpus.papers[i], taxonomy);
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2) {
        run(0, n);
    } else {
        std::vector<std::jthread> threads;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t begin = 0; begin < n; begin += chunk) {
            threads.emplace_back(run, begin, std::min(n, begin + chunk));
        }
    }
    AssignmentResult merged;
    for (auto& r : per_paper) {
        std::move(r.assignments.begin(), r.assignments.end(), std::back_inserter(merged.assignments));
        std::move(r.diagnostics.begin(), r.diagnostics.end(), std::back_inserter(merged.diagnostics));
    }
    return merged;
}

}  // namespace creditlens
