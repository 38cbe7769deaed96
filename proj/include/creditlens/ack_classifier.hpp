#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "creditlens/corpus.hpp"
#include "creditlens/credit_map.hpp"
#include "creditlens/roles.hpp"

namespace creditlens {

/// Splits on . ! ? followed by whitespace or end of text. A period after a
/// single capital letter (an initial) or after Dr, Prof, Mr, Ms, Mrs, St,
/// "et al", e.g., i.e., cf or vs does not end a sentence.
std::vector<std::string> segment_sentences(std::string_view text);

/// Rule-based noun lemma for a lowercase word: irregular plurals from an
/// exception list, then -ies -> -y, -(s|sh|ch|x|zz)es -> stem, -s -> stem.
/// Words ending in -ss, -us, -is or -ics are left alone, as is anything of
/// three letters or fewer. No verb handling: "writing" stays "writing".
std::string lemmatize(std::string_view lower_word);

/// Lowercased, lemmatized tokens of the sentence, in order.
std::vector<std::string> extract_lemmas(std::string_view sentence);

/// Co-occurrence rule for a multi-meaning keyword. Evaluated on one sentence:
/// any suppressor lemma cancels the keyword; otherwise any promoter surface
/// form switches it to `switched_category`; otherwise it yields
/// `default_category`.
struct DisambiguationRule {
    std::string keyword;
    std::set<std::string> suppressors;
    std::set<std::string> promoters;
    Role default_category = Role::InvestigationAnalysis;
    std::optional<Role> switched_category;

    friend bool operator==(const DisambiguationRule&, const DisambiguationRule&) = default;
};

class AckTaxonomy {
public:
    /// The shipped keyword taxonomy with its ten disambiguation rules.
    static AckTaxonomy standard();
    /// JSON config ({"categories": {Role: [keywords]}, "rules": [...]}), comments allowed.
    /// Throws ConfigError when a keyword sits in several categories without
    /// a rule, or a category is not an acknowledgment role.
    static AckTaxonomy from_json(std::string_view text);
    static AckTaxonomy load(const std::filesystem::path& path);

    const std::map<Role, std::set<std::string>>& categories() const { return categories_; }
    const std::map<std::string, DisambiguationRule>& rules() const { return rules_; }

    friend bool operator==(const AckTaxonomy&, const AckTaxonomy&) = default;

private:
    void check() const;

    std::map<Role, std::set<std::string>> categories_;
    std::map<std::string, DisambiguationRule> rules_;
};

struct KeywordHit {
    Role role;
    std::string keyword;

    friend auto operator<=>(const KeywordHit&, const KeywordHit&) = default;
};

/// Every (role, keyword) the sentence triggers, sorted.
std::vector<KeywordHit> classify_sentence_hits(std::string_view sentence, const AckTaxonomy& taxonomy);
RoleSet classify_sentence(std::string_view sentence, const AckTaxonomy& taxonomy);

struct RoleAssignment {
    std::string doi;
    std::size_t acknowledgee_index = 0;
    Role role = Role::InvestigationAnalysis;
    std::size_t sentence_index = 0;
    std::string keyword;

    friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;
};

enum class DiagnosticKind { UnlocatedName, AcknowledgedAuthor };
std::string_view to_string(DiagnosticKind k);

struct Diagnostic {
    std::string doi;
    DiagnosticKind kind;
    std::size_t acknowledgee_index = 0;
    std::string detail;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct AssignmentResult {
    std::vector<RoleAssignment> assignments;
    std::vector<Diagnostic> diagnostics;
};

/// True when the acknowledgee is one of the paper's authors (same person ID,
/// or same folded name when either side lacks an ID).
bool is_paper_author(const PaperRecord& paper, const AckEntry& ack);

/// Every acknowledgee mentioned in a sentence receives every role classified
/// for that sentence. One assignment per (acknowledgee, role), keeping the
/// earliest evidence. Acknowledgees who are also authors of the paper are
/// skipped with a diagnostic; acknowledgees never located get one too.
/// Output is ordered by (sentence index, acknowledgee index, role).
AssignmentResult assign_roles(const PaperRecord& paper, const AckTaxonomy& taxonomy);

/// assign_roles over the whole corpus, merged in paper order. `workers` > 1
/// splits papers across threads; output is identical for any worker count.
AssignmentResult classify_corpus(const Corpus& corpus, const AckTaxonomy& taxonomy,
                                 unsigned workers = 1);

}  // namespace creditlens
