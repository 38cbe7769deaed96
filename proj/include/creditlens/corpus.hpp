#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "creditlens/credit_map.hpp"
#include "creditlens/roles.hpp"

namespace creditlens {

struct AuthorEntry {
    std::optional<std::string> person_id;
    std::string given_name;
    std::string family_name;
    std::vector<std::string> credit_roles;
    /// nullopt until preset in input or filled by gender inference.
    std::optional<Gender> gender;

    friend bool operator==(const AuthorEntry&, const AuthorEntry&) = default;
};

struct AckEntry {
    std::optional<std::string> person_id;
    std::string given_name;
    std::string family_name;
    std::optional<Gender> gender;

    friend bool operator==(const AckEntry&, const AckEntry&) = default;
};

struct PaperRecord {
    std::string doi;
    int year = 0;
    std::vector<std::string> disciplines;
    std::vector<AuthorEntry> authors;
    std::vector<AckEntry> acknowledgees;
    std::string ack_text;

    friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct ScholarProfile {
    std::string person_id;
    std::uint64_t total_citations = 0;
    std::optional<Gender> gender;
    std::vector<std::string> disciplines;

    friend bool operator==(const ScholarProfile&, const ScholarProfile&) = default;
};

using ScholarTable = std::map<std::string, ScholarProfile>;

/// One problem found while reading a line-delimited file. Line numbers are 1-based.
struct LoadIssue {
    std::string file;
    std::size_t line = 0;
    std::string message;

    friend bool operator==(const LoadIssue&, const LoadIssue&) = default;
};

struct Provenance {
    std::string corpus_path;
    std::string scholars_path;
    std::uint64_t corpus_hash = 0;   // FNV-1a of the corpus file bytes
    std::uint64_t scholars_hash = 0;
    std::string loaded_at;           // ISO-8601 UTC

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A loaded corpus. Analyses only ever take it by const reference.
struct Corpus {
    std::vector<PaperRecord> papers;
    ScholarTable scholars;
    Provenance provenance;
    std::vector<LoadIssue> load_report;
};

/// Reads the line-delimited corpus and, optionally, the scholar profile
/// table. Malformed lines, duplicate DOIs and duplicate authors within a
/// paper go to the load report instead of aborting.
/// Throws InputError when a file cannot be read and EmptyCorpusError when
/// no paper line is valid.
Corpus load_corpus(const std::filesystem::path& corpus_path,
                   const std::optional<std::filesystem::path>& scholars_path = std::nullopt);

/// In-memory variant used by tests and the generator. `source` names the
/// input in load issues.
Corpus parse_corpus(std::string_view jsonl, std::string_view source = "<memory>");
ScholarTable parse_scholars(std::string_view jsonl, std::vector<LoadIssue>& issues,
                            std::string_view source = "<memory>");

void write_paper_line(std::ostream& out, const PaperRecord& paper);
void write_corpus(std::ostream& out, const Corpus& corpus);
void write_scholars(std::ostream& out, const ScholarTable& scholars);

std::uint64_t fnv1a64(std::string_view bytes);

// -- indexes ---------------------------------------------------------------

struct PersonAppearance {
    std::size_t paper_index;
    CreditType credit;
};

struct CorpusIndex {
    std::map<std::string, std::size_t> by_doi;
    std::map<std::string, std::vector<PersonAppearance>> by_person;
    std::map<std::string, std::vector<std::size_t>> by_discipline;
};

CorpusIndex build_index(const Corpus& corpus);

// -- validation ------------------------------------------------------------

enum class IssueKind { NameMismatch, UnknownRole, MissingCreditRoles, UnknownScholar };
std::string_view to_string(IssueKind k);

struct ValidationEntry {
    IssueKind kind;
    std::string doi;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool empty() const { return entries.empty(); }
    std::size_t count(IssueKind k) const;
};

/// Consistency checks that never modify the corpus: acknowledgees not
/// mentioned in their paper's ack_text, CRediT strings outside the mapping,
/// authors without CRediT roles, and person IDs missing from the scholar
/// table (only checked when a scholar table was loaded).
ValidationReport validate(const Corpus& corpus, const CreditMapping& mapping);

// -- descriptive totals ----------------------------------------------------

struct ContributorSummary {
    std::size_t papers = 0;
    std::size_t author_mentions = 0;
    std::size_t acknowledgee_mentions = 0;
    std::size_t identified_acknowledgees = 0;
    std::map<Gender, std::size_t> authors_by_gender;
    std::map<Gender, std::size_t> acknowledgees_by_gender;
    /// (discipline, gender) -> contributor mentions (authors + acknowledgees).
    std::map<std::pair<std::string, Gender>, std::size_t> contributors_by_discipline;

    /// Share of acknowledgees carrying a person ID; 0 when there are none.
    double identified_fraction() const;
};

ContributorSummary contributor_counts(const Corpus& corpus);

}  // namespace creditlens
