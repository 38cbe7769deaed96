#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "creditlens/ack_classifier.hpp"
#include "creditlens/corpus.hpp"
#include "creditlens/credit_map.hpp"
#include "creditlens/roles.hpp"
#include "creditlens/stats.hpp"

namespace creditlens {

/// Exact non-negative fraction; comparisons cross-multiply.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

/// One person credited with one role on one paper.
struct ContributionEvent {
    std::string doi;
    /// "id:<person_id>" for identified people, "<doi>#author<i>" / "<doi>#ack<i>" otherwise.
    std::string person_key;
    std::optional<std::string> person_id;
    Role role = Role::InvestigationAnalysis;
    CreditType credit_type = CreditType::Author;
    Gender gender = Gender::Unknown;

    friend bool operator==(const ContributionEvent&, const ContributionEvent&) = default;
};

struct EventTable {
    std::vector<ContributionEvent> events;
    std::vector<Diagnostic> diagnostics;
};

/// Author role sets plus acknowledgment role assignments, unique per
/// (doi, person, role), in paper order. Unknown-gender people are kept.
/// Throws UnmappedRoleError for CRediT strings outside the mapping.
EventTable build_events(const Corpus& corpus, const CreditMapping& mapping,
                        const AckTaxonomy& taxonomy, unsigned workers = 1);

struct ArObservation {
    std::string doi;
    Role role = Role::InvestigationAnalysis;
    Gender gender = Gender::Unknown;
    std::int64_t authors = 0;
    std::int64_t contributors = 0;

    Rational ar() const { return {authors, contributors}; }
};

struct PaperLevelResult {
    std::vector<ArObservation> observations;  // sorted by (doi, gender)
    std::size_t papers_with_role = 0;
    std::size_t single_gender_papers = 0;     // skipped: only one gender present
};

/// Per paper where both women and men contribute to `role`, one observation
/// per gender.
PaperLevelResult paper_level_ar(std::span<const ContributionEvent> events, Role role);

struct PairOptions {
    std::int64_t min_shared_papers = 1;
    /// Also emit man–man and woman–woman pairs (ids ordered, `same_gender` set).
    bool include_same_gender = false;
};

struct PairObservation {
    std::string man_id;
    std::string woman_id;
    Role role = Role::InvestigationAnalysis;
    std::int64_t shared_papers = 0;   // n
    std::int64_t man_authored = 0;    // j
    std::int64_t woman_authored = 0;  // k
    bool same_gender = false;

    Rational man_ar() const { return {man_authored, shared_papers}; }
    Rational woman_ar() const { return {woman_authored, shared_papers}; }
};

/// For each man–woman pair of identified people, n counts the papers where
/// both contributed to `role` (either credit type), and j, k the papers
/// among those where each was an author. Sorted by (man_id, woman_id).
std::vector<PairObservation> collaboration_ar(std::span<const ContributionEvent> events, Role role,
                                              const PairOptions& options = {});

/// (mean(women) − mean(men)) / mean(men). Throws DegenerateError for an
/// empty sample or a zero men mean.
double relative_difference(std::span<const double> women, std::span<const double> men);

struct AckBucket {
    std::size_t author_count = 0;
    double mean_acknowledgees = 0.0;
    /// Normal-approximation 95% interval; NaN with a single paper.
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    std::size_t papers = 0;
};

/// Mean number of acknowledged names per author-count bucket, counting every
/// name whether identified or not.
std::vector<AckBucket> ack_by_author_count(const Corpus& corpus);

struct RoleProportions {
    CreditType credit_type = CreditType::Author;
    std::vector<Role> roles;
    std::map<Gender, std::map<Role, std::size_t>> counts;  // woman and man only

    double proportion(Gender g, Role r) const;
    std::size_t total(Gender g) const;
    /// Gender × role chi-square over roles with a non-zero total. A single
    /// such role gives statistic 0, p = 1, df = 0. nullopt when a gender has
    /// no events.
    std::optional<stats::TestResult> homogeneity_test() const;
};

RoleProportions role_proportions(std::span<const ContributionEvent> events, CreditType credit_type);

}  // namespace creditlens
