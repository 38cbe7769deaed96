#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "creditlens/corpus.hpp"
#include "creditlens/roles.hpp"

namespace creditlens {

struct IntRange {
    int lo = 0;
    int hi = 0;
};

/// Generative model: every paper has a lead author holding authorship-only
/// roles, a roster of contributors each drawn to one shared role (I&A, M&R,
/// Writing) and realized as author with probability
///   clip(base_author_prob + gender_gap[role] (men only) + status_effect (high tier only), 0.01, 0.99)
/// or else as acknowledgee, plus extra acknowledgees thanked for peer
/// communication. Acknowledgment text comes from templates the classifier
/// reads unambiguously.
struct SynthConfig {
    std::size_t n_papers = 1000;
    std::uint64_t seed = 42;
    double gender_ratio = 0.4;  // share of women in the scholar pool
    std::map<Role, double> role_probs = {{Role::InvestigationAnalysis, 0.6},
                                         {Role::MaterialResources, 0.2},
                                         {Role::Writing, 0.2}};
    double base_author_prob = 0.7;
    std::map<Role, double> gender_gap;  // added to men's authorship probability
    double status_effect = 0.0;         // added to high-tier members' authorship probability
    double status_q = 0.10;             // tier share used to plant the status effect
    IntRange team_size{3, 9};           // roster contributors per paper
    IntRange ack_count{0, 2};           // peer-communication acknowledgees per paper
    std::size_t scholar_pool_size = 2000;
    double ack_identified_frac = 0.8;   // acknowledgees that carry a person ID
    double citation_xmin = 200.0;       // Pareto scale of total citations
    double citation_alpha = 1.2;        // Pareto tail index
    double funding_sentence_prob = 0.5;
    double initial_name_prob = 0.3;     // "J. Smith" instead of "John Smith" in ack text
    double honorific_prob = 0.1;        // "Dr. John Smith"
    std::vector<std::string> disciplines = {"Biology", "Medicine", "Psychology",
                                            "Environmental Science", "Computer Science",
                                            "Chemistry", "Physics", "Sociology", "Engineering"};
    IntRange years{2016, 2021};

    /// Throws ConfigError on infeasible settings.
    void check() const;

    static SynthConfig from_json(std::string_view text);
    std::string to_json() const;
};

struct PlantedAssignment {
    std::string doi;
    std::size_t acknowledgee_index = 0;
    Role role = Role::InvestigationAnalysis;

    friend bool operator==(const PlantedAssignment&, const PlantedAssignment&) = default;
};

struct PlantedScholar {
    std::string person_id;
    Gender gender = Gender::Unknown;
    std::uint64_t citations = 0;
    bool high_tier = false;
    bool low_tier = false;
    std::map<Role, double> author_prob;
};

struct GroundTruth {
    SynthConfig config;
    /// Closed-form paper-level relative difference per shared role.
    std::map<Role, double> expected_relative_difference;
    /// Realized (credit type, role) counts.
    std::map<CreditType, std::map<Role, std::size_t>> role_counts;
    std::vector<PlantedScholar> scholars;
    std::vector<PlantedAssignment> assignments;

    void write_json(std::ostream& out) const;
};

struct SynthOutput {
    Corpus corpus;
    GroundTruth truth;
};

/// Deterministic in config (seed included). Each paper draws from its own
/// substream, so papers are independent of generation order.
SynthOutput generate(const SynthConfig& config);

/// Number of templates available for an acknowledgment role.
std::size_t template_count(Role role);
/// Sentence thanking `names` (already rendered) for `role`; classifies to
/// exactly {role}. Variant 0 is the canonical form ("We thank A for helpful
/// discussion."). Throws std::invalid_argument for non-acknowledgment roles.
std::string template_ack_sentence(std::string_view names, Role role, std::size_t variant = 0);
std::string template_ack_sentence(const std::vector<std::string>& names, Role role,
                                  std::size_t variant = 0);

/// Given names the generator uses, with their gender, as dictionary lines.
void write_name_dictionary(std::ostream& out);

}  // namespace creditlens
