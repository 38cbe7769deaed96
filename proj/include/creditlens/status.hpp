#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "creditlens/corpus.hpp"
#include "creditlens/metrics.hpp"
#include "creditlens/stats.hpp"

namespace creditlens {

enum class StatusTier { High, Middle, Less };
std::string_view to_string(StatusTier t);

enum class PairType { HighManHighWoman, HighManLessWoman, LessManHighWoman, LessManLessWoman };
inline constexpr std::array<PairType, 4> kAllPairTypes = {
    PairType::HighManHighWoman, PairType::HighManLessWoman, PairType::LessManHighWoman,
    PairType::LessManLessWoman};
std::string_view to_string(PairType t);

struct StratifyOptions {
    double q = 0.10;
    /// Group by (gender, first listed discipline) instead of gender alone.
    bool by_discipline = false;
};

struct TierAssignment {
    std::string person_id;
    Gender gender = Gender::Unknown;
    std::string discipline;  // empty unless grouping by discipline
    std::uint64_t citations = 0;
    StatusTier tier = StatusTier::Middle;
};

struct StratifyResult {
    std::map<std::string, TierAssignment> tiers;
    std::vector<std::string> warnings;
};

/// Scholars who appear as an author on some paper and as an acknowledgee on
/// some paper, with a woman/man label. A profile without gender takes the
/// first gendered label the person carries in the corpus. Sorted by id.
std::vector<ScholarProfile> eligible_scholars(const Corpus& corpus);

/// Nearest-rank tiers within each group. With v the citation count at rank
/// ceil((1 − q)·N) counted from the bottom, scholars strictly above v are
/// high; symmetrically, scholars strictly below the value at the same rank
/// counted from the top are less; everyone else (including ties at either
/// cutoff) is middle. Groups smaller than ceil(1/q) are skipped with a
/// warning. Profiles with unknown gender are ignored.
StratifyResult stratify(std::span<const ScholarProfile> scholars, const StratifyOptions& options = {});

/// Pair type for each pair (same order), or nullopt when either member is
/// untiered or middle, or the pair is same-gender.
std::vector<std::optional<PairType>> classify_pairs(std::span<const PairObservation> pairs,
                                                    const std::map<std::string, TierAssignment>& tiers);

struct PairTypeRow {
    PairType type = PairType::HighManHighWoman;
    Role role = Role::InvestigationAnalysis;
    std::size_t n_pairs = 0;
    double mean_woman_ar = 0.0;
    double mean_man_ar = 0.0;
    std::optional<double> rel_diff;
    /// Paired test of woman vs man AR; absent below two pairs or when degenerate.
    std::optional<stats::TestResult> test;
    std::vector<double> woman_ars;
    std::vector<double> man_ars;
};

/// One row per pair type for `role`, in kAllPairTypes order.
std::vector<PairTypeRow> ar_by_pair_type(std::span<const PairObservation> pairs,
                                         const std::map<std::string, TierAssignment>& tiers,
                                         Role role);

}  // namespace creditlens
