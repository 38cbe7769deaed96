#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "creditlens/ack_classifier.hpp"
#include "creditlens/corpus.hpp"
#include "creditlens/credit_map.hpp"
#include "creditlens/metrics.hpp"
#include "creditlens/stats.hpp"
#include "creditlens/status.hpp"

namespace creditlens {

inline constexpr const char* kVersion = "0.1.0";

struct AnalyzeOptions {
    double q = 0.10;
    stats::TTestVariant ttest = stats::TTestVariant::Welch;
    bool by_discipline = false;         // per-discipline fig3 tables
    bool tiers_by_discipline = false;   // status tiers within (gender, discipline)
    PairOptions pairs;
    unsigned workers = 1;
    double alpha = 0.05;
};

/// One row of a gender comparison table. Test fields stay empty when a
/// sample is too small or degenerate.
struct ComparisonRow {
    std::string discipline;  // empty for the corpus-wide tables
    Role role = Role::InvestigationAnalysis;
    std::size_t n_women = 0;
    std::size_t n_men = 0;  // equals n_women for paired rows
    std::optional<double> mean_woman_ar;
    std::optional<double> mean_man_ar;
    std::optional<double> rel_diff;
    std::optional<stats::TestResult> test;
};

struct AnalysisResult {
    EventTable events;
    std::map<Role, PaperLevelResult> paper_level;
    std::map<Role, std::vector<PairObservation>> pairs;
    std::vector<AckBucket> ack_buckets;
    ContributorSummary summary;
    std::map<CreditType, RoleProportions> proportions;
    std::vector<ComparisonRow> paper_rows;
    std::vector<ComparisonRow> collab_rows;
    std::vector<ComparisonRow> paper_rows_by_discipline;
    std::vector<ComparisonRow> collab_rows_by_discipline;
    StratifyResult tiers;
    std::vector<PairTypeRow> pair_type_rows;
};

/// Runs every analysis over a gender-annotated corpus.
AnalysisResult analyze(const Corpus& corpus, const CreditMapping& mapping,
                       const AckTaxonomy& taxonomy, const AnalyzeOptions& options);

/// Welch/pooled comparison of paper-level AR samples for one role.
ComparisonRow compare_paper_level(const PaperLevelResult& result, Role role,
                                  stats::TTestVariant variant);
/// Paired comparison of man–woman pair AR samples for one role.
ComparisonRow compare_pairs(std::span<const PairObservation> pairs, Role role);

/// Writes the CSV bundle and manifest.json into `out_dir` (created if
/// missing). Returns the file names written, manifest last.
std::vector<std::string> write_bundle(const AnalysisResult& result, const Corpus& corpus,
                                      const AnalyzeOptions& options,
                                      const std::filesystem::path& out_dir);

/// p to four significant digits.
std::string format_p(double p);
std::string csv_field(std::string_view s);

/// JSONL: load issues first, then validation entries.
void write_validation_report(std::ostream& out, const std::vector<LoadIssue>& load_issues,
                             const ValidationReport& report);
/// JSONL, one line per assignment with its evidence.
void write_assignments(std::ostream& out, const Corpus& corpus, const AssignmentResult& result);
void write_diagnostics(std::ostream& out, const AssignmentResult& result);

}  // namespace creditlens
