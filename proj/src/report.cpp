#include "creditlens/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "json.hpp"

#include "creditlens/error.hpp"

namespace creditlens {

namespace {

std::string fixed(double v, int digits = 6) { return fmt::format("{:.{}f}", v, digits); }

std::string opt_fixed(const std::optional<double>& v, int digits = 6) {
    return v ? fixed(*v, digits) : std::string();
}

std::string significance(const std::optional<stats::TestResult>& t, double alpha) {
    return t && t->significant(alpha) ? "*" : "";
}

std::optional<double> safe_mean(std::span<const double> xs) {
    if (xs.empty()) return std::nullopt;
    return stats::mean(xs);
}

std::optional<double> safe_rel_diff(std::span<const double> women, std::span<const double> men) {
    try {
        return relative_difference(women, men);
    } catch (const DegenerateError&) {
        return std::nullopt;
    }
}

std::vector<ContributionEvent> events_in(const std::vector<ContributionEvent>& events,
                                         const std::set<std::string>& dois) {
    std::vector<ContributionEvent> out;
    for (const auto& e : events) {
        if (dois.count(e.doi)) out.push_back(e);
    }
    return out;
}

std::vector<PairObservation> mixed_pairs(std::span<const PairObservation> pairs) {
    std::vector<PairObservation> out;
    for (const auto& p : pairs) {
        if (!p.same_gender) out.push_back(p);
    }
    return out;
}

class CsvFile {
public:
    CsvFile(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
        : out_(path, std::ios::binary) {
        if (!out_) throw InputError("cannot write " + path.string());
        row(header);
    }
    template <typename Range>
    void row(const Range& fields) {
        bool first = true;
        for (const auto& f : fields) {
            if (!first) out_ << ',';
            out_ << csv_field(f);
            first = false;
        }
        out_ << '\n';
    }
    void row(std::initializer_list<std::string_view> fields) { row<std::initializer_list<std::string_view>>(fields); }
    void row(std::initializer_list<std::string> fields) { row<std::initializer_list<std::string>>(fields); }

private:
    std::ofstream out_;
};

void write_comparison(CsvFile& csv, const ComparisonRow& r, bool with_discipline, bool paired,
                      double alpha) {
    std::vector<std::string> f;
    if (with_discipline) f.push_back(r.discipline);
    f.emplace_back(short_label(r.role));
    if (paired) {
        f.push_back(std::to_string(r.n_women));
    } else {
        f.push_back(std::to_string(r.n_women));
        f.push_back(std::to_string(r.n_men));
    }
    f.push_back(opt_fixed(r.mean_woman_ar));
    f.push_back(opt_fixed(r.mean_man_ar));
    f.push_back(opt_fixed(r.rel_diff));
    f.push_back(r.test ? fixed(r.test->statistic, 4) : "");
    f.push_back(r.test ? fixed(r.test->df, 2) : "");
    f.push_back(r.test ? format_p(r.test->p_value) : "");
    f.push_back(significance(r.test, alpha));
    csv.row(f);
}

}  // namespace

std::string format_p(double p) { return fmt::format("{:.4g}", p); }

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ComparisonRow compare_paper_level(const PaperLevelResult& result, Role role,
                                  stats::TTestVariant variant) {
    std::vector<double> women, men;
    for (const auto& o : result.observations) {
        if (o.role != role) continue;
        (o.gender == Gender::Woman ? women : men).push_back(o.ar().value());
    }
    ComparisonRow row;
    row.role = role;
    row.n_women = women.size();
    row.n_men = men.size();
    row.mean_woman_ar = safe_mean(women);
    row.mean_man_ar = safe_mean(men);
    row.rel_diff = safe_rel_diff(women, men);
    if (women.size() >= 2 && men.size() >= 2) {
        try {
            row.test = stats::t_test_independent(women, men, variant);
        } catch (const DegenerateError&) {
        }
    }
    return row;
}

ComparisonRow compare_pairs(std::span<const PairObservation> pairs, Role role) {
    std::vector<double> women, men;
    for (const auto& p : pairs) {
        if (p.role != role || p.same_gender) continue;
        women.push_back(p.woman_ar().value());
        men.push_back(p.man_ar().value());
    }
    ComparisonRow row;
    row.role = role;
    row.n_women = row.n_men = women.size();
    row.mean_woman_ar = safe_mean(women);
    row.mean_man_ar = safe_mean(men);
    row.rel_diff = safe_rel_diff(women, men);
    if (women.size() >= 2) {
        try {
            row.test = stats::t_test_paired(women, men);
        } catch (const DegenerateError&) {
        }
    }
    return row;
}

AnalysisResult analyze(const Corpus& corpus, const CreditMapping& mapping,
                       const AckTaxonomy& taxonomy, const AnalyzeOptions& options) {
    if (!(options.q > 0.0 && options.q < 0.5)) throw ConfigError("q must lie in (0, 0.5)");
    if (options.pairs.min_shared_papers < 1) throw ConfigError("min-shared-papers must be at least 1");

    AnalysisResult r;
    r.events = build_events(corpus, mapping, taxonomy, options.workers);
    const auto& events = r.events.events;

    r.ack_buckets = ack_by_author_count(corpus);
    r.summary = contributor_counts(corpus);
    for (CreditType t : {CreditType::Author, CreditType::Acknowledgee}) {
        r.proportions.emplace(t, role_proportions(events, t));
    }

    for (Role role : kSharedRoles) {
        r.paper_level[role] = paper_level_ar(events, role);
        r.pairs[role] = collaboration_ar(events, role, options.pairs);
        r.paper_rows.push_back(compare_paper_level(r.paper_level[role], role, options.ttest));
        r.collab_rows.push_back(compare_pairs(r.pairs[role], role));
    }

    if (options.by_discipline) {
        const CorpusIndex index = build_index(corpus);
        for (const auto& [discipline, papers] : index.by_discipline) {
            std::set<std::string> dois;
            for (std::size_t i : papers) dois.insert(corpus.papers[i].doi);
            const auto subset = events_in(events, dois);
            for (Role role : kSharedRoles) {
                auto paper = compare_paper_level(paper_level_ar(subset, role), role, options.ttest);
                paper.discipline = discipline;
                r.paper_rows_by_discipline.push_back(std::move(paper));
                auto collab = compare_pairs(collaboration_ar(subset, role, options.pairs), role);
                collab.discipline = discipline;
                r.collab_rows_by_discipline.push_back(std::move(collab));
            }
        }
    }

    const auto eligible = eligible_scholars(corpus);
    r.tiers = stratify(eligible, {options.q, options.tiers_by_discipline});
    for (Role role : kSharedRoles) {
        const auto pairs = mixed_pairs(r.pairs[role]);
        if (pairs.empty()) continue;
        for (auto& row : ar_by_pair_type(pairs, r.tiers.tiers, role)) {
            r.pair_type_rows.push_back(std::move(row));
        }
    }
    return r;
}

std::vector<std::string> write_bundle(const AnalysisResult& r, const Corpus& corpus,
                                      const AnalyzeOptions& options,
                                      const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    std::vector<std::string> files;
    auto path = [&](std::string name) {
        files.push_back(name);
        return out_dir / name;
    };

    {
        CsvFile csv(path("ar_paper_level.csv"), {"doi", "role", "gender", "authors", "contributors", "ar"});
        for (const auto& [role, result] : r.paper_level) {
            for (const auto& o : result.observations) {
                csv.row({o.doi, std::string(short_label(role)), std::string(to_string(o.gender)),
                         std::to_string(o.authors), std::to_string(o.contributors),
                         fixed(o.ar().value())});
            }
        }
    }
    {
        CsvFile csv(path("ar_pairs.csv"),
                    {"man_id", "woman_id", "role", "n", "j", "k", "man_ar", "woman_ar"});
        for (const auto& [role, pairs] : r.pairs) {
            for (const auto& p : pairs) {
                csv.row({p.man_id, p.woman_id, std::string(short_label(role)),
                         std::to_string(p.shared_papers), std::to_string(p.man_authored),
                         std::to_string(p.woman_authored), fixed(p.man_ar().value()),
                         fixed(p.woman_ar().value())});
            }
        }
    }
    {
        CsvFile csv(path("fig2a.csv"),
                    {"author_count", "mean_acknowledgees", "ci_lower", "ci_upper", "papers"});
        for (const auto& b : r.ack_buckets) {
            csv.row({std::to_string(b.author_count), fixed(b.mean_acknowledgees),
                     std::isnan(b.ci_lower) ? std::string() : fixed(b.ci_lower),
                     std::isnan(b.ci_upper) ? std::string() : fixed(b.ci_upper),
                     std::to_string(b.papers)});
        }
    }
    {
        CsvFile csv(path("fig2b.csv"), {"discipline", "gender", "contributors"});
        for (const auto& [key, n] : r.summary.contributors_by_discipline) {
            if (key.second == Gender::Unknown) continue;
            csv.row({key.first, std::string(to_string(key.second)), std::to_string(n)});
        }
    }
    {
        CsvFile csv(path("fig2c.csv"), {"credit_type", "role", "gender", "count", "proportion"});
        for (const auto& [type, props] : r.proportions) {
            for (Role role : props.roles) {
                for (Gender g : {Gender::Woman, Gender::Man}) {
                    const auto it = props.counts.find(g);
                    const std::size_t n =
                        it == props.counts.end() || !it->second.count(role) ? 0 : it->second.at(role);
                    csv.row({std::string(to_string(type)), std::string(short_label(role)),
                             std::string(to_string(g)), std::to_string(n),
                             props.total(g) > 0 ? fixed(props.proportion(g, role)) : std::string()});
                }
            }
        }
    }
    {
        CsvFile csv(path("chi_square.csv"),
                    {"credit_type", "n_women", "n_men", "chi2", "df", "p", "significance"});
        for (const auto& [type, props] : r.proportions) {
            const auto test = props.homogeneity_test();
            csv.row({std::string(to_string(type)), std::to_string(props.total(Gender::Woman)),
                     std::to_string(props.total(Gender::Man)), test ? fixed(test->statistic, 4) : "",
                     test ? fixed(test->df, 0) : "", test ? format_p(test->p_value) : "",
                     significance(test, options.alpha)});
        }
    }
    {
        CsvFile csv(path("fig3_paper.csv"), {"role", "n_women", "n_men", "mean_woman_ar", "mean_man_ar",
                                             "rel_diff", "t", "df", "p", "significance"});
        for (const auto& row : r.paper_rows) write_comparison(csv, row, false, false, options.alpha);
    }
    {
        CsvFile csv(path("fig3_collab.csv"), {"role", "n_pairs", "mean_woman_ar", "mean_man_ar",
                                              "rel_diff", "t", "df", "p", "significance"});
        for (const auto& row : r.collab_rows) write_comparison(csv, row, false, true, options.alpha);
    }
    if (options.by_discipline) {
        {
            CsvFile csv(path("fig3_paper_by_discipline.csv"),
                        {"discipline", "role", "n_women", "n_men", "mean_woman_ar", "mean_man_ar",
                         "rel_diff", "t", "df", "p", "significance"});
            for (const auto& row : r.paper_rows_by_discipline) {
                write_comparison(csv, row, true, false, options.alpha);
            }
        }
        CsvFile csv(path("fig3_collab_by_discipline.csv"),
                    {"discipline", "role", "n_pairs", "mean_woman_ar", "mean_man_ar", "rel_diff", "t",
                     "df", "p", "significance"});
        for (const auto& row : r.collab_rows_by_discipline) {
            write_comparison(csv, row, true, true, options.alpha);
        }
    }
    {
        CsvFile csv(path("tiers.csv"), {"person_id", "gender", "discipline", "citations", "tier"});
        for (const auto& [id, t] : r.tiers.tiers) {
            csv.row({id, std::string(to_string(t.gender)), t.discipline, std::to_string(t.citations),
                     std::string(to_string(t.tier))});
        }
    }
    {
        CsvFile csv(path("fig4.csv"), {"pair_type", "role", "n_pairs", "mean_woman_ar", "mean_men_ar",
                                       "rel_diff", "t", "df", "p"});
        for (const auto& row : r.pair_type_rows) {
            const bool any = row.n_pairs > 0;
            csv.row({std::string(to_string(row.type)), std::string(short_label(row.role)),
                     std::to_string(row.n_pairs), any ? fixed(row.mean_woman_ar) : "",
                     any ? fixed(row.mean_man_ar) : "", opt_fixed(row.rel_diff),
                     row.test ? fixed(row.test->statistic, 4) : "",
                     row.test ? fixed(row.test->df, 0) : "",
                     row.test ? format_p(row.test->p_value) : ""});
        }
    }

    nlohmann::ordered_json config;
    config["q"] = options.q;
    config["ttest"] = options.ttest == stats::TTestVariant::Welch ? "welch" : "pooled";
    config["by_discipline"] = options.by_discipline;
    config["tiers_by_discipline"] = options.tiers_by_discipline;
    config["min_shared_papers"] = options.pairs.min_shared_papers;
    config["include_same_gender"] = options.pairs.include_same_gender;
    config["alpha"] = options.alpha;

    nlohmann::ordered_json manifest;
    manifest["tool"] = "creditlens";
    manifest["version"] = kVersion;
    manifest["config"] = config;
    manifest["config_hash"] = fmt::format("{:016x}", fnv1a64(config.dump()));
    manifest["corpus"] = {
        {"path", corpus.provenance.corpus_path},
        {"fnv1a64", fmt::format("{:016x}", corpus.provenance.corpus_hash)},
        {"papers", corpus.papers.size()},
        {"load_issues", corpus.load_report.size()},
    };
    manifest["scholars"] = {
        {"path", corpus.provenance.scholars_path},
        {"fnv1a64", fmt::format("{:016x}", corpus.provenance.scholars_hash)},
        {"profiles", corpus.scholars.size()},
    };
    manifest["events"] = r.events.events.size();
    manifest["diagnostics"] = r.events.diagnostics.size();
    manifest["tier_warnings"] = r.tiers.warnings;
    files.push_back("manifest.json");
    manifest["files"] = files;
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    if (!out) throw InputError("cannot write manifest.json");
    out << manifest.dump(2) << '\n';
    return files;
}

void write_validation_report(std::ostream& out, const std::vector<LoadIssue>& load_issues,
                             const ValidationReport& report) {
    for (const auto& issue : load_issues) {
        nlohmann::ordered_json j;
        j["kind"] = "load";
        j["file"] = issue.file;
        j["line"] = issue.line;
        j["detail"] = issue.message;
        out << j.dump() << '\n';
    }
    for (const auto& e : report.entries) {
        nlohmann::ordered_json j;
        j["kind"] = to_string(e.kind);
        j["doi"] = e.doi;
        j["detail"] = e.detail;
        out << j.dump() << '\n';
    }
}

void write_assignments(std::ostream& out, const Corpus& corpus, const AssignmentResult& result) {
    std::map<std::string, const PaperRecord*> by_doi;
    for (const auto& p : corpus.papers) by_doi.emplace(p.doi, &p);
    for (const auto& a : result.assignments) {
        const AckEntry& ack = by_doi.at(a.doi)->acknowledgees.at(a.acknowledgee_index);
        nlohmann::ordered_json j;
        j["doi"] = a.doi;
        j["acknowledgee_index"] = a.acknowledgee_index;
        j["person_id"] = ack.person_id ? nlohmann::ordered_json(*ack.person_id) : nlohmann::ordered_json();
        j["name"] = ack.given_name.empty() ? ack.family_name : ack.given_name + " " + ack.family_name;
        j["role"] = to_string(a.role);
        j["sentence_index"] = a.sentence_index;
        j["keyword"] = a.keyword;
        out << j.dump() << '\n';
    }
}

void write_diagnostics(std::ostream& out, const AssignmentResult& result) {
    for (const auto& d : result.diagnostics) {
        nlohmann::ordered_json j;
        j["doi"] = d.doi;
        j["kind"] = to_string(d.kind);
        j["acknowledgee_index"] = d.acknowledgee_index;
        j["detail"] = d.detail;
        out << j.dump() << '\n';
    }
}

}  // namespace creditlens
