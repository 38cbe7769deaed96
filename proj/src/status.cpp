#include "creditlens/status.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "creditlens/error.hpp"

namespace creditlens {

std::string_view to_string(StatusTier t) {
    switch (t) {
        case StatusTier::High: return "high";
        case StatusTier::Middle: return "middle";
        case StatusTier::Less: return "less";
    }
    return "";
}

std::string_view to_string(PairType t) {
    switch (t) {
        case PairType::HighManHighWoman: return "high_man_high_woman";
        case PairType::HighManLessWoman: return "high_man_less_woman";
        case PairType::LessManHighWoman: return "less_man_high_woman";
        case PairType::LessManLessWoman: return "less_man_less_woman";
    }
    return "";
}

std::vector<ScholarProfile> eligible_scholars(const Corpus& corpus) {
    std::set<std::string> authors;
    std::set<std::string> acknowledged;
    std::map<std::string, Gender> corpus_gender;
    auto note_gender = [&](const std::string& id, const std::optional<Gender>& g) {
        if (g && (*g == Gender::Woman || *g == Gender::Man)) corpus_gender.try_emplace(id, *g);
    };
    for (const auto& p : corpus.papers) {
        for (const auto& a : p.authors) {
            if (!a.person_id) continue;
            authors.insert(*a.person_id);
            note_gender(*a.person_id, a.gender);
        }
        for (const auto& a : p.acknowledgees) {
            if (!a.person_id) continue;
            acknowledged.insert(*a.person_id);
            note_gender(*a.person_id, a.gender);
        }
    }
    std::vector<ScholarProfile> out;
    for (const auto& [id, profile] : corpus.scholars) {
        if (authors.count(id) == 0 || acknowledged.count(id) == 0) continue;
        ScholarProfile s = profile;
        if (!s.gender || *s.gender == Gender::Unknown) {
            auto it = corpus_gender.find(id);
            if (it == corpus_gender.end()) continue;
            s.gender = it->second;
        }
        out.push_back(std::move(s));
    }
    return out;
}

StratifyResult stratify(std::span<const ScholarProfile> scholars, const StratifyOptions& options) {
    if (!(options.q > 0.0 && options.q < 0.5)) throw ConfigError("status tiers: q must lie in (0, 0.5)");
    using GroupKey = std::pair<Gender, std::string>;
    std::map<GroupKey, std::vector<const ScholarProfile*>> groups;
    for (const auto& s : scholars) {
        const Gender g = s.gender.value_or(Gender::Unknown);
        if (g == Gender::Unknown) continue;
        std::string discipline;
        if (options.by_discipline) discipline = s.disciplines.empty() ? "" : s.disciplines.front();
        groups[{g, discipline}].push_back(&s);
    }

    StratifyResult result;
    const auto min_size = static_cast<std::size_t>(std::ceil(1.0 / options.q - 1e-9));
    for (auto& [key, members] : groups) {
        const std::size_t n = members.size();
        if (n < min_size) {
            result.warnings.push_back("status group (" + std::string(to_string(key.first)) +
                                      (options.by_discipline ? ", " + key.second : "") + ") has " +
                                      std::to_string(n) + " scholars, fewer than " +
                                      std::to_string(min_size) + "; skipped");
            continue;
        }
        std::vector<std::uint64_t> sorted;
        sorted.reserve(n);
        for (const auto* s : members) sorted.push_back(s->total_citations);
        std::sort(sorted.begin(), sorted.end());
        const auto rank = static_cast<std::size_t>(
            std::ceil((1.0 - options.q) * static_cast<double>(n) - 1e-9));
        const std::uint64_t high_cut = sorted[rank - 1];
        const std::uint64_t less_cut = sorted[n - rank];
        for (const auto* s : members) {
            StatusTier tier = StatusTier::Middle;
            if (s->total_citations > high_cut) {
                tier = StatusTier::High;
            } else if (s->total_citations < less_cut) {
                tier = StatusTier::Less;
            }
            result.tiers[s->person_id] = {s->person_id, key.first, key.second, s->total_citations, tier};
        }
    }
    return result;
}

std::vector<std::optional<PairType>> classify_pairs(std::span<const PairObservation> pairs,
                                                    const std::map<std::string, TierAssignment>& tiers) {
    std::vector<std::optional<PairType>> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        auto m = tiers.find(p.man_id);
        auto w = tiers.find(p.woman_id);
        if (p.same_gender || m == tiers.end() || w == tiers.end() ||
            m->second.tier == StatusTier::Middle || w->second.tier == StatusTier::Middle) {
            out.emplace_back();
            continue;
        }
        const bool man_high = m->second.tier == StatusTier::High;
        const bool woman_high = w->second.tier == StatusTier::High;
        if (man_high && woman_high) {
            out.emplace_back(PairType::HighManHighWoman);
        } else if (man_high) {
            out.emplace_back(PairType::HighManLessWoman);
        } else if (woman_high) {
            out.emplace_back(PairType::LessManHighWoman);
        } else {
            out.emplace_back(PairType::LessManLessWoman);
        }
    }
    return out;
}

std::vector<PairTypeRow> ar_by_pair_type(std::span<const PairObservation> pairs,
                                         const std::map<std::string, TierAssignment>& tiers,
                                         Role role) {
    std::vector<PairTypeRow> rows;
    for (PairType t : kAllPairTypes) {
        PairTypeRow row;
        row.type = t;
        row.role = role;
        rows.push_back(std::move(row));
    }
    const auto types = classify_pairs(pairs, tiers);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!types[i] || pairs[i].role != role) continue;
        auto& row = rows[static_cast<std::size_t>(*types[i])];
        row.woman_ars.push_back(pairs[i].woman_ar().value());
        row.man_ars.push_back(pairs[i].man_ar().value());
    }
    for (auto& row : rows) {
        row.n_pairs = row.woman_ars.size();
        if (row.n_pairs == 0) continue;
        row.mean_woman_ar = stats::mean(row.woman_ars);
        row.mean_man_ar = stats::mean(row.man_ars);
        if (row.mean_man_ar != 0.0) row.rel_diff = relative_difference(row.woman_ars, row.man_ars);
        if (row.n_pairs >= 2) {
            try {
                row.test = stats::t_test_paired(row.woman_ars, row.man_ars);
            } catch (const DegenerateError&) {
            }
        }
    }
    return rows;
}

}  // namespace creditlens
