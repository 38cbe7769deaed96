#include "creditlens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "creditlens/error.hpp"

namespace creditlens {

namespace {

std::string author_key(const PaperRecord& p, std::size_t i) {
    const auto& a = p.authors[i];
    return a.person_id ? "id:" + *a.person_id : p.doi + "#author" + std::to_string(i);
}

std::string ack_key(const PaperRecord& p, std::size_t i) {
    const auto& a = p.acknowledgees[i];
    return a.person_id ? "id:" + *a.person_id : p.doi + "#ack" + std::to_string(i);
}

bool gendered(Gender g) { return g == Gender::Woman || g == Gender::Man; }

}  // namespace

EventTable build_events(const Corpus& corpus, const CreditMapping& mapping,
                        const AckTaxonomy& taxonomy, unsigned workers) {
    AssignmentResult acks = classify_corpus(corpus, taxonomy, workers);
    EventTable table;
    table.diagnostics = std::move(acks.diagnostics);

    std::size_t cursor = 0;
    for (const auto& p : corpus.papers) {
        std::set<std::pair<std::string, Role>> seen;
        auto add = [&](std::string key, const std::optional<std::string>& id, Role role,
                       CreditType type, const std::optional<Gender>& g) {
            if (!seen.insert({key, role}).second) return;
            table.events.push_back(
                {p.doi, std::move(key), id, role, type, g.value_or(Gender::Unknown)});
        };
        for (std::size_t i = 0; i < p.authors.size(); ++i) {
            const auto& a = p.authors[i];
            for (Role r : author_roles(a.credit_roles, mapping)) {
                add(author_key(p, i), a.person_id, r, CreditType::Author, a.gender);
            }
        }
        // classify_corpus output is grouped by paper in corpus order.
        while (cursor < acks.assignments.size() && acks.assignments[cursor].doi == p.doi) {
            const auto& ra = acks.assignments[cursor++];
            const auto& a = p.acknowledgees[ra.acknowledgee_index];
            add(ack_key(p, ra.acknowledgee_index), a.person_id, ra.role, CreditType::Acknowledgee,
                a.gender);
        }
    }
    return table;
}

PaperLevelResult paper_level_ar(std::span<const ContributionEvent> events, Role role) {
    struct Tally {
        std::int64_t authors = 0;
        std::int64_t contributors = 0;
    };
    std::map<std::string, std::map<Gender, Tally>> per_paper;
    std::set<std::string> papers_with_role;
    for (const auto& e : events) {
        if (e.role != role) continue;
        papers_with_role.insert(e.doi);
        if (!gendered(e.gender)) continue;
        Tally& t = per_paper[e.doi][e.gender];
        ++t.contributors;
        if (e.credit_type == CreditType::Author) ++t.authors;
    }
    PaperLevelResult result;
    result.papers_with_role = papers_with_role.size();
    for (const auto& [doi, by_gender] : per_paper) {
        if (by_gender.size() < 2) {
            ++result.single_gender_papers;
            continue;
        }
        for (Gender g : {Gender::Man, Gender::Woman}) {
            const Tally& t = by_gender.at(g);
            result.observations.push_back({doi, role, g, t.authors, t.contributors});
        }
    }
    result.single_gender_papers += papers_with_role.size() - per_paper.size();
    return result;
}

std::vector<PairObservation> collaboration_ar(std::span<const ContributionEvent> events, Role role,
                                              const PairOptions& options) {
    // doi -> person_id -> (gender, authored)
    std::map<std::string, std::map<std::string, std::pair<Gender, bool>>> per_paper;
    for (const auto& e : events) {
        if (e.role != role || !e.person_id || !gendered(e.gender)) continue;
        auto [it, inserted] = per_paper[e.doi].try_emplace(*e.person_id, e.gender, false);
        if (e.credit_type == CreditType::Author) it->second.second = true;
    }

    struct Counts {
        std::int64_t n = 0, j = 0, k = 0;
    };
    std::map<std::tuple<std::string, std::string, bool>, Counts> pairs;
    for (const auto& [doi, people] : per_paper) {
        for (auto a = people.begin(); a != people.end(); ++a) {
            for (auto b = std::next(a); b != people.end(); ++b) {
                const auto& [ga, auth_a] = a->second;
                const auto& [gb, auth_b] = b->second;
                if (ga != gb) {
                    const bool a_is_man = ga == Gender::Man;
                    const std::string& man = a_is_man ? a->first : b->first;
                    const std::string& woman = a_is_man ? b->first : a->first;
                    Counts& c = pairs[{man, woman, false}];
                    ++c.n;
                    c.j += (a_is_man ? auth_a : auth_b) ? 1 : 0;
                    c.k += (a_is_man ? auth_b : auth_a) ? 1 : 0;
                } else if (options.include_same_gender) {
                    // map iteration order puts a before b
                    Counts& c = pairs[{a->first, b->first, true}];
                    ++c.n;
                    c.j += auth_a ? 1 : 0;
                    c.k += auth_b ? 1 : 0;
                }
            }
        }
    }

    std::vector<PairObservation> out;
    for (const auto& [key, c] : pairs) {
        if (c.n < options.min_shared_papers) continue;
        const auto& [man, woman, same] = key;
        out.push_back({man, woman, role, c.n, c.j, c.k, same});
    }
    return out;
}

double relative_difference(std::span<const double> women, std::span<const double> men) {
    if (women.empty() || men.empty()) throw DegenerateError("relative difference: empty sample");
    const double men_mean = stats::mean(men);
    if (men_mean == 0.0) throw DegenerateError("relative difference: men mean is zero");
    return (stats::mean(women) - men_mean) / men_mean;
}

std::vector<AckBucket> ack_by_author_count(const Corpus& corpus) {
    std::map<std::size_t, std::vector<double>> buckets;
    for (const auto& p : corpus.papers) {
        buckets[p.authors.size()].push_back(static_cast<double>(p.acknowledgees.size()));
    }
    const double z = stats::normal_quantile(0.975);
    std::vector<AckBucket> out;
    for (const auto& [authors, counts] : buckets) {
        AckBucket b;
        b.author_count = authors;
        b.papers = counts.size();
        b.mean_acknowledgees = stats::mean(counts);
        if (counts.size() >= 2) {
            const double half =
                z * std::sqrt(stats::sample_variance(counts) / static_cast<double>(counts.size()));
            b.ci_lower = b.mean_acknowledgees - half;
            b.ci_upper = b.mean_acknowledgees + half;
        } else {
            b.ci_lower = b.ci_upper = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(b);
    }
    return out;
}

double RoleProportions::proportion(Gender g, Role r) const {
    const std::size_t n = total(g);
    if (n == 0) return 0.0;
    auto it = counts.find(g);
    if (it == counts.end()) return 0.0;
    auto c = it->second.find(r);
    return c == it->second.end() ? 0.0 : static_cast<double>(c->second) / static_cast<double>(n);
}

std::size_t RoleProportions::total(Gender g) const {
    auto it = counts.find(g);
    if (it == counts.end()) return 0;
    std::size_t n = 0;
    for (const auto& [role, c] : it->second) n += c;
    return n;
}

std::optional<stats::TestResult> RoleProportions::homogeneity_test() const {
    if (total(Gender::Woman) == 0 || total(Gender::Man) == 0) return std::nullopt;
    std::vector<std::vector<double>> table(2);
    for (Role r : roles) {
        const auto w = counts.at(Gender::Woman).count(r) ? counts.at(Gender::Woman).at(r) : 0;
        const auto m = counts.at(Gender::Man).count(r) ? counts.at(Gender::Man).at(r) : 0;
        if (w + m == 0) continue;
        table[0].push_back(static_cast<double>(w));
        table[1].push_back(static_cast<double>(m));
    }
    if (table[0].size() < 2) {
        stats::TestResult r;
        r.kind = stats::TestKind::ChiSquare;
        r.statistic = 0.0;
        r.df = 0.0;
        r.p_value = 1.0;
        r.n1 = 2;
        r.n2 = table[0].size();
        return r;
    }
    return stats::chi_square(table);
}

RoleProportions role_proportions(std::span<const ContributionEvent> events, CreditType credit_type) {
    RoleProportions rp;
    rp.credit_type = credit_type;
    if (credit_type == CreditType::Author) {
        rp.roles.assign(kAuthorshipRoles.begin(), kAuthorshipRoles.end());
    } else {
        rp.roles.assign(kAcknowledgmentRoles.begin(), kAcknowledgmentRoles.end());
    }
    rp.counts[Gender::Woman];
    rp.counts[Gender::Man];
    for (const auto& e : events) {
        if (e.credit_type != credit_type || !gendered(e.gender)) continue;
        ++rp.counts[e.gender][e.role];
    }
    return rp;
}

}  // namespace creditlens
