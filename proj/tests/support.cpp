#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "creditlens/synth.hpp"

namespace oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

long double integrate(auto f, long double a, long double b) {
    return gauss_kronrod<long double, 61>::integrate(f, a, b, 20, 1e-15L);
}

}  // namespace

long double t_two_sided_quadrature(double t, double df) {
    const long double v = df;
    const long double log_c =
        lgammal((v + 1) / 2) - lgammal(v / 2) - 0.5L * logl(v * 3.14159265358979323846264338327950288L);
    auto density = [&](long double s) {
        return expl(log_c - (v + 1) / 2 * log1pl(s * s / v));
    };
    // Upper tail past 1 with s = 1/u, so the integral runs over a finite range.
    auto flipped = [&](long double u) -> long double {
        if (u <= 0) return 0;
        return density(1 / u) / (u * u);
    };
    const long double a = std::fabs(static_cast<long double>(t));
    long double tail;
    if (a >= 1) {
        tail = integrate(flipped, 0, 1 / a);
    } else {
        tail = integrate(density, a, 1) + integrate(flipped, 0, 1);
    }
    return 2 * tail;
}

long double chi_square_sf_quadrature(double x, double k) {
    const long double h = k / 2.0L;
    const long double log_norm = h * logl(2.0L) + lgammal(h);
    if (x <= 0) return 1;
    if (x <= k) {
        // CDF with x = v², which removes the k < 2 singularity at zero.
        auto g = [&](long double v) -> long double {
            if (v <= 0) return k == 1 ? 2 * expl(-log_norm) : 0;
            return 2 * expl((k - 1) * logl(v) - v * v / 2 - log_norm);
        };
        return 1 - integrate(g, 0, sqrtl(x));
    }
    auto f = [&](long double y) { return expl((h - 1) * logl(y) - y / 2 - log_norm); };
    const long double sd = sqrtl(2.0L * k);
    const long double upper = std::max<long double>(x, k) + 50 * sd + 100;
    long double total = 0;
    for (long double lo = x; lo < upper; lo += sd) total += integrate(f, lo, std::min(lo + sd, upper));
    return total;
}

double permutation_p(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> all(xs.begin(), xs.end());
    all.insert(all.end(), ys.begin(), ys.end());
    const double total = std::accumulate(all.begin(), all.end(), 0.0);
    const std::size_t n1 = xs.size(), n = all.size();
    auto diff = [&](double sum_x) {
        return std::fabs(sum_x / n1 - (total - sum_x) / (n - n1));
    };
    const double observed = diff(std::accumulate(xs.begin(), xs.end(), 0.0));
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + n1, true);
    std::size_t hits = 0, count = 0;
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) s += all[i];
        }
        ++count;
        if (diff(s) >= observed - 1e-12) ++hits;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return static_cast<double>(hits) / count;
}

double sign_flip_p(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = xs[i] - ys[i];
    const double observed = std::fabs(std::accumulate(d.begin(), d.end(), 0.0));
    std::size_t hits = 0;
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < total; ++mask) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += (mask >> i & 1) ? -d[i] : d[i];
        if (std::fabs(s) >= observed - 1e-12) ++hits;
    }
    return static_cast<double>(hits) / total;
}

namespace {

double chi_stat(const std::vector<std::vector<double>>& t) {
    std::vector<double> rows(t.size(), 0.0), cols(t[0].size(), 0.0);
    double n = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t[i].size(); ++j) {
            rows[i] += t[i][j];
            cols[j] += t[i][j];
            n += t[i][j];
        }
    }
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t[i].size(); ++j) {
            const double e = rows[i] * cols[j] / n;
            s += (t[i][j] - e) * (t[i][j] - e) / e;
        }
    }
    return s;
}

}  // namespace

double chi_square_monte_carlo_p(const std::vector<std::vector<double>>& table, int resamples,
                                std::uint64_t seed) {
    // Shuffle column labels against fixed row labels: both margins stay fixed.
    std::vector<std::size_t> row_of, col_of;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            for (int c = 0; c < static_cast<int>(table[i][j]); ++c) {
                row_of.push_back(i);
                col_of.push_back(j);
            }
        }
    }
    const double observed = chi_stat(table);
    std::mt19937_64 rng(seed);
    int hits = 0;
    for (int r = 0; r < resamples; ++r) {
        std::shuffle(col_of.begin(), col_of.end(), rng);
        std::vector<std::vector<double>> t(table.size(), std::vector<double>(table[0].size(), 0.0));
        for (std::size_t k = 0; k < row_of.size(); ++k) t[row_of[k]][col_of[k]] += 1;
        if (chi_stat(t) >= observed - 1e-9) ++hits;
    }
    return static_cast<double>(hits) / resamples;
}

double normal_draw(std::mt19937_64& rng) {
    auto u = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    return std::sqrt(-2.0 * std::log(u())) * std::cos(2.0 * M_PI * u());
}

std::vector<PaperAr> naive_paper_level(const std::vector<ContributionEvent>& events, Role role) {
    std::set<std::string> dois;
    for (const auto& e : events) dois.insert(e.doi);
    std::vector<PaperAr> out;
    for (const auto& doi : dois) {
        std::int64_t a[2] = {0, 0}, c[2] = {0, 0};
        for (const auto& e : events) {
            if (e.doi != doi || e.role != role || e.gender == Gender::Unknown) continue;
            const int g = e.gender == Gender::Woman ? 0 : 1;
            ++c[g];
            if (e.credit_type == creditlens::CreditType::Author) ++a[g];
        }
        if (c[0] > 0 && c[1] > 0) {
            out.push_back({doi, Gender::Woman, a[0], c[0]});
            out.push_back({doi, Gender::Man, a[1], c[1]});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Pair> naive_pairs(const std::vector<ContributionEvent>& events, Role role) {
    std::map<std::string, Gender> gender;
    for (const auto& e : events) {
        if (e.person_id && e.gender != Gender::Unknown) gender.emplace(*e.person_id, e.gender);
    }
    auto contributed = [&](const std::string& id, const std::string& doi) {
        return std::any_of(events.begin(), events.end(), [&](const ContributionEvent& e) {
            return e.person_id == id && e.doi == doi && e.role == role;
        });
    };
    auto authored = [&](const std::string& id, const std::string& doi) {
        return std::any_of(events.begin(), events.end(), [&](const ContributionEvent& e) {
            return e.person_id == id && e.doi == doi && e.role == role &&
                   e.credit_type == creditlens::CreditType::Author;
        });
    };
    std::set<std::string> dois;
    for (const auto& e : events) dois.insert(e.doi);
    std::vector<Pair> out;
    for (const auto& [m, gm] : gender) {
        if (gm != Gender::Man) continue;
        for (const auto& [w, gw] : gender) {
            if (gw != Gender::Woman) continue;
            Pair p{m, w, 0, 0, 0};
            for (const auto& doi : dois) {
                if (!contributed(m, doi) || !contributed(w, doi)) continue;
                ++p.n;
                p.j += authored(m, doi);
                p.k += authored(w, doi);
            }
            if (p.n > 0) out.push_back(p);
        }
    }
    return out;
}

std::vector<Bucket> naive_ack_buckets(const creditlens::Corpus& corpus) {
    std::size_t largest = 0;
    for (const auto& p : corpus.papers) largest = std::max(largest, p.authors.size());
    std::vector<Bucket> out;
    for (std::size_t k = 0; k <= largest; ++k) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& p : corpus.papers) {
            if (p.authors.size() != k) continue;
            sum += static_cast<double>(p.acknowledgees.size());
            ++n;
        }
        if (n > 0) out.push_back({k, sum / static_cast<double>(n), n});
    }
    return out;
}

std::map<Gender, std::map<Role, std::size_t>> naive_role_counts(
    const std::vector<ContributionEvent>& events, creditlens::CreditType type) {
    std::map<Gender, std::map<Role, std::size_t>> out;
    for (const auto& e : events) {
        if (e.credit_type == type && e.gender != Gender::Unknown) ++out[e.gender][e.role];
    }
    return out;
}

std::map<std::string, creditlens::StatusTier> naive_tiers(
    const std::vector<creditlens::ScholarProfile>& scholars, double q, bool by_discipline) {
    auto group_of = [&](const creditlens::ScholarProfile& s) {
        std::string d = by_discipline && !s.disciplines.empty() ? s.disciplines.front() : "";
        return std::make_pair(*s.gender, d);
    };
    std::map<std::string, creditlens::StatusTier> out;
    for (const auto& s : scholars) {
        if (!s.gender || *s.gender == Gender::Unknown) continue;
        std::size_t size = 0, below = 0, above = 0;
        for (const auto& o : scholars) {
            if (!o.gender || group_of(o) != group_of(s)) continue;
            ++size;
            below += o.total_citations < s.total_citations;
            above += o.total_citations > s.total_citations;
        }
        const auto min_size = static_cast<std::size_t>(std::ceil(1.0 / q - 1e-9));
        if (size < min_size) continue;
        const auto rank = static_cast<std::size_t>(std::ceil((1.0 - q) * size - 1e-9));
        out[s.person_id] = below >= rank   ? creditlens::StatusTier::High
                           : above >= rank ? creditlens::StatusTier::Less
                                           : creditlens::StatusTier::Middle;
    }
    return out;
}

}  // namespace oracle

namespace fixture {

using namespace creditlens;

Corpus paper_level_example() {
    const std::string line = R"({"doi":"10.1000/fig1a","year":2019,"disciplines":["Biology"],)"
        R"("authors":[)"
        R"({"person_id":"A1","given_name":"Adam","family_name":"Archer","credit_roles":["Investigation"],"gender":"man"},)"
        R"({"person_id":"C1","given_name":"Clara","family_name":"Cole","credit_roles":["Formal analysis"],"gender":"woman"}],)"
        R"("acknowledgees":[)"
        R"({"person_id":"B1","given_name":"Boris","family_name":"Baker","gender":"man"},)"
        R"({"person_id":"D1","given_name":"Dana","family_name":"Dunn","gender":"woman"},)"
        R"({"person_id":null,"given_name":"Erin","family_name":"Evans","gender":"woman"}],)"
        R"("ack_text":"We thank Boris Baker, D. Dunn and Erin Evans for assistance with the experiments."})";
    return parse_corpus(line + "\n", "fig1a");
}

Corpus collaboration_example() {
    auto paper = [](int i, bool man_author, bool woman_author) {
        std::string authors = R"({"person_id":"L)" + std::to_string(i) +
                              R"(","given_name":"Lena","family_name":"Lead","credit_roles":["Conceptualization"],"gender":"woman"})";
        std::vector<std::string> thanked;
        std::string acks;
        auto add_ack = [&](const char* json, const char* name) {
            acks += std::string(acks.empty() ? "" : ",") + json;
            thanked.push_back(name);
        };
        if (man_author) {
            authors += R"(,{"person_id":"M1","given_name":"Mark","family_name":"Moss","credit_roles":["Investigation"],"gender":"man"})";
        } else {
            add_ack(R"({"person_id":"M1","given_name":"Mark","family_name":"Moss","gender":"man"})", "Mark Moss");
        }
        if (woman_author) {
            authors += R"(,{"person_id":"W1","given_name":"Wendy","family_name":"Ward","credit_roles":["Data curation"],"gender":"woman"})";
        } else {
            add_ack(R"({"person_id":"W1","given_name":"Wendy","family_name":"Ward","gender":"woman"})", "Wendy Ward");
        }
        std::string text;
        if (!thanked.empty()) {
            text = "We thank " + thanked[0] + (thanked.size() > 1 ? " and " + thanked[1] : "") +
                   " for data analysis.";
        }
        return R"({"doi":"10.1000/fig1b.)" + std::to_string(i) +
               R"(","year":2020,"disciplines":["Medicine"],"authors":[)" + authors +
               R"(],"acknowledgees":[)" + acks + R"(],"ack_text":")" + text + "\"}\n";
    };
    return parse_corpus(paper(1, true, false) + paper(2, true, false) + paper(3, false, true), "fig1b");
}

Corpus random_corpus(std::uint64_t seed, std::size_t max_papers) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    SynthConfig c;
    c.seed = seed;
    c.n_papers = 1 + rng() % max_papers;
    c.scholar_pool_size = 40 + rng() % 80;
    c.team_size = {1, 2 + static_cast<int>(rng() % 6)};
    c.ack_count = {0, static_cast<int>(rng() % 4)};
    c.gender_ratio = 0.2 + 0.6 * uniform();
    c.base_author_prob = 0.2 + 0.6 * uniform();
    c.ack_identified_frac = uniform();
    c.citation_xmin = 1 + rng() % 5;
    Corpus corpus = generate(c).corpus;

    std::set<std::string> ungendered;
    for (const auto& [id, s] : corpus.scholars) {
        if (uniform() < 0.1) ungendered.insert(id);
    }
    for (auto& p : corpus.papers) {
        for (auto& a : p.authors) {
            if (a.person_id && ungendered.count(*a.person_id)) a.gender.reset();
            if (uniform() < 0.05) a.person_id.reset();
        }
        for (auto& a : p.acknowledgees) {
            if (a.person_id && ungendered.count(*a.person_id)) a.gender.reset();
        }
        // Occasionally thank an author as well; authorship takes precedence.
        if (p.authors.size() > 1 && uniform() < 0.1) {
            const auto& au = p.authors.back();
            p.acknowledgees.push_back({au.person_id, au.given_name, au.family_name, au.gender});
            p.ack_text += " We thank " + au.given_name + " " + au.family_name + " for technical assistance.";
        }
    }
    for (auto& [id, s] : corpus.scholars) {
        if (ungendered.count(id)) s.gender.reset();
    }
    return corpus;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixture
