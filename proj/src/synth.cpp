#include "creditlens/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <random>
#include <set>

#include <fmt/format.h>

#include "json.hpp"

#include "creditlens/error.hpp"

namespace creditlens {

namespace {

constexpr std::array<std::string_view, 48> kWomenNames = {
    "Maria",    "Anna",    "Emily",   "Sarah",    "Laura",   "Julia",   "Hannah",  "Sofia",
    "Olivia",   "Emma",    "Chloe",   "Grace",    "Alice",   "Claire",  "Helen",   "Rachel",
    "Rebecca",  "Natalie", "Victoria", "Catherine", "Elena",  "Ingrid",  "Yuki",    "Mei",
    "Priya",    "Fatima",  "Aisha",   "Ines",     "Lucia",   "Paula",   "Marta",   "Agnes",
    "Beatrice", "Dorothy", "Eleanor", "Fiona",    "Gemma",   "Isabel",  "Joanna",  "Karen",
    "Linda",    "Monica",  "Nadia",   "Patricia", "Susan",   "Teresa",  "Ursula",  "Wendy",
};

constexpr std::array<std::string_view, 48> kMenNames = {
    "James",   "John",    "Robert",  "Michael", "David",   "Thomas",  "Daniel",  "Peter",
    "Paul",    "Mark",    "Steven",  "Andrew",  "Kenneth", "George",  "Edward",  "Brian",
    "Ronald",  "Kevin",   "Jason",   "Matthew", "Gary",    "Timothy", "Frank",   "Eric",
    "Stephen", "Raymond", "Gregory", "Joshua",  "Henry",   "Carl",    "Arthur",  "Lars",
    "Hiroshi", "Kenji",   "Wei",     "Rahul",   "Omar",    "Ahmed",   "Carlos",  "Pedro",
    "Marco",   "Luca",    "Hans",    "Felix",   "Oscar",   "Victor",  "Walter",  "Samuel",
};

constexpr std::array<std::string_view, 100> kFamilyNames = {
    "Smith",     "Johnson",   "Williams", "Brown",    "Jones",     "Garcia",    "Miller",
    "Davis",     "Rodriguez", "Martinez", "Hernandez", "Lopez",    "Gonzalez",  "Wilson",
    "Anderson",  "Taylor",    "Moore",    "Jackson",  "Martin",    "Lee",       "Perez",
    "Thompson",  "White",     "Harris",   "Sanchez",  "Clark",     "Ramirez",   "Lewis",
    "Robinson",  "Walker",    "Young",    "Allen",    "King",      "Wright",    "Scott",
    "Torres",    "Nguyen",    "Hill",     "Flores",   "Green",     "Adams",     "Nelson",
    "Baker",     "Hall",      "Rivera",   "Campbell", "Mitchell",  "Carter",    "Roberts",
    "Tanaka",    "Suzuki",    "Sato",     "Takahashi", "Watanabe", "Ito",       "Yamamoto",
    "Nakamura",  "Kobayashi", "Kato",     "Yoshida",  "Muller",    "Schmidt",   "Schneider",
    "Fischer",   "Weber",     "Meyer",    "Wagner",   "Becker",    "Schulz",    "Hoffmann",
    "Rossi",     "Russo",     "Ferrari",  "Esposito", "Bianchi",   "Romano",    "Colombo",
    "Ricci",     "Marino",    "Greco",    "Dubois",   "Laurent",   "Lefebvre",  "Moreau",
    "Fournier",  "Girard",    "Bonnet",   "Dupont",   "Lambert",   "Fontaine",  "Chen",
    "Wang",      "Zhang",     "Liu",      "Yang",     "Huang",     "Zhao",      "Kumar",
    "Singh",     "Patel",
};

// Each template has one "{}" for the rendered name list.
const std::map<Role, std::vector<std::string_view>> kTemplates = {
    {Role::PeerCommunication,
     {"We thank {} for helpful discussion.", "We appreciate the discussion with {}.",
      "We thank {} for critical review of the manuscript.",
      "We are grateful to {} for insightful discussions and comments."}},
    {Role::MaterialResources,
     {"We thank {} for providing data.", "We thank {} for access to the samples.",
      "We thank {}, who provided data from the database.",
      "We thank {} for providing access to the field sites."}},
    {Role::InvestigationAnalysis,
     {"We thank {} for assistance with the experiments.",
      "We are grateful to {} for help with sample collection.", "We thank {} for data analysis.",
      "We thank {} for the measurements.", "We thank {} for their work on the experimental design.",
      "We thank {} for sharing code and for help with the interpretation.",
      "We thank {} for sample preparation."}},
    {Role::Writing,
     {"We thank {} for writing support.",
      "We thank {} for writing the first draft of the manuscript."}},
};

constexpr std::array<std::string_view, 2> kFundingSentences = {
    "This work was supported by grant {}.", "This work was funded by the {} Foundation."};

const std::map<Role, std::vector<std::string_view>> kCreditStrings = {
    {Role::InvestigationAnalysis,
     {"Data curation", "Formal analysis", "Investigation", "Methodology", "Software", "Validation",
      "Visualization"}},
    {Role::MaterialResources, {"Resources"}},
    {Role::Writing, {"Writing – original draft preparation", "Writing – review & editing"}},
    {Role::Conceptualization, {"Conceptualization"}},
    {Role::Funding, {"Funding acquisition"}},
    {Role::Administration, {"Project administration", "Supervision"}},
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Engine output is fixed by the standard; the helpers below avoid the
// implementation-defined std distributions so output is portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    std::size_t index(std::size_t n) {
        return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
    }
    int between(IntRange r) { return r.lo + static_cast<int>(index(static_cast<std::size_t>(r.hi - r.lo + 1))); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 engine_;
};

struct PoolMember {
    std::string id;
    Gender gender;
    std::string given;
    std::size_t family;  // index into kFamilyNames
    std::string discipline;
    std::uint64_t citations;
    bool high = false;
    bool low = false;
};

double clip_prob(double p) { return std::clamp(p, 0.01, 0.99); }

double author_probability(const SynthConfig& c, Role role, Gender g, bool high) {
    double p = c.base_author_prob;
    if (g == Gender::Man) {
        if (auto it = c.gender_gap.find(role); it != c.gender_gap.end()) p += it->second;
    }
    if (high) p += c.status_effect;
    return clip_prob(p);
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += i + 1 == names.size() ? " and " : ", ";
        out += names[i];
    }
    return out;
}

Role draw_role(Rng& rng, const std::map<Role, double>& probs) {
    double total = 0.0;
    for (const auto& [r, p] : probs) total += p;
    double u = rng.uniform() * total;
    for (const auto& [r, p] : probs) {
        if (u < p) return r;
        u -= p;
    }
    return probs.rbegin()->first;
}

std::vector<PoolMember> build_pool(const SynthConfig& c) {
    Rng rng(c.seed ^ 0x5EED'0F'5C40'1A25ull);
    std::vector<PoolMember> pool;
    pool.reserve(c.scholar_pool_size);
    for (std::size_t i = 0; i < c.scholar_pool_size; ++i) {
        PoolMember m;
        m.id = fmt::format("S{:06d}", i + 1);
        m.gender = rng.bernoulli(c.gender_ratio) ? Gender::Woman : Gender::Man;
        m.given = std::string(m.gender == Gender::Woman ? kWomenNames[rng.index(kWomenNames.size())]
                                                        : kMenNames[rng.index(kMenNames.size())]);
        m.family = rng.index(kFamilyNames.size());
        m.discipline = c.disciplines[rng.index(c.disciplines.size())];
        const double u = 1.0 - rng.uniform();  // (0, 1]
        m.citations = static_cast<std::uint64_t>(
            std::min(1e9, std::floor(c.citation_xmin * std::pow(u, -1.0 / c.citation_alpha))));
        pool.push_back(std::move(m));
    }
    // Planted tiers: top and bottom q within gender, ties broken by id.
    for (Gender g : {Gender::Woman, Gender::Man}) {
        std::vector<PoolMember*> group;
        for (auto& m : pool) {
            if (m.gender == g) group.push_back(&m);
        }
        std::sort(group.begin(), group.end(), [](const PoolMember* a, const PoolMember* b) {
            return a->citations != b->citations ? a->citations > b->citations : a->id < b->id;
        });
        const auto k = static_cast<std::size_t>(std::ceil(c.status_q * static_cast<double>(group.size()) - 1e-9));
        for (std::size_t i = 0; i < group.size(); ++i) {
            group[i]->high = i < k;
            group[i]->low = i + k >= group.size();
        }
    }
    return pool;
}

}  // namespace

void SynthConfig::check() const {
    auto fail = [](const std::string& what) { throw ConfigError("synth config: " + what); };
    auto unit = [&](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) fail(std::string(name) + " must lie in [0, 1]");
    };
    if (n_papers == 0) fail("n_papers must be positive");
    unit(gender_ratio, "gender_ratio");
    unit(base_author_prob, "base_author_prob");
    unit(ack_identified_frac, "ack_identified_frac");
    unit(funding_sentence_prob, "funding_sentence_prob");
    unit(initial_name_prob, "initial_name_prob");
    unit(honorific_prob, "honorific_prob");
    if (!(status_q > 0.0 && status_q < 0.5)) fail("status_q must lie in (0, 0.5)");
    if (team_size.lo < 1 || team_size.hi < team_size.lo) fail("team_size must satisfy 1 <= lo <= hi");
    if (ack_count.lo < 0 || ack_count.hi < ack_count.lo) fail("ack_count must satisfy 0 <= lo <= hi");
    if (years.hi < years.lo) fail("years must satisfy lo <= hi");
    const auto roster = static_cast<std::size_t>(1 + team_size.hi + ack_count.hi);
    if (roster > kFamilyNames.size()) fail("team_size + ack_count exceeds the available family names");
    if (scholar_pool_size < 4 * roster) fail("scholar_pool_size too small for the roster sizes");
    if (disciplines.empty()) fail("disciplines must not be empty");
    double total = 0.0;
    for (const auto& [r, p] : role_probs) {
        if (r != Role::InvestigationAnalysis && r != Role::MaterialResources && r != Role::Writing) {
            fail("role_probs may only name InvestigationAnalysis, MaterialResources, Writing");
        }
        if (p < 0.0) fail("role_probs must be non-negative");
        total += p;
    }
    if (!(total > 0.0)) fail("role_probs must have positive mass");
    if (!(citation_xmin >= 1.0) || !(citation_alpha > 0.0)) fail("citation_xmin >= 1 and citation_alpha > 0 required");
}

SynthConfig SynthConfig::from_json(std::string_view text) {
    using nlohmann::json;
    SynthConfig c;
    try {
        const json j = json::parse(text, nullptr, true, true);
        auto num = [&](const char* k, double& v) {
            if (j.contains(k)) v = j.at(k).get<double>();
        };
        auto range = [&](const char* k, IntRange& r) {
            if (j.contains(k)) r = {j.at(k).at(0).get<int>(), j.at(k).at(1).get<int>()};
        };
        auto roles = [&](const char* k, std::map<Role, double>& m) {
            if (!j.contains(k)) return;
            m.clear();
            for (const auto& [name, v] : j.at(k).items()) {
                auto r = parse_role(name);
                if (!r) throw ConfigError("synth config: unknown role '" + name + "'");
                m[*r] = v.get<double>();
            }
        };
        if (j.contains("n_papers")) c.n_papers = j.at("n_papers").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("scholar_pool_size")) c.scholar_pool_size = j.at("scholar_pool_size").get<std::size_t>();
        num("gender_ratio", c.gender_ratio);
        num("base_author_prob", c.base_author_prob);
        num("status_effect", c.status_effect);
        num("status_q", c.status_q);
        num("ack_identified_frac", c.ack_identified_frac);
        num("citation_xmin", c.citation_xmin);
        num("citation_alpha", c.citation_alpha);
        num("funding_sentence_prob", c.funding_sentence_prob);
        num("initial_name_prob", c.initial_name_prob);
        num("honorific_prob", c.honorific_prob);
        roles("role_probs", c.role_probs);
        roles("gender_gap", c.gender_gap);
        range("team_size", c.team_size);
        range("ack_count", c.ack_count);
        range("years", c.years);
        if (j.contains("disciplines")) c.disciplines = j.at("disciplines").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synth config: ") + e.what());
    }
    c.check();
    return c;
}

std::string SynthConfig::to_json() const {
    nlohmann::ordered_json j;
    j["n_papers"] = n_papers;
    j["seed"] = seed;
    j["gender_ratio"] = gender_ratio;
    j["role_probs"] = nlohmann::ordered_json::object();
    for (const auto& [r, p] : role_probs) j["role_probs"][std::string(to_string(r))] = p;
    j["base_author_prob"] = base_author_prob;
    j["gender_gap"] = nlohmann::ordered_json::object();
    for (const auto& [r, p] : gender_gap) j["gender_gap"][std::string(to_string(r))] = p;
    j["status_effect"] = status_effect;
    j["status_q"] = status_q;
    j["team_size"] = {team_size.lo, team_size.hi};
    j["ack_count"] = {ack_count.lo, ack_count.hi};
    j["scholar_pool_size"] = scholar_pool_size;
    j["ack_identified_frac"] = ack_identified_frac;
    j["citation_xmin"] = citation_xmin;
    j["citation_alpha"] = citation_alpha;
    j["funding_sentence_prob"] = funding_sentence_prob;
    j["initial_name_prob"] = initial_name_prob;
    j["honorific_prob"] = honorific_prob;
    j["disciplines"] = disciplines;
    j["years"] = {years.lo, years.hi};
    return j.dump(2);
}

std::size_t template_count(Role role) {
    auto it = kTemplates.find(role);
    if (it == kTemplates.end()) throw std::invalid_argument("no templates for non-acknowledgment role");
    return it->second.size();
}

std::string template_ack_sentence(std::string_view names, Role role, std::size_t variant) {
    auto it = kTemplates.find(role);
    if (it == kTemplates.end()) throw std::invalid_argument("no templates for non-acknowledgment role");
    return fmt::format(fmt::runtime(it->second.at(variant % it->second.size())), names);
}

std::string template_ack_sentence(const std::vector<std::string>& names, Role role,
                                  std::size_t variant) {
    return template_ack_sentence(join_names(names), role, variant);
}

void write_name_dictionary(std::ostream& out) {
    out << "# given name\tlabel:confidence\n";
    for (auto n : kWomenNames) out << n << "\twoman:0.98\n";
    for (auto n : kMenNames) out << n << "\tman:0.98\n";
}

SynthOutput generate(const SynthConfig& config) {
    config.check();
    const std::vector<PoolMember> pool = build_pool(config);

    SynthOutput out;
    GroundTruth& truth = out.truth;
    truth.config = config;
    for (const auto& m : pool) {
        PlantedScholar s{m.id, m.gender, m.citations, m.high, m.low, {}};
        for (Role r : kSharedRoles) s.author_prob[r] = author_probability(config, r, m.gender, m.high);
        truth.scholars.push_back(std::move(s));
        out.corpus.scholars[m.id] = {m.id, m.citations, m.gender, {m.discipline}};
    }
    for (Role r : kSharedRoles) {
        double sum_w = 0.0, sum_m = 0.0;
        std::size_t n_w = 0, n_m = 0;
        for (const auto& s : truth.scholars) {
            if (s.gender == Gender::Woman) {
                sum_w += s.author_prob.at(r);
                ++n_w;
            } else {
                sum_m += s.author_prob.at(r);
                ++n_m;
            }
        }
        if (n_w > 0 && n_m > 0) {
            const double men = sum_m / static_cast<double>(n_m);
            truth.expected_relative_difference[r] = (sum_w / static_cast<double>(n_w) - men) / men;
        }
    }

    const std::array<Role, 3> lead_roles = {Role::Conceptualization, Role::Funding,
                                            Role::Administration};
    for (std::size_t i = 0; i < config.n_papers; ++i) {
        Rng rng(config.seed ^ splitmix64(0xA5A5'0000ull + i));
        PaperRecord paper;
        paper.doi = fmt::format("10.9999/synth.{:07d}", i + 1);
        paper.year = rng.between(config.years);
        paper.disciplines.push_back(config.disciplines[rng.index(config.disciplines.size())]);

        std::set<std::size_t> used_people;
        std::set<std::size_t> used_families;
        auto pick = [&]() -> const PoolMember& {
            for (;;) {
                const std::size_t k = rng.index(pool.size());
                if (used_people.count(k) || used_families.count(pool[k].family)) continue;
                used_people.insert(k);
                used_families.insert(pool[k].family);
                return pool[k];
            }
        };
        auto author_entry = [&](const PoolMember& m, std::vector<std::string> credit) {
            AuthorEntry a;
            a.person_id = m.id;
            a.given_name = m.given;
            a.family_name = std::string(kFamilyNames[m.family]);
            a.credit_roles = std::move(credit);
            a.gender = m.gender;
            return a;
        };
        auto credit_for = [&](Role r) {
            const auto& options = kCreditStrings.at(r);
            std::vector<std::string> credit{std::string(options[rng.index(options.size())])};
            if (options.size() > 1 && rng.bernoulli(0.3)) {
                std::string second(options[rng.index(options.size())]);
                if (second != credit.front()) credit.push_back(std::move(second));
            }
            return credit;
        };

        // Lead author holds authorship-only roles so every paper has an author.
        {
            const PoolMember& lead = pick();
            std::vector<std::string> credit;
            for (Role r : lead_roles) {
                if (rng.bernoulli(0.5) || (r == lead_roles.back() && credit.empty())) {
                    auto c = credit_for(r);
                    credit.insert(credit.end(), c.begin(), c.end());
                }
            }
            paper.authors.push_back(author_entry(lead, std::move(credit)));
        }

        struct PendingAck {
            const PoolMember* member;
            Role role;
        };
        std::vector<PendingAck> acks;
        const int roster = rng.between(config.team_size);
        for (int t = 0; t < roster; ++t) {
            const PoolMember& m = pick();
            const Role role = draw_role(rng, config.role_probs);
            const double p = author_probability(config, role, m.gender, m.high);
            if (rng.bernoulli(p)) {
                paper.authors.push_back(author_entry(m, credit_for(role)));
            } else {
                acks.push_back({&m, role});
            }
        }
        const int peers = rng.between(config.ack_count);
        for (int t = 0; t < peers; ++t) acks.push_back({&pick(), Role::PeerCommunication});

        // Acknowledgee entries and their rendered mentions.
        std::map<Role, std::vector<std::string>> mentions;
        for (const auto& pa : acks) {
            const PoolMember& m = *pa.member;
            AckEntry e;
            if (rng.bernoulli(config.ack_identified_frac)) e.person_id = m.id;
            e.given_name = m.given;
            e.family_name = std::string(kFamilyNames[m.family]);
            e.gender = m.gender;
            std::string rendered;
            if (rng.bernoulli(config.honorific_prob)) rendered += "Dr. ";
            rendered += rng.bernoulli(config.initial_name_prob) ? m.given.substr(0, 1) + "."
                                                                : m.given;
            rendered += " " + e.family_name;
            mentions[pa.role].push_back(std::move(rendered));
            truth.assignments.push_back({paper.doi, paper.acknowledgees.size(), pa.role});
            paper.acknowledgees.push_back(std::move(e));
        }

        std::vector<std::string> sentences;
        for (const auto& [role, names] : mentions) {
            sentences.push_back(template_ack_sentence(names, role, rng.index(template_count(role))));
        }
        if (rng.bernoulli(config.funding_sentence_prob)) {
            const auto& tmpl = kFundingSentences[rng.index(kFundingSentences.size())];
            const std::string filler = tmpl.find("Foundation") != std::string_view::npos
                                           ? std::string("National Science")
                                           : fmt::format("{}", 10000 + rng.index(90000));
            sentences.push_back(fmt::format(fmt::runtime(tmpl), filler));
        }
        rng.shuffle(sentences);
        for (const auto& s : sentences) {
            if (!paper.ack_text.empty()) paper.ack_text += ' ';
            paper.ack_text += s;
        }

        for (const auto& a : paper.authors) {
            std::set<Role> roles;
            for (const auto& c : a.credit_roles) {
                for (const auto& [r, strings] : kCreditStrings) {
                    if (std::find(strings.begin(), strings.end(), c) != strings.end()) roles.insert(r);
                }
            }
            for (Role r : roles) ++truth.role_counts[CreditType::Author][r];
        }
        for (const auto& pa : acks) ++truth.role_counts[CreditType::Acknowledgee][pa.role];

        out.corpus.papers.push_back(std::move(paper));
    }
    out.corpus.provenance.corpus_path = "<synthetic>";
    return out;
}

void GroundTruth::write_json(std::ostream& out) const {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::parse(config.to_json());
    j["expected_relative_difference"] = nlohmann::ordered_json::object();
    for (const auto& [r, v] : expected_relative_difference) {
        j["expected_relative_difference"][std::string(to_string(r))] = v;
    }
    j["role_counts"] = nlohmann::ordered_json::object();
    for (const auto& [type, counts] : role_counts) {
        auto& node = j["role_counts"][std::string(to_string(type))];
        node = nlohmann::ordered_json::object();
        for (const auto& [r, n] : counts) {
            if (n > 0) node[std::string(to_string(r))] = n;
        }
    }
    j["scholars"] = nlohmann::ordered_json::array();
    for (const auto& s : scholars) {
        nlohmann::ordered_json e;
        e["person_id"] = s.person_id;
        e["gender"] = std::string(to_string(s.gender));
        e["citations"] = s.citations;
        e["tier"] = s.high_tier ? "high" : (s.low_tier ? "less" : "middle");
        for (const auto& [r, p] : s.author_prob) e["author_prob"][std::string(to_string(r))] = p;
        j["scholars"].push_back(std::move(e));
    }
    j["assignments"] = nlohmann::ordered_json::array();
    for (const auto& a : assignments) {
        j["assignments"].push_back(
            {{"doi", a.doi}, {"acknowledgee_index", a.acknowledgee_index}, {"role", to_string(a.role)}});
    }
    out << j.dump(1) << '\n';
}

}  // namespace creditlens
