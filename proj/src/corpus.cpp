#include "creditlens/corpus.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "creditlens/error.hpp"
#include "creditlens/text.hpp"

namespace creditlens {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

struct LineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string require_string(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_string()) {
        throw LineError(std::string("field '") + field + "' must be a string");
    }
    return it->get<std::string>();
}

std::string optional_string(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) throw LineError(std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_id(const json& obj) {
    auto it = obj.find("person_id");
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (!it->is_string()) throw LineError("field 'person_id' must be a string or null");
    std::string id = it->get<std::string>();
    if (trim(id).empty()) return std::nullopt;
    return id;
}

std::optional<Gender> optional_gender(const json& obj) {
    auto it = obj.find("gender");
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw LineError("field 'gender' must be a string");
    auto g = parse_gender(it->get<std::string>());
    if (!g) throw LineError("unrecognized gender '" + it->get<std::string>() + "'");
    return g;
}

std::vector<std::string> string_list(const json& obj, const char* field) {
    std::vector<std::string> out;
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return out;
    if (!it->is_array()) throw LineError(std::string("field '") + field + "' must be a list");
    for (const auto& v : *it) {
        if (!v.is_string()) throw LineError(std::string("field '") + field + "' holds a non-string");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::string person_key(const std::optional<std::string>& id, std::string_view given,
                       std::string_view family) {
    if (id) return "id:" + *id;
    return "name:" + name_key(given) + "|" + name_key(family);
}

PaperRecord parse_paper(const json& j, std::vector<std::string>& warnings) {
    if (!j.is_object()) throw LineError("record is not an object");
    PaperRecord p;
    p.doi = require_string(j, "doi");
    if (trim(p.doi).empty()) throw LineError("empty doi");
    auto year = j.find("year");
    if (year == j.end() || !year->is_number_integer()) throw LineError("field 'year' must be an integer");
    p.year = year->get<int>();
    p.disciplines = string_list(j, "disciplines");
    p.ack_text = optional_string(j, "ack_text");

    auto authors = j.find("authors");
    if (authors == j.end() || !authors->is_array()) throw LineError("field 'authors' must be a list");
    std::set<std::string> seen;
    for (const auto& a : *authors) {
        if (!a.is_object()) throw LineError("author entry is not an object");
        AuthorEntry e;
        e.person_id = optional_id(a);
        e.given_name = optional_string(a, "given_name");
        e.family_name = require_string(a, "family_name");
        e.credit_roles = string_list(a, "credit_roles");
        e.gender = optional_gender(a);
        if (!seen.insert(person_key(e.person_id, e.given_name, e.family_name)).second) {
            warnings.push_back("duplicate author '" + e.given_name + " " + e.family_name +
                               "' in " + p.doi + "; kept first occurrence");
            continue;
        }
        p.authors.push_back(std::move(e));
    }
    if (p.authors.empty()) throw LineError("paper has no authors");

    auto acks = j.find("acknowledgees");
    if (acks != j.end() && !acks->is_null()) {
        if (!acks->is_array()) throw LineError("field 'acknowledgees' must be a list");
        for (const auto& a : *acks) {
            if (!a.is_object()) throw LineError("acknowledgee entry is not an object");
            AckEntry e;
            e.person_id = optional_id(a);
            e.given_name = optional_string(a, "given_name");
            e.family_name = optional_string(a, "family_name");
            if (trim(e.given_name).empty() && trim(e.family_name).empty()) {
                throw LineError("acknowledgee without a name");
            }
            e.gender = optional_gender(a);
            p.acknowledgees.push_back(std::move(e));
        }
    }
    return p;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw InputError("error while reading " + path.string());
    return ss.str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim(line).empty()) fn(line_no, line);
        if (end == text.size()) break;
        pos = end + 1;
    }
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void put_optional_id(ordered_json& j, const std::optional<std::string>& id) {
    j["person_id"] = id ? ordered_json(*id) : ordered_json(nullptr);
}

void put_optional_gender(ordered_json& j, const std::optional<Gender>& g) {
    if (g) j["gender"] = std::string(to_string(*g));
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

Corpus parse_corpus(std::string_view jsonl, std::string_view source) {
    Corpus corpus;
    std::set<std::string> dois;
    for_each_line(jsonl, [&](std::size_t line_no, std::string_view line) {
        std::vector<std::string> warnings;
        try {
            PaperRecord p = parse_paper(json::parse(line), warnings);
            if (!dois.insert(p.doi).second) {
                corpus.load_report.push_back(
                    {std::string(source), line_no, "duplicate doi '" + p.doi + "'"});
                return;
            }
            corpus.papers.push_back(std::move(p));
        } catch (const json::exception& e) {
            corpus.load_report.push_back({std::string(source), line_no, e.what()});
        } catch (const LineError& e) {
            corpus.load_report.push_back({std::string(source), line_no, e.what()});
        }
        for (auto& w : warnings) corpus.load_report.push_back({std::string(source), line_no, w});
    });
    return corpus;
}

ScholarTable parse_scholars(std::string_view jsonl, std::vector<LoadIssue>& issues,
                            std::string_view source) {
    ScholarTable table;
    for_each_line(jsonl, [&](std::size_t line_no, std::string_view line) {
        try {
            const json j = json::parse(line);
            if (!j.is_object()) throw LineError("record is not an object");
            ScholarProfile s;
            auto id = optional_id(j);
            if (!id) throw LineError("scholar without person_id");
            s.person_id = *id;
            auto cites = j.find("total_citations");
            if (cites == j.end() || !cites->is_number_integer() || cites->get<long long>() < 0) {
                throw LineError("field 'total_citations' must be a non-negative integer");
            }
            s.total_citations = cites->get<std::uint64_t>();
            s.gender = optional_gender(j);
            s.disciplines = string_list(j, "disciplines");
            if (table.count(s.person_id) != 0) {
                throw LineError("duplicate person_id '" + s.person_id + "'");
            }
            table.emplace(s.person_id, std::move(s));
        } catch (const json::exception& e) {
            issues.push_back({std::string(source), line_no, e.what()});
        } catch (const LineError& e) {
            issues.push_back({std::string(source), line_no, e.what()});
        }
    });
    return table;
}

Corpus load_corpus(const std::filesystem::path& corpus_path,
                   const std::optional<std::filesystem::path>& scholars_path) {
    const std::string bytes = read_file(corpus_path);
    Corpus corpus = parse_corpus(bytes, corpus_path.string());
    if (corpus.papers.empty()) {
        throw EmptyCorpusError("no valid paper records in " + corpus_path.string());
    }
    corpus.provenance.corpus_path = corpus_path.string();
    corpus.provenance.corpus_hash = fnv1a64(bytes);
    corpus.provenance.loaded_at = utc_now();
    if (scholars_path) {
        const std::string sbytes = read_file(*scholars_path);
        corpus.scholars = parse_scholars(sbytes, corpus.load_report, scholars_path->string());
        corpus.provenance.scholars_path = scholars_path->string();
        corpus.provenance.scholars_hash = fnv1a64(sbytes);
    }
    return corpus;
}

void write_paper_line(std::ostream& out, const PaperRecord& p) {
    ordered_json j;
    j["doi"] = p.doi;
    j["year"] = p.year;
    j["disciplines"] = p.disciplines;
    j["authors"] = ordered_json::array();
    for (const auto& a : p.authors) {
        ordered_json e;
        put_optional_id(e, a.person_id);
        e["given_name"] = a.given_name;
        e["family_name"] = a.family_name;
        e["credit_roles"] = a.credit_roles;
        put_optional_gender(e, a.gender);
        j["authors"].push_back(std::move(e));
    }
    j["acknowledgees"] = ordered_json::array();
    for (const auto& a : p.acknowledgees) {
        ordered_json e;
        put_optional_id(e, a.person_id);
        e["given_name"] = a.given_name;
        e["family_name"] = a.family_name;
        put_optional_gender(e, a.gender);
        j["acknowledgees"].push_back(std::move(e));
    }
    j["ack_text"] = p.ack_text;
    out << j.dump() << '\n';
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& p : corpus.papers) write_paper_line(out, p);
}

void write_scholars(std::ostream& out, const ScholarTable& scholars) {
    for (const auto& [id, s] : scholars) {
        ordered_json j;
        j["person_id"] = s.person_id;
        j["total_citations"] = s.total_citations;
        put_optional_gender(j, s.gender);
        j["disciplines"] = s.disciplines;
        out << j.dump() << '\n';
    }
}

CorpusIndex build_index(const Corpus& corpus) {
    CorpusIndex index;
    for (std::size_t i = 0; i < corpus.papers.size(); ++i) {
        const auto& p = corpus.papers[i];
        index.by_doi.emplace(p.doi, i);
        for (const auto& d : p.disciplines) index.by_discipline[d].push_back(i);
        for (const auto& a : p.authors) {
            if (a.person_id) index.by_person[*a.person_id].push_back({i, CreditType::Author});
        }
        for (const auto& a : p.acknowledgees) {
            if (a.person_id) index.by_person[*a.person_id].push_back({i, CreditType::Acknowledgee});
        }
    }
    return index;
}

std::string_view to_string(IssueKind k) {
    switch (k) {
        case IssueKind::NameMismatch: return "name_mismatch";
        case IssueKind::UnknownRole: return "unknown_role";
        case IssueKind::MissingCreditRoles: return "missing_credit_roles";
        case IssueKind::UnknownScholar: return "unknown_scholar";
    }
    return "";
}

std::size_t ValidationReport::count(IssueKind k) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.kind == k ? 1 : 0;
    return n;
}

ValidationReport validate(const Corpus& corpus, const CreditMapping& mapping) {
    ValidationReport report;
    const bool check_scholars = !corpus.scholars.empty();
    auto check_id = [&](const std::string& doi, const std::optional<std::string>& id) {
        if (check_scholars && id && corpus.scholars.count(*id) == 0) {
            report.entries.push_back({IssueKind::UnknownScholar, doi, *id});
        }
    };
    for (const auto& p : corpus.papers) {
        for (const auto& a : p.authors) {
            if (a.credit_roles.empty()) {
                report.entries.push_back(
                    {IssueKind::MissingCreditRoles, p.doi, a.given_name + " " + a.family_name});
            }
            for (const auto& r : a.credit_roles) {
                if (!mapping.contains(r)) report.entries.push_back({IssueKind::UnknownRole, p.doi, r});
            }
            check_id(p.doi, a.person_id);
        }
        const auto tokens = tokenize_words(p.ack_text);
        for (const auto& a : p.acknowledgees) {
            if (!mentions_person(tokens, a.given_name, a.family_name)) {
                std::string name = a.given_name;
                if (!a.given_name.empty() && !a.family_name.empty()) name += ' ';
                name += a.family_name;
                report.entries.push_back({IssueKind::NameMismatch, p.doi, name});
            }
            check_id(p.doi, a.person_id);
        }
    }
    return report;
}

double ContributorSummary::identified_fraction() const {
    if (acknowledgee_mentions == 0) return 0.0;
    return static_cast<double>(identified_acknowledgees) /
           static_cast<double>(acknowledgee_mentions);
}

ContributorSummary contributor_counts(const Corpus& corpus) {
    ContributorSummary s;
    s.papers = corpus.papers.size();
    for (const auto& p : corpus.papers) {
        s.author_mentions += p.authors.size();
        s.acknowledgee_mentions += p.acknowledgees.size();
        for (const auto& a : p.authors) {
            const Gender g = a.gender.value_or(Gender::Unknown);
            ++s.authors_by_gender[g];
            for (const auto& d : p.disciplines) ++s.contributors_by_discipline[{d, g}];
        }
        for (const auto& a : p.acknowledgees) {
            const Gender g = a.gender.value_or(Gender::Unknown);
            if (a.person_id) ++s.identified_acknowledgees;
            ++s.acknowledgees_by_gender[g];
            for (const auto& d : p.disciplines) ++s.contributors_by_discipline[{d, g}];
        }
    }
    return s;
}

}  // namespace creditlens
