#include "creditlens/gender.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "creditlens/error.hpp"
#include "creditlens/text.hpp"

namespace creditlens {

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto sep = [](char c) { return c == '\t' || c == ',' || c == ' ' || c == ';'; };
    while (i < line.size()) {
        while (i < line.size() && sep(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !sep(line[j])) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

bool is_initial_only(std::string_view given_name) {
    const auto tokens = tokenize_words(given_name);
    if (tokens.empty()) return false;
    bool all_single = true;
    for (const auto& t : tokens) all_single = all_single && t.key.size() == 1;
    if (all_single) return true;
    if (tokens.size() == 1) {
        const std::string& raw = tokens.front().raw;
        if (raw.size() >= 2 && raw.size() <= 3 &&
            std::all_of(raw.begin(), raw.end(),
                        [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; })) {
            return true;
        }
    }
    return false;
}

GenderDictionary GenderDictionary::parse(std::string_view text) {
    GenderDictionary dict;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw InputError("gender dictionary line " + std::to_string(line_no) +
                             ": expected 'name label[:confidence]'");
        }
        std::string_view label = fields[1];
        double confidence = 1.0;
        if (auto colon = label.find(':'); colon != std::string_view::npos) {
            try {
                confidence = std::stod(std::string(label.substr(colon + 1)));
            } catch (const std::exception&) {
                throw InputError("gender dictionary line " + std::to_string(line_no) +
                                 ": bad confidence");
            }
            label = label.substr(0, colon);
        }
        const auto g = parse_gender(label);
        if (!g || *g == Gender::Unknown || confidence < 0.0 || confidence > 1.0) {
            throw InputError("gender dictionary line " + std::to_string(line_no) +
                             ": label must be woman/man with confidence in [0,1]");
        }
        dict.add(fields[0], *g, confidence);
    }
    return dict;
}

GenderDictionary GenderDictionary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read gender dictionary: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void GenderDictionary::add(std::string_view name, Gender label, double confidence) {
    entries_[name_key(name)] = {label, confidence};
}

std::optional<GenderGuess> GenderDictionary::lookup(std::string_view given_name) const {
    if (auto it = entries_.find(name_key(given_name)); it != entries_.end()) return it->second;
    const auto tokens = tokenize_words(given_name);
    if (!tokens.empty()) {
        if (auto it = entries_.find(tokens.front().key); it != entries_.end()) return it->second;
    }
    return std::nullopt;
}

GenderCache::GenderCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(*path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            CacheEntry e;
            e.guess.label = parse_gender(j.at("label").get<std::string>()).value_or(Gender::Unknown);
            e.guess.confidence = j.at("confidence").get<double>();
            e.source = j.value("source", "");
            e.timestamp = j.value("timestamp", "");
            entries_[j.at("name").get<std::string>()] = std::move(e);
        } catch (const nlohmann::json::exception&) {
            // A torn trailing line from an interrupted run; the name is simply re-queried.
        }
    }
}

std::optional<CacheEntry> GenderCache::lookup(std::string_view name) const {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(name_key(name)); it != entries_.end()) return it->second;
    return std::nullopt;
}

void GenderCache::store(std::string_view name, const CacheEntry& entry) {
    std::lock_guard lock(mutex_);
    const std::string key = name_key(name);
    entries_[key] = entry;
    if (!path_) return;
    std::ofstream out(*path_, std::ios::app);
    nlohmann::ordered_json j;
    j["name"] = key;
    j["label"] = std::string(to_string(entry.guess.label));
    j["confidence"] = entry.guess.confidence;
    j["source"] = entry.source;
    j["timestamp"] = entry.timestamp;
    out << j.dump() << '\n';
}

std::size_t GenderCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::optional<GenderGuess> CachedGenderClient::lookup(std::string_view given_name) {
    if (auto hit = cache_.lookup(given_name)) return hit->guess;
    std::lock_guard lock(mutex_);
    // Another thread may have filled it while we waited.
    if (auto hit = cache_.lookup(given_name)) return hit->guess;
    ++calls_;
    try {
        const GenderGuess g = service_.query(given_name);
        cache_.store(given_name, {g, service_.source(), utc_now()});
        return g;
    } catch (const std::exception& e) {
        warnings_.push_back("gender service lookup failed for '" + std::string(given_name) +
                            "': " + e.what());
        return std::nullopt;
    }
}

std::vector<std::string> CachedGenderClient::warnings() const {
    std::lock_guard lock(mutex_);
    return warnings_;
}

std::size_t CachedGenderClient::service_calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

Gender infer_gender(std::string_view given_name, const GenderDictionary& dictionary,
                    CachedGenderClient* client, double threshold) {
    if (auto hit = dictionary.lookup(given_name); hit && hit->confidence >= threshold) {
        return hit->label;
    }
    if (client != nullptr) {
        if (auto g = client->lookup(given_name); g && g->confidence >= threshold) return g->label;
    }
    return Gender::Unknown;
}

Corpus annotate_corpus(const Corpus& corpus, const GenderDictionary& dictionary,
                       CachedGenderClient* client, double threshold, AnnotationCounts* counts) {
    AnnotationCounts local;
    auto resolve = [&](std::string_view given, std::optional<Gender>& gender) {
        if (trim(given).empty() || is_initial_only(given)) {
            ++local.initials_only;
            gender = Gender::Unknown;
        } else if (gender) {
            ++local.preset;
        } else {
            gender = infer_gender(given, dictionary, client, threshold);
            ++local.inferred;
        }
        ++local.labels[*gender];
    };

    Corpus out = corpus;
    for (auto& p : out.papers) {
        for (auto& a : p.authors) resolve(a.given_name, a.gender);
        for (auto& a : p.acknowledgees) resolve(a.given_name, a.gender);
    }
    if (counts != nullptr) *counts = local;
    return out;
}

}  // namespace creditlens
