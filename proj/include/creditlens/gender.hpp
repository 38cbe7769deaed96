#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "creditlens/corpus.hpp"
#include "creditlens/roles.hpp"

namespace creditlens {

inline constexpr double kDefaultGenderThreshold = 0.8;
inline constexpr const char* kGenderApiKeyEnv = "CREDITLENS_GENDER_API_KEY";

/// True when the given name carries nothing but initials: "J.", "J. K.",
/// "J.-P.", or a bare run of two or three capitals such as "JK".
bool is_initial_only(std::string_view given_name);

struct GenderGuess {
    Gender label = Gender::Unknown;
    double confidence = 0.0;

    friend bool operator==(const GenderGuess&, const GenderGuess&) = default;
};

/// Local given-name -> gender table. Keys are lowercase and diacritics-folded.
class GenderDictionary {
public:
    /// Two columns per line: name and label[:confidence]. Separators may be
    /// tabs, commas or spaces; '#' starts a comment. Confidence defaults to 1.
    static GenderDictionary parse(std::string_view text);
    static GenderDictionary load(const std::filesystem::path& path);

    void add(std::string_view name, Gender label, double confidence);
    /// Tries the whole given name, then its first word ("Mary Ann" -> "mary").
    std::optional<GenderGuess> lookup(std::string_view given_name) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, GenderGuess> entries_;
};

/// Remote name -> gender lookup. Implementations throw on transport or
/// protocol failure; a name the service does not know returns Unknown.
class GenderService {
public:
    virtual ~GenderService() = default;
    virtual GenderGuess query(std::string_view name) = 0;
    virtual std::string source() const = 0;
};

/// HTTP GET client for services in the gender-api.com / genderize.io style:
/// `<url>?name=<name>[&key=<api key>]`, answered with JSON holding "gender"
/// and either "accuracy" (0-100) or "probability" (0-1).
class HttpGenderService : public GenderService {
public:
    HttpGenderService(std::string url, std::optional<std::string> api_key,
                      std::string name_param = "name", std::string key_param = "key");
    GenderGuess query(std::string_view name) override;
    std::string source() const override { return url_; }

    /// Maps a service response body to a guess. Throws std::runtime_error on
    /// malformed JSON.
    static GenderGuess parse_response(std::string_view body);

private:
    std::string url_;
    std::optional<std::string> api_key_;
    std::string name_param_;
    std::string key_param_;
};

struct CacheEntry {
    GenderGuess guess;
    std::string source;
    std::string timestamp;
};

/// Line-delimited persistent cache of service answers. Writes are appended
/// under a lock; a missing file starts an empty cache.
class GenderCache {
public:
    GenderCache() = default;
    explicit GenderCache(std::filesystem::path path);

    std::optional<CacheEntry> lookup(std::string_view name) const;
    void store(std::string_view name, const CacheEntry& entry);
    std::size_t size() const;

private:
    std::optional<std::filesystem::path> path_;
    std::map<std::string, CacheEntry> entries_;
    mutable std::mutex mutex_;
};

/// Service access through the cache. Cache hits never reach the service;
/// service calls are made one at a time. A failed call yields nullopt and a
/// recorded warning.
class CachedGenderClient {
public:
    CachedGenderClient(GenderService& service, GenderCache& cache)
        : service_(service), cache_(cache) {}

    std::optional<GenderGuess> lookup(std::string_view given_name);
    std::vector<std::string> warnings() const;
    std::size_t service_calls() const;

private:
    GenderService& service_;
    GenderCache& cache_;
    mutable std::mutex mutex_;
    std::vector<std::string> warnings_;
    std::size_t calls_ = 0;
};

/// Dictionary first; below-threshold or missing entries fall through to the
/// client when one is configured; anything else is Unknown.
Gender infer_gender(std::string_view given_name, const GenderDictionary& dictionary,
                    CachedGenderClient* client, double threshold = kDefaultGenderThreshold);

struct AnnotationCounts {
    std::map<Gender, std::size_t> labels;
    std::size_t preset = 0;
    std::size_t inferred = 0;
    std::size_t initials_only = 0;
};

/// Fills every missing gender. Initials-only given names become Unknown even
/// when a label was preset; otherwise a preset label wins. Idempotent.
Corpus annotate_corpus(const Corpus& corpus, const GenderDictionary& dictionary,
                       CachedGenderClient* client, double threshold = kDefaultGenderThreshold,
                       AnnotationCounts* counts = nullptr);

}  // namespace creditlens
