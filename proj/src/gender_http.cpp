#include <stdexcept>

#include "httplib.h"
#include "json.hpp"

#include "creditlens/gender.hpp"

namespace creditlens {

namespace {

struct ParsedUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw std::invalid_argument("gender service URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpGenderService::HttpGenderService(std::string url, std::optional<std::string> api_key,
                                     std::string name_param, std::string key_param)
    : url_(std::move(url)),
      api_key_(std::move(api_key)),
      name_param_(std::move(name_param)),
      key_param_(std::move(key_param)) {
    split_url(url_);
}

GenderGuess HttpGenderService::parse_response(std::string_view body) {
    const auto j = nlohmann::json::parse(body);
    GenderGuess g;
    if (j.contains("gender") && j["gender"].is_string()) {
        g.label = parse_gender(j["gender"].get<std::string>()).value_or(Gender::Unknown);
    }
    if (j.contains("accuracy") && j["accuracy"].is_number()) {
        g.confidence = j["accuracy"].get<double>() / 100.0;
    } else if (j.contains("probability") && j["probability"].is_number()) {
        g.confidence = j["probability"].get<double>();
    }
    if (g.label == Gender::Unknown) g.confidence = 0.0;
    return g;
}

GenderGuess HttpGenderService::query(std::string_view name) {
    const ParsedUrl u = split_url(url_);
    httplib::Client client(u.origin);
    client.set_connection_timeout(5);
    client.set_read_timeout(10);
    httplib::Params params{{name_param_, std::string(name)}};
    if (api_key_) params.emplace(key_param_, *api_key_);
    auto res = client.Get(u.path, params, httplib::Headers{});
    if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw std::runtime_error("HTTP status " + std::to_string(res->status));
    try {
        return parse_response(res->body);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed response: ") + e.what());
    }
}

}  // namespace creditlens
