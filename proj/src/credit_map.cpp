#include "creditlens/credit_map.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "creditlens/error.hpp"
#include "creditlens/text.hpp"

namespace creditlens {

std::string canonicalize_credit(std::string_view raw) {
    const std::string folded = fold_diacritics(raw);
    std::string out;
    bool pending_space = false;
    for (const char ch : folded) {
        const auto c = static_cast<unsigned char>(ch);
        if (c < 0x80 && std::isalnum(c)) {
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(c));
        } else {
            pending_space = true;
        }
    }
    return out;
}

CreditMapping CreditMapping::standard() {
    CreditMapping m;
    for (const char* s : {"co-investigator", "data curation", "formal analysis", "investigation",
                          "principal investigators", "research assistants", "software",
                          "methodology", "validation", "visualization"}) {
        m.add(s, Role::InvestigationAnalysis);
    }
    m.add("resources", Role::MaterialResources);
    m.add("writing – original draft preparation", Role::Writing);
    m.add("writing – review & editing", Role::Writing);
    m.add("funding acquisition", Role::Funding);
    m.add("project administration", Role::Administration);
    m.add("supervision", Role::Administration);
    m.add("conceptualization", Role::Conceptualization);

    m.add_alias("writing – original draft", "writing – original draft preparation");
    m.add_alias("principal investigator", "principal investigators");
    m.add_alias("research assistant", "research assistants");
    m.add_alias("conceptualisation", "conceptualization");
    m.add_alias("visualisation", "visualization");
    m.add_alias("writing – review and editing", "writing – review & editing");
    return m;
}

CreditMapping CreditMapping::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("credit map: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_object()) {
        throw ConfigError("credit map: missing \"categories\" object");
    }
    CreditMapping m;
    for (const auto& [name, roles] : doc["categories"].items()) {
        const auto role = parse_role(name);
        if (!role) throw ConfigError("credit map: unknown category '" + name + "'");
        if (!is_authorship_role(*role)) {
            throw ConfigError("credit map: '" + name + "' is not an authorship category");
        }
        if (!roles.is_array()) throw ConfigError("credit map: category '" + name + "' needs a list");
        for (const auto& r : roles) {
            if (!r.is_string()) throw ConfigError("credit map: non-string role in '" + name + "'");
            const std::string key = canonicalize_credit(r.get<std::string>());
            if (m.table_.count(key) != 0) {
                throw ConfigError("credit map: role '" + r.get<std::string>() + "' listed twice");
            }
            m.add(r.get<std::string>(), *role);
        }
    }
    if (doc.contains("aliases")) {
        if (!doc["aliases"].is_object()) throw ConfigError("credit map: \"aliases\" must be an object");
        for (const auto& [alias, target] : doc["aliases"].items()) {
            if (!target.is_string()) throw ConfigError("credit map: alias target must be a string");
            if (!m.contains(target.get<std::string>())) {
                throw ConfigError("credit map: alias '" + alias + "' targets unknown role");
            }
            m.add_alias(alias, target.get<std::string>());
        }
    }
    return m;
}

CreditMapping CreditMapping::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read credit map: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void CreditMapping::add(std::string_view credit_role, Role category) {
    table_[canonicalize_credit(credit_role)] = category;
}

void CreditMapping::add_alias(std::string_view alias, std::string_view target) {
    aliases_[canonicalize_credit(alias)] = canonicalize_credit(target);
}

Role CreditMapping::map(std::string_view credit_role) const {
    std::string key = canonicalize_credit(credit_role);
    if (auto a = aliases_.find(key); a != aliases_.end()) key = a->second;
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    throw UnmappedRoleError(std::string(credit_role));
}

bool CreditMapping::contains(std::string_view credit_role) const {
    std::string key = canonicalize_credit(credit_role);
    if (auto a = aliases_.find(key); a != aliases_.end()) key = a->second;
    return table_.count(key) != 0;
}

RoleSet author_roles(std::span<const std::string> credit_roles, const CreditMapping& mapping) {
    RoleSet out;
    for (const auto& r : credit_roles) out.insert(mapping.map(r));
    return out;
}

}  // namespace creditlens
