#include "creditlens/roles.hpp"

#include <algorithm>

#include "creditlens/text.hpp"

namespace creditlens {

std::string_view to_string(Gender g) {
    switch (g) {
        case Gender::Woman: return "woman";
        case Gender::Man: return "man";
        case Gender::Unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Gender> parse_gender(std::string_view s) {
    const std::string v = ascii_lower(trim(s));
    if (v == "woman" || v == "female" || v == "f" || v == "w") return Gender::Woman;
    if (v == "man" || v == "male" || v == "m") return Gender::Man;
    if (v == "unknown" || v == "u" || v == "unisex" || v == "none") return Gender::Unknown;
    return std::nullopt;
}

bool is_authorship_role(Role r) {
    return std::find(kAuthorshipRoles.begin(), kAuthorshipRoles.end(), r) != kAuthorshipRoles.end();
}

bool is_acknowledgment_role(Role r) {
    return std::find(kAcknowledgmentRoles.begin(), kAcknowledgmentRoles.end(), r) !=
           kAcknowledgmentRoles.end();
}

std::string_view to_string(Role r) {
    switch (r) {
        case Role::InvestigationAnalysis: return "InvestigationAnalysis";
        case Role::MaterialResources: return "MaterialResources";
        case Role::Writing: return "Writing";
        case Role::Funding: return "Funding";
        case Role::Administration: return "Administration";
        case Role::Conceptualization: return "Conceptualization";
        case Role::PeerCommunication: return "PeerCommunication";
    }
    return "";
}

std::string_view short_label(Role r) {
    switch (r) {
        case Role::InvestigationAnalysis: return "I&A";
        case Role::MaterialResources: return "M&R";
        case Role::Writing: return "Writing";
        case Role::Funding: return "Funding";
        case Role::Administration: return "Administration";
        case Role::Conceptualization: return "Conceptualization";
        case Role::PeerCommunication: return "PeerCommunication";
    }
    return "";
}

std::optional<Role> parse_role(std::string_view s) {
    for (Role r : kAllRoles) {
        if (s == to_string(r) || s == short_label(r)) return r;
    }
    return std::nullopt;
}

std::string_view to_string(CreditType t) {
    return t == CreditType::Author ? "author" : "acknowledgee";
}

}  // namespace creditlens
