#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace creditlens {

enum class Gender { Woman, Man, Unknown };

std::string_view to_string(Gender g);
/// Accepts woman/man/unknown plus the female/male/f/m spellings name services use.
std::optional<Gender> parse_gender(std::string_view s);

/// Abstract contribution categories shared by authorship and acknowledgment.
enum class Role {
    InvestigationAnalysis,
    MaterialResources,
    Writing,
    Funding,
    Administration,
    Conceptualization,
    PeerCommunication,
};

inline constexpr std::array<Role, 7> kAllRoles = {
    Role::InvestigationAnalysis, Role::MaterialResources, Role::Writing, Role::Funding,
    Role::Administration,        Role::Conceptualization, Role::PeerCommunication,
};

/// Roles an author can hold (CRediT side).
inline constexpr std::array<Role, 6> kAuthorshipRoles = {
    Role::InvestigationAnalysis, Role::MaterialResources, Role::Writing,
    Role::Funding,               Role::Administration,    Role::Conceptualization,
};

/// Roles an acknowledgment sentence can assign.
inline constexpr std::array<Role, 4> kAcknowledgmentRoles = {
    Role::InvestigationAnalysis, Role::MaterialResources, Role::Writing, Role::PeerCommunication};

/// Roles present on both sides, the ones authorship rates are compared on.
inline constexpr std::array<Role, 3> kSharedRoles = {
    Role::InvestigationAnalysis, Role::MaterialResources, Role::Writing};

bool is_authorship_role(Role r);
bool is_acknowledgment_role(Role r);

/// Stable identifier used in config files and CSV output ("InvestigationAnalysis").
std::string_view to_string(Role r);
/// Short label used in figure tables ("I&A").
std::string_view short_label(Role r);
std::optional<Role> parse_role(std::string_view s);

enum class CreditType { Author, Acknowledgee };
std::string_view to_string(CreditType t);

}  // namespace creditlens
