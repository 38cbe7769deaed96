#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "creditlens/roles.hpp"

namespace creditlens {

/// Lowercase, diacritics folded, punctuation and dashes turned into spaces,
/// whitespace collapsed. "Writing – Review & Editing" -> "writing review editing".
std::string canonicalize_credit(std::string_view raw);

/// CRediT vocabulary -> abstract authorship category.
class CreditMapping {
public:
    /// The shipped taxonomy: every role string listed per category, plus
    /// spelling aliases ("writing – original draft" for the "... preparation" form).
    static CreditMapping standard();

    /// Parses the JSON config ({"categories": {Role: [strings]}, "aliases": {alias: target}}).
    /// Comments are allowed. Throws ConfigError on unknown categories,
    /// non-authorship categories, or a role string listed twice.
    static CreditMapping from_json(std::string_view text);
    static CreditMapping load(const std::filesystem::path& path);

    void add(std::string_view credit_role, Role category);
    void add_alias(std::string_view alias, std::string_view target);

    /// Throws UnmappedRoleError for strings outside the vocabulary.
    Role map(std::string_view credit_role) const;
    bool contains(std::string_view credit_role) const;

    /// Canonical vocabulary with the category of each entry (aliases excluded).
    const std::map<std::string, Role>& table() const { return table_; }

    friend bool operator==(const CreditMapping&, const CreditMapping&) = default;

private:
    std::map<std::string, Role> table_;
    std::map<std::string, std::string> aliases_;
};

using RoleSet = std::set<Role>;

/// Image of the given CRediT strings under the mapping. Propagates
/// UnmappedRoleError.
RoleSet author_roles(std::span<const std::string> credit_roles, const CreditMapping& mapping);

}  // namespace creditlens
