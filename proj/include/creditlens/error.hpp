#pragma once

#include <stdexcept>
#include <string>

namespace creditlens {

/// Unreadable or structurally unusable input. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Corpus file parsed but held no valid record.
class EmptyCorpusError : public InputError {
public:
    using InputError::InputError;
};

/// Invalid configuration (bad flag value, infeasible generator settings).
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A CRediT string outside the mapping vocabulary.
class UnmappedRoleError : public std::runtime_error {
public:
    explicit UnmappedRoleError(std::string role)
        : std::runtime_error("unmapped CRediT role: '" + role + "'"), role_(std::move(role)) {}
    const std::string& role() const noexcept { return role_; }

private:
    std::string role_;
};

/// Statistic or test whose inputs leave it undefined (zero variance with
/// differing means, zero denominators, degenerate contingency tables).
class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace creditlens
