#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace creditlens {

std::string_view trim(std::string_view s);
std::string ascii_lower(std::string_view s);

/// Replaces Latin-1 and Latin Extended-A letters with their ASCII base
/// letters ("José" -> "Jose", "Łukasz" -> "Lukasz", "ß" -> "ss"). Other
/// code points pass through unchanged.
std::string fold_diacritics(std::string_view utf8);

/// Lowercased, diacritics-folded form used as a lookup key.
std::string name_key(std::string_view s);

/// A maximal run of letters. `raw` keeps the original spelling, `key` is
/// the name_key() of it.
struct WordToken {
    std::string raw;
    std::string key;
    /// First character is an uppercase ASCII letter or a non-ASCII letter.
    bool capitalized = false;
};

/// Splits on anything that is not a letter. Multi-byte UTF-8 letters count
/// as letters; typographic punctuation (dashes, curly quotes, nbsp) does not.
std::vector<WordToken> tokenize_words(std::string_view text);

/// True when the token sequence mentions the person. A two-part name needs
/// the family-name tokens plus a compatible given name (full first token or
/// its initial) among the capitalized tokens right before it. A name with
/// only one part matches on that part alone.
bool mentions_person(const std::vector<WordToken>& tokens, std::string_view given_name,
                     std::string_view family_name);

}  // namespace creditlens
