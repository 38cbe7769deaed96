#include "creditlens/text.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>

namespace creditlens {

namespace {

// U+00C0 .. U+00FF
constexpr std::array<const char*, 64> kLatin1 = {
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O", nullptr, "O", "U", "U", "U", "U", "Y", "TH", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", nullptr, "o", "u", "u", "u", "u", "y", "th", "y",
};

// U+0100 .. U+017F; '?' marks ligatures handled separately.
constexpr std::string_view kLatinExtA =
    "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIi??JjKkkLlLlLlLlLlNnNnNnnNnOoOoOo??"
    "RrRrRrSsSsSsSsTtTtTtUuUuUuUuUuUuWwYyYZzZzZzs";
static_assert(kLatinExtA.size() == 128);

struct Decoded {
    std::uint32_t cp;
    std::size_t len;
};

Decoded decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) -> std::optional<std::uint32_t> {
        if (i + k >= s.size()) return std::nullopt;
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return std::nullopt;
        return b & 0x3F;
    };
    if (b0 < 0x80) return {b0, 1};
    if ((b0 & 0xE0) == 0xC0) {
        if (auto c1 = cont(1)) return {((b0 & 0x1Fu) << 6) | *c1, 2};
    } else if ((b0 & 0xF0) == 0xE0) {
        auto c1 = cont(1), c2 = cont(2);
        if (c1 && c2) return {((b0 & 0x0Fu) << 12) | (*c1 << 6) | *c2, 3};
    } else if ((b0 & 0xF8) == 0xF0) {
        auto c1 = cont(1), c2 = cont(2), c3 = cont(3);
        if (c1 && c2 && c3) return {((b0 & 0x07u) << 18) | (*c1 << 12) | (*c2 << 6) | *c3, 4};
    }
    // Invalid sequence: treat the byte as an opaque symbol.
    return {0xFFFD, 1};
}

bool is_letter(std::uint32_t cp) {
    if (cp < 0x80) return std::isalpha(static_cast<int>(cp)) != 0;
    if (cp < 0xC0) return false;                 // nbsp, Latin-1 punctuation
    if (cp == 0xD7 || cp == 0xF7) return false;  // multiplication/division signs
    if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp == 0xFFFD) return false;
    return true;
}

bool is_upper_start(std::string_view raw) {
    if (raw.empty()) return false;
    const auto c = static_cast<unsigned char>(raw.front());
    if (c < 0x80) return std::isupper(c) != 0;
    // Non-ASCII: fold and inspect the ASCII base letter when there is one.
    const std::string folded = fold_diacritics(raw.substr(0, decode(raw, 0).len));
    if (!folded.empty() && static_cast<unsigned char>(folded.front()) < 0x80) {
        return std::isupper(static_cast<unsigned char>(folded.front())) != 0;
    }
    return true;
}

}  // namespace

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
    }
    return out;
}

std::string fold_diacritics(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < utf8.size();) {
        const Decoded d = decode(utf8, i);
        if (d.cp >= 0xC0 && d.cp <= 0xFF && kLatin1[d.cp - 0xC0] != nullptr) {
            out += kLatin1[d.cp - 0xC0];
        } else if (d.cp >= 0x100 && d.cp <= 0x17F) {
            switch (d.cp) {
                case 0x132: out += "IJ"; break;
                case 0x133: out += "ij"; break;
                case 0x152: out += "OE"; break;
                case 0x153: out += "oe"; break;
                default: out += kLatinExtA[d.cp - 0x100];
            }
        } else {
            out.append(utf8.substr(i, d.len));
        }
        i += d.len;
    }
    return out;
}

std::string name_key(std::string_view s) { return ascii_lower(fold_diacritics(trim(s))); }

std::vector<WordToken> tokenize_words(std::string_view text) {
    std::vector<WordToken> tokens;
    std::size_t start = std::string_view::npos;
    auto flush = [&](std::size_t end) {
        if (start == std::string_view::npos) return;
        WordToken t;
        t.raw = std::string(text.substr(start, end - start));
        t.key = name_key(t.raw);
        t.capitalized = is_upper_start(t.raw);
        tokens.push_back(std::move(t));
        start = std::string_view::npos;
    };
    for (std::size_t i = 0; i < text.size();) {
        const Decoded d = decode(text, i);
        if (is_letter(d.cp)) {
            if (start == std::string_view::npos) start = i;
        } else {
            flush(i);
        }
        i += d.len;
    }
    flush(text.size());
    return tokens;
}

bool mentions_person(const std::vector<WordToken>& tokens, std::string_view given_name,
                     std::string_view family_name) {
    const auto given = tokenize_words(given_name);
    const auto family = tokenize_words(family_name);
    const auto& anchor = family.empty() ? given : family;
    if (anchor.empty()) return false;
    const bool single_part = family.empty() || given.empty();

    for (std::size_t i = 0; i + anchor.size() <= tokens.size(); ++i) {
        bool hit = true;
        for (std::size_t k = 0; k < anchor.size() && hit; ++k) {
            hit = tokens[i + k].capitalized && tokens[i + k].key == anchor[k].key;
        }
        if (!hit) continue;
        if (single_part) return true;

        // Walk back over the capitalized run before the family name (at most
        // three tokens: "J. K.", "Mary Ann", "Dr. John").
        const std::string& first = given.front().key;
        for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
            const WordToken& t = tokens[i - back];
            if (!t.capitalized) break;
            if (t.key == first) return true;
            if (t.key.size() == 1 && t.key.front() == first.front()) return true;
        }
    }
    return false;
}

}  // namespace creditlens
