#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace phonodetect::utf8 {

// Decodes one code point starting at byte offset `pos`; advances `pos`.
// Malformed bytes decode as U+FFFD one byte at a time.
char32_t decode_one(std::string_view s, size_t& pos);

std::vector<char32_t> decode(std::string_view s);

std::string encode_one(char32_t cp);

std::string encode(const std::vector<char32_t>& cps);

// Number of code points in a UTF-8 string.
size_t length(std::string_view s);

// Canonical composition pass over common Latin base + combining mark
// pairs (acute, grave, circumflex, caron, tilde, macron, breve,
// diaeresis, ring, dot above). Idempotent and deterministic; marks with
// no precomposed form are left in place.
std::string compose(std::string_view s);

}  // namespace phonodetect::utf8
