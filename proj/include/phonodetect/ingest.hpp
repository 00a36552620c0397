#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace phonodetect {

// One phoneme symbol. A segment is either a single base character plus
// attached marks, or a listed multigraph.
using Segment = std::string;
using PhonemeSequence = std::vector<Segment>;

std::string join_segments(const PhonemeSequence& seq);

struct WordlistEntry {
    std::string concept_id;
    std::string variety_id;
    std::string form_raw;
    std::string form_norm;
    std::optional<bool> gold_label;
    std::string gold_kind;  // "error" / "borrowing" / "" ; reported, not scored
    int line_no = 0;
};

struct Wordlist {
    std::vector<WordlistEntry> entries;
    std::vector<std::string> varieties;  // insertion order
    std::vector<std::string> concepts;
};

struct SymbolTable {
    // Multi-character phoneme symbols, longest first (byte length).
    std::vector<std::string> multigraphs;
    std::set<char32_t> strip_set;
    std::set<char32_t> combining_marks;

    // Common IPA conventions: affricate digraphs, aspiration/secondary
    // articulation modifiers as marks, unreleased diacritic stripped.
    static SymbolTable default_table();
    static SymbolTable load(const std::string& path);

    void add_multigraph(const std::string& symbol);
};

// UTF-8 TSV with a header row naming concept_id, variety_id, form and
// optionally gold (0/1) and gold_kind. '#'-prefixed lines are comments.
Wordlist parse_wordlist(const std::string& path);
Wordlist parse_wordlist_text(const std::string& text, const std::string& source_name);

std::string serialize_wordlist(const Wordlist& wl);

// Deletes strip_set characters and applies the project-wide canonical
// composition. Idempotent.
WordlistEntry normalize(const WordlistEntry& entry, const SymbolTable& table);
std::string normalize_form(const std::string& form_raw, const SymbolTable& table);

// Greedy longest-match against multigraphs, then one code point at a
// time; combining marks attach to the preceding segment.
PhonemeSequence tokenize(const std::string& form_norm, const SymbolTable& table);

}  // namespace phonodetect
