#include "phonodetect/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "phonodetect/errors.hpp"
#include "phonodetect/utf8.hpp"

namespace phonodetect {

std::string join_segments(const PhonemeSequence& seq) {
    std::string out;
    for (const auto& s : seq) out += s;
    return out;
}

void SymbolTable::add_multigraph(const std::string& symbol) {
    if (std::find(multigraphs.begin(), multigraphs.end(), symbol) != multigraphs.end()) return;
    multigraphs.push_back(symbol);
    std::stable_sort(multigraphs.begin(), multigraphs.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

SymbolTable SymbolTable::default_table() {
    SymbolTable t;
    for (const char* m : {"tʃ", "dʒ", "ts", "dz"})  // tʃ dʒ ts dz
        t.add_multigraph(m);
    // Aspiration and friends attach to the preceding segment.
    for (char32_t m : {
             char32_t(0x02B0),  // ʰ
             char32_t(0x02B2),  // ʲ
             char32_t(0x02B7),  // ʷ
             char32_t(0x02D0),  // ː
             char32_t(0x02D1),  // ˑ
             char32_t(0x0303),  // combining tilde (nasalization)
             char32_t(0x0301), char32_t(0x0300), char32_t(0x0302), char32_t(0x030C),
             char32_t(0x0304),  // tone/length combining marks
             char32_t(0x0325),  // voiceless ring
             char32_t(0x0329),  // syllabic stroke
         })
        t.combining_marks.insert(m);
    t.strip_set.insert(0x031A);  // combining left angle above (unreleased)
    return t;
}

SymbolTable SymbolTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open symbol table: " + path);
    SymbolTable t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string directive, arg;
        ss >> directive >> arg;
        if (arg.empty())
            throw FormatError(path + ":" + std::to_string(line_no) + ": missing argument");
        if (directive == "multigraph") {
            t.add_multigraph(arg);
        } else if (directive == "strip") {
            for (char32_t cp : utf8::decode(arg)) t.strip_set.insert(cp);
        } else if (directive == "mark") {
            for (char32_t cp : utf8::decode(arg)) t.combining_marks.insert(cp);
        } else {
            throw FormatError(path + ":" + std::to_string(line_no) +
                              ": unknown directive '" + directive + "'");
        }
    }
    for (char32_t cp : t.strip_set)
        if (t.combining_marks.count(cp))
            throw ValidationError(path + ": character in both strip and mark sets");
    return t;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Wordlist parse_wordlist_text(const std::string& text, const std::string& source_name) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    int col_concept = -1, col_variety = -1, col_form = -1, col_gold = -1, col_kind = -1;

    Wordlist wl;
    std::set<std::string> seen_varieties, seen_concepts;
    std::set<std::string> seen_triples;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols = split_tabs(line);
        if (header.empty()) {
            header = cols;
            for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
                if (cols[i] == "concept_id") col_concept = i;
                else if (cols[i] == "variety_id") col_variety = i;
                else if (cols[i] == "form") col_form = i;
                else if (cols[i] == "gold") col_gold = i;
                else if (cols[i] == "gold_kind") col_kind = i;
            }
            for (const auto& [name, idx] : {std::pair<const char*, int>{"concept_id", col_concept},
                                            {"variety_id", col_variety},
                                            {"form", col_form}})
                if (idx < 0)
                    throw FormatError(source_name + ": missing required column '" +
                                      std::string(name) + "'");
            continue;
        }
        auto cell = [&](int idx) -> std::string {
            return idx >= 0 && idx < static_cast<int>(cols.size()) ? cols[idx] : std::string();
        };
        WordlistEntry e;
        e.concept_id = cell(col_concept);
        e.variety_id = cell(col_variety);
        e.form_raw = cell(col_form);
        e.line_no = line_no;
        if (e.concept_id.empty() || e.variety_id.empty())
            throw ValidationError(source_name + ":" + std::to_string(line_no) +
                                  ": empty concept_id or variety_id");
        if (e.form_raw.empty())
            throw ValidationError(source_name + ":" + std::to_string(line_no) + ": empty form");
        if (col_gold >= 0) {
            const std::string g = cell(col_gold);
            if (g == "1") e.gold_label = true;
            else if (g == "0") e.gold_label = false;
            else if (!g.empty())
                throw FormatError(source_name + ":" + std::to_string(line_no) +
                                  ": gold must be 0 or 1, got '" + g + "'");
        }
        e.gold_kind = cell(col_kind);
        e.form_norm = e.form_raw;

        const std::string triple = e.concept_id + "\x1f" + e.variety_id + "\x1f" + e.form_raw;
        if (!seen_triples.insert(triple).second)
            throw ValidationError(source_name + ":" + std::to_string(line_no) +
                                  ": duplicate (concept, variety, form) row");
        if (seen_varieties.insert(e.variety_id).second) wl.varieties.push_back(e.variety_id);
        if (seen_concepts.insert(e.concept_id).second) wl.concepts.push_back(e.concept_id);
        wl.entries.push_back(std::move(e));
    }
    if (header.empty()) throw FormatError(source_name + ": empty file, no header row");
    return wl;
}

Wordlist parse_wordlist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open wordlist: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_wordlist_text(ss.str(), path);
}

std::string serialize_wordlist(const Wordlist& wl) {
    bool any_gold = false, any_kind = false;
    for (const auto& e : wl.entries) {
        if (e.gold_label) any_gold = true;
        if (!e.gold_kind.empty()) any_kind = true;
    }
    std::string out = "concept_id\tvariety_id\tform";
    if (any_gold) out += "\tgold";
    if (any_kind) out += "\tgold_kind";
    out += "\n";
    for (const auto& e : wl.entries) {
        out += e.concept_id + "\t" + e.variety_id + "\t" + e.form_raw;
        if (any_gold) out += std::string("\t") + (e.gold_label && *e.gold_label ? "1" : "0");
        if (any_kind) out += "\t" + e.gold_kind;
        out += "\n";
    }
    return out;
}

std::string normalize_form(const std::string& form_raw, const SymbolTable& table) {
    std::vector<char32_t> cps = utf8::decode(utf8::compose(form_raw));
    std::vector<char32_t> kept;
    kept.reserve(cps.size());
    for (char32_t cp : cps)
        if (!table.strip_set.count(cp)) kept.push_back(cp);
    if (kept.empty())
        throw ValidationError("form '" + form_raw + "' is empty after normalization");
    return utf8::encode(kept);
}

WordlistEntry normalize(const WordlistEntry& entry, const SymbolTable& table) {
    WordlistEntry out = entry;
    out.form_norm = normalize_form(entry.form_raw, table);
    return out;
}

PhonemeSequence tokenize(const std::string& form_norm, const SymbolTable& table) {
    PhonemeSequence segments;
    size_t pos = 0;
    while (pos < form_norm.size()) {
        bool matched = false;
        for (const auto& mg : table.multigraphs) {
            if (form_norm.compare(pos, mg.size(), mg) == 0) {
                segments.push_back(mg);
                pos += mg.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        size_t next = pos;
        const char32_t cp = utf8::decode_one(form_norm, next);
        if (table.combining_marks.count(cp)) {
            if (segments.empty())
                throw ValidationError("combining mark at start of form '" + form_norm +
                                      "' (offset " + std::to_string(pos) + ")");
            segments.back() += form_norm.substr(pos, next - pos);
        } else {
            segments.push_back(form_norm.substr(pos, next - pos));
        }
        pos = next;
    }
    return segments;
}

}  // namespace phonodetect
