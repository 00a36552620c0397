#include "phonodetect/syllabify.hpp"

#include <fstream>
#include <sstream>

#include "phonodetect/errors.hpp"
#include "phonodetect/utf8.hpp"

namespace phonodetect {

SonorityScale SonorityScale::default_scale() {
    SonorityScale s;
    s.class_ranks = {{"vowel", 5}, {"glide", 4}, {"liquid", 3},
                     {"nasal", 2}, {"fricative", 1}, {"stop", 0}};
    auto assign_all = [&s](const char* cls, std::initializer_list<const char*> symbols) {
        for (const char* sym : symbols) s.assign[sym] = cls;
    };
    assign_all("vowel",
               {"a", "e", "i", "o", "u", "y",
                "æ", "ø", "œ",                    // æ ø œ
                "ɑ", "ɒ", "ɔ", "ə", "ɛ",  // ɑ ɒ ɔ ə ɛ
                "ɜ", "ɤ", "ɨ", "ɪ", "ɯ",  // ɜ ɤ ɨ ɪ ɯ
                "ɵ", "ʉ", "ʊ", "ʌ", "ʏ",  // ɵ ʉ ʊ ʌ ʏ
                "ɐ", "ɚ", "ɘ",                      // ɐ ɚ ɘ
                // precomposed accented vowels (tone marks)
                "á", "à", "â", "ǎ", "ã", "ā",
                "é", "è", "ê", "ě", "ẽ", "ē",
                "í", "ì", "î", "ǐ", "ĩ", "ī",
                "ó", "ò", "ô", "ǒ", "õ", "ō",
                "ú", "ù", "û", "ǔ", "ũ", "ū"});
    assign_all("glide", {"j", "w", "ɥ", "ɰ"});                    // ɥ ɰ
    assign_all("liquid", {"l", "r", "ɾ", "ɹ", "ɻ",           // ɾ ɹ ɻ
                          "ɭ", "ʎ", "ʀ"});                   // ɭ ʎ ʀ
    assign_all("nasal", {"m", "n", "ŋ", "ɲ", "ɳ", "ɱ"});  // ŋ ɲ ɳ ɱ
    assign_all("fricative", {"f", "v", "s", "z", "x", "h",
                             "ʃ", "ʒ", "θ", "ð",        // ʃ ʒ θ ð
                             "ɣ", "ç", "ʂ", "ʐ",        // ɣ ç ʂ ʐ
                             "ɦ", "β", "ɸ", "ʋ"});      // ɦ β ɸ ʋ
    assign_all("stop", {"p", "b", "t", "d", "k", "g", "q", "c",
                        "ɡ", "ʔ", "ɟ", "ʈ", "ɖ",   // ɡ ʔ ɟ ʈ ɖ
                        "ts", "dz", "tʃ", "dʒ"});
    return s;
}

SonorityScale SonorityScale::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sonority config: " + path);
    SonorityScale s = default_scale();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string directive;
        ss >> directive;
        if (directive == "class") {
            std::string name;
            int rank;
            if (!(ss >> name >> rank))
                throw FormatError(path + ":" + std::to_string(line_no) + ": expected 'class <name> <rank>'");
            s.class_ranks[name] = rank;
        } else if (directive == "assign") {
            std::string symbol, cls;
            if (!(ss >> symbol >> cls))
                throw FormatError(path + ":" + std::to_string(line_no) + ": expected 'assign <symbol> <class>'");
            s.assign[symbol] = cls;
        } else {
            throw FormatError(path + ":" + std::to_string(line_no) + ": unknown directive '" + directive + "'");
        }
    }
    return s;
}

const std::string& SonorityScale::class_of(const Segment& segment) const {
    auto it = assign.find(segment);
    if (it != assign.end()) return it->second;
    // Marked segment: classify by the bare base character.
    size_t pos = 0;
    const char32_t base = utf8::decode_one(segment, pos);
    it = assign.find(utf8::encode_one(base));
    if (it != assign.end()) return it->second;
    return fallback_class;
}

int SonorityScale::rank(const Segment& segment) const {
    auto it = class_ranks.find(class_of(segment));
    if (it != class_ranks.end()) return it->second;
    return class_ranks.at(fallback_class);
}

bool SonorityScale::is_vowel(const Segment& segment) const {
    return class_of(segment) == vowel_class;
}

PhonemeSequence SyllabifiedForm::flatten() const {
    PhonemeSequence out;
    for (const auto& syl : syllables) out.insert(out.end(), syl.begin(), syl.end());
    return out;
}

SyllabifiedForm whole_form_syllable(const PhonemeSequence& seq) {
    SyllabifiedForm f;
    f.syllables.push_back(seq);
    return f;
}

SyllabifiedForm syllabify(const PhonemeSequence& seq, const SonorityScale& scale) {
    if (seq.empty()) throw ValidationError("cannot syllabify empty sequence");
    std::vector<size_t> nuclei;
    for (size_t i = 0; i < seq.size(); ++i)
        if (scale.is_vowel(seq[i])) nuclei.push_back(i);
    if (nuclei.empty()) throw NoNucleusError(join_segments(seq));

    // Split point inside each intervocalic cluster: the longest suffix
    // with non-decreasing sonority becomes the next onset.
    std::vector<size_t> starts;  // start index of each syllable
    starts.push_back(0);
    for (size_t v = 0; v + 1 < nuclei.size(); ++v) {
        const size_t lo = nuclei[v] + 1;        // first consonant of cluster
        const size_t hi = nuclei[v + 1];        // next nucleus
        size_t onset_start = hi;
        while (onset_start > lo) {
            const bool extends = onset_start == hi ||
                                 scale.rank(seq[onset_start - 1]) <= scale.rank(seq[onset_start]);
            if (!extends) break;
            --onset_start;
        }
        starts.push_back(onset_start);
    }

    SyllabifiedForm form;
    for (size_t s = 0; s < starts.size(); ++s) {
        const size_t end = (s + 1 < starts.size()) ? starts[s + 1] : seq.size();
        form.syllables.emplace_back(seq.begin() + starts[s], seq.begin() + end);
    }
    return form;
}

PhonemeSequence with_boundaries(const SyllabifiedForm& form) {
    PhonemeSequence out;
    for (size_t i = 0; i < form.syllables.size(); ++i) {
        if (i > 0) out.push_back(kBoundarySymbol);
        out.insert(out.end(), form.syllables[i].begin(), form.syllables[i].end());
    }
    return out;
}

}  // namespace phonodetect
