#pragma once

#include <map>
#include <string>
#include <vector>

#include "phonodetect/ingest.hpp"

namespace phonodetect {

inline const char* kBoundarySymbol = ".";

// Six-level scale: vowels 5 > glides 4 > liquids 3 > nasals 2 >
// fricatives 1 > stops/affricates 0. Unknown symbols fall back to the
// stop class, so the rank function is total.
struct SonorityScale {
    std::map<std::string, int> class_ranks;      // class name -> rank
    std::map<std::string, std::string> assign;   // symbol -> class
    std::string vowel_class = "vowel";
    std::string fallback_class = "stop";

    static SonorityScale default_scale();
    static SonorityScale load(const std::string& path);  // overrides on top of default

    int rank(const Segment& segment) const;
    bool is_vowel(const Segment& segment) const;

  private:
    const std::string& class_of(const Segment& segment) const;
};

struct SyllabifiedForm {
    std::vector<PhonemeSequence> syllables;

    PhonemeSequence flatten() const;
    size_t size() const { return syllables.size(); }
};

// Nuclei are vowel segments; intervocalic clusters split by maximal
// onset subject to non-decreasing sonority into the nucleus. Throws
// NoNucleusError on vowel-less input.
SyllabifiedForm syllabify(const PhonemeSequence& seq, const SonorityScale& scale);

// Single-syllable fallback for forms syllabify rejects.
SyllabifiedForm whole_form_syllable(const PhonemeSequence& seq);

// Syllable segments interleaved with "."; no leading/trailing marker.
PhonemeSequence with_boundaries(const SyllabifiedForm& form);

}  // namespace phonodetect
