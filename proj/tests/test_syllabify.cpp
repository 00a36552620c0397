#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "phonodetect/errors.hpp"
#include "phonodetect/syllabify.hpp"

using namespace phonodetect;

namespace {

// Invariant checks shared by the hand cases and the random sweep.
void check_well_formed(const SyllabifiedForm& form, const PhonemeSequence& original,
                       const SonorityScale& scale) {
    CHECK(form.flatten() == original);
    for (const auto& syl : form.syllables) {
        REQUIRE(!syl.empty());
        int max_rank = -1;
        for (const auto& seg : syl) max_rank = std::max(max_rank, scale.rank(seg));
        int peaks = 0;
        bool peak_is_vowel = false;
        for (const auto& seg : syl)
            if (scale.rank(seg) == max_rank) {
                ++peaks;
                peak_is_vowel = scale.is_vowel(seg);
            }
        CHECK(peaks == 1);
        CHECK(peak_is_vowel);
    }
    // onset legality on non-initial syllables
    for (size_t s = 1; s < form.syllables.size(); ++s) {
        const auto& syl = form.syllables[s];
        size_t nucleus = 0;
        while (nucleus < syl.size() && !scale.is_vowel(syl[nucleus])) ++nucleus;
        for (size_t i = 0; i + 1 < nucleus; ++i)
            CHECK(scale.rank(syl[i]) <= scale.rank(syl[i + 1]));
    }
}

}  // namespace

TEST_CASE("default sonority ranks") {
    const SonorityScale scale = SonorityScale::default_scale();
    CHECK(scale.rank("a") == 5);
    CHECK(scale.rank("j") == 4);
    CHECK(scale.rank("l") == 3);
    CHECK(scale.rank("m") == 2);
    CHECK(scale.rank("s") == 1);
    CHECK(scale.rank("k") == 0);
    CHECK(scale.rank("ʔ") == 0);      // ʔ
    CHECK(scale.rank("tʰ") == 0);     // marked segment falls back to its base
    CHECK(scale.rank("%") == 0);  // unknown symbol falls back, total function
}

TEST_CASE("syllabify bada") {
    const SonorityScale scale = SonorityScale::default_scale();
    const SyllabifiedForm f = syllabify({"b", "a", "d", "a"}, scale);
    REQUIRE(f.size() == 2);
    CHECK(f.syllables[0] == PhonemeSequence{"b", "a"});
    CHECK(f.syllables[1] == PhonemeSequence{"d", "a"});
}

TEST_CASE("single vowel form") {
    const SonorityScale scale = SonorityScale::default_scale();
    const SyllabifiedForm f = syllabify({"a"}, scale);
    REQUIRE(f.size() == 1);
    CHECK(f.syllables[0] == PhonemeSequence{"a"});
}

TEST_CASE("falling-sonority cluster splits m|p") {
    const SonorityScale scale = SonorityScale::default_scale();
    const SyllabifiedForm f = syllabify({"t", "a", "m", "p", "a", "k"}, scale);
    REQUIRE(f.size() == 2);
    CHECK(f.syllables[0] == PhonemeSequence{"t", "a", "m"});
    CHECK(f.syllables[1] == PhonemeSequence{"p", "a", "k"});
}

TEST_CASE("rising cluster is taken whole as onset") {
    const SonorityScale scale = SonorityScale::default_scale();
    // k(0) l(3) rises, so both join the second onset
    const SyllabifiedForm f = syllabify({"a", "k", "l", "a"}, scale);
    REQUIRE(f.size() == 2);
    CHECK(f.syllables[0] == PhonemeSequence{"a"});
    CHECK(f.syllables[1] == PhonemeSequence{"k", "l", "a"});
}

TEST_CASE("vowel-less form raises NoNucleusError") {
    const SonorityScale scale = SonorityScale::default_scale();
    CHECK_THROWS_AS(syllabify({"p", "s", "t"}, scale), NoNucleusError);
    const SyllabifiedForm fallback = whole_form_syllable({"p", "s", "t"});
    CHECK(fallback.size() == 1);
}

TEST_CASE("with_boundaries interleaves dots") {
    SyllabifiedForm f;
    f.syllables = {{"b", "a"}, {"d", "a"}};
    CHECK(with_boundaries(f) == PhonemeSequence{"b", "a", ".", "d", "a"});
    SyllabifiedForm single;
    single.syllables = {{"a"}};
    CHECK(with_boundaries(single) == PhonemeSequence{"a"});
    SyllabifiedForm f2;
    f2.syllables = {{"t", "a", "m"}, {"p", "a", "k"}};
    CHECK(with_boundaries(f2) == PhonemeSequence{"t", "a", "m", ".", "p", "a", "k"});
}

TEST_CASE("invariants hold on random CV(C) strings") {
    const SonorityScale scale = SonorityScale::default_scale();
    const std::vector<std::string> consonants = {"p", "t", "k", "b", "d", "m", "n",
                                                 "s", "h", "l", "r", "w", "j"};
    const std::vector<std::string> vowels = {"a", "e", "i", "o", "u"};
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        PhonemeSequence seq;
        const int syllables = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < syllables; ++s) {
            seq.push_back(consonants[rng() % consonants.size()]);
            if (rng() % 4 == 0) seq.push_back(consonants[rng() % consonants.size()]);
            seq.push_back(vowels[rng() % vowels.size()]);
            if (rng() % 3 == 0) seq.push_back(consonants[rng() % consonants.size()]);
        }
        const SyllabifiedForm f = syllabify(seq, scale);
        check_well_formed(f, seq, scale);
        // boundary count
        size_t dots = 0;
        for (const auto& seg : with_boundaries(f))
            if (seg == kBoundarySymbol) ++dots;
        CHECK(dots == f.size() - 1);
        // determinism
        CHECK(syllabify(seq, scale).flatten() == f.flatten());
    }
}

TEST_CASE("sonority config file overrides the default") {
    const std::string path = "test_sonority.cfg";
    {
        std::ofstream out(path);
        out << "class semivowel 4\nassign w semivowel\nassign q fricative\n";
    }
    const SonorityScale scale = SonorityScale::load(path);
    CHECK(scale.rank("w") == 4);
    CHECK(scale.rank("q") == 1);
    CHECK(scale.rank("a") == 5);  // default untouched
    std::remove(path.c_str());
}
