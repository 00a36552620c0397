#include "phonodetect/fixture.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace phonodetect {

namespace {

const std::vector<std::string> kOnsets = {"p", "t", "k", "b", "d", "g", "m", "n",
                                          "s", "h", "l", "r", "w", "j", "tʃ"};
const std::vector<std::string> kVowels = {"a", "i", "u", "o", "e", "ə"};
const std::vector<std::string> kCodas = {"p", "t", "k", "m", "n", "ŋ", "l", "r"};

// Donor inventory: onset clusters and vowels foreign to the recipient
// profile, so borrowings break both segment and syllable statistics.
const std::vector<std::string> kDonorOnsets = {"br", "tr", "kl", "pr", "st", "sn", "dr", "gl"};
const std::vector<std::string> kDonorVowels = {"æ", "ɔ", "e", "i"};
const std::vector<std::string> kDonorCodas = {"f", "z", "ʃ", "x"};

template <typename Rng>
const std::string& pick(const std::vector<std::string>& v, Rng& rng) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

template <typename Rng>
std::string make_native_form(Rng& rng) {
    const int syllables = 1 + std::uniform_int_distribution<int>(0, 1)(rng) +
                          (std::uniform_real_distribution<double>(0, 1)(rng) < 0.2 ? 1 : 0);
    std::string form;
    for (int s = 0; s < syllables; ++s) {
        form += pick(kOnsets, rng);
        form += pick(kVowels, rng);
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.4) form += pick(kCodas, rng);
    }
    return form;
}

template <typename Rng>
std::string make_donor_form(Rng& rng) {
    const int syllables = 1 + std::uniform_int_distribution<int>(0, 1)(rng);
    std::string form;
    for (int s = 0; s < syllables; ++s) {
        form += pick(kDonorOnsets, rng);
        form += pick(kDonorVowels, rng);
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.6) form += pick(kDonorCodas, rng);
    }
    return form;
}

// Adjacent single-byte swap near the start of the form, CV -> VC;
// retried a few positions so the result actually changes.
template <typename Rng>
std::string swap_error(const std::string& form, Rng& rng) {
    // operate on code point boundaries: find ASCII-adjacent pairs
    std::vector<size_t> starts;
    for (size_t i = 0; i < form.size();) {
        starts.push_back(i);
        const auto b = static_cast<unsigned char>(form[i]);
        i += b < 0x80 ? 1 : (b & 0xE0) == 0xC0 ? 2 : (b & 0xF0) == 0xE0 ? 3 : 4;
    }
    if (starts.size() < 2) return form + "q";
    for (int attempt = 0; attempt < 8; ++attempt) {
        const size_t p = std::uniform_int_distribution<size_t>(0, starts.size() - 2)(rng);
        const size_t a = starts[p];
        const size_t b = starts[p + 1];
        const size_t b_end = p + 2 < starts.size() ? starts[p + 2] : form.size();
        std::string swapped = form.substr(0, a) + form.substr(b, b_end - b) +
                              form.substr(a, b - a) + form.substr(b_end);
        if (swapped != form) return swapped;
    }
    return form + "q";
}

}  // namespace

Wordlist make_fixture(const FixtureOptions& opts) {
    std::mt19937_64 concept_rng(opts.seed);
    // shared proto-forms keep varieties mutually similar
    std::vector<std::string> proto(opts.n_concepts);
    std::vector<std::string> donor(opts.n_concepts);
    for (int c = 0; c < opts.n_concepts; ++c) {
        proto[c] = make_native_form(concept_rng);
        donor[c] = make_donor_form(concept_rng);
    }

    Wordlist wl;
    for (int v = 0; v < opts.n_varieties; ++v) {
        const std::string variety_id = "var" + std::string(v < 9 ? "0" : "") + std::to_string(v + 1);
        wl.varieties.push_back(variety_id);
        std::mt19937_64 rng(opts.seed * 1000003ULL + static_cast<uint64_t>(v) + 7);
        for (int c = 0; c < opts.n_concepts; ++c) {
            const std::string concept_id = "c" + std::to_string(c + 1);
            if (v == 0) wl.concepts.push_back(concept_id);
            WordlistEntry e;
            e.concept_id = concept_id;
            e.variety_id = variety_id;
            std::string form = proto[c];
            // mild inter-variety variation
            if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.15) {
                // regenerate one vowel
                for (size_t i = 0; i < form.size(); ++i) {
                    for (const auto& vw : kVowels) {
                        if (form.compare(i, vw.size(), vw) == 0) {
                            form = form.substr(0, i) + pick(kVowels, rng) + form.substr(i + vw.size());
                            i = form.size();
                            break;
                        }
                    }
                }
            }
            const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
            if (roll < opts.anomaly_rate / 2.0) {
                form = donor[c];
                e.gold_label = true;
                e.gold_kind = "borrowing";
            } else if (roll < opts.anomaly_rate) {
                form = swap_error(form, rng);
                e.gold_label = true;
                e.gold_kind = "error";
            } else {
                e.gold_label = false;
            }
            e.form_raw = form;
            e.form_norm = form;
            e.line_no = static_cast<int>(wl.entries.size()) + 2;
            wl.entries.push_back(std::move(e));
        }
    }
    return wl;
}

}  // namespace phonodetect
