#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "phonodetect/ingest.hpp"
#include "phonodetect/syllabify.hpp"

namespace phonodetect {

enum class ExtractionMode { plain, within_syllable, cross_boundary, boundary_phoneme };

const char* mode_name(ExtractionMode mode);

inline const char* kPadStart = "<s>";
inline const char* kPadEnd = "</s>";

// One n-gram: n unit symbols.
using Gram = std::vector<Segment>;

std::string gram_key(const Gram& gram);  // '\x1f'-joined internal key
std::string gram_display(const Gram& gram);

// plain accepts a bare sequence; the syllable-aware modes need the
// syllabified form.
std::vector<Gram> extract_ngrams(const PhonemeSequence& seq, int n, bool padding = false);
std::vector<Gram> extract_ngrams(const SyllabifiedForm& form, int n, ExtractionMode mode,
                                 bool padding = false);

struct NgramModel {
    int n = 1;
    ExtractionMode mode = ExtractionMode::plain;
    std::map<std::string, long> counts;             // gram key -> count
    std::set<std::string> vocab;                    // unit symbols
    std::map<std::string, long> total_per_context;  // (n-1)-gram key -> count
    long total_count = 0;                           // all n-gram tokens
    double smoothing_k = 1.0;
    bool padding = false;
    bool joint = false;  // joint-frequency estimator instead of conditional

    size_t vocab_size() const { return vocab.size(); }

    // -log P(last | context) under add-k smoothing with one reserved
    // unseen-symbol slot: P = (c(gram)+k) / (c(context)+k*(V+1)).
    // Natural log. `discount` subtracts held-out counts (leave-one-out).
    double nll(const Gram& gram, const std::map<std::string, long>* discount = nullptr) const;

    std::string serialize_counts() const;  // "<gram>\t<count>" lines
};

struct FitOptions {
    double smoothing_k = 1.0;
    bool padding = false;
    bool joint = false;
};

NgramModel fit(const std::vector<PhonemeSequence>& corpus, int n, FitOptions opts = {});
NgramModel fit(const std::vector<SyllabifiedForm>& corpus, int n, ExtractionMode mode,
               FitOptions opts = {});

// Per-gram counts of one entry, used as a leave-one-out discount.
std::map<std::string, long> entry_discount(const NgramModel& model, const std::vector<Gram>& grams);

// Concatenated NLLs of an entry's n-grams under each order, ascending
// order, extraction order within an order.
std::vector<double> word_nlls(const std::vector<const NgramModel*>& models,
                              const PhonemeSequence& seq, const SyllabifiedForm* form,
                              bool leave_one_out = false);

}  // namespace phonodetect
