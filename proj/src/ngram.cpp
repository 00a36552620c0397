#include "phonodetect/ngram.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "phonodetect/errors.hpp"

namespace phonodetect {

const char* mode_name(ExtractionMode mode) {
    switch (mode) {
        case ExtractionMode::plain: return "plain";
        case ExtractionMode::within_syllable: return "within_syllable";
        case ExtractionMode::cross_boundary: return "cross_boundary";
        case ExtractionMode::boundary_phoneme: return "boundary_phoneme";
    }
    return "?";
}

std::string gram_key(const Gram& gram) {
    std::string key;
    for (size_t i = 0; i < gram.size(); ++i) {
        if (i > 0) key += '\x1f';
        key += gram[i];
    }
    return key;
}

std::string gram_display(const Gram& gram) {
    std::string out;
    for (size_t i = 0; i < gram.size(); ++i) {
        if (i > 0) out += ' ';
        out += gram[i];
    }
    return out;
}

namespace {

void windows(const PhonemeSequence& units, int n, std::vector<Gram>& out) {
    if (n < 1 || units.size() < static_cast<size_t>(n)) return;
    for (size_t i = 0; i + n <= units.size(); ++i)
        out.emplace_back(units.begin() + i, units.begin() + i + n);
}

PhonemeSequence padded(const PhonemeSequence& units, int n) {
    PhonemeSequence out;
    for (int i = 0; i < n - 1; ++i) out.push_back(kPadStart);
    out.insert(out.end(), units.begin(), units.end());
    for (int i = 0; i < n - 1; ++i) out.push_back(kPadEnd);
    return out;
}

}  // namespace

std::vector<Gram> extract_ngrams(const PhonemeSequence& seq, int n, bool padding) {
    std::vector<Gram> out;
    if (padding && n > 1)
        windows(padded(seq, n), n, out);
    else
        windows(seq, n, out);
    return out;
}

std::vector<Gram> extract_ngrams(const SyllabifiedForm& form, int n, ExtractionMode mode,
                                 bool padding) {
    std::vector<Gram> out;
    switch (mode) {
        case ExtractionMode::plain:
            return extract_ngrams(form.flatten(), n, padding);
        case ExtractionMode::within_syllable:
            for (const auto& syl : form.syllables) {
                if (padding && n > 1)
                    windows(padded(syl, n), n, out);
                else
                    windows(syl, n, out);
            }
            return out;
        case ExtractionMode::cross_boundary: {
            const PhonemeSequence flat = form.flatten();
            std::vector<size_t> boundaries;  // position b: boundary between flat[b-1], flat[b]
            size_t acc = 0;
            for (size_t s = 0; s + 1 < form.syllables.size(); ++s) {
                acc += form.syllables[s].size();
                boundaries.push_back(acc);
            }
            if (n < 1 || flat.size() < static_cast<size_t>(n)) return out;
            for (size_t i = 0; i + n <= flat.size(); ++i) {
                bool covers = false;
                for (size_t b : boundaries)
                    if (b > i && b <= i + n - 1) {
                        covers = true;
                        break;
                    }
                if (covers) out.emplace_back(flat.begin() + i, flat.begin() + i + n);
            }
            return out;
        }
        case ExtractionMode::boundary_phoneme: {
            const PhonemeSequence units = with_boundaries(form);
            if (padding && n > 1)
                windows(padded(units, n), n, out);
            else
                windows(units, n, out);
            return out;
        }
    }
    return out;
}

namespace {

NgramModel fit_impl(int n, ExtractionMode mode, FitOptions opts,
                    const std::vector<std::vector<Gram>>& per_entry_grams,
                    const std::vector<PhonemeSequence>& vocab_sources) {
    NgramModel m;
    m.n = n;
    m.mode = mode;
    m.smoothing_k = opts.smoothing_k;
    m.padding = opts.padding;
    m.joint = opts.joint;
    for (const auto& grams : per_entry_grams) {
        for (const auto& g : grams) {
            ++m.counts[gram_key(g)];
            ++m.total_count;
            if (n > 1) ++m.total_per_context[gram_key(Gram(g.begin(), g.end() - 1))];
        }
    }
    for (const auto& units : vocab_sources)
        for (const auto& u : units) m.vocab.insert(u);
    if (m.total_count == 0)
        throw ValidationError(std::string("degenerate model: corpus yields no ") +
                              std::to_string(n) + "-grams under mode " + mode_name(mode));
    return m;
}

}  // namespace

NgramModel fit(const std::vector<PhonemeSequence>& corpus, int n, FitOptions opts) {
    if (corpus.empty()) throw ValidationError("cannot fit n-gram model on empty corpus");
    std::vector<std::vector<Gram>> grams;
    std::vector<PhonemeSequence> vocab_sources;
    for (const auto& seq : corpus) {
        grams.push_back(extract_ngrams(seq, n, opts.padding));
        vocab_sources.push_back(opts.padding && n > 1 ? padded(seq, n) : seq);
    }
    return fit_impl(n, ExtractionMode::plain, opts, grams, vocab_sources);
}

NgramModel fit(const std::vector<SyllabifiedForm>& corpus, int n, ExtractionMode mode,
               FitOptions opts) {
    if (corpus.empty()) throw ValidationError("cannot fit n-gram model on empty corpus");
    std::vector<std::vector<Gram>> grams;
    std::vector<PhonemeSequence> vocab_sources;
    for (const auto& form : corpus) {
        grams.push_back(extract_ngrams(form, n, mode, opts.padding));
        switch (mode) {
            case ExtractionMode::plain:
            case ExtractionMode::cross_boundary:
                // pads never appear in cross-boundary windows
                vocab_sources.push_back(form.flatten());
                break;
            case ExtractionMode::within_syllable:
                // pad symbols excluded from the within-syllable vocab
                vocab_sources.push_back(form.flatten());
                break;
            case ExtractionMode::boundary_phoneme: {
                PhonemeSequence units = with_boundaries(form);
                if (opts.padding && n > 1) units = padded(units, n);
                vocab_sources.push_back(std::move(units));
                break;
            }
        }
    }
    if (mode == ExtractionMode::plain && opts.padding && n > 1)
        for (auto& v : vocab_sources) v = padded(v, n);
    return fit_impl(n, mode, opts, grams, vocab_sources);
}

double NgramModel::nll(const Gram& gram, const std::map<std::string, long>* discount) const {
    if (static_cast<int>(gram.size()) != n)
        throw UsageError("n-gram length " + std::to_string(gram.size()) +
                         " does not match model order " + std::to_string(n));
    const std::string key = gram_key(gram);
    auto count_of = [this](const std::string& k) {
        auto it = counts.find(k);
        return it == counts.end() ? 0L : it->second;
    };
    long c = count_of(key);
    long denom_count;
    if (joint) {
        denom_count = total_count;
    } else if (n == 1) {
        denom_count = total_count;
    } else {
        const std::string ctx = gram_key(Gram(gram.begin(), gram.end() - 1));
        auto it = total_per_context.find(ctx);
        denom_count = it == total_per_context.end() ? 0L : it->second;
    }
    if (discount) {
        auto dit = discount->find(key);
        if (dit != discount->end()) c -= dit->second;
        if (joint || n == 1) {
            for (const auto& [k, v] : *discount) denom_count -= v;
        } else {
            const std::string ctx_prefix = gram_key(Gram(gram.begin(), gram.end() - 1)) + '\x1f';
            for (const auto& [k, v] : *discount)
                if (k.size() > ctx_prefix.size() && k.compare(0, ctx_prefix.size(), ctx_prefix) == 0)
                    denom_count -= v;
        }
        if (c < 0) c = 0;
        if (denom_count < 0) denom_count = 0;
    }
    const double k = smoothing_k;
    const double V = static_cast<double>(vocab.size());
    const double p_num = static_cast<double>(c) + k;
    const double p_den = static_cast<double>(denom_count) + k * (V + 1.0);
    if (p_num <= 0.0 || p_den <= 0.0) return std::numeric_limits<double>::infinity();
    const double nll = -std::log(p_num / p_den);
    return nll < 0.0 ? 0.0 : nll;
}

std::string NgramModel::serialize_counts() const {
    std::ostringstream ss;
    for (const auto& [key, count] : counts) {
        std::string display = key;
        for (char& ch : display)
            if (ch == '\x1f') ch = ' ';
        ss << display << '\t' << count << '\n';
    }
    return ss.str();
}

std::map<std::string, long> entry_discount(const NgramModel&, const std::vector<Gram>& grams) {
    std::map<std::string, long> d;
    for (const auto& g : grams) ++d[gram_key(g)];
    return d;
}

std::vector<double> word_nlls(const std::vector<const NgramModel*>& models,
                              const PhonemeSequence& seq, const SyllabifiedForm* form,
                              bool leave_one_out) {
    std::vector<double> out;
    for (const NgramModel* model : models) {
        std::vector<Gram> grams;
        if (model->mode == ExtractionMode::plain) {
            grams = extract_ngrams(seq, model->n, model->padding);
        } else {
            if (form == nullptr)
                throw UsageError(std::string("mode ") + mode_name(model->mode) +
                                 " requires a syllabified form");
            grams = extract_ngrams(*form, model->n, model->mode, model->padding);
        }
        std::map<std::string, long> discount;
        if (leave_one_out) discount = entry_discount(*model, grams);
        for (const auto& g : grams)
            out.push_back(model->nll(g, leave_one_out ? &discount : nullptr));
    }
    return out;
}

}  // namespace phonodetect
