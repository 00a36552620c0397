#include <doctest.h>

#include <algorithm>
#include <random>

#include "phonodetect/errors.hpp"
#include "phonodetect/eval.hpp"
#include "phonodetect/features.hpp"
#include "phonodetect/fixture.hpp"

using namespace phonodetect;

TEST_CASE("aggregate single element") {
    CHECK(aggregate({2.0}, Aggregation::sum) == std::vector<double>{2.0});
    CHECK(aggregate({2.0}, Aggregation::all) == std::vector<double>{2.0, 2.0, 2.0, 2.0});
}

TEST_CASE("aggregate two elements") {
    const std::vector<double> nlls = {1.0, 3.0};
    CHECK(aggregate(nlls, Aggregation::sum) == std::vector<double>{4.0});
    CHECK(aggregate(nlls, Aggregation::mean) == std::vector<double>{2.0});
    CHECK(aggregate(nlls, Aggregation::min) == std::vector<double>{1.0});
    CHECK(aggregate(nlls, Aggregation::max) == std::vector<double>{3.0});
    CHECK(aggregate(nlls, Aggregation::all) == std::vector<double>{4.0, 2.0, 1.0, 3.0});
}

TEST_CASE("aggregate of empty list is an error") {
    CHECK_THROWS_AS(aggregate({}, Aggregation::sum), ValidationError);
}

TEST_CASE("aggregation is permutation invariant") {
    std::vector<double> nlls = {0.3, 1.7, 0.9, 2.2};
    const auto base = aggregate(nlls, Aggregation::all);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(nlls.begin(), nlls.end(), rng);
        const auto got = aggregate(nlls, Aggregation::all);
        for (size_t j = 0; j < 4; ++j)
            CHECK(got[j] == doctest::Approx(base[j]).epsilon(1e-12));
    }
}

TEST_CASE("grid enumeration counts and first cell") {
    const auto character = enumerate_grid(Setup::character);
    CHECK(character.size() == 30);
    CHECK(character.front().combination.name() == "1");
    CHECK(character.front().aggregation == Aggregation::sum);
    CHECK(enumerate_grid(Setup::syllable).size() == 120);
}

TEST_CASE("dimension formula") {
    FeatureConfig c;
    c.setup = Setup::character;
    c.combination = NgramCombination::parse("3");
    c.aggregation = Aggregation::mean;
    CHECK(c.dimension() == 1);
    c.aggregation = Aggregation::all;
    CHECK(c.dimension() == 4);
    FeatureConfig s;
    s.setup = Setup::syllable;
    s.analysis = Analysis::all;
    s.combination = NgramCombination::parse("1");
    s.aggregation = Aggregation::sum;
    CHECK(s.dimension() == 3);
    s.aggregation = Aggregation::all;
    CHECK(s.dimension() == 12);
}

namespace {

Wordlist tiny_wordlist() {
    return parse_wordlist_text(
        "concept_id\tvariety_id\tform\n"
        "c1\tv1\tbada\n"
        "c2\tv1\ttaka\n"
        "c3\tv1\tmina\n"
        "c4\tv1\tbak\n",
        "tiny");
}

}  // namespace

TEST_CASE("build_vector character setup mean of trigram NLLs") {
    const Wordlist wl = tiny_wordlist();
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    REQUIRE(scopes.size() == 1);
    const ModelSet models = fit_models(scopes[0], Setup::character);

    FeatureConfig cfg;
    cfg.setup = Setup::character;
    cfg.combination = NgramCombination::parse("3");
    cfg.aggregation = Aggregation::mean;
    const FeatureVector fv = build_vector(scopes[0].entries[0], cfg, models);
    REQUIRE(fv.values.size() == 1);

    // oracle: mean of the entry's trigram NLLs computed directly
    const NgramModel& m3 = models.at(3, ExtractionMode::plain);
    const auto grams = extract_ngrams(scopes[0].entries[0].seq, 3);
    double sum = 0.0;
    for (const auto& g : grams) sum += m3.nll(g);
    CHECK(fv.values[0] == doctest::Approx(sum / grams.size()).epsilon(1e-12));
}

TEST_CASE("build_vector dimensions across the syllable grid") {
    const Wordlist wl = tiny_wordlist();
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    const ModelSet models = fit_models(scopes[0], Setup::syllable);
    for (const FeatureConfig& cfg : enumerate_grid(Setup::syllable)) {
        const FeatureVector fv = build_vector(scopes[0].entries[0], cfg, models);
        CHECK(fv.values.size() == cfg.dimension());
        const size_t d = fv.values.size();
        CHECK((d == 1 || d == 3 || d == 4 || d == 12));
        for (double v : fv.values) CHECK(std::isfinite(v));
    }
}

TEST_CASE("monosyllable gets a zero-filled cross-boundary block") {
    const Wordlist wl = tiny_wordlist();
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    const ModelSet models = fit_models(scopes[0], Setup::syllable);
    FeatureConfig cfg;
    cfg.setup = Setup::syllable;
    cfg.analysis = Analysis::cross_boundary;
    cfg.combination = NgramCombination::parse("2");
    cfg.aggregation = Aggregation::sum;
    // entry "bak" is one syllable, so it has no cross-boundary bigrams
    const FeatureVector fv = build_vector(scopes[0].entries[3], cfg, models);
    CHECK(fv.zero_filled);
    CHECK(fv.values == std::vector<double>{0.0});
}

TEST_CASE("character vectors ignore syllabification state") {
    const Wordlist wl = tiny_wordlist();
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    const ModelSet models = fit_models(scopes[0], Setup::character);
    FeatureConfig cfg;
    cfg.setup = Setup::character;
    cfg.combination = NgramCombination::parse("1+2");
    cfg.aggregation = Aggregation::all;
    PreparedEntry broken = scopes[0].entries[0];
    const auto normal = build_vector(broken, cfg, models);
    broken.form = whole_form_syllable(broken.seq);
    broken.syllabified_ok = false;
    CHECK(build_vector(broken, cfg, models).values == normal.values);
}

TEST_CASE("per-order aggregation expands the dimension") {
    const Wordlist wl = tiny_wordlist();
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    const ModelSet models = fit_models(scopes[0], Setup::character);
    FeatureConfig cfg;
    cfg.setup = Setup::character;
    cfg.combination = NgramCombination::parse("2+3");
    cfg.aggregation = Aggregation::all;
    const auto fv = build_vector(scopes[0].entries[0], cfg, models, {.per_order_agg = true});
    CHECK(fv.values.size() == 8);
    CHECK(fv.values.size() == cfg.dimension(true));
}

TEST_CASE("zscore normalizes columns and skips constant ones") {
    std::vector<std::vector<double>> m = {{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}};
    zscore(m);
    double mean = 0.0;
    for (const auto& r : m) mean += r[0];
    CHECK(mean == doctest::Approx(0.0));
    for (const auto& r : m) CHECK(r[1] == 5.0);
}

TEST_CASE("single-gram words give four equal ALL components") {
    FixtureOptions fopts;
    fopts.n_varieties = 1;
    fopts.n_concepts = 40;
    const Wordlist wl = make_fixture(fopts);
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    const ModelSet models = fit_models(scopes[0], Setup::character);
    FeatureConfig cfg;
    cfg.setup = Setup::character;
    cfg.combination = NgramCombination::parse("3");
    cfg.aggregation = Aggregation::all;
    for (const auto& e : scopes[0].entries) {
        if (extract_ngrams(e.seq, 3).size() != 1) continue;
        const auto fv = build_vector(e, cfg, models);
        CHECK(fv.values[0] == fv.values[1]);
        CHECK(fv.values[1] == fv.values[2]);
        CHECK(fv.values[2] == fv.values[3]);
    }
}

TEST_CASE("cached vectors match direct computation across the grid") {
    FixtureOptions fopts;
    fopts.n_varieties = 2;
    fopts.n_concepts = 40;
    const Wordlist wl = make_fixture(fopts);
    const SymbolTable table = SymbolTable::default_table();
    const SonorityScale scale = SonorityScale::default_scale();
    const auto scopes = prepare_scopes(wl, table, scale, false);
    for (const Setup setup : {Setup::character, Setup::syllable}) {
        const ModelSet models = fit_models(scopes[0], setup);
        for (const bool loo : {false, true}) {
            const NllCache cache = build_nll_cache(scopes[0].entries, models, setup, loo);
            for (const auto& cfg : enumerate_grid(setup)) {
                const BuildOptions bopts{.leave_one_out = loo};
                for (size_t r = 0; r < scopes[0].entries.size(); ++r) {
                    const auto& e = scopes[0].entries[r];
                    const auto direct = build_vector(e, cfg, models, bopts);
                    const auto cached =
                        build_vector_cached(cache, r, e.entry_index, cfg, bopts);
                    REQUIRE(cached.values == direct.values);
                    REQUIRE(cached.zero_filled == direct.zero_filled);
                }
            }
        }
    }
}
