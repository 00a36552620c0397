#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "phonodetect/errors.hpp"
#include "phonodetect/ingest.hpp"
#include "phonodetect/utf8.hpp"

using namespace phonodetect;

TEST_CASE("parse 3-row TSV without gold") {
    const std::string tsv =
        "concept_id\tvariety_id\tform\n"
        "c1\tv1\tba\n"
        "c2\tv1\ttaka\n"
        "c3\tv2\tmi\n";
    const Wordlist wl = parse_wordlist_text(tsv, "test");
    REQUIRE(wl.entries.size() == 3);
    for (const auto& e : wl.entries) CHECK(!e.gold_label.has_value());
    CHECK(wl.varieties == std::vector<std::string>{"v1", "v2"});
    CHECK(wl.entries[1].form_raw == "taka");
    CHECK(wl.entries[1].form_norm == "taka");
}

TEST_CASE("gold column parses to labels") {
    const std::string tsv =
        "concept_id\tvariety_id\tform\tgold\n"
        "c1\tv1\tba\t1\n"
        "c2\tv1\tda\t0\n"
        "c3\tv1\tka\t1\n";
    const Wordlist wl = parse_wordlist_text(tsv, "test");
    REQUIRE(wl.entries.size() == 3);
    CHECK(*wl.entries[0].gold_label);
    CHECK_FALSE(*wl.entries[1].gold_label);
    CHECK(*wl.entries[2].gold_label);
}

TEST_CASE("missing form column is a format error naming the column") {
    const std::string tsv = "concept_id\tvariety_id\n" "c1\tv1\n";
    CHECK_THROWS_WITH_AS(parse_wordlist_text(tsv, "test"),
                         doctest::Contains("form"), FormatError);
}

TEST_CASE("duplicate triple and empty form are rejected with line numbers") {
    CHECK_THROWS_WITH_AS(parse_wordlist_text("concept_id\tvariety_id\tform\n"
                                             "c1\tv1\tba\n"
                                             "c1\tv1\tba\n", "t"),
                         doctest::Contains(":3"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_wordlist_text("concept_id\tvariety_id\tform\n"
                                             "c1\tv1\t\n", "t"),
                         doctest::Contains(":2"), ValidationError);
}

TEST_CASE("comments and CRLF are tolerated") {
    const std::string tsv =
        "# survey export\r\n"
        "concept_id\tvariety_id\tform\r\n"
        "c1\tv1\tba\r\n";
    CHECK(parse_wordlist_text(tsv, "t").entries.size() == 1);
}

TEST_CASE("normalize strips the unreleased diacritic") {
    SymbolTable table = SymbolTable::default_table();
    WordlistEntry e;
    e.concept_id = "c";
    e.variety_id = "v";
    e.form_raw = "tak̚";  // tak̚
    CHECK(normalize(e, table).form_norm == "tak");
}

TEST_CASE("normalize with empty strip set is identity") {
    SymbolTable table;
    WordlistEntry e;
    e.concept_id = "c";
    e.variety_id = "v";
    e.form_raw = "ba";
    CHECK(normalize(e, table).form_norm == "ba");
}

TEST_CASE("untouched marks survive normalization") {
    SymbolTable table = SymbolTable::default_table();
    WordlistEntry e;
    e.concept_id = "c";
    e.variety_id = "v";
    e.form_raw = "tsʰaʔ";  // tsʰaʔ
    CHECK(normalize(e, table).form_norm == "tsʰaʔ");
}

TEST_CASE("normalize composes combining marks and is idempotent") {
    SymbolTable table = SymbolTable::default_table();
    WordlistEntry e;
    e.concept_id = "c";
    e.variety_id = "v";
    e.form_raw = "bá";  // a + combining acute
    const WordlistEntry once = normalize(e, table);
    CHECK(once.form_norm == "bá");
    WordlistEntry again = once;
    again.form_raw = once.form_norm;
    CHECK(normalize(again, table).form_norm == once.form_norm);
}

TEST_CASE("entry that is all diacritics fails normalization") {
    SymbolTable table = SymbolTable::default_table();
    WordlistEntry e;
    e.concept_id = "c";
    e.variety_id = "v";
    e.form_raw = "̚";
    CHECK_THROWS_AS(normalize(e, table), ValidationError);
}

TEST_CASE("tokenize single characters") {
    SymbolTable table;
    CHECK(tokenize("ba", table) == PhonemeSequence{"b", "a"});
}

TEST_CASE("tokenize maximal munch on multigraphs") {
    SymbolTable table;
    table.add_multigraph("tsʰ");
    CHECK(tokenize("tsʰa", table) == PhonemeSequence{"tsʰ", "a"});

    SymbolTable table2;
    table2.add_multigraph("tʃʰ");
    table2.add_multigraph("tʃ");
    CHECK(tokenize("tʃa", table2) == PhonemeSequence{"tʃ", "a"});
}

TEST_CASE("combining marks attach to the preceding segment") {
    SymbolTable table = SymbolTable::default_table();
    CHECK(tokenize("tsʰaʔ", table) == PhonemeSequence{"tsʰ", "a", "ʔ"});
    CHECK_THROWS_WITH_AS(tokenize("ʰa", table), doctest::Contains("offset"),
                         ValidationError);
}

TEST_CASE("round-trip: joined segments reproduce the form") {
    SymbolTable table = SymbolTable::default_table();
    std::mt19937_64 rng(7);
    const std::vector<std::string> pieces = {"a", "e", "i", "t", "k", "ts", "tʃ",
                                             "ʔ", "m", "sʰ", "uː"};
    for (int trial = 0; trial < 200; ++trial) {
        std::string form = "t";
        const int len = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < len; ++i) form += pieces[rng() % pieces.size()];
        const PhonemeSequence seq = tokenize(form, table);
        CHECK(join_segments(seq) == form);
        CHECK(tokenize(form, table) == seq);  // determinism
    }
}

TEST_CASE("serialize round-trips the data rows") {
    const std::string tsv =
        "concept_id\tvariety_id\tform\tgold\n"
        "c1\tv1\tba\t1\n"
        "c2\tv1\ttaka\t0\n";
    const Wordlist wl = parse_wordlist_text(tsv, "t");
    CHECK(serialize_wordlist(wl) == tsv);
}

TEST_CASE("symbol table config file") {
    const std::string path = "test_symbols.cfg";
    {
        std::ofstream out(path);
        out << "# comment\nmultigraph ts\nmultigraph tsʰ\nstrip ̚\nmark ʰ\n";
    }
    const SymbolTable t = SymbolTable::load(path);
    REQUIRE(t.multigraphs.size() == 2);
    CHECK(t.multigraphs[0] == "tsʰ");  // longest first
    CHECK(t.strip_set.count(0x031A) == 1);
    CHECK(t.combining_marks.count(0x02B0) == 1);
    std::remove(path.c_str());
}
