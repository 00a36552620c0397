#pragma once

#include <cstdint>

#include "phonodetect/ingest.hpp"

namespace phonodetect {

struct FixtureOptions {
    uint64_t seed = 42;
    int n_varieties = 20;
    int n_concepts = 306;
    double anomaly_rate = 0.05;  // half swaps, half borrowings
};

// Gold-labeled synthetic wordlist: CV(C) pseudo-varieties sharing one
// phonotactic profile, plus planted segment-swap transcription errors
// and cluster-bearing donor-language borrowings.
Wordlist make_fixture(const FixtureOptions& opts = {});

}  // namespace phonodetect
