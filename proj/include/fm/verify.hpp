#pragma once

#include "fm/measure.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fm {

// One verification suite's outcome.  Notes carry deterministic,
// human-readable detail (failures always, context lines sometimes); reports
// built from these are byte-stable for a fixed seed/depth/input.
struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;

    bool passed() const { return failures == 0; }
};

SuiteResult verify_measures(const MeasureSum& f, std::uint64_t seed, int depth);
SuiteResult verify_covering(const MeasureSum& f, std::uint64_t seed, int depth);
SuiteResult verify_detachment(const MeasureSum& f, std::uint64_t seed, int depth);
SuiteResult verify_cantor(std::uint64_t seed, int depth);
SuiteResult verify_induction(const MeasureSum& f, std::uint64_t seed, int depth);

std::vector<SuiteResult> verify_all(const MeasureSum& f, std::uint64_t seed, int depth);

// JSON document for a set of suite results; no timestamps or other
// run-varying content.
std::string report_json(const std::vector<SuiteResult>& results, std::uint64_t seed, int depth);

} // namespace fm
