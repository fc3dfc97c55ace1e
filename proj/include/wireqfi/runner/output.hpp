#pragma once

// CSV and JSON emission for sweep results. CSV cells use 17 significant
// digits so reruns and different worker counts produce bitwise-identical
// bodies whenever the underlying tables match.

#include <cstdint>
#include <string>
#include <vector>

#include "wireqfi/runner/checks.hpp"
#include "wireqfi/runner/engine.hpp"

namespace wireqfi::output {

// Shortest-exact-ish fixed formatting: %.17g, NaN spelled "nan".
std::string format_cell(Real v);

// FNV-1a over the raw config text; hex-encoded to 16 chars.
std::uint64_t fnv1a64(const std::string& text);
std::string config_hash(const std::string& text);

void write_csv(const std::string& dir, const runner::SweepResult& sweep);

void write_summary(const std::string& dir, const runner::RunResult& run,
                   const std::vector<checks::CheckResult>& check_results);

void write_manifest(const std::string& dir, const std::string& config_text,
                    int workers, const runner::RunResult& run);

}  // namespace wireqfi::output
