#pragma once

#include <cstdint>
#include <string>

#include "vqasc/graph.hpp"

namespace vqasc {

// Dataset CSV: header row `f0,...,f{d-1}[,label]`, one row per point.
Dataset load_dataset_csv(const std::string& path);

// Atomic write (temp file + rename); numbers printed with round-trip precision.
void save_dataset_csv(const std::string& path, const Dataset& dataset);

// Draws n points without replacement, output in shuffled order.
Dataset subsample(const Dataset& dataset, int n, std::uint64_t seed);

// Write-then-rename so readers never observe a partial file.
void atomic_write_text(const std::string& path, const std::string& content);

// Round-trip formatting for doubles ("%.17g").
std::string format_double(double value);

}  // namespace vqasc
