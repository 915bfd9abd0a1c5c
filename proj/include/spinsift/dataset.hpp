#pragma once

#include <string>
#include <vector>

#include "spinsift/bitstring.hpp"

namespace spinsift {

// Labeled bitstring data loaded from CSV. All rows share one bit length.
struct Dataset {
    int n = 0;
    std::vector<Sample> samples;
};

// Reads a CSV with header `bits,target[,aux...]`. Extra columns are ignored.
// Targets must be finite; all bitstrings must have equal length.
Dataset read_dataset_csv(const std::string& path);
Dataset parse_dataset_csv(const std::string& text);

// Writes `bits,target` rows with LF line endings.
void write_dataset_csv(const Dataset& data, const std::string& path);
std::string dataset_to_csv(const Dataset& data);

}  // namespace spinsift
