#pragma once

#include <vector>

#include "spinsift/bitstring.hpp"
#include "spinsift/ising.hpp"

namespace spinsift {

// The lowest part of a diagonal spectrum: energy levels in strictly
// increasing order, each carrying every basis state of that energy.
struct SpectrumSlice {
    struct Level {
        double energy = 0.0;  // internal energy, offset excluded
        std::vector<Bitstring> states;
    };
    std::vector<Level> levels;
};

// Relative tolerance for grouping degenerate states into one level.
inline constexpr double kDegeneracyTolerance = 1e-12;

// The k lowest distinct energy levels of m, found by evaluating all 2^n
// diagonal energies. Levels hold states in ascending index order. Returns
// fewer than k levels only when the spectrum has fewer distinct energies.
SpectrumSlice exact_spectrum(const IsingModel& m, int k);

}  // namespace spinsift
