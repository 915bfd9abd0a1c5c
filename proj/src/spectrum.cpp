#include "spinsift/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinsift/errors.hpp"

namespace spinsift {

namespace {

bool same_level(double level_energy, double e) {
    return e - level_energy <= kDegeneracyTolerance * std::max(1.0, std::abs(level_energy));
}

}  // namespace

SpectrumSlice exact_spectrum(const IsingModel& m, int k) {
    if (k < 1) throw ValidationError("level count must be at least 1");
    const std::vector<double> energies = diag_energy_table(m);  // enforces the capacity bound
    const std::uint64_t dim = energies.size();

    std::vector<std::uint32_t> order(dim);
    std::iota(order.begin(), order.end(), 0u);
    const auto by_energy = [&](std::uint32_t a, std::uint32_t b) {
        return energies[a] != energies[b] ? energies[a] < energies[b] : a < b;
    };

    // Sort only a prefix large enough to cover k levels, growing on demand.
    std::uint64_t sorted = 0;
    const auto ensure_sorted = [&](std::uint64_t upto) {
        if (upto <= sorted) return;
        std::uint64_t target = std::max<std::uint64_t>(64, 4ull * static_cast<std::uint64_t>(k));
        while (target < upto) target *= 4;
        sorted = std::min(dim, target);
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sorted), order.end(), by_energy);
    };

    SpectrumSlice out;
    std::uint64_t pos = 0;
    while (static_cast<int>(out.levels.size()) < k && pos < dim) {
        ensure_sorted(pos + 1);
        SpectrumSlice::Level level;
        level.energy = energies[order[pos]];
        for (; pos < dim; ++pos) {
            ensure_sorted(pos + 1);
            if (!same_level(level.energy, energies[order[pos]])) break;
            level.states.emplace_back(order[pos], m.n());
        }
        out.levels.push_back(std::move(level));
    }
    return out;
}

}  // namespace spinsift
