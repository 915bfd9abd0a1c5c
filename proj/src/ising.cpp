#include "spinsift/ising.hpp"

#include <algorithm>
#include <thread>

#include "spinsift/errors.hpp"

namespace spinsift {

IsingModel::IsingModel(int n) : n_(n) {
    if (n < 0 || n > 64) throw ValidationError("spin count out of range: " + std::to_string(n));
    h_.assign(static_cast<std::size_t>(n), 0.0);
    j_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
}

std::size_t IsingModel::check_var(int i) const {
    if (i < 0 || i >= n_) throw ValidationError("spin index out of range: " + std::to_string(i));
    return static_cast<std::size_t>(i);
}

std::size_t IsingModel::pair_index(int i, int j) const {
    check_var(i);
    check_var(j);
    if (i > j) std::swap(i, j);
    if (i == j) throw ValidationError("coupling requires distinct spins");
    const auto row_start = static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i + 1) / 2;
    return row_start + static_cast<std::size_t>(j - i - 1);
}

double IsingModel::coupling(int i, int j) const { return j_[pair_index(i, j)]; }
void IsingModel::set_coupling(int i, int j, double v) { j_[pair_index(i, j)] = v; }

int IsingModel::coupling_count() const {
    int count = 0;
    for (double v : j_) count += v != 0.0 ? 1 : 0;
    return count;
}

double IsingModel::diag_energy(std::uint64_t k) const {
    double e = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < n_; ++i) {
        const double zi = (k >> i) & 1u ? -1.0 : 1.0;
        e += h_[static_cast<std::size_t>(i)] * zi;
        for (int j = i + 1; j < n_; ++j, ++p) {
            const double zj = (k >> j) & 1u ? -1.0 : 1.0;
            e += j_[p] * zi * zj;
        }
    }
    return e;
}

IsingModel qubo_to_ising(const QuboModel& m) {
    const double sign = m.sense() == Sense::Maximize ? -1.0 : 1.0;
    IsingModel out(m.n());
    out.score_negated = m.sense() == Sense::Maximize;
    out.offset = sign * m.w0;
    for (int i = 0; i < m.n(); ++i) {
        const double qi = sign * m.linear(i);
        // q_i = (1 - z_i)/2
        out.set_field(i, out.field(i) - qi / 2.0);
        out.offset += qi / 2.0;
        for (int j = i + 1; j < m.n(); ++j) {
            const double qij = sign * m.pair(i, j);
            if (qij == 0.0) continue;
            // q_i q_j = (1 - z_i - z_j + z_i z_j)/4
            out.set_coupling(i, j, qij / 4.0);
            out.set_field(i, out.field(i) - qij / 4.0);
            out.set_field(j, out.field(j) - qij / 4.0);
            out.offset += qij / 4.0;
        }
    }
    return out;
}

namespace {

// Fills energies[a..b) walking basis states in index order. Each index
// increment flips the trailing carry bits, and every single-bit flip updates
// the energy in O(n) via the dense coupling row.
void fill_energy_range(const IsingModel& m, const std::vector<double>& dense_rows, std::uint64_t a, std::uint64_t b,
                       double* energies) {
    const int n = m.n();
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = (a >> i) & 1u ? -1.0 : 1.0;
    double e = m.diag_energy(a);
    energies[a] = e;
    for (std::uint64_t k = a + 1; k < b; ++k) {
        std::uint64_t changed = k ^ (k - 1);
        while (changed) {
            const int t = std::countr_zero(changed);
            changed &= changed - 1;
            const double* row = dense_rows.data() + static_cast<std::size_t>(t) * n;
            double neighbor = 0.0;
            for (int i = 0; i < n; ++i) neighbor += row[i] * z[static_cast<std::size_t>(i)];
            const double zt = z[static_cast<std::size_t>(t)];
            e -= 2.0 * zt * (m.field(t) + neighbor);
            z[static_cast<std::size_t>(t)] = -zt;
        }
        energies[k] = e;
    }
}

}  // namespace

std::vector<double> diag_energy_table(const IsingModel& m) {
    if (m.n() > kEnumerationLimit)
        throw CapacityError("diagonal enumeration limited to " + std::to_string(kEnumerationLimit) + " spins, got " +
                            std::to_string(m.n()));
    const std::uint64_t dim = std::uint64_t{1} << m.n();
    std::vector<double> energies(dim);
    if (m.n() == 0) {
        energies[0] = 0.0;
        return energies;
    }

    // Dense symmetric coupling rows (diagonal zero) for O(n) flip updates.
    const int n = m.n();
    std::vector<double> dense_rows(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = m.coupling(i, j);
            dense_rows[static_cast<std::size_t>(i) * n + j] = v;
            dense_rows[static_cast<std::size_t>(j) * n + i] = v;
        }

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = dim >= (1u << 16) ? std::min<unsigned>(hw, 8) : 1;
    if (workers == 1) {
        fill_energy_range(m, dense_rows, 0, dim, energies.data());
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (dim + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t a = w * chunk;
            const std::uint64_t b = std::min(dim, a + chunk);
            if (a >= b) break;
            pool.emplace_back(fill_energy_range, std::cref(m), std::cref(dense_rows), a, b, energies.data());
        }
        for (auto& t : pool) t.join();
    }
    return energies;
}

}  // namespace spinsift
