#pragma once

#include <cstdint>
#include <vector>

#include "spinsift/qubo.hpp"

namespace spinsift {

// Diagonal spin Hamiltonian
//
//   H = sum_i h[i] Z_i + sum_{i<j} coupling(i,j) Z_i Z_j
//
// over spins z_i in {+1, -1}, with binary variables mapped as q_i = (1 - z_i)/2
// (bit 1 <-> Z eigenvalue -1). `offset` is the constant absorbed during the
// QUBO conversion so that diag_energy(x) + offset equals the QUBO value.
// When the source model maximizes, all coefficients are negated on conversion
// and `score_negated` is set; user-facing scores undo that negation.
class IsingModel {
  public:
    IsingModel() = default;
    explicit IsingModel(int n);

    int n() const { return n_; }

    double offset = 0.0;
    bool score_negated = false;

    double field(int i) const { return h_[check_var(i)]; }
    void set_field(int i, double v) { h_[check_var(i)] = v; }

    double coupling(int i, int j) const;
    void set_coupling(int i, int j, double v);

    const std::vector<double>& fields() const { return h_; }
    const std::vector<double>& couplings() const { return j_; }

    int coupling_count() const;  // pairs with a non-zero coupling

    // Diagonal energy of basis state k (offset excluded).
    double diag_energy(std::uint64_t k) const;

    // User-facing score for an internal energy value (offset applied,
    // sign restored for maximization problems).
    double score(double internal_energy) const {
        const double e = internal_energy + offset;
        return score_negated ? -e : e;
    }

    friend bool operator==(const IsingModel&, const IsingModel&) = default;

  private:
    std::size_t check_var(int i) const;
    std::size_t pair_index(int i, int j) const;

    int n_ = 0;
    std::vector<double> h_;
    std::vector<double> j_;  // packed upper triangle, row-major
};

// Maps a QUBO onto spins via q_i = (1 - z_i)/2. For minimize-sense models,
// diag_energy(spin(x)) + offset == qubo_energy(x) for every bitstring x;
// for maximize-sense models the equality holds against -qubo_energy(x).
IsingModel qubo_to_ising(const QuboModel& m);

// All 2^n diagonal energies, indexed by basis state. Throws CapacityError
// for n > 24. Partitioned across worker threads for larger n.
std::vector<double> diag_energy_table(const IsingModel& m);

inline constexpr int kEnumerationLimit = 24;

}  // namespace spinsift
