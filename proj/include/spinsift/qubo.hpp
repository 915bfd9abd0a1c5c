#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinsift/bitstring.hpp"

namespace spinsift {

enum class Sense { Minimize, Maximize };

std::string sense_name(Sense s);
Sense sense_from_name(std::string_view name);

// Quadratic model over binary variables:
//
//   E(q) = w0 + sum_i linear[i] q_i + sum_{i<j} pair(i,j) q_i q_j
//
// Pairwise coefficients are stored packed for i<j only.
class QuboModel {
  public:
    QuboModel() = default;
    explicit QuboModel(int n, Sense sense = Sense::Minimize);

    int n() const { return n_; }
    Sense sense() const { return sense_; }
    void set_sense(Sense s) { sense_ = s; }

    double w0 = 0.0;

    double linear(int i) const { return linear_[check_var(i)]; }
    void set_linear(int i, double v) { linear_[check_var(i)] = v; }

    double pair(int i, int j) const;
    void set_pair(int i, int j, double v);

    const std::vector<double>& linear_terms() const { return linear_; }
    const std::vector<double>& pair_terms() const { return pair_; }

    friend bool operator==(const QuboModel&, const QuboModel&) = default;

  private:
    std::size_t check_var(int i) const;
    std::size_t pair_index(int i, int j) const;

    int n_ = 0;
    Sense sense_ = Sense::Minimize;
    std::vector<double> linear_;
    std::vector<double> pair_;  // packed upper triangle, row-major
};

// Evaluates the model at x. Throws on length mismatch.
double qubo_energy(const QuboModel& m, const Bitstring& x);

// JSON document with fields n, w0, linear, quadratic ([i, j, value] triples), sense.
std::string qubo_to_json(const QuboModel& m);
QuboModel qubo_from_json(const std::string& text);
QuboModel load_qubo(const std::string& path);
void save_qubo(const QuboModel& m, const std::string& path);

}  // namespace spinsift
