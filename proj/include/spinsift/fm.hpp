#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinsift/bitstring.hpp"
#include "spinsift/qubo.hpp"

namespace spinsift {

// Second-order factorization machine
//
//   y(x) = w0 + sum_i w[i] x_i + sum_{i<j} <v[i], v[j]> x_i x_j
//
// with factor vectors v[i] of dimension kappa.
struct FmModel {
    int n = 0;
    int kappa = 8;
    double w0 = 0.0;
    std::vector<double> w;               // n linear weights
    std::vector<std::vector<double>> v;  // n factor vectors of length kappa

    friend bool operator==(const FmModel&, const FmModel&) = default;
};

struct TrainConfig {
    int kappa = 8;
    int epochs = 400;
    double learning_rate = 0.03;
    double init_scale = 0.01;
    std::uint64_t seed = 1;
    double l2 = 0.0;
    double holdout = 0.25;  // fraction held out by fm_train for r_test
};

struct FitReport {
    double train_mse = 0.0;
    std::optional<double> r_train;
    std::optional<double> r_test;  // absent when the split leaves no test rows
    int train_size = 0;
    int test_size = 0;
};

double fm_predict(const FmModel& m, const Bitstring& x);

// Pearson correlation coefficient. Throws when either side is constant.
double pearson_r(std::span<const double> pred, std::span<const double> truth);

// SGD fit on the full sample list (no internal split). Targets are
// standardized internally and the returned model is in original units.
// Deterministic for a fixed (data, cfg).
FmModel fm_fit(const std::vector<Sample>& train, const TrainConfig& cfg);

// Seeded shuffle-split into train/holdout, fit on train, report r on both.
std::pair<FmModel, FitReport> fm_train(const std::vector<Sample>& data, const TrainConfig& cfg);

// Exports Q_ii = w[i], Q_ij = <v[i], v[j]>, constant w0.
QuboModel fm_to_qubo(const FmModel& m);

// Squared prediction error at one sample and its analytic gradient with
// layout [w0, w[0..n), v[0][0..kappa), v[1][...], ...].
double fm_loss(const FmModel& m, const Sample& s);
std::vector<double> fm_loss_gradient(const FmModel& m, const Sample& s);

// Active learning over a labeled pool: seed with all single-kind structures,
// then grow the training set `batch` rows at a time from the 2-kind stratum,
// then 3-, then 4-kind, retraining each round until the held-out correlation
// reaches r_threshold or the pool is exhausted. Batches do not straddle
// stratum boundaries, so a round may add fewer than `batch` rows.
struct LoopResult {
    FmModel model;                  // best round by held-out correlation
    std::vector<FitReport> rounds;  // r_test measured on the pool remainder
};
LoopResult active_learning_loop(const std::vector<Sample>& pool, int batch, double r_threshold,
                                const TrainConfig& cfg);

std::string fm_to_json(const FmModel& m);
FmModel fm_from_json(const std::string& text);
std::string fit_report_to_json(const FitReport& r);

}  // namespace spinsift
