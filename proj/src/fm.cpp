#include "spinsift/fm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "spinsift/errors.hpp"
#include "spinsift/rng.hpp"

namespace spinsift {

using json = nlohmann::json;

namespace {

void check_model(const FmModel& m) {
    if (m.n < 0 || m.kappa < 1) throw ValidationError("bad factorization machine shape");
    if (static_cast<int>(m.w.size()) != m.n || static_cast<int>(m.v.size()) != m.n)
        throw ValidationError("factorization machine weight arrays do not match n");
}

// Per-factor sums s_f = sum_i v[i][f] x_i, the workhorse of both prediction
// and gradients.
void factor_sums(const FmModel& m, const Bitstring& x, std::vector<double>& s) {
    s.assign(static_cast<std::size_t>(m.kappa), 0.0);
    for (int i = 0; i < m.n; ++i) {
        if (!x.bit(i)) continue;
        const auto& vi = m.v[static_cast<std::size_t>(i)];
        for (int f = 0; f < m.kappa; ++f) s[static_cast<std::size_t>(f)] += vi[static_cast<std::size_t>(f)];
    }
}

double predict_with_sums(const FmModel& m, const Bitstring& x, const std::vector<double>& s) {
    double y = m.w0;
    double square_terms = 0.0;
    for (int i = 0; i < m.n; ++i) {
        if (!x.bit(i)) continue;
        y += m.w[static_cast<std::size_t>(i)];
        const auto& vi = m.v[static_cast<std::size_t>(i)];
        for (int f = 0; f < m.kappa; ++f)
            square_terms += vi[static_cast<std::size_t>(f)] * vi[static_cast<std::size_t>(f)];
    }
    double pair_terms = 0.0;
    for (int f = 0; f < m.kappa; ++f) pair_terms += s[static_cast<std::size_t>(f)] * s[static_cast<std::size_t>(f)];
    return y + 0.5 * (pair_terms - square_terms);
}

struct Standardizer {
    double mean = 0.0;
    double scale = 1.0;  // 1 when targets are (near-)constant
};

Standardizer standardizer_for(const std::vector<Sample>& data) {
    Standardizer st;
    for (const Sample& s : data) st.mean += s.y;
    st.mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (const Sample& s : data) var += (s.y - st.mean) * (s.y - st.mean);
    var /= static_cast<double>(data.size());
    const double sd = std::sqrt(var);
    st.scale = sd > 1e-12 ? sd : 1.0;
    return st;
}

}  // namespace

double fm_predict(const FmModel& m, const Bitstring& x) {
    check_model(m);
    if (x.size() != m.n)
        throw ValidationError("bitstring length " + std::to_string(x.size()) + " does not match model size " +
                              std::to_string(m.n));
    std::vector<double> s;
    factor_sums(m, x, s);
    return predict_with_sums(m, x, s);
}

double pearson_r(std::span<const double> pred, std::span<const double> truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw ValidationError("correlation requires two equal-length non-empty series");
    const double n = static_cast<double>(pred.size());
    double mp = 0.0, mt = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        mp += pred[i];
        mt += truth[i];
    }
    mp /= n;
    mt /= n;
    double spt = 0.0, spp = 0.0, stt = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double dp = pred[i] - mp;
        const double dt = truth[i] - mt;
        spt += dp * dt;
        spp += dp * dp;
        stt += dt * dt;
    }
    if (spp <= 0.0 || stt <= 0.0) throw ValidationError("correlation undefined for constant input");
    return std::clamp(spt / std::sqrt(spp * stt), -1.0, 1.0);
}

FmModel fm_fit(const std::vector<Sample>& train, const TrainConfig& cfg) {
    if (train.empty()) throw ValidationError("training set is empty");
    if (cfg.kappa < 1 || cfg.epochs < 1 || cfg.learning_rate <= 0.0)
        throw ValidationError("bad training configuration");
    const int n = train.front().x.size();
    for (const Sample& s : train) {
        if (s.x.size() != n) throw ValidationError("training samples have inconsistent bit lengths");
        if (!std::isfinite(s.y)) throw ValidationError("non-finite training target");
    }

    const Standardizer st = standardizer_for(train);

    FmModel m;
    m.n = n;
    m.kappa = cfg.kappa;
    m.w0 = 0.0;  // standardized target mean
    m.w.assign(static_cast<std::size_t>(n), 0.0);
    m.v.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(cfg.kappa), 0.0));
    Rng rng(cfg.seed);
    for (auto& vi : m.v)
        for (double& vif : vi) vif = rng.uniform(-cfg.init_scale, cfg.init_scale);

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> s(static_cast<std::size_t>(cfg.kappa));

    const double lr = cfg.learning_rate;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (const std::size_t idx : order) {
            const Sample& row = train[idx];
            const double y = (row.y - st.mean) / st.scale;
            factor_sums(m, row.x, s);
            const double err = predict_with_sums(m, row.x, s) - y;
            const double g = 2.0 * err;
            m.w0 -= lr * g;
            for (int i = 0; i < n; ++i) {
                if (!row.x.bit(i)) continue;
                auto& wi = m.w[static_cast<std::size_t>(i)];
                wi -= lr * (g + 2.0 * cfg.l2 * wi);
                auto& vi = m.v[static_cast<std::size_t>(i)];
                for (int f = 0; f < cfg.kappa; ++f) {
                    auto& vif = vi[static_cast<std::size_t>(f)];
                    const double grad = g * (s[static_cast<std::size_t>(f)] - vif) + 2.0 * cfg.l2 * vif;
                    const double updated = vif - lr * grad;
                    s[static_cast<std::size_t>(f)] += updated - vif;  // keep sums in sync
                    vif = updated;
                }
            }
        }
    }

    // Back to original units: y = mean + scale * y'.
    m.w0 = st.mean + st.scale * m.w0;
    const double root = std::sqrt(st.scale);
    for (auto& wi : m.w) wi *= st.scale;
    for (auto& vi : m.v)
        for (double& vif : vi) vif *= root;

    for (const double wi : m.w)
        if (!std::isfinite(wi)) throw NumericalError("training diverged (non-finite weights); lower the learning rate");
    return m;
}

std::pair<FmModel, FitReport> fm_train(const std::vector<Sample>& data, const TrainConfig& cfg) {
    if (data.empty()) throw ValidationError("training set is empty");
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(Rng::mix(cfg.seed, 0x5eed0011ULL));
    rng.shuffle(order);
    const auto test_size = static_cast<std::size_t>(std::floor(cfg.holdout * static_cast<double>(data.size())));
    std::vector<Sample> train, test;
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < test_size ? test : train).push_back(data[order[i]]);

    const FmModel m = fm_fit(train, cfg);

    FitReport report;
    report.train_size = static_cast<int>(train.size());
    report.test_size = static_cast<int>(test.size());
    const auto evaluate = [&](const std::vector<Sample>& rows, std::optional<double>& r_out) -> double {
        std::vector<double> pred(rows.size()), truth(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            pred[i] = fm_predict(m, rows[i].x);
            truth[i] = rows[i].y;
        }
        double mse = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) mse += (pred[i] - truth[i]) * (pred[i] - truth[i]);
        mse = rows.empty() ? 0.0 : mse / static_cast<double>(rows.size());
        try {
            if (rows.size() >= 2) r_out = pearson_r(pred, truth);
        } catch (const ValidationError&) {
            // constant block: correlation stays unset
        }
        return mse;
    };
    report.train_mse = evaluate(train, report.r_train);
    if (!test.empty()) {
        std::optional<double> r;
        evaluate(test, r);
        report.r_test = r;
    }
    return {m, report};
}

QuboModel fm_to_qubo(const FmModel& m) {
    check_model(m);
    QuboModel q(m.n);
    q.w0 = m.w0;
    for (int i = 0; i < m.n; ++i) {
        q.set_linear(i, m.w[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < m.n; ++j) {
            double dot = 0.0;
            for (int f = 0; f < m.kappa; ++f)
                dot += m.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] *
                       m.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(f)];
            q.set_pair(i, j, dot);
        }
    }
    return q;
}

double fm_loss(const FmModel& m, const Sample& s) {
    const double e = fm_predict(m, s.x) - s.y;
    return e * e;
}

std::vector<double> fm_loss_gradient(const FmModel& m, const Sample& sample) {
    check_model(m);
    std::vector<double> s;
    factor_sums(m, sample.x, s);
    const double g = 2.0 * (predict_with_sums(m, sample.x, s) - sample.y);
    std::vector<double> grad(1 + static_cast<std::size_t>(m.n) * (1 + static_cast<std::size_t>(m.kappa)), 0.0);
    grad[0] = g;
    for (int i = 0; i < m.n; ++i) {
        if (!sample.x.bit(i)) continue;
        grad[1 + static_cast<std::size_t>(i)] = g;
        const auto& vi = m.v[static_cast<std::size_t>(i)];
        for (int f = 0; f < m.kappa; ++f) {
            const auto slot = 1 + static_cast<std::size_t>(m.n) + static_cast<std::size_t>(i) * m.kappa +
                              static_cast<std::size_t>(f);
            grad[slot] = g * (s[static_cast<std::size_t>(f)] - vi[static_cast<std::size_t>(f)]);
        }
    }
    return grad;
}

LoopResult active_learning_loop(const std::vector<Sample>& pool, int batch, double r_threshold,
                                const TrainConfig& cfg) {
    if (batch < 1) throw ValidationError("batch must be at least 1");
    if (pool.empty()) throw ValidationError("pool is empty");

    // Strata by number of distinct group kinds in the structure.
    std::vector<std::vector<std::size_t>> strata(5);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const int kinds = group_kind_count(pool[i].x);
        strata[static_cast<std::size_t>(kinds)].push_back(i);
    }
    if (strata[1].empty()) throw ValidationError("pool has no single-kind seed structures");

    std::vector<std::size_t> training = strata[1];
    if (training.size() >= pool.size()) throw ValidationError("pool is no larger than the seed set");

    // Shuffle each addition stratum once; rounds then consume prefixes.
    Rng rng(Rng::mix(cfg.seed, 0xa100b5ULL));
    for (int kinds = 2; kinds <= 4; ++kinds) rng.shuffle(strata[static_cast<std::size_t>(kinds)]);

    std::vector<char> in_training(pool.size(), 0);
    for (const std::size_t i : training) in_training[i] = 1;

    LoopResult out;
    double best_r = -2.0;
    int stratum = 2;
    std::size_t stratum_pos = 0;
    for (;;) {
        std::vector<Sample> train_rows;
        train_rows.reserve(training.size());
        for (const std::size_t i : training) train_rows.push_back(pool[i]);
        const FmModel model = fm_fit(train_rows, cfg);

        FitReport report;
        report.train_size = static_cast<int>(train_rows.size());
        {
            std::vector<double> pred(train_rows.size()), truth(train_rows.size());
            for (std::size_t i = 0; i < train_rows.size(); ++i) {
                pred[i] = fm_predict(model, train_rows[i].x);
                truth[i] = train_rows[i].y;
            }
            double mse = 0.0;
            for (std::size_t i = 0; i < pred.size(); ++i) mse += (pred[i] - truth[i]) * (pred[i] - truth[i]);
            report.train_mse = mse / static_cast<double>(pred.size());
            try {
                report.r_train = pearson_r(pred, truth);
            } catch (const ValidationError&) {
            }
        }
        std::vector<double> pred, truth;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (in_training[i]) continue;
            pred.push_back(fm_predict(model, pool[i].x));
            truth.push_back(pool[i].y);
        }
        report.test_size = static_cast<int>(pred.size());
        if (pred.size() >= 2) {
            try {
                report.r_test = pearson_r(pred, truth);
            } catch (const ValidationError&) {
            }
        }
        out.rounds.push_back(report);

        const double r = report.r_test.value_or(-1.0);
        if (r > best_r) {
            best_r = r;
            out.model = model;
        }
        if (r >= r_threshold) break;

        // Next batch from the lowest unexhausted stratum; never straddle.
        while (stratum <= 4 && stratum_pos >= strata[static_cast<std::size_t>(stratum)].size()) {
            ++stratum;
            stratum_pos = 0;
        }
        if (stratum > 4) break;  // pool exhausted
        const auto& source = strata[static_cast<std::size_t>(stratum)];
        const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(batch), source.size() - stratum_pos);
        for (std::size_t t = 0; t < take; ++t) {
            const std::size_t idx = source[stratum_pos + t];
            training.push_back(idx);
            in_training[idx] = 1;
        }
        stratum_pos += take;
        if (training.size() >= pool.size()) {
            // nothing left to score against; final report already recorded
            break;
        }
    }
    return out;
}

std::string fm_to_json(const FmModel& m) {
    const json doc = {{"n", m.n}, {"kappa", m.kappa}, {"w0", m.w0}, {"w", m.w}, {"v", m.v}};
    return doc.dump(2);
}

FmModel fm_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        FmModel m;
        m.n = doc.at("n").get<int>();
        m.kappa = doc.at("kappa").get<int>();
        m.w0 = doc.at("w0").get<double>();
        m.w = doc.at("w").get<std::vector<double>>();
        m.v = doc.at("v").get<std::vector<std::vector<double>>>();
        check_model(m);
        for (const auto& vi : m.v)
            if (static_cast<int>(vi.size()) != m.kappa) throw ValidationError("factor vector length differs from kappa");
        return m;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid factorization machine JSON: ") + e.what());
    }
}

std::string fit_report_to_json(const FitReport& r) {
    json doc = {{"train_mse", r.train_mse},
                {"train_size", r.train_size},
                {"test_size", r.test_size},
                {"r_train", nullptr},
                {"r_test", nullptr}};
    if (r.r_train) doc["r_train"] = *r.r_train;
    if (r.r_test) doc["r_test"] = *r.r_test;
    return doc.dump(2);
}

}  // namespace spinsift
