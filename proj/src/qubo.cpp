#include "spinsift/qubo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spinsift/errors.hpp"

namespace spinsift {

using json = nlohmann::json;

std::string sense_name(Sense s) { return s == Sense::Minimize ? "minimize" : "maximize"; }

Sense sense_from_name(std::string_view name) {
    if (name == "minimize") return Sense::Minimize;
    if (name == "maximize") return Sense::Maximize;
    throw ValidationError("unknown sense '" + std::string(name) + "' (expected minimize or maximize)");
}

QuboModel::QuboModel(int n, Sense sense) : n_(n), sense_(sense) {
    if (n < 0 || n > 64) throw ValidationError("variable count out of range: " + std::to_string(n));
    linear_.assign(static_cast<std::size_t>(n), 0.0);
    pair_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
}

std::size_t QuboModel::check_var(int i) const {
    if (i < 0 || i >= n_) throw ValidationError("variable index out of range: " + std::to_string(i));
    return static_cast<std::size_t>(i);
}

std::size_t QuboModel::pair_index(int i, int j) const {
    check_var(i);
    check_var(j);
    if (i > j) std::swap(i, j);
    if (i == j) throw ValidationError("pair coefficient requires distinct variables");
    // row i starts after the i previous rows of lengths n-1, n-2, ...
    const auto row_start = static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i + 1) / 2;
    return row_start + static_cast<std::size_t>(j - i - 1);
}

double QuboModel::pair(int i, int j) const { return pair_[pair_index(i, j)]; }
void QuboModel::set_pair(int i, int j, double v) { pair_[pair_index(i, j)] = v; }

double qubo_energy(const QuboModel& m, const Bitstring& x) {
    if (x.size() != m.n())
        throw ValidationError("bitstring length " + std::to_string(x.size()) + " does not match model size " +
                              std::to_string(m.n()));
    double e = m.w0;
    for (int i = 0; i < m.n(); ++i) {
        if (!x.bit(i)) continue;
        e += m.linear(i);
        for (int j = i + 1; j < m.n(); ++j)
            if (x.bit(j)) e += m.pair(i, j);
    }
    return e;
}

std::string qubo_to_json(const QuboModel& m) {
    json quad = json::array();
    for (int i = 0; i < m.n(); ++i)
        for (int j = i + 1; j < m.n(); ++j)
            if (m.pair(i, j) != 0.0) quad.push_back({i, j, m.pair(i, j)});
    const json doc = {
        {"n", m.n()},
        {"w0", m.w0},
        {"linear", m.linear_terms()},
        {"quadratic", quad},
        {"sense", sense_name(m.sense())},
    };
    return doc.dump(2);
}

QuboModel qubo_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("invalid model JSON: ") + e.what());
    }
    try {
        const int n = doc.at("n").get<int>();
        QuboModel m(n, sense_from_name(doc.value("sense", "minimize")));
        m.w0 = doc.value("w0", 0.0);
        const auto lin = doc.at("linear").get<std::vector<double>>();
        if (static_cast<int>(lin.size()) != n) throw ValidationError("linear term count does not match n");
        for (int i = 0; i < n; ++i) m.set_linear(i, lin[static_cast<std::size_t>(i)]);
        for (const auto& triple : doc.value("quadratic", json::array())) {
            if (!triple.is_array() || triple.size() != 3)
                throw ValidationError("quadratic entries must be [i, j, value] triples");
            m.set_pair(triple[0].get<int>(), triple[1].get<int>(), triple[2].get<double>());
        }
        for (double v : m.linear_terms())
            if (!std::isfinite(v)) throw ValidationError("non-finite linear coefficient");
        for (double v : m.pair_terms())
            if (!std::isfinite(v)) throw ValidationError("non-finite pair coefficient");
        return m;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid model JSON: ") + e.what());
    }
}

QuboModel load_qubo(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return qubo_from_json(buf.str());
}

void save_qubo(const QuboModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write model file: " + path);
    out << qubo_to_json(m) << "\n";
}

}  // namespace spinsift
