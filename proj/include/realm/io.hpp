// io.hpp
// JSON and CSV serialization.
//
// State file:   {"dA": int, "dB": int, "matrix": [[[re, im], ...], ...]}
// Reports:      {"criterion", "verdict", "discriminant", "params", "diagnostics"}
// Sweep CSV:    header with axis names then "discriminant", one row per point.
//
// JSON doubles are written in shortest round-trip form; CSV uses %.17g.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "criteria.hpp"
#include "explorer.hpp"
#include "moments.hpp"
#include "states.hpp"

namespace realm {

using json = nlohmann::json;

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json real_matrix_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json state_to_json(const DensityMatrix& rho) {
    return {{"dA", rho.dA()}, {"dB", rho.dB()}, {"matrix", matrix_to_json(rho.matrix())}};
}

// Parses and validates. Structural problems throw parse_error; invariant
// violations throw validation_error.
inline DensityMatrix state_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("parse error: state must be a JSON object");
    for (const char* key : {"dA", "dB", "matrix"}) {
        if (!j.contains(key)) throw parse_error(std::string("parse error: missing field '") + key + "'");
    }
    if (!j["dA"].is_number_integer() || !j["dB"].is_number_integer()) {
        throw parse_error("parse error: dA and dB must be integers");
    }
    const auto dA = j["dA"].get<long long>();
    const auto dB = j["dB"].get<long long>();
    if (dA < 2 || dB < 2) throw validation_error("shape", "shape: dA and dB must be >= 2");
    const Dims dims{static_cast<std::size_t>(dA), static_cast<std::size_t>(dB)};
    const auto n = static_cast<std::size_t>(dA * dB);
    const json& rows = j["matrix"];
    if (!rows.is_array() || rows.size() != n) {
        throw validation_error("shape", "shape: matrix must have dA*dB = " + std::to_string(n) + " rows");
    }
    ComplexMatrix m(detail::idx(n), detail::idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != n) {
            throw validation_error("shape", "shape: row " + std::to_string(i) + " must have " +
                                                std::to_string(n) + " entries");
        }
        for (std::size_t k = 0; k < n; ++k) {
            const json& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw parse_error("parse error: entry (" + std::to_string(i) + ", " +
                                  std::to_string(k) + ") must be [re, im]");
            }
            m(detail::idx(i), detail::idx(k)) = complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return DensityMatrix(dims, std::move(m));
}

inline DensityMatrix load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("parse error: ") + e.what());
    }
    return state_from_json(j);
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void save_state(const DensityMatrix& rho, const std::string& path) {
    write_text(path, state_to_json(rho).dump() + "\n");
}

inline json params_to_json(Criterion c, const CriterionParams& p) {
    json j = json::object();
    switch (c) {
    case Criterion::Theorem2:
        j["maxOrderH"] = p.max_order_h.value_or(0);
        j["maxOrderB"] = p.max_order_b.value_or(0);
        j["hInVerdict"] = p.h_in_verdict;
        [[fallthrough]];
    case Criterion::Theorem1:
    case Criterion::SunBound:
        j["alpha"] = p.alpha;
        j["beta"] = p.beta;
        j["l"] = p.border;
        break;
    case Criterion::ShiBound:
        j["alpha"] = p.alpha;
        j["beta"] = p.beta;
        j["l"] = 1;
        break;
    case Criterion::Ccnr:
    case Criterion::ZhangCorrected:
    case Criterion::Ppt:
        break;
    }
    return j;
}

inline json to_json(const CriterionReport& r) {
    json diag = json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = v;
    if (!r.moments.empty()) diag["moments"] = r.moments;
    if (!r.fired.empty()) diag["fired"] = r.fired;
    diag["tolerance"] = r.tolerance;
    json j = {{"criterion", to_string(r.criterion)},
              {"verdict", to_string(r.verdict)},
              {"discriminant", std::isfinite(r.discriminant) ? json(r.discriminant) : json(nullptr)},
              {"params", params_to_json(r.criterion, r.params)},
              {"diagnostics", std::move(diag)}};
    if (r.error) j["error"] = *r.error;
    return j;
}

inline json to_json(const MomentSequence& a) {
    return {{"dA", a.dims.dA},
            {"dB", a.dims.dB},
            {"alpha", a.alpha},
            {"beta", a.beta},
            {"l", a.border},
            {"a0Convention", to_string(a.convention)},
            {"K", a.order()},
            {"beyondA0Range", a.beyond_a0_range()},
            {"singularValues", std::vector<double>(a.singular_values.begin(), a.singular_values.end())},
            {"moments", a.values}};
}

inline std::string moments_csv(const MomentSequence& a) {
    std::string out = "k,a_k\n";
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        out += std::to_string(k) + "," + format_double(a.values[k]) + "\n";
    }
    return out;
}

inline json to_json(const ThresholdResult& t) {
    json j = {{"family", to_string(t.family)},
              {"criterion", to_string(t.criterion)},
              {"params", params_to_json(t.criterion, t.params)},
              {"lo", t.lo},
              {"hi", t.hi},
              {"threshold", t.threshold},
              {"iterations", t.iterations},
              {"discriminantAtThreshold", t.discriminant_at_threshold},
              {"verdictLo", to_string(t.verdict_lo)},
              {"verdictHi", to_string(t.verdict_hi)}};
    if (t.family == FamilyTag::Werner) j["d"] = t.d;
    return j;
}

inline std::string sweep_csv(const SweepGrid& g) {
    std::ostringstream os;
    for (const Axis& a : g.axes) os << to_string(a.name) << ",";
    os << "discriminant\n";
    for (std::size_t n = 0; n < g.size(); ++n) {
        for (double c : g.coordinates(n)) os << format_double(c) << ",";
        os << format_double(g.discriminants[n]) << "\n";
    }
    return os.str();
}

} // namespace realm
