// reproduce.hpp
// Pinned parameter sets for the three worked examples and the checks that
// compare computed thresholds against the published values.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "explorer.hpp"

namespace realm {

// Threshold search resolution used by every reproduction.
inline constexpr double kReproduceTol = 1e-9;

struct ReproCheck {
    std::string name;
    double computed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ReproOutcome {
    int example = 0;
    std::string description;
    double published = 0.0; // reference value
    std::vector<ThresholdResult> thresholds;
    std::vector<ReproCheck> checks;

    bool pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return !checks.empty();
    }
};

namespace detail {

inline ReproCheck near_check(std::string name, double computed, double expected, double tol) {
    return {std::move(name), computed, expected, tol, std::abs(computed - expected) <= tol};
}

} // namespace detail

inline CriterionParams example1_params() { return {1.0 / 729.0, 1.0 / 729.0, 1}; }
inline CriterionParams example2_params() { return {1.0 / 729.0, 3.0 / 729.0, 3}; }
inline CriterionParams example3_params() {
    return {1.0 / 8.0, 1.0 / (16.0 * std::numbers::sqrt2), 1};
}

// Positive root of 9p^4 - 6p^3 + 6p^2 - 1, the alpha -> 0 limit of the
// example 1 theorem1 boundary.
inline constexpr double kExample1LimitRoot = 0.4427;

// Bell-noise family, theorem1 (l=1, alpha=beta=1/729); CCNR for reference.
inline ReproOutcome reproduce_example1() {
    ReproOutcome out;
    out.example = 1;
    out.description = "bell-noise, theorem1, l=1, alpha=beta=1/729";
    out.published = 0.44;
    const auto family = StateFamily::bell_noise();
    const auto t1 = find_threshold(family, Criterion::Theorem1, example1_params(), kReproduceTol);
    const auto cc = find_threshold(family, Criterion::Ccnr, {}, kReproduceTol);
    out.thresholds = {t1, cc};
    out.checks.push_back(detail::near_check("theorem1 threshold", t1.threshold, kExample1LimitRoot, 0.005));
    out.checks.push_back(detail::near_check("ccnr threshold", cc.threshold, 1.0 / 3.0, 1e-6));
    return out;
}

// Number of singular values of the l=1 bordered matrix of werner(2, p) equal
// to |2p - 1| / 6 within `tol`.
inline int werner_degenerate_singular_values(double p, double alpha, double tol) {
    const RealVector s = singular_values(bordered_realignment(werner_state(2, p), alpha, alpha, 1).matrix);
    const double target = std::abs(2.0 * p - 1.0) / 6.0;
    int count = 0;
    for (double v : s) {
        if (std::abs(v - target) <= tol) ++count;
    }
    return count;
}

// Werner d=2 family, theorem1 (l=3, alpha=1/729, beta=3 alpha).
inline ReproOutcome reproduce_example2() {
    ReproOutcome out;
    out.example = 2;
    out.description = "werner d=2, theorem1, l=3, alpha=1/729, beta=3*alpha";
    out.published = -0.163744;
    const auto t1 =
        find_threshold(StateFamily::werner(2), Criterion::Theorem1, example2_params(), kReproduceTol);
    out.thresholds = {t1};
    out.checks.push_back(detail::near_check("theorem1 threshold", t1.threshold, out.published, 0.005));
    for (double p : {-1.0, -0.5, 0.3}) {
        const int n = werner_degenerate_singular_values(p, 1.0 / 729.0, 1e-9);
        ReproCheck c{"singular values = |2p-1|/6 at p=" + format_double(p), static_cast<double>(n), 3.0,
                     0.0, n >= 3};
        out.checks.push_back(std::move(c));
    }
    return out;
}

// Isotropic-b family, theorem2 (l=1, alpha=1/8, beta=1/(16 sqrt 2)); PPT for
// reference.
inline ReproOutcome reproduce_example3() {
    ReproOutcome out;
    out.example = 3;
    out.description = "isotropic-b, theorem2, l=1, alpha=1/8, beta=1/(16*sqrt(2))";
    out.published = 0.501550;
    const auto family = StateFamily::isotropic_b();
    const auto t2 = find_threshold(family, Criterion::Theorem2, example3_params(), kReproduceTol);
    const auto pt = find_threshold(family, Criterion::Ppt, {}, kReproduceTol);
    out.thresholds = {t2, pt};
    out.checks.push_back(detail::near_check("theorem2 threshold", t2.threshold, out.published, 0.002));
    out.checks.push_back(detail::near_check("ppt threshold", pt.threshold, 0.5, 1e-6));
    return out;
}

inline ReproOutcome reproduce_example(int n) {
    switch (n) {
    case 1: return reproduce_example1();
    case 2: return reproduce_example2();
    case 3: return reproduce_example3();
    }
    throw std::invalid_argument("reproduce: example must be 1, 2 or 3");
}

} // namespace realm
