// explorer.hpp
// Threshold search along one-parameter state families and grid sweeps over
// (state parameter, alpha, beta, l).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "criteria.hpp"
#include "states.hpp"

namespace realm {

// Number of uniform points used to locate and sanity-check brackets.
inline constexpr std::size_t kPrescanPoints = 32;

struct ThresholdResult {
    FamilyTag family = FamilyTag::BellNoise;
    std::size_t d = 2;
    Criterion criterion = Criterion::Ccnr;
    CriterionParams params;
    double lo = 0.0;
    double hi = 0.0;
    double threshold = 0.0;
    std::size_t iterations = 0;
    double discriminant_at_threshold = 0.0;
    Verdict verdict_lo = Verdict::Inconclusive;
    Verdict verdict_hi = Verdict::Inconclusive;
};

namespace detail {

inline CriterionReport evaluate_checked(const StateFamily& family, Criterion c,
                                        const CriterionParams& params, double x) {
    CriterionReport r = evaluate(c, family.at(x), params);
    if (!std::isfinite(r.discriminant)) {
        std::ostringstream os;
        os << "evaluation error: non-finite discriminant for " << to_string(c) << " at parameter "
           << x;
        throw evaluation_error(os.str());
    }
    return r;
}

// Parameters in [lo, hi] where the verdict flips between consecutive
// prescan points, returned as (left, right) pairs.
inline std::vector<std::pair<double, double>> prescan_transitions(const StateFamily& family,
                                                                  Criterion c,
                                                                  const CriterionParams& params,
                                                                  double lo, double hi) {
    std::vector<std::pair<double, double>> out;
    double prev_x = lo;
    Verdict prev = evaluate_checked(family, c, params, lo).verdict;
    for (std::size_t i = 1; i < kPrescanPoints; ++i) {
        const double x = i + 1 == kPrescanPoints
                             ? hi
                             : lo + (hi - lo) * static_cast<double>(i) /
                                        static_cast<double>(kPrescanPoints - 1);
        const Verdict v = evaluate_checked(family, c, params, x).verdict;
        if (v != prev) {
            out.emplace_back(prev_x, x);
        }
        prev = v;
        prev_x = x;
    }
    return out;
}

} // namespace detail

// Bisection on the verdict. Requires different verdicts at lo and hi and at
// most one verdict change among kPrescanPoints uniform points of [lo, hi];
// both violations throw evaluation_error.
inline ThresholdResult bisect_threshold(const StateFamily& family, Criterion c,
                                        const CriterionParams& params, double lo, double hi,
                                        double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("bisect_threshold: need finite lo < hi");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("bisect_threshold: tol must be positive");
    }
    const Verdict v_lo = detail::evaluate_checked(family, c, params, lo).verdict;
    const Verdict v_hi = detail::evaluate_checked(family, c, params, hi).verdict;
    if (v_lo == v_hi) {
        std::ostringstream os;
        os << "no bracket: " << to_string(c) << " is " << to_string(v_lo) << " at both ends of ["
           << lo << ", " << hi << "]";
        throw evaluation_error(os.str());
    }
    const auto transitions = detail::prescan_transitions(family, c, params, lo, hi);
    if (transitions.size() > 1) {
        std::ostringstream os;
        os << "bracket is not monotone: verdict changes " << transitions.size() << " times on ["
           << lo << ", " << hi << "] (near";
        for (const auto& [a, b] : transitions) {
            os << " " << 0.5 * (a + b);
        }
        os << ")";
        throw evaluation_error(os.str());
    }

    ThresholdResult res;
    res.family = family.tag();
    res.d = family.d();
    res.criterion = c;
    res.params = params;
    res.verdict_lo = v_lo;
    res.verdict_hi = v_hi;
    double a = lo;
    double b = hi;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const Verdict v = detail::evaluate_checked(family, c, params, mid).verdict;
        if (v == v_lo) {
            a = mid;
        } else {
            b = mid;
        }
        ++res.iterations;
    }
    res.lo = a;
    res.hi = b;
    res.threshold = 0.5 * (a + b);
    res.discriminant_at_threshold =
        detail::evaluate_checked(family, c, params, res.threshold).discriminant;
    return res;
}

// Locates the single verdict change over the family's whole parameter range
// with a prescan, then bisects it.
inline ThresholdResult find_threshold(const StateFamily& family, Criterion c,
                                      const CriterionParams& params, double tol) {
    if (!family.parametric()) {
        throw std::invalid_argument("find_threshold: family has no parameter");
    }
    const auto transitions =
        detail::prescan_transitions(family, c, params, family.lo(), family.hi());
    if (transitions.empty()) {
        std::ostringstream os;
        os << "no bracket: " << to_string(c) << " verdict never changes on [" << family.lo()
           << ", " << family.hi() << "]";
        throw evaluation_error(os.str());
    }
    if (transitions.size() > 1) {
        std::ostringstream os;
        os << "bracket is not monotone: verdict changes " << transitions.size()
           << " times over the family range";
        throw evaluation_error(os.str());
    }
    return bisect_threshold(family, c, params, transitions.front().first,
                            transitions.front().second, tol);
}

enum class AxisName { P, Alpha, Beta, L };

inline std::string_view to_string(AxisName a) {
    switch (a) {
    case AxisName::P: return "p";
    case AxisName::Alpha: return "alpha";
    case AxisName::Beta: return "beta";
    case AxisName::L: return "l";
    }
    return "unknown";
}

inline std::optional<AxisName> parse_axis_name(std::string_view s) {
    if (s == "p") return AxisName::P;
    if (s == "alpha") return AxisName::Alpha;
    if (s == "beta") return AxisName::Beta;
    if (s == "l") return AxisName::L;
    return std::nullopt;
}

struct Axis {
    AxisName name = AxisName::P;
    double min = 0.0;
    double max = 0.0;
    std::size_t steps = 1;

    double value(std::size_t i) const {
        if (steps == 1) {
            return min;
        }
        if (i + 1 == steps) {
            return max;
        }
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

// How beta is set at each grid point.
struct BetaRule {
    enum class Kind { Independent, Equal, Scaled } kind = Kind::Independent;
    double factor = 1.0; // Scaled: beta = factor * alpha

    static BetaRule independent() { return {Kind::Independent, 1.0}; }
    static BetaRule equal() { return {Kind::Equal, 1.0}; }
    static BetaRule scaled(double c) { return {Kind::Scaled, c}; }
};

struct SweepSpec {
    Criterion criterion = Criterion::Theorem1;
    CriterionParams base;                 // values used for parameters without an axis
    std::optional<double> state_param;    // family parameter when there is no p axis
    std::vector<Axis> axes;
    BetaRule beta_rule = BetaRule::independent();
    unsigned threads = 0;                 // 0: hardware concurrency
};

struct SweepGrid {
    std::vector<Axis> axes;
    std::vector<double> discriminants; // row-major, last axis fastest

    std::size_t size() const { return discriminants.size(); }

    // Per-axis step index of flat point `n`.
    std::vector<std::size_t> indices(std::size_t n) const {
        std::vector<std::size_t> out(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            out[k] = n % axes[k].steps;
            n /= axes[k].steps;
        }
        return out;
    }

    std::vector<double> coordinates(std::size_t n) const {
        const auto ix = indices(n);
        std::vector<double> out(axes.size());
        for (std::size_t k = 0; k < axes.size(); ++k) {
            out[k] = axes[k].value(ix[k]);
        }
        return out;
    }

    // Value at explicit per-axis indices.
    double at(const std::vector<std::size_t>& ix) const {
        std::size_t n = 0;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            n = n * axes[k].steps + ix.at(k);
        }
        return discriminants.at(n);
    }
};

namespace detail {

inline void validate_sweep(const StateFamily& family, const SweepSpec& spec) {
    if (spec.axes.empty()) {
        throw std::invalid_argument("sweep: at least one axis is required");
    }
    std::vector<AxisName> seen;
    for (const Axis& a : spec.axes) {
        const std::string name(to_string(a.name));
        if (std::find(seen.begin(), seen.end(), a.name) != seen.end()) {
            throw std::invalid_argument("sweep: duplicate axis '" + name + "'");
        }
        seen.push_back(a.name);
        if (a.steps == 0 || !std::isfinite(a.min) || !std::isfinite(a.max) || a.min > a.max) {
            throw std::invalid_argument("sweep: invalid range for axis '" + name + "'");
        }
        if (a.name == AxisName::P) {
            if (!family.parametric()) {
                throw std::invalid_argument("sweep: p axis needs a parametric family");
            }
            if (a.min < family.lo() || a.max > family.hi()) {
                throw std::invalid_argument("sweep: p axis leaves the family range");
            }
        }
        if (a.name == AxisName::L && a.min < 0.0) {
            throw std::invalid_argument("sweep: l axis must be nonnegative");
        }
        if (a.name == AxisName::Beta && spec.beta_rule.kind != BetaRule::Kind::Independent) {
            throw std::invalid_argument("sweep: beta axis requires the independent beta rule");
        }
    }
    const bool has_p = std::find(seen.begin(), seen.end(), AxisName::P) != seen.end();
    if (!has_p && family.parametric() && !spec.state_param) {
        throw std::invalid_argument("sweep: no p axis and no fixed state parameter");
    }
}

inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace detail

// Evaluates the criterion discriminant at every grid point. Each point writes
// only its own slot, so the result does not depend on the thread count.
inline SweepGrid sweep(const StateFamily& family, const SweepSpec& spec) {
    detail::validate_sweep(family, spec);
    SweepGrid grid;
    grid.axes = spec.axes;
    std::size_t total = 1;
    for (const Axis& a : spec.axes) total *= a.steps;
    grid.discriminants.assign(total, 0.0);

    detail::parallel_for(total, spec.threads, [&](std::size_t n) {
        const auto coords = grid.coordinates(n);
        CriterionParams p = spec.base;
        double x = spec.state_param.value_or(family.lo());
        bool beta_set = false;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            switch (grid.axes[k].name) {
            case AxisName::P: x = coords[k]; break;
            case AxisName::Alpha: p.alpha = coords[k]; break;
            case AxisName::Beta: p.beta = coords[k]; beta_set = true; break;
            case AxisName::L: p.border = static_cast<std::size_t>(std::lround(coords[k])); break;
            }
        }
        if (!beta_set) {
            if (spec.beta_rule.kind == BetaRule::Kind::Equal) p.beta = p.alpha;
            if (spec.beta_rule.kind == BetaRule::Kind::Scaled) p.beta = spec.beta_rule.factor * p.alpha;
        }
        grid.discriminants[n] = detail::evaluate_checked(family, spec.criterion, p, x).discriminant;
    });
    return grid;
}

} // namespace realm
