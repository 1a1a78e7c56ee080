// criteria.hpp
// Separability criteria. Every criterion is a necessary condition for
// separability: a positive discriminant above tolerance certifies
// entanglement, anything else is inconclusive.
//
//   theorem1         a_2^2 <= c * a_3, c = sqrt((l a^2 + 1)(l b^2 + 1))
//   theorem2         Hankel positivity with a_1 replaced by c
//   ccnr             ||R(rho)||_tr <= 1
//   zhang-corrected  ||R(rho - rho_A (x) rho_B)||_tr <= sqrt(1 - tr rho_A^2) sqrt(1 - tr rho_B^2)
//   shi-bound        ||M_{a,b}||_tr <= sqrt((a^2 + 1)(b^2 + 1))   (border of size 1)
//   sun-bound        ||M^l_{a,b}||_tr <= c
//   ppt              rho^{T_B} >= 0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moments.hpp"
#include "realignment.hpp"
#include "states.hpp"

namespace realm {

enum class Criterion { Theorem1, Theorem2, Ccnr, ZhangCorrected, ShiBound, SunBound, Ppt };

inline constexpr std::array<Criterion, 7> kAllCriteria = {
    Criterion::Theorem1, Criterion::Theorem2, Criterion::Ccnr,    Criterion::ZhangCorrected,
    Criterion::ShiBound, Criterion::SunBound, Criterion::Ppt};

inline std::string_view to_string(Criterion c) {
    switch (c) {
    case Criterion::Theorem1: return "theorem1";
    case Criterion::Theorem2: return "theorem2";
    case Criterion::Ccnr: return "ccnr";
    case Criterion::ZhangCorrected: return "zhang-corrected";
    case Criterion::ShiBound: return "shi-bound";
    case Criterion::SunBound: return "sun-bound";
    case Criterion::Ppt: return "ppt";
    }
    return "unknown";
}

inline std::optional<Criterion> parse_criterion(std::string_view s) {
    for (Criterion c : kAllCriteria) {
        if (to_string(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

enum class Verdict { Entangled, Inconclusive };

inline std::string_view to_string(Verdict v) {
    return v == Verdict::Entangled ? "Entangled" : "Inconclusive";
}

struct CriterionParams {
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t border = 0;
    // theorem2 only. Unset orders fall back to the defaults documented on
    // theorem2().
    std::optional<std::size_t> max_order_h;
    std::optional<std::size_t> max_order_b;
    // Let Ĥ_k take part in the theorem2 verdict. Off by default: a_1 sits
    // off-diagonal in H_k, so raising it to the bound does not preserve
    // positivity, and Ĥ_k can fail for separable states (e.g. I/4).
    bool h_in_verdict = false;
};

struct CriterionReport {
    Criterion criterion = Criterion::Ccnr;
    Verdict verdict = Verdict::Inconclusive;
    double discriminant = 0.0;
    double tolerance = kVerdictTolerance;
    CriterionParams params;
    std::map<std::string, double> diagnostics;
    std::vector<double> moments;
    std::string fired; // theorem2: first Hankel matrix that failed, e.g. "B2"
    std::optional<std::string> error;

    bool entangled() const { return verdict == Verdict::Entangled; }
};

namespace detail {

inline CriterionReport make_report(Criterion c, double discriminant, double scale,
                                   const CriterionParams& params = {}) {
    CriterionReport r;
    r.criterion = c;
    r.discriminant = discriminant;
    r.tolerance = kVerdictTolerance * std::max(1.0, scale);
    r.verdict = discriminant > r.tolerance ? Verdict::Entangled : Verdict::Inconclusive;
    r.params = params;
    return r;
}

inline double purity(const ComplexMatrix& m) { return (m * m).trace().real(); }

inline std::size_t singular_value_count(const Dims& dims, std::size_t border) {
    return border + std::min(dims.dA * dims.dA, dims.dB * dims.dB);
}

} // namespace detail

// --- spectral kernels: criteria evaluated from precomputed singular values ---

inline CriterionReport sun_bound_from_spectrum(const RealVector& s, double alpha, double beta,
                                               std::size_t border,
                                               Criterion tag = Criterion::SunBound) {
    const double a1 = s.sum();
    const double bound = trace_norm_bound(alpha, beta, border);
    CriterionParams p{alpha, beta, border};
    auto r = detail::make_report(tag, a1 - bound, bound, p);
    r.diagnostics["traceNorm"] = a1;
    r.diagnostics["bound"] = bound;
    return r;
}

inline CriterionReport ccnr_from_spectrum(const RealVector& realign_sv) {
    const double norm = realign_sv.sum();
    auto r = detail::make_report(Criterion::Ccnr, norm - 1.0, 1.0);
    r.diagnostics["traceNorm"] = norm;
    r.diagnostics["bound"] = 1.0;
    return r;
}

inline CriterionReport theorem1_from_spectrum(const RealVector& s, double alpha, double beta,
                                              std::size_t border) {
    const double a1 = s.sum();
    const double a2 = s.squaredNorm();
    const double a3 = s.array().cube().sum();
    const double bound = trace_norm_bound(alpha, beta, border);
    const double f = a2 * a2 - bound * a3;
    auto r = detail::make_report(Criterion::Theorem1, f, bound, {alpha, beta, border});
    r.moments = {a1, a2, a3};
    r.diagnostics["a1"] = a1;
    r.diagnostics["a2"] = a2;
    r.diagnostics["a3"] = a3;
    r.diagnostics["bound"] = bound;
    return r;
}

// Default orders: Ĥ_k for k = 1..floor(dA dB / 2); B̂_r for r = 1..n_s - 1,
// where n_s = l + min(dA^2, dB^2) is the number of singular values of the
// bordered matrix (B_r is a Gram matrix of r + 1 vectors in an n_s-dimensional
// eigenspace, so higher orders add nothing). a_0 uses the traceless convention.
inline CriterionReport theorem2_from_spectrum(const RealVector& s, const Dims& dims, double alpha,
                                              double beta, std::size_t border,
                                              const CriterionParams& opts = {}) {
    const std::size_t max_h = opts.max_order_h.value_or(default_max_order_h(dims));
    const std::size_t max_b =
        opts.max_order_b.value_or(detail::singular_value_count(dims, border) - 1);
    const std::size_t order = std::max<std::size_t>({3, 2 * max_h, 2 * max_b + 1});

    BorderedRealignment shape{alpha, beta, border, dims, {}};
    const MomentSequence a = moments_from_singular_values(s, shape, order, A0Convention::Traceless);
    const double bound = trace_norm_bound(alpha, beta, border);
    const HankelReport hank = hankel_report(a, bound, max_h, max_b);

    std::vector<const HankelEntry*> verdict_set;
    for (const auto& e : hank.b) verdict_set.push_back(&e);
    if (opts.h_in_verdict) {
        for (const auto& e : hank.h) verdict_set.push_back(&e);
    }

    double most_negative = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (const HankelEntry* e : verdict_set) {
        most_negative = std::min(most_negative, e->min_eigenvalue);
        scale = std::max(scale, e->matrix.values.cwiseAbs().maxCoeff());
    }
    const double discriminant =
        verdict_set.empty() ? -std::numeric_limits<double>::infinity() : -most_negative;

    CriterionParams p = opts;
    p.alpha = alpha;
    p.beta = beta;
    p.border = border;
    p.max_order_h = max_h;
    p.max_order_b = max_b;
    auto r = detail::make_report(Criterion::Theorem2, discriminant, scale, p);
    r.moments.assign(a.values.begin() + 1, a.values.end());
    r.diagnostics["a0"] = a[0];
    r.diagnostics["bound"] = bound;
    for (const auto& e : hank.b) r.diagnostics["minEig.B" + std::to_string(e.order)] = e.min_eigenvalue;
    for (const auto& e : hank.h) r.diagnostics["minEig.H" + std::to_string(e.order)] = e.min_eigenvalue;
    for (const HankelEntry* e : verdict_set) {
        if (e->min_eigenvalue < -r.tolerance) {
            r.fired = std::string(1, e->family) + std::to_string(e->order);
            break;
        }
    }
    return r;
}

// --- criteria on states ---

inline CriterionReport sun_bound(const DensityMatrix& rho, double alpha, double beta,
                                 std::size_t border) {
    return sun_bound_from_spectrum(
        singular_values(bordered_realignment(rho, alpha, beta, border).matrix), alpha, beta, border);
}

inline CriterionReport shi_bound(const DensityMatrix& rho, double alpha, double beta) {
    return sun_bound_from_spectrum(singular_values(bordered_realignment(rho, alpha, beta, 1).matrix),
                                   alpha, beta, 1, Criterion::ShiBound);
}

inline CriterionReport ccnr(const DensityMatrix& rho) {
    return ccnr_from_spectrum(singular_values(realign(rho)));
}

inline CriterionReport theorem1(const DensityMatrix& rho, double alpha, double beta,
                                std::size_t border) {
    return theorem1_from_spectrum(
        singular_values(bordered_realignment(rho, alpha, beta, border).matrix), alpha, beta, border);
}

inline CriterionReport theorem2(const DensityMatrix& rho, double alpha, double beta,
                                std::size_t border, const CriterionParams& opts = {}) {
    return theorem2_from_spectrum(
        singular_values(bordered_realignment(rho, alpha, beta, border).matrix), rho.dims(), alpha,
        beta, border, opts);
}

inline CriterionReport zhang_corrected(const DensityMatrix& rho) {
    const ComplexMatrix ra = reduced_a(rho);
    const ComplexMatrix rb = reduced_b(rho);
    const ComplexMatrix diff = rho.matrix() - tensor_product(ra, rb);
    const double lhs = singular_values(realign(diff, rho.dims())).sum();
    const double pa = detail::purity(ra);
    const double pb = detail::purity(rb);
    const double rhs = std::sqrt(std::max(0.0, 1.0 - pa)) * std::sqrt(std::max(0.0, 1.0 - pb));
    auto r = detail::make_report(Criterion::ZhangCorrected, lhs - rhs, rhs);
    r.diagnostics["lhs"] = lhs;
    r.diagnostics["rhs"] = rhs;
    r.diagnostics["purityA"] = pa;
    r.diagnostics["purityB"] = pb;
    return r;
}

inline CriterionReport ppt(const DensityMatrix& rho) {
    const ComplexMatrix pt = partial_transpose(rho);
    const ComplexMatrix sym = 0.5 * (pt + pt.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues()(0);
    auto r = detail::make_report(Criterion::Ppt, -min_eig, 1.0);
    r.diagnostics["minEigenvalue"] = min_eig;
    return r;
}

// Single-criterion dispatch. `params` supplies alpha, beta, l (and theorem2
// orders); shi-bound always uses a border of size 1.
inline CriterionReport evaluate(Criterion c, const DensityMatrix& rho, const CriterionParams& params) {
    switch (c) {
    case Criterion::Theorem1: return theorem1(rho, params.alpha, params.beta, params.border);
    case Criterion::Theorem2:
        return theorem2(rho, params.alpha, params.beta, params.border, params);
    case Criterion::Ccnr: return ccnr(rho);
    case Criterion::ZhangCorrected: return zhang_corrected(rho);
    case Criterion::ShiBound: return shi_bound(rho, params.alpha, params.beta);
    case Criterion::SunBound: return sun_bound(rho, params.alpha, params.beta, params.border);
    case Criterion::Ppt: return ppt(rho);
    }
    throw std::logic_error("evaluate: unknown criterion");
}

// Evaluates `selection` (all criteria by default) in kAllCriteria order,
// computing each bordered-matrix SVD once. A criterion that throws yields a
// report with `error` set and an Inconclusive verdict.
inline std::vector<CriterionReport> run_all(const DensityMatrix& rho, const CriterionParams& params,
                                            const std::vector<Criterion>& selection = {}) {
    const auto wanted = [&](Criterion c) {
        return selection.empty() || std::find(selection.begin(), selection.end(), c) != selection.end();
    };
    const RealVector sv_realign = singular_values(realign(rho));
    const RealVector sv_main =
        params.border == 0 ? sv_realign
                           : singular_values(
                                 bordered_realignment(rho, params.alpha, params.beta, params.border).matrix);
    const bool need_shi = wanted(Criterion::ShiBound);
    const RealVector sv_shi =
        !need_shi ? RealVector()
        : params.border == 1
            ? sv_main
            : singular_values(bordered_realignment(rho, params.alpha, params.beta, 1).matrix);

    std::vector<CriterionReport> out;
    for (Criterion c : kAllCriteria) {
        if (!wanted(c)) {
            continue;
        }
        try {
            switch (c) {
            case Criterion::Theorem1:
                out.push_back(theorem1_from_spectrum(sv_main, params.alpha, params.beta, params.border));
                break;
            case Criterion::Theorem2:
                out.push_back(theorem2_from_spectrum(sv_main, rho.dims(), params.alpha, params.beta,
                                                     params.border, params));
                break;
            case Criterion::Ccnr: out.push_back(ccnr_from_spectrum(sv_realign)); break;
            case Criterion::ZhangCorrected: out.push_back(zhang_corrected(rho)); break;
            case Criterion::ShiBound:
                out.push_back(sun_bound_from_spectrum(sv_shi, params.alpha, params.beta, 1,
                                                      Criterion::ShiBound));
                break;
            case Criterion::SunBound:
                out.push_back(sun_bound_from_spectrum(sv_main, params.alpha, params.beta, params.border));
                break;
            case Criterion::Ppt: out.push_back(ppt(rho)); break;
            }
        } catch (const std::exception& ex) {
            CriterionReport r;
            r.criterion = c;
            r.params = params;
            r.discriminant = std::numeric_limits<double>::quiet_NaN();
            r.error = ex.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace realm
