// realm_cli.cpp
// Command-line front end: gen, detect, moments, threshold, sweep, reproduce.
//
// Exit status reports whether the computation succeeded; entanglement
// verdicts are only ever in the structured output.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "realm/realm.hpp"

namespace {

using realm::json;

// Accepts plain decimals, simple fractions "a/b" and the named constants
// below. Irrational example parameters are only reachable through names.
double parse_number(const std::string& text) {
    static const std::map<std::string, double> named = {
        {"ex3-beta", 1.0 / (16.0 * std::numbers::sqrt2)},
        {"paper-ex3", 1.0 / (16.0 * std::numbers::sqrt2)}, // alias
        {"ex1-alpha", 1.0 / 729.0},
        {"ex2-beta", 3.0 / 729.0},
    };
    if (auto it = named.find(text); it != named.end()) {
        return it->second;
    }
    const auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw CLI::ValidationError("invalid number '" + text + "'");
        }
        return v;
    };
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const double den = to_double(text.substr(slash + 1));
        if (den == 0.0) throw CLI::ValidationError("division by zero in '" + text + "'");
        return to_double(text.substr(0, slash)) / den;
    }
    return to_double(text);
}

struct NumberFlag {
    std::string text;
    std::optional<double> value() const {
        if (text.empty()) return std::nullopt;
        return parse_number(text);
    }
};

struct StateSource {
    std::string path;
    std::string family;
    NumberFlag p;
    std::size_t d = 2;

    void add_to(CLI::App* cmd, bool with_param = true) {
        auto* st = cmd->add_option("--state", path, "State file (JSON)");
        auto* fam = cmd->add_option("--family", family, "bell-noise | werner | isotropic-b");
        st->excludes(fam);
        if (with_param) {
            cmd->add_option("--p", p.text, "Family parameter (p, or b for isotropic-b)");
        }
        cmd->add_option("--d", d, "Local dimension for werner")->check(CLI::Range(2, 64));
    }

    realm::StateFamily family_or_throw() const {
        const auto tag = realm::parse_family(family);
        if (!tag || *tag == realm::FamilyTag::CustomFile) {
            throw std::invalid_argument("unknown family '" + family + "'");
        }
        switch (*tag) {
        case realm::FamilyTag::BellNoise: return realm::StateFamily::bell_noise();
        case realm::FamilyTag::Werner: return realm::StateFamily::werner(d);
        default: return realm::StateFamily::isotropic_b();
        }
    }

    realm::DensityMatrix load() const {
        if (!path.empty()) return realm::load_state(path);
        if (family.empty()) throw std::invalid_argument("exactly one of --state or --family is required");
        const auto x = p.value();
        if (!x) throw std::invalid_argument("--family requires --p");
        return family_or_throw().at(*x);
    }

    json describe() const {
        if (!path.empty()) return {{"state", path}};
        json j = {{"family", family}, {"p", p.value().value_or(0.0)}};
        if (family == "werner") j["d"] = d;
        return j;
    }
};

struct ParamFlags {
    NumberFlag alpha{"0"};
    NumberFlag beta{"0"};
    std::size_t l = 0;
    std::optional<std::size_t> order_h;
    std::optional<std::size_t> order_b;
    bool h_in_verdict = false;

    void add_to(CLI::App* cmd, bool hankel = true) {
        cmd->add_option("--alpha", alpha.text, "Border scale alpha (decimal, a/b, or named)");
        cmd->add_option("--beta", beta.text, "Border scale beta (decimal, a/b, or named)");
        cmd->add_option("--l", l, "Border size l");
        if (hankel) {
            cmd->add_option("--order-h", order_h, "theorem2: largest Ĥ_k order");
            cmd->add_option("--order-b", order_b, "theorem2: largest B̂_r order");
            cmd->add_flag("--h-in-verdict", h_in_verdict, "theorem2: let Ĥ_k decide the verdict too");
        }
    }

    realm::CriterionParams get() const {
        realm::CriterionParams p;
        p.alpha = *alpha.value();
        p.beta = *beta.value();
        p.border = l;
        p.max_order_h = order_h;
        p.max_order_b = order_b;
        p.h_in_verdict = h_in_verdict;
        return p;
    }
};

realm::Criterion criterion_or_throw(const std::string& s) {
    const auto c = realm::parse_criterion(s);
    if (!c) throw std::invalid_argument("unknown criterion '" + s + "'");
    return *c;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        realm::write_text(out, text);
    }
}

realm::Axis parse_axis(const std::string& spec, std::size_t default_steps) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3 && parts.size() != 4) {
        throw std::invalid_argument("invalid axis '" + spec + "' (expected name:min:max[:steps])");
    }
    const auto name = realm::parse_axis_name(parts[0]);
    if (!name) throw std::invalid_argument("unknown axis name '" + parts[0] + "'");
    realm::Axis a{*name, parse_number(parts[1]), parse_number(parts[2]), default_steps};
    if (parts.size() == 4) {
        const double steps = parse_number(parts[3]);
        if (steps < 1 || steps != std::floor(steps)) {
            throw std::invalid_argument("invalid step count in axis '" + spec + "'");
        }
        a.steps = static_cast<std::size_t>(steps);
    }
    return a;
}

realm::BetaRule parse_beta_rule(const std::string& s) {
    if (s == "independent") return realm::BetaRule::independent();
    if (s == "equal") return realm::BetaRule::equal();
    if (s.rfind("scale:", 0) == 0) return realm::BetaRule::scaled(parse_number(s.substr(6)));
    throw std::invalid_argument("invalid beta rule '" + s + "' (independent | equal | scale:<c>)");
}

std::string reproduce_text(const realm::ReproOutcome& r) {
    std::ostringstream os;
    os << "Example " << r.example << ": " << r.description << "\n";
    os << "  published threshold: " << realm::format_double(r.published) << "\n";
    for (const auto& c : r.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": computed "
           << realm::format_double(c.computed) << ", expected " << realm::format_double(c.expected);
        if (c.tolerance > 0.0) os << " +/- " << realm::format_double(c.tolerance);
        os << "\n";
    }
    os << "  => " << (r.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

json reproduce_json(const realm::ReproOutcome& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"computed", c.computed},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    json th = json::array();
    for (const auto& t : r.thresholds) th.push_back(realm::to_json(t));
    return {{"example", r.example},
            {"description", r.description},
            {"published", r.published},
            {"thresholds", th},
            {"checks", checks},
            {"pass", r.pass()}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement detection via bordered realignment moments"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Write a state file");
    std::string gen_family;
    NumberFlag gen_p;
    std::size_t gen_d = 2, gen_dA = 2, gen_dB = 2, gen_terms = 4;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--family", gen_family,
                    "bell-noise | werner | isotropic-b | random | random-separable")
        ->required();
    gen->add_option("--p", gen_p.text, "Family parameter");
    gen->add_option("--d", gen_d, "Local dimension for werner")->check(CLI::Range(2, 64));
    gen->add_option("--dA", gen_dA, "Dimension of A for random states")->check(CLI::Range(2, 64));
    gen->add_option("--dB", gen_dB, "Dimension of B for random states")->check(CLI::Range(2, 64));
    gen->add_option("--terms", gen_terms, "Product terms for random-separable")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Seed for random states");
    gen->add_option("--out", gen_out, "Output path (stdout if omitted)");

    // detect
    auto* detect = app.add_subcommand("detect", "Evaluate separability criteria on a state");
    StateSource det_src;
    ParamFlags det_params;
    std::vector<std::string> det_criteria{"all"};
    std::string det_out;
    det_src.add_to(detect);
    det_params.add_to(detect);
    detect->add_option("--criterion", det_criteria, "Criterion name or 'all' (repeatable)");
    detect->add_option("--out", det_out, "Output path (stdout if omitted)");
    std::string det_format = "json";
    detect->add_option("--format", det_format, "json")->check(CLI::IsMember({"json"}));

    // moments
    auto* mom = app.add_subcommand("moments", "Moments a_k of the bordered realignment matrix");
    StateSource mom_src;
    ParamFlags mom_params;
    std::optional<std::size_t> mom_k;
    std::string mom_a0 = "traceless", mom_format = "json", mom_out;
    mom_src.add_to(mom);
    mom_params.add_to(mom, false);
    mom->add_option("--K", mom_k, "Highest moment order")->check(CLI::PositiveNumber);
    mom->add_option("--a0", mom_a0, "a_0 convention")->check(CLI::IsMember({"traceless", "paper", "matrix-dimension"}));
    mom->add_option("--format", mom_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    mom->add_option("--out", mom_out, "Output path (stdout if omitted)");

    // threshold
    auto* thr = app.add_subcommand("threshold", "Bisect the detection threshold along a family");
    StateSource thr_src;
    ParamFlags thr_params;
    std::string thr_criterion, thr_out;
    NumberFlag thr_lo, thr_hi;
    double thr_tol = 1e-9;
    thr->add_option("--family", thr_src.family, "bell-noise | werner | isotropic-b")->required();
    thr->add_option("--d", thr_src.d, "Local dimension for werner")->check(CLI::Range(2, 64));
    thr->add_option("--criterion", thr_criterion, "Criterion name")->required();
    thr_params.add_to(thr);
    thr->add_option("--lo", thr_lo.text, "Bracket start (default: prescan the family range)");
    thr->add_option("--hi", thr_hi.text, "Bracket end");
    thr->add_option("--tol", thr_tol, "Bracket width on return")->check(CLI::PositiveNumber);
    thr->add_option("--out", thr_out, "Output path (stdout if omitted)");
    std::string thr_format = "json";
    thr->add_option("--format", thr_format, "json")->check(CLI::IsMember({"json"}));

    // sweep
    auto* swp = app.add_subcommand("sweep", "Evaluate a criterion on a parameter grid");
    StateSource swp_src;
    ParamFlags swp_params;
    std::string swp_criterion = "theorem1", swp_beta_rule = "independent", swp_format = "csv", swp_out;
    std::vector<std::string> swp_axes;
    std::size_t swp_grid = 21;
    unsigned swp_threads = 0;
    swp_src.add_to(swp);
    swp_params.add_to(swp);
    swp->add_option("--criterion", swp_criterion, "Criterion name");
    swp->add_option("--axis", swp_axes, "name:min:max[:steps], name in p|alpha|beta|l (repeatable)")
        ->required();
    swp->add_option("--grid", swp_grid, "Default steps per axis")->check(CLI::PositiveNumber);
    swp->add_option("--beta-rule", swp_beta_rule, "independent | equal | scale:<c>");
    swp->add_option("--threads", swp_threads, "Worker threads (0: all cores)");
    swp->add_option("--format", swp_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    swp->add_option("--out", swp_out, "Output path (stdout if omitted)");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "Re-run the pinned worked examples");
    std::string rep_which = "all", rep_format = "text", rep_out;
    rep->add_option("example", rep_which, "1 | 2 | 3 | all")->check(CLI::IsMember({"1", "2", "3", "all"}));
    rep->add_option("--format", rep_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    rep->add_option("--out", rep_out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen) {
            const auto p = gen_p.value();
            std::optional<realm::DensityMatrix> rho;
            if (gen_family == "random") {
                rho = realm::random_density_matrix({gen_dA, gen_dB}, gen_seed);
            } else if (gen_family == "random-separable") {
                rho = realm::random_separable_state({gen_dA, gen_dB}, gen_terms, gen_seed);
            } else {
                StateSource s;
                s.family = gen_family;
                s.d = gen_d;
                if (!p) throw std::invalid_argument("--family " + gen_family + " requires --p");
                rho = s.family_or_throw().at(*p);
            }
            emit(gen_out, realm::state_to_json(*rho).dump() + "\n");
        } else if (*detect) {
            const auto rho = det_src.load();
            std::vector<realm::Criterion> selection;
            for (const auto& c : det_criteria) {
                if (c == "all") {
                    selection.clear();
                    break;
                }
                selection.push_back(criterion_or_throw(c));
            }
            const auto reports = realm::run_all(rho, det_params.get(), selection);
            json out = json::array();
            for (const auto& r : reports) {
                json j = realm::to_json(r);
                j["source"] = det_src.describe();
                out.push_back(std::move(j));
            }
            emit(det_out, out.dump(2) + "\n");
        } else if (*mom) {
            const auto rho = mom_src.load();
            const auto p = mom_params.get();
            const auto conv = mom_a0 != "matrix-dimension" ? realm::A0Convention::Traceless
                                                : realm::A0Convention::MatrixDimension;
            const auto a = realm::moments(realm::bordered_realignment(rho, p.alpha, p.beta, p.border),
                                          mom_k.value_or(realm::default_moment_order(rho.dims())), conv);
            if (a.beyond_a0_range()) {
                std::cerr << "note: K exceeds (dA^2-1)(dB^2-1)\n";
            }
            if (mom_format == "csv") {
                emit(mom_out, realm::moments_csv(a));
            } else {
                json j = realm::to_json(a);
                j["source"] = mom_src.describe();
                emit(mom_out, j.dump(2) + "\n");
            }
        } else if (*thr) {
            const auto family = thr_src.family_or_throw();
            const auto c = criterion_or_throw(thr_criterion);
            const auto p = thr_params.get();
            const auto lo = thr_lo.value();
            const auto hi = thr_hi.value();
            if (lo.has_value() != hi.has_value()) {
                throw std::invalid_argument("--lo and --hi must be given together");
            }
            const auto res = lo ? realm::bisect_threshold(family, c, p, *lo, *hi, thr_tol)
                                : realm::find_threshold(family, c, p, thr_tol);
            emit(thr_out, realm::to_json(res).dump(2) + "\n");
        } else if (*swp) {
            realm::SweepSpec spec;
            spec.criterion = criterion_or_throw(swp_criterion);
            spec.base = swp_params.get();
            spec.state_param = swp_src.p.value();
            spec.beta_rule = parse_beta_rule(swp_beta_rule);
            spec.threads = swp_threads;
            for (const auto& a : swp_axes) spec.axes.push_back(parse_axis(a, swp_grid));
            const auto family = swp_src.path.empty() ? swp_src.family_or_throw()
                                                     : realm::StateFamily::custom(realm::load_state(swp_src.path));
            const auto grid = realm::sweep(family, spec);
            if (swp_format == "csv") {
                emit(swp_out, realm::sweep_csv(grid));
            } else {
                json axes = json::array();
                for (const auto& a : grid.axes) {
                    axes.push_back({{"name", realm::to_string(a.name)}, {"min", a.min}, {"max", a.max},
                                    {"steps", a.steps}});
                }
                json j = {{"criterion", realm::to_string(spec.criterion)},
                          {"params", realm::params_to_json(spec.criterion, spec.base)},
                          {"betaRule", swp_beta_rule},
                          {"source", swp_src.describe()},
                          {"axes", axes},
                          {"discriminants", grid.discriminants}};
                emit(swp_out, j.dump(2) + "\n");
            }
        } else if (*rep) {
            std::vector<int> which = rep_which == "all" ? std::vector<int>{1, 2, 3}
                                                         : std::vector<int>{std::stoi(rep_which)};
            std::string text;
            json arr = json::array();
            for (int n : which) {
                const auto r = realm::reproduce_example(n);
                text += reproduce_text(r);
                arr.push_back(reproduce_json(r));
            }
            emit(rep_out, rep_format == "json" ? arr.dump(2) + "\n" : text);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
