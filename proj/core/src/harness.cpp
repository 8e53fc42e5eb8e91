#include "greedylab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "greedylab/errors.hpp"

namespace greedylab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::recorded: return "recorded";
    }
    return "unknown";
}

double constant_p_s(double p, double s) { return s * std::pow(1.0 - std::pow(s, -p), -1.0 / p); }

double nun_chain_constant(double p, double c_u) {
    return 5.0 * std::pow(2.0, 1.0 / p + 5.0) * std::pow(std::pow(2.0, p) - 1.0, -1.0 / p) * c_u;
}

double nucc_bound(double p, double C, double lambda_top, double lambda_at_m, int m, double c, double d) {
    const double main = 2.0 * std::pow(C, p) * std::pow(lambda_top, p) * std::log2(static_cast<double>(m)) *
                        std::pow(lambda_at_m, p);
    return std::pow(main + 2.0 * std::pow(c * d, p), 1.0 / p);
}

namespace {

void require_same_grid(const FunctionTable& a, const FunctionTable& b) {
    if (!(a.grid == b.grid) || a.raw.size() != b.raw.size()) throw UsageError("threshold tables use different grids");
}

CheckResult make_result(std::string check_id, std::string basis_id) {
    CheckResult r;
    r.check_id = std::move(check_id);
    r.basis_id = std::move(basis_id);
    return r;
}

std::string key_m(const char* prefix, int m) { return std::string(prefix) + "_m" + std::to_string(m); }

double max_drop(const FunctionTable& t) {
    // value at a larger point minus value at the next smaller point
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < t.raw.size(); ++k) worst = std::max(worst, t.raw[k].value - t.raw[k + 1].value);
    return worst;
}

}  // namespace

CheckResult check_theta_le_phi(const std::string& basis_id, const ThresholdTables& tables) {
    require_same_grid(tables.theta, tables.phi);
    CheckResult r = make_result("theta_le_phi", basis_id);
    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < tables.theta.raw.size(); ++k) {
        excess = std::max(excess, tables.theta.raw[k].value - tables.phi.raw[k].value);
    }
    r.details["max_theta_minus_phi"] = excess;
    r.details["points"] = static_cast<double>(tables.theta.raw.size());
    r.details["exhaustive_grid"] = tables.theta.exhaustive_grid() && tables.phi.exhaustive_grid() ? 1.0 : 0.0;
    r.verdict = excess <= 0.0 ? Verdict::pass : Verdict::fail;
    return r;
}

CheckResult check_monotone(const std::string& basis_id, const ThresholdTables& tables) {
    constexpr double kTol = 1e-12;
    CheckResult r = make_result("monotone", basis_id);
    const bool exhaustive =
        tables.lambda.exhaustive_grid() && tables.theta.exhaustive_grid() && tables.phi.exhaustive_grid();
    bool ok = true;
    for (const FunctionTable* t : {&tables.lambda, &tables.theta, &tables.phi}) {
        const double drop = max_drop(*t);
        r.details[to_string(t->func) + "_max_raw_drop"] = drop;
        ok = ok && drop <= kTol;
        for (std::size_t k = 0; k + 1 < t->envelope.size(); ++k) {
            if (t->envelope[k] > t->envelope[k + 1]) ok = false;
        }
    }
    r.details["exhaustive_grid"] = exhaustive ? 1.0 : 0.0;
    r.details["tolerance"] = kTol;
    if (exhaustive) {
        r.verdict = ok ? Verdict::pass : Verdict::fail;
    } else {
        r.verdict = Verdict::recorded;
        r.notes.push_back("probe tables: raw monotonicity recorded, envelope used downstream");
    }
    return r;
}

CheckResult check_nun_chain(const std::string& basis_id, const ThresholdTables& tables, double p,
                            const EstimateValue& c_u) {
    require_same_grid(tables.lambda, tables.theta);
    require_same_grid(tables.theta, tables.phi);
    CheckResult r = make_result("nun_chain", basis_id);
    const auto& pts = tables.lambda.grid.points();
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double lam = tables.lambda.raw[k].value, th = tables.theta.raw[k].value, ph = tables.phi.raw[k].value;
        if (th > 0.0) r1 = std::max(r1, lam / th);
        if (ph > 0.0) r2 = std::max(r2, th / ph);
        if (lam > 0.0) r3 = std::max(r3, pts[k] * ph / lam);
    }
    const double bound = nun_chain_constant(p, c_u.value);
    r.details["r1_lambda_over_theta"] = r1;
    r.details["r2_theta_over_phi"] = r2;
    r.details["r3_a_phi_over_lambda"] = r3;
    r.details["r3_bound"] = bound;
    r.details["p"] = p;
    r.constants_used["C_u"] = {c_u.value, "max ||sum a_n x_n|| / ||1_{eps,A}|| over grid a with |a_n| <= 1"};
    r.constants_used["nun_chain"] = {bound, "5*2^(1/p+5)*(2^p-1)^(-1/p)*C_u"};
    r.constants_used["C_p_s"] = {constant_p_s(p, tables.lambda.grid.s()), "s*(1-s^(-p))^(-1/p)"};
    r.notes.push_back("lambda <~ theta involves C_s, which is not computable here; r1 is recorded only");
    const bool hard = tables.lambda.exhaustive_grid() && tables.theta.exhaustive_grid() &&
                      tables.phi.exhaustive_grid() && c_u.exhaustive_grid;
    if (hard) {
        r.verdict = (r3 <= bound && r2 <= 1.0) ? Verdict::pass : Verdict::fail;
    } else {
        r.verdict = Verdict::recorded;
    }
    return r;
}

CheckResult check_nucc(const std::string& basis_id, const NuccInputs& in) {
    if (!in.lambda || !in.k) throw UsageError("check_nucc: missing tables");
    CheckResult r = make_result("nucc", basis_id);
    const FunctionTable& lam = *in.lambda;
    const double a_min = lam.grid.points().back();
    const double lambda_top = lam.envelope.front();
    bool hard = lam.exhaustive_grid() && in.c_u.exhaustive_grid && in.c_exact;
    bool within = true, finite = true;
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    int used = 0;
    for (int m = 2; m <= in.k->m_max(); ++m) {
        const double a = std::pow(static_cast<double>(m), -1.0 / in.p);
        if (a < a_min) {
            r.notes.push_back("m=" + std::to_string(m) + " skipped: m^(-1/p) below the grid");
            continue;
        }
        const int idx = lam.grid.index_at_or_below(a);
        const double lam_m = lam.envelope_at(idx);
        const double km = in.k->value(m);
        const double ratio = km / (lam_m * std::pow(std::log2(static_cast<double>(m)), 1.0 / in.p));
        const double bound = nucc_bound(in.p, in.c_u.value, lambda_top, lam_m, m, in.c, in.d);
        r.details[key_m("ratio", m)] = ratio;
        r.details[key_m("bound", m)] = bound;
        r.details[key_m("k", m)] = km;
        if (!std::isfinite(ratio)) finite = false;
        if (km > bound) within = false;
        if (in.k->at(m).mode != EstimateMode::exact) hard = false;
        rmax = std::max(rmax, ratio);
        rmin = std::min(rmin, ratio);
        ++used;
    }
    r.constants_used["C_u"] = {in.c_u.value, "max ||sum a_n x_n|| / ||1_{eps,A}|| over grid a with |a_n| <= 1"};
    r.constants_used["lambda_top"] = {lambda_top, "lambda envelope at a_1, standing in for lambda(1^-)"};
    r.constants_used["c"] = {in.c, "max ||x_j^*||"};
    r.constants_used["d"] = {in.d, "max ||x_j||"};
    r.constants_used["bound"] = {0.0, "[2 C_u^p lambda(1^-)^p log2(m) lambda(m^(-1/p))^p + 2 (c d)^p]^(1/p)"};
    r.details["p"] = in.p;
    r.details["m_used"] = used;
    if (used == 0) {
        r.verdict = Verdict::recorded;
        r.notes.push_back("no m in range");
        return r;
    }
    r.details["ratio_max"] = rmax;
    r.details["ratio_min"] = rmin;
    r.details["ratio_spread"] = rmax / rmin;
    r.details["hard"] = hard ? 1.0 : 0.0;
    if (!finite) {
        r.verdict = Verdict::fail;
        r.notes.push_back("non-finite ratio");
    } else if (hard) {
        r.verdict = within ? Verdict::pass : Verdict::fail;
    } else {
        r.verdict = Verdict::recorded;
    }
    return r;
}

CheckResult check_lebesgue_equivalence(const std::string& basis_id, const LebesgueInputs& in) {
    if (!in.lebesgue || !in.mu || !in.k) throw UsageError("check_lebesgue_equivalence: missing tables");
    CheckResult r = make_result("lebesgue_equivalence", basis_id);
    const int M = std::min({in.lebesgue->table.m_max(), in.mu->m_max(), in.k->m_max()});
    bool in_range = true;
    bool sound = in.mu->exact() && in.k->exact();
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (int m = 1; m <= M; ++m) {
        const double ratio = in.lebesgue->table.value(m) / std::max(in.mu->value(m), in.k->value(m));
        r.details[key_m("ratio", m)] = ratio;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        if (ratio < 1.0 / 8.0 || ratio > 8.0) in_range = false;
        if (in.lebesgue->sigma_mode[static_cast<std::size_t>(m - 1)] != EstimateMode::exact) sound = false;
    }
    r.details["ratio_min"] = rmin;
    r.details["ratio_max"] = rmax;
    r.details["window_low"] = 1.0 / 8.0;
    r.details["window_high"] = 8.0;
    if (in.unconditional_democratic && sound) {
        r.verdict = in_range ? Verdict::pass : Verdict::fail;
    } else {
        r.verdict = Verdict::recorded;
        if (!sound) r.notes.push_back("sigma, mu or k not exact");
    }
    return r;
}

CheckResult check_kt_dichotomy(const std::vector<KtEntry>& entries) {
    CheckResult r = make_result("kt_dichotomy", "catalog");
    bool any = false, ok = true;
    for (const auto& e : entries) {
        if (e.unconditional && e.democratic) {
            any = true;
            r.details["C_g:" + e.basis_id] = e.greedy_constant.value;
            if (e.greedy_constant.value > 8.0) ok = false;
        }
        if (e.unconditional && e.non_democratic) {
            any = true;
            const int M = e.mu.m_max();
            if (M == 0) continue;
            r.details["mu_first:" + e.basis_id] = e.mu.value(1);
            r.details["mu_last:" + e.basis_id] = e.mu.value(M);
            if (!e.mu.exact()) {
                r.notes.push_back(e.basis_id + ": democracy table not exact, growth recorded only");
                continue;
            }
            bool strict = true, nondecreasing = true;
            for (int m = 2; m <= M; ++m) {
                if (e.mu.value(m) < e.mu.value(m - 1)) nondecreasing = false;
                if (m <= e.strict_range && !(e.mu.value(m) > e.mu.value(m - 1) * (1.0 + 1e-12))) strict = false;
            }
            const double growth = e.mu.value(M) / e.mu.value(1);
            r.details["mu_growth:" + e.basis_id] = growth;
            r.details["strict_range:" + e.basis_id] = e.strict_range;
            if (!strict || !nondecreasing) ok = false;
            if (e.dim >= 10 && growth < 1.4) ok = false;
            if (e.dim < 10) r.notes.push_back(e.basis_id + ": growth threshold applies from dim 10");
        }
    }
    if (!any) {
        r.verdict = Verdict::recorded;
        r.notes.push_back("no tagged catalog entries");
    } else {
        r.verdict = ok ? Verdict::pass : Verdict::fail;
    }
    return r;
}

CheckResult check_lorentz_domination(const std::string& basis_id, const BasisSystem& basis, double r_exp, double q,
                                     const ProbeFamily& probes) {
    if (probes.empty()) throw UsageError("check_lorentz_domination: empty probe family");
    CheckResult r = make_result("lorentz_domination", basis_id);
    const QuasiNorm& space = basis.space();
    const int n = basis.size();
    double C = 0.0;
    const bool c_exact = n <= 12;
    if (c_exact) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            SignedSet set;
            for (int i = 0; i < n; ++i) {
                if ((mask >> i) & 1U) set.indices.push_back(i);
            }
            const int k = static_cast<int>(set.indices.size());
            const double scale = std::pow(static_cast<double>(k), 1.0 / r_exp);
            for (std::uint64_t sg = 0; sg < (std::uint64_t{1} << (k - 1)); ++sg) {
                set.signs.assign(static_cast<std::size_t>(k), 1);
                for (int i = 1; i < k; ++i) {
                    if ((sg >> (i - 1)) & 1U) set.signs[static_cast<std::size_t>(i)] = -1;
                }
                C = std::max(C, space.norm(indicator(basis, set)) / scale);
            }
        }
    } else {
        for (const auto& c : probes.probes()) {
            if (!((c.array() == 0.0) || (c.array().abs() == 1.0)).all()) continue;
            const auto k = static_cast<double>((c.array() != 0.0).count());
            if (k == 0) continue;
            C = std::max(C, space.norm(synthesize(basis, c)) / std::pow(k, 1.0 / r_exp));
        }
        r.notes.push_back("C sampled over sign probes");
    }
    double single = 0.0;
    for (int j = 0; j < n; ++j) single = std::max(single, space.norm(basis.vectors().col(j).eval()));
    double D = single;
    for (const auto& a : probes.probes()) {
        const double denom = lorentz_sequence_norm(a, r_exp, q);
        if (denom == 0.0) continue;
        // NaN from a non-finite probe must survive the max
        const double ratio = space.norm(synthesize(basis, a)) / denom;
        if (!(ratio <= D)) D = ratio;
    }
    r.details["C"] = C;
    r.details["C_exact"] = c_exact ? 1.0 : 0.0;
    r.details["D"] = D;
    r.details["single_coordinate_ratio"] = single;
    r.details["r"] = r_exp;
    r.details["q"] = q;
    r.verdict = std::isfinite(D) && D >= single ? Verdict::recorded : Verdict::fail;
    return r;
}

CheckResult check_oracle_dominance(const std::string& basis_id, const ThresholdTables& probe,
                                   const ThresholdTables& exhaustive) {
    CheckResult r = make_result("oracle_dominance", basis_id);
    double worst = -std::numeric_limits<double>::infinity();
    for (auto f : {ThresholdFunction::lambda, ThresholdFunction::theta, ThresholdFunction::phi}) {
        const FunctionTable& p = probe.get(f);
        const FunctionTable& e = exhaustive.get(f);
        require_same_grid(p, e);
        double local = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < p.raw.size(); ++k) local = std::max(local, p.raw[k].value - e.raw[k].value);
        r.details[to_string(f) + "_max_probe_minus_exhaustive"] = local;
        worst = std::max(worst, local);
    }
    if (!exhaustive.lambda.exhaustive_grid()) throw UsageError("check_oracle_dominance: reference is not exhaustive");
    r.verdict = worst <= 0.0 ? Verdict::pass : Verdict::fail;
    return r;
}

void ReevaluationSummary::add(double reported, double recomputed) {
    const double scale = std::max({1e-300, std::abs(reported), std::abs(recomputed)});
    const double rel = std::abs(reported - recomputed) / scale;
    max_relative_error = std::isnan(rel) ? std::numeric_limits<double>::infinity() : std::max(max_relative_error, rel);
    ++checked;
}

CheckResult check_witnesses(const std::string& basis_id, const ReevaluationSummary& summary, double tolerance) {
    CheckResult r = make_result("witness_reevaluation", basis_id);
    r.details["max_relative_error"] = summary.max_relative_error;
    r.details["witnesses"] = summary.checked;
    r.details["tolerance"] = tolerance;
    r.verdict = summary.max_relative_error <= tolerance ? Verdict::pass : Verdict::fail;
    return r;
}

void sort_results(std::vector<CheckResult>& results) {
    std::stable_sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
        return std::tie(a.check_id, a.basis_id) < std::tie(b.check_id, b.basis_id);
    });
}

}  // namespace greedylab
