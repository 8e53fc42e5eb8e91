#include "greedylab/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <json.hpp>

#include "greedylab/errors.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/parameters.hpp"
#include "greedylab/report.hpp"
#include "greedylab/thresholds.hpp"

namespace greedylab {
namespace {

using json = nlohmann::json;

struct Input {
    std::string id;
    BasisSystem basis;
    std::set<Property> tags;
};

Input resolve_input(const RunConfig& cfg, const CommandOptions& opt) {
    if (!opt.basis_file.empty()) {
        return Input{std::filesystem::path(opt.basis_file).stem().string(), load_basis_file(opt.basis_file), {}};
    }
    if (opt.basis_id.empty()) throw UsageError("no basis given (pass a catalog id or --basis-file)");
    CatalogEntry entry = resolve_basis(opt.basis_id, cfg.catalog.seed);
    return Input{entry.id, std::move(entry.basis), std::move(entry.known_properties)};
}

ProbeConfig probe_config(const RunConfig& cfg) {
    ProbeConfig pc;
    pc.seed = cfg.probe.seed;
    pc.random_count = cfg.probe.random_count;
    pc.support_cap = cfg.probe.support_cap;
    pc.s = cfg.grid.s;
    pc.levels = cfg.grid.levels;
    return pc;
}

EnumerationLimits enumeration_limits(const RunConfig& cfg, bool require_exact) {
    EnumerationLimits lim;
    lim.subset_cap = cfg.limits.subset_cap;
    lim.vertex_cap = cfg.limits.vertex_cap;
    lim.seed = cfg.probe.seed;
    lim.require_exact = require_exact;
    return lim;
}

template <typename F>
int guarded(F&& body, std::ostream& err) {
    try {
        return body();
    } catch (const CapacityError& e) {
        err << "capacity exceeded [" << e.cap() << "]: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedOracle& e) {
        err << "unsupported: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.outputs.dir) / name).string();
}

json cell_json(const std::string& cell) {
    if (cell.empty()) return nullptr;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end && *end == '\0' && std::isfinite(v)) return v;
    return cell;
}

// Writes <name>.csv and/or <name>.json according to the configured formats.
void emit_table(const RunConfig& cfg, const std::string& name, const CsvTable& table) {
    if (cfg.wants("csv")) write_text_file(out_path(cfg, name + ".csv"), table.text());
    if (cfg.wants("json")) {
        json rows = json::array();
        for (const auto& row : table.rows()) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[table.header()[i]] = cell_json(row[i]);
            rows.push_back(obj);
        }
        write_text_file(out_path(cfg, name + ".json"), rows.dump(2) + "\n");
    }
}

void emit_plot(const RunConfig& cfg, const std::string& name, const std::vector<double>& x,
               const std::vector<double>& y) {
    write_text_file(out_path(cfg, "plot_" + name + ".csv"), plot_csv(x, y));
}

std::string threshold_mode(const EstimateValue& e) {
    return e.exhaustive_grid ? "lower_bound:exhaustive_grid" : to_string(e.mode);
}

}  // namespace

int effective_m_max(int requested, int n, std::ostream& err) {
    if (requested <= 0) return n;
    if (requested > n) {
        err << "warning: m_max " << requested << " exceeds the dimension " << n << "; clipped to " << n << '\n';
        return n;
    }
    return requested;
}

int cmd_params(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        cfg.validate();
        const Input in = resolve_input(cfg, opt);
        const BasisSystem& b = in.basis;
        const int n = b.size();
        const int M = effective_m_max(cfg.limits.m_max, n, err);
        const EnumerationLimits lim = enumeration_limits(cfg, opt.require_exact);
        ProbeFamily probes = ProbeFamily::build(n, probe_config(cfg));

        const ParamTable phi = fundamental_function(b, M, lim);
        const ParamTable mu = democracy_parameter(b, M, lim);
        const ParamTable k = unconditionality_constants(b, M, probes, lim);
        for (auto& v : witness_probes(b, k)) probes.add(std::move(v));
        const EstimateValue succ = succ_constant(b, n, lim);
        const EstimateValue qg = quasi_greedy_constant(b, probes);
        const EstimateValue tqg = truncation_qg_constant(b, probes);

        WitnessStore store;
        CsvTable table({"param_id", "m", "value", "mode", "witness_ref"});
        for (const ParamTable* t : {&phi, &mu, &k}) {
            std::vector<double> xs, ys;
            for (int m = 1; m <= t->m_max(); ++m) {
                const auto& e = t->at(m);
                const std::string ref = store.add(t->param_id, std::to_string(m), e.value, e.witness);
                table.add_row({t->param_id, std::to_string(m), format_double(e.value), to_string(e.mode), ref});
                xs.push_back(m);
                ys.push_back(e.value);
            }
            emit_plot(cfg, t->param_id, xs, ys);
        }
        const std::pair<std::string_view, const EstimateValue*> scalars[] = {
            {param_id::succ, &succ}, {param_id::quasi_greedy, &qg}, {param_id::truncation_qg, &tqg}};
        for (const auto& [id, e] : scalars) {
            const std::string ref = store.add(std::string(id), "sup", e->value, e->witness);
            table.add_row({std::string(id), "", format_double(e->value), to_string(e->mode), ref});
        }
        table.add_row({"max_vector_norm", "", format_double(b.max_vector_norm()), "exact",
                       store.add("max_vector_norm", "sup", b.max_vector_norm(), Witness{})});
        table.add_row({"max_dual_norm", "", format_double(b.max_dual_norm()),
                       b.dual_norm_exact() ? "exact" : "lower_bound",
                       store.add("max_dual_norm", "sup", b.max_dual_norm(), Witness{})});
        emit_table(cfg, "params", table);
        write_text_file(out_path(cfg, "witnesses.json"), store.to_json_text(in.id));
        for (const auto& w : b.warnings()) err << "warning: " << w << '\n';
        out << "params for " << in.id << " (n=" << n << ", m_max=" << M << ") written to " << cfg.outputs.dir << '\n';
        out << "  succ " << format_double(succ.value) << " [" << to_string(succ.mode) << "]  quasi_greedy "
            << format_double(qg.value) << "  truncation_qg " << format_double(tqg.value) << '\n';
        return kExitOk;
    }, err);
}

int cmd_thresholds(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        cfg.validate();
        const Input in = resolve_input(cfg, opt);
        const BasisSystem& b = in.basis;
        const ThresholdGrid grid(cfg.grid.s, cfg.grid.K);
        std::optional<ThresholdTables> tables;
        try {
            tables = exact_grid_oracle(b, grid, cfg.grid.levels);
        } catch (const CapacityError& e) {
            if (opt.require_exact) throw;
            err << "note: " << e.what() << "; using probe estimates\n";
            const ProbeFamily probes =
                ProbeFamily::build(b.size(), probe_config(cfg)).snapped_to_grid(cfg.grid.s, cfg.grid.levels);
            tables = probe_estimate(b, grid, probes);
        }
        WitnessStore store;
        CsvTable table({"func_id", "a", "raw_value", "envelope_value", "mode", "witness_ref"});
        for (auto f : {ThresholdFunction::lambda, ThresholdFunction::theta, ThresholdFunction::phi}) {
            const FunctionTable& t = tables->get(f);
            std::vector<double> xs, ys;
            for (int k = 1; k <= t.size(); ++k) {
                const auto& e = t.raw[static_cast<std::size_t>(k - 1)];
                const std::string ref = store.add(to_string(f), std::to_string(k), e.value, e.witness);
                table.add_row({to_string(f), format_double(grid.point(k)), format_double(e.value),
                               format_double(t.envelope_at(k)), threshold_mode(e), ref});
                xs.push_back(grid.point(k));
                ys.push_back(t.envelope_at(k));
            }
            emit_plot(cfg, to_string(f), xs, ys);
        }
        emit_table(cfg, "thresholds", table);
        write_text_file(out_path(cfg, "witnesses.json"), store.to_json_text(in.id));
        out << "thresholds for " << in.id << " (s=" << format_double(grid.s()) << ", K=" << grid.K() << ", "
            << (tables->lambda.exhaustive_grid() ? "exhaustive grid" : "probe estimate") << ") written to "
            << cfg.outputs.dir << '\n';
        return kExitOk;
    }, err);
}

int cmd_lebesgue(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        cfg.validate();
        const Input in = resolve_input(cfg, opt);
        const BasisSystem& b = in.basis;
        const int M = effective_m_max(cfg.limits.m_max, b.size(), err);
        const ProbeFamily probes = ProbeFamily::build(b.size(), probe_config(cfg));
        LebesgueOptions lo;
        lo.sigma.seed = cfg.probe.seed;
        const LebesgueTable L = lebesgue_constants(b, probes, M, lo);
        const EstimateValue cg = greedy_constant(L);
        WitnessStore store;
        CsvTable table({"m", "sigma_mode", "L_m_value", "witness_ref"});
        std::vector<double> xs, ys;
        for (int m = 1; m <= L.table.m_max(); ++m) {
            const auto& e = L.table.at(m);
            const std::string ref = store.add("lebesgue", std::to_string(m), e.value, e.witness);
            table.add_row({std::to_string(m), to_string(L.sigma_mode[static_cast<std::size_t>(m - 1)]),
                           format_double(e.value), ref});
            xs.push_back(m);
            ys.push_back(e.value);
        }
        emit_table(cfg, "lebesgue", table);
        emit_plot(cfg, "lebesgue", xs, ys);
        write_text_file(out_path(cfg, "witnesses.json"), store.to_json_text(in.id));
        out << "lebesgue constants for " << in.id << " (sigma via " << to_string(sigma_method(b))
            << ") written to " << cfg.outputs.dir << '\n';
        out << "  greedy constant lower bound " << format_double(cg.value) << '\n';
        return kExitOk;
    }, err);
}

namespace {

void add_table(ReevaluationSummary& s, const BasisSystem& b, const ParamTable& t) {
    for (const auto& e : t.entries) s.add(e.value, reevaluate(b, t.param_id, e.witness));
}

void add_thresholds(ReevaluationSummary& s, const BasisSystem& b, const ThresholdTables& t) {
    for (auto f : {ThresholdFunction::lambda, ThresholdFunction::theta, ThresholdFunction::phi}) {
        for (const auto& e : t.get(f).raw) {
            if (e.witness.coef.size() > 0) s.add(e.value, reevaluate(b, f, e.witness));
        }
    }
}

int strict_range_of(const BasisSystem& b, int M) {
    if (b.space().kind() != SpaceKind::l2_blocks) return M;
    const auto& blocks = b.space().block_sizes();
    return std::min(M, *std::max_element(blocks.begin(), blocks.end()));
}

double domination_exponent(const BasisSystem& b) {
    const QuasiNorm& s = b.space();
    if (s.kind() == SpaceKind::lp && std::isfinite(s.p()) && b.is_diagonal()) return s.p();
    return 1.0;
}

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& cfg, bool inject_fault) {
    cfg.validate();
    std::vector<CheckResult> results;
    const ThresholdGrid grid(cfg.grid.s, cfg.grid.K);
    const EnumerationLimits lim = enumeration_limits(cfg, false);
    std::vector<KtEntry> kt;

    std::vector<CatalogEntry> catalog = make_catalog(cfg.catalog.dim, cfg.catalog.seed);
    for (const auto& path : cfg.catalog.custom_basis_files) {
        catalog.push_back(CatalogEntry{"file:" + std::filesystem::path(path).stem().string(), load_basis_file(path), {}});
    }
    for (const auto& entry : catalog) {
        const BasisSystem& b = entry.basis;
        const int n = b.size();
        const int M = cfg.limits.m_max <= 0 ? n : std::min(cfg.limits.m_max, n);
        ProbeFamily probes = ProbeFamily::build(n, probe_config(cfg));
        const ParamTable mu = democracy_parameter(b, M, lim);
        const ParamTable phi = fundamental_function(b, M, lim);
        const ParamTable k = unconditionality_constants(b, M, probes, lim);
        for (auto& v : witness_probes(b, k)) probes.add(std::move(v));
        const EstimateValue succ = succ_constant(b, n, lim);
        const EstimateValue qg = quasi_greedy_constant(b, probes);
        const EstimateValue tqg = truncation_qg_constant(b, probes);
        const ThresholdTables tables = probe_estimate(b, grid, probes.snapped_to_grid(cfg.grid.s, cfg.grid.levels));
        LebesgueOptions lo;
        lo.sigma.seed = cfg.probe.seed;
        const LebesgueTable L = lebesgue_constants(b, probes, M, lo);

        ReevaluationSummary re;
        for (const ParamTable* t : {&phi, &mu, &k}) add_table(re, b, *t);
        re.add(succ.value, reevaluate(b, param_id::succ, succ.witness));
        re.add(qg.value, reevaluate(b, param_id::quasi_greedy, qg.witness));
        re.add(tqg.value, reevaluate(b, param_id::truncation_qg, tqg.witness));
        add_thresholds(re, b, tables);
        for (const auto& e : L.table.entries) re.add(e.value, reevaluate_lebesgue(b, e.witness));
        results.push_back(check_witnesses(entry.id, re));

        results.push_back(check_theta_le_phi(entry.id, tables));
        results.push_back(check_monotone(entry.id, tables));
        NuccInputs nucc;
        nucc.lambda = &tables.lambda;
        nucc.k = &k;
        nucc.p = b.space().p_convexity();
        nucc.c_u = EstimateValue{1.0, EstimateMode::lower_bound, false, {}};
        nucc.c = b.max_dual_norm();
        nucc.c_exact = b.dual_norm_exact();
        nucc.d = b.max_vector_norm();
        results.push_back(check_nucc(entry.id, nucc));
        results.push_back(check_lebesgue_equivalence(
            entry.id, LebesgueInputs{&L, &mu, &k,
                                     entry.has(Property::unconditional) && entry.has(Property::democratic)}));
        results.push_back(check_lorentz_domination(entry.id, b, domination_exponent(b), b.space().p_convexity(),
                                                   probes));
        KtEntry kte;
        kte.basis_id = entry.id;
        kte.unconditional = entry.has(Property::unconditional);
        kte.democratic = entry.has(Property::democratic);
        kte.non_democratic = entry.has(Property::non_democratic);
        kte.dim = n;
        kte.greedy_constant = greedy_constant(L);
        kte.mu = mu;
        kte.strict_range = strict_range_of(b, M);
        kt.push_back(std::move(kte));
    }
    results.push_back(check_kt_dichotomy(kt));

    // Exhaustive-grid checks on the four-dimensional catalog.
    bool fault_pending = inject_fault;
    for (const auto& entry : make_catalog(4, cfg.catalog.seed)) {
        const BasisSystem& b = entry.basis;
        ThresholdTables exact = exact_grid_oracle(b, grid, cfg.grid.levels);
        if (fault_pending) {
            exact.theta.raw.front().value = exact.phi.raw.front().value + 1.0;
            fault_pending = false;
        }
        const EstimateValue c_u = compute_c_u(b, cfg.grid.s, cfg.grid.levels);
        EnumerationLimits small = lim;
        const ProbeFamily probes = ProbeFamily::build(b.size(), probe_config(cfg));
        const ParamTable k = unconditionality_constants(b, 0, probes, small);
        const ThresholdTables probe_tables =
            probe_estimate(b, grid, probes.snapped_to_grid(cfg.grid.s, cfg.grid.levels));
        const double p = b.space().p_convexity();

        ReevaluationSummary re;
        if (!inject_fault) add_thresholds(re, b, exact);
        add_thresholds(re, b, probe_tables);
        add_table(re, b, k);
        re.add(c_u.value, reevaluate_c_u(b, c_u.witness));
        results.push_back(check_witnesses(entry.id, re));

        results.push_back(check_theta_le_phi(entry.id, exact));
        results.push_back(check_monotone(entry.id, exact));
        results.push_back(check_nun_chain(entry.id, exact, p, c_u));
        NuccInputs nucc;
        nucc.lambda = &exact.lambda;
        nucc.k = &k;
        nucc.p = p;
        nucc.c_u = c_u;
        nucc.c = b.max_dual_norm();
        nucc.c_exact = b.dual_norm_exact();
        nucc.d = b.max_vector_norm();
        results.push_back(check_nucc(entry.id, nucc));
        results.push_back(check_oracle_dominance(entry.id, probe_tables, exact));
    }
    sort_results(results);
    return results;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const auto results = run_verification(cfg, opt.inject_fault);
        write_text_file(out_path(cfg, "verify.json"), check_results_to_json_text(results));
        out << summary_table(results);
        const bool failed = std::any_of(results.begin(), results.end(),
                                        [](const CheckResult& r) { return r.verdict == Verdict::fail; });
        return failed ? kExitCheckFailed : kExitOk;
    }, err);
}

}  // namespace greedylab
