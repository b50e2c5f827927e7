#include "fecon/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "fecon/behavior.hpp"
#include "fecon/bid_engine.hpp"
#include "fecon/csv.hpp"
#include "fecon/dynamics.hpp"
#include "fecon/errors.hpp"
#include "fecon/exchange.hpp"
#include "fecon/industrialization.hpp"
#include "fecon/valuation.hpp"

namespace fecon::scenario {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void invariant_error(const std::string& message) {
    throw ValidationError(ErrorKind::ScenarioInvariant, message);
}

const json& child(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) invariant_error(std::string("missing key '") + key + "'");
    return *it;
}

double num(const json& j, const char* key) {
    const json& v = child(j, key);
    if (!v.is_number()) invariant_error(std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) invariant_error(std::string("key '") + key + "' must be a number");
    return it->get<double>();
}

long integer(const json& j, const char* key) {
    const json& v = child(j, key);
    if (!v.is_number_integer()) {
        invariant_error(std::string("key '") + key + "' must be an integer");
    }
    return v.get<long>();
}

long integer_or(const json& j, const char* key, long fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer()) {
        invariant_error(std::string("key '") + key + "' must be an integer");
    }
    return it->get<long>();
}

std::vector<double> num_array(const json& j, const char* key) {
    const json& v = child(j, key);
    if (!v.is_array() || v.empty()) {
        invariant_error(std::string("key '") + key + "' must be a non-empty array");
    }
    std::vector<double> values;
    values.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_number()) {
            invariant_error(std::string("key '") + key + "' must hold numbers");
        }
        values.push_back(item.get<double>());
    }
    return values;
}

std::vector<std::vector<double>> matrix_of(const json& v, const char* key) {
    if (!v.is_array() || v.empty()) {
        invariant_error(std::string("key '") + key + "' must be a non-empty matrix");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(v.size());
    for (const auto& row : v) {
        if (!row.is_array()) {
            invariant_error(std::string("key '") + key + "' must hold row arrays");
        }
        std::vector<double> values;
        values.reserve(row.size());
        for (const auto& item : row) {
            if (!item.is_number()) {
                invariant_error(std::string("key '") + key + "' must hold numbers");
            }
            values.push_back(item.get<double>());
        }
        rows.push_back(std::move(values));
    }
    return rows;
}

std::vector<int> int_array(const json& v, const char* key) {
    if (!v.is_array()) invariant_error(std::string("key '") + key + "' must be an array");
    std::vector<int> values;
    values.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_number_integer()) {
            invariant_error(std::string("key '") + key + "' must hold integers");
        }
        values.push_back(item.get<int>());
    }
    return values;
}

valuation::EventMask event_mask(const json& v, int states, const char* key) {
    valuation::EventMask mask = 0;
    if (!v.is_array()) invariant_error(std::string("key '") + key + "' must list state indices");
    for (const auto& item : v) {
        if (!item.is_number_integer()) {
            invariant_error(std::string("key '") + key + "' must list state indices");
        }
        const long s = item.get<long>();
        if (s < 0 || s >= states) {
            invariant_error(std::string("key '") + key + "': state index out of range");
        }
        mask |= valuation::EventMask{1} << s;
    }
    return mask;
}

std::string cycles_string(const bid::PermutationMatrix& p) {
    std::ostringstream out;
    for (const auto& cycle : bid::cycles_of(p)) {
        out << '(';
        for (size_t k = 0; k < cycle.size(); ++k) {
            if (k > 0) out << ' ';
            out << cycle[k];
        }
        out << ')';
    }
    return out.str();
}

std::string out_path(const std::string& out_dir, const char* file) {
    return (fs::path(out_dir) / file).string();
}

// ---------------------------------------------------------------- sections

void run_behavior(const json& section, const std::string& out_dir, RunReport& report) {
    const double kappa = num_or(section, "kappa", 1.0);
    behavior::WeightingRegime regime = behavior::WeightingRegime::custom(1.0);
    const json& spec = child(section, "regime");
    if (spec.is_string()) {
        const std::string label = spec.get<std::string>();
        if (label == "weird") {
            regime = behavior::WeightingRegime::weird(kappa);
        } else if (label == "poor") {
            regime = behavior::WeightingRegime::poor(kappa);
        } else if (label == "gains") {
            regime = behavior::WeightingRegime::gains_preset();
        } else if (label == "losses") {
            regime = behavior::WeightingRegime::losses_preset();
        } else {
            invariant_error("behavior: unknown regime '" + label + "'");
        }
    } else if (spec.is_object()) {
        regime = behavior::WeightingRegime::custom(num(spec, "gamma"), kappa);
    } else {
        invariant_error("behavior: regime must be a name or an object with gamma");
    }

    std::vector<double> starts;
    const json& p0 = child(section, "p0");
    if (p0.is_number()) {
        starts.push_back(p0.get<double>());
    } else if (p0.is_array()) {
        for (const auto& item : p0) starts.push_back(item.get<double>());
    } else {
        invariant_error("behavior: p0 must be a number or an array");
    }
    const long max_iter = integer_or(section, "max_iter", 10000);
    const double tol = num_or(section, "tol", 1e-9);

    int converged = 0, trapped = 0, escaped = 0, oscillating = 0;
    {
        csv::Writer trajectories(out_path(out_dir, "trajectories.csv"), {"series", "n", "p"});
        for (size_t s = 0; s < starts.size(); ++s) {
            const auto result =
                behavior::iterate(regime.gamma, starts[s], static_cast<int>(max_iter), tol);
            for (size_t n = 0; n < result.trajectory.size(); ++n) {
                trajectories.row(static_cast<long>(s), static_cast<long>(n),
                                 result.trajectory[n]);
            }
            switch (result.verdict) {
                case behavior::IterationVerdict::ConvergedToFixedPoint: ++converged; break;
                case behavior::IterationVerdict::TrappedAtZero: ++trapped; break;
                case behavior::IterationVerdict::EscapedToOne: ++escaped; break;
                case behavior::IterationVerdict::Oscillating:
                    ++oscillating;
                    report.warnings.push_back("behavior: oscillating trajectory from p0 = " +
                                              csv::format(starts[s]) +
                                              ", anomalous for a monotone weighting");
                    break;
            }
        }
    }
    report.files.push_back(out_path(out_dir, "trajectories.csv"));

    {
        csv::Writer summary(out_path(out_dir, "behavior_summary.csv"),
                            {"label", "gamma", "kappa", "p_star", "bias_m_over_c", "converged",
                             "trapped_at_zero", "escaped_to_one", "oscillating"});
        const std::string p_star =
            regime.fixed_pt ? csv::format(*regime.fixed_pt) : std::string();
        const std::string bias = regime.label == behavior::RegimeLabel::Custom
                                     ? std::string()
                                     : csv::format(behavior::bias_constraint(regime));
        summary.row_strings({behavior::to_string(regime.label), csv::format(regime.gamma),
                             csv::format(regime.kappa), p_star, bias,
                             csv::format(static_cast<long>(converged)),
                             csv::format(static_cast<long>(trapped)),
                             csv::format(static_cast<long>(escaped)),
                             csv::format(static_cast<long>(oscillating))});
    }
    report.files.push_back(out_path(out_dir, "behavior_summary.csv"));

    if (section.contains("outcome")) {
        const double outcome = num(section, "outcome");
        {
            csv::Writer cycle(out_path(out_dir, "cycle.csv"),
                              {"p0", "p_star", "outcome", "subjective_delta", "feeling"});
            for (double start : starts) {
                const auto account = behavior::business_cycle(start, regime.gamma, outcome);
                cycle.row(account.p0, account.p_star, account.outcome,
                          account.subjective_delta, behavior::to_string(account.feeling));
            }
        }
        report.files.push_back(out_path(out_dir, "cycle.csv"));
    }
}

void run_bid(const json& section, const std::string& out_dir, RunReport& report) {
    bid::BirkhoffDecomposition decomp;
    std::unique_ptr<bid::BistochasticMatrix> matrix;
    if (section.contains("matrix") == section.contains("terms")) {
        invariant_error("bid: provide exactly one of 'matrix' or 'terms'");
    }
    if (section.contains("matrix")) {
        matrix = std::make_unique<bid::BistochasticMatrix>(bid::BistochasticMatrix::validated(
            matrix_of(child(section, "matrix"), "matrix"), num_or(section, "tol", 1e-9)));
        decomp = bid::birkhoff_decompose(*matrix);
    } else {
        double total = 0.0;
        for (const auto& term : child(section, "terms")) {
            const double weight = num(term, "weight");
            if (!(weight > 0.0)) invariant_error("bid: term weights must be > 0");
            total += weight;
            decomp.terms.push_back(
                {weight, bid::PermutationMatrix(int_array(child(term, "perm"), "perm"))});
        }
        if (std::abs(total - 1.0) > 1e-9) {
            invariant_error("bid: term weights must sum to 1");
        }
    }

    const auto E = bid::DiagOperator::cost(num_array(section, "E"));
    const auto I = bid::DiagOperator::info(num_array(section, "I"));

    bid::SelectionReport selection;
    if (section.contains("bounds")) {
        std::vector<double> weights, budgets, lower, upper;
        const json& bounds = child(section, "bounds");
        if (bounds.size() != decomp.terms.size()) {
            invariant_error("bid: one bounds pair per term required");
        }
        for (size_t k = 0; k < decomp.terms.size(); ++k) {
            weights.push_back(decomp.terms[k].weight);
            budgets.push_back(bid::architect_budget(E, I, decomp.terms[k].perm));
            lower.push_back(num(bounds[k], "lower"));
            upper.push_back(num(bounds[k], "upper"));
        }
        selection = bid::selection_report(std::move(weights), std::move(budgets),
                                          std::move(lower), std::move(upper));
    } else {
        selection = bid::selection_report(decomp, E, I);
    }
    if (selection.pathology) {
        report.warnings.push_back("bid: threshold pathology, W+ below W-");
    }

    {
        csv::Writer rows(out_path(out_dir, "bid_selection.csv"),
                         {"beta", "weight", "budget", "b_minus", "b_plus", "class", "cycles"});
        for (size_t k = 0; k < decomp.terms.size(); ++k) {
            rows.row(static_cast<long>(k), selection.weights[k], selection.budgets[k],
                     selection.bounds[k].first, selection.bounds[k].second,
                     bid::to_string(selection.classes[k]), cycles_string(decomp.terms[k].perm));
        }
    }
    report.files.push_back(out_path(out_dir, "bid_selection.csv"));

    {
        csv::Writer summary(out_path(out_dir, "bid_summary.csv"),
                            {"terms", "w_plus", "w_minus", "w_mean", "pathology", "rom_lower",
                             "rom_upper"});
        std::string rom_lower, rom_upper;
        if (section.contains("I_theta") || section.contains("E_p")) {
            const auto rom = bid::rom_bounds(E, I, num(section, "I_theta"), num(section, "E_p"),
                                             matrix.get());
            rom_lower = csv::format(rom.first);
            rom_upper = csv::format(rom.second);
        }
        summary.row_strings({csv::format(static_cast<long>(decomp.terms.size())),
                             csv::format(selection.w_plus), csv::format(selection.w_minus),
                             csv::format(selection.w_mean), csv::format(selection.pathology),
                             rom_lower, rom_upper});
    }
    report.files.push_back(out_path(out_dir, "bid_summary.csv"));
}

void run_dynamics(const json& section, const std::string& out_dir, RunReport& report) {
    if (section.contains("outcome_sums")) {
        const auto sums = num_array(section, "outcome_sums");
        for (double sum : sums) {
            if (std::abs(sum - sums.front()) > 1e-9 * std::max(1.0, std::abs(sums.front()))) {
                invariant_error("dynamics: the supply outcome sum must stay constant along m");
            }
        }
    }
    if (section.contains("canonical") == section.contains("supply")) {
        invariant_error("dynamics: provide exactly one of 'canonical' or 'supply'/'demand'");
    }

    if (section.contains("canonical")) {
        const json& canonical = child(section, "canonical");
        const double kappa = num_or(canonical, "kappa", 1.0);
        std::string kinds = "abcd";
        if (canonical.contains("kinds")) {
            kinds.clear();
            for (const auto& item : child(canonical, "kinds")) {
                const std::string k = item.get<std::string>();
                if (k.size() != 1 || std::string("abcd").find(k) == std::string::npos) {
                    invariant_error("dynamics: canonical kinds must be a, b, c or d");
                }
                kinds += k;
            }
            std::sort(kinds.begin(), kinds.end());
            kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
        }

        std::vector<dynamics::Solution> curves;
        std::vector<std::string> header{"m"};
        for (char kind : kinds) {
            curves.push_back(dynamics::canonical_solution(kind, kappa));
            header.push_back(std::string("rho_") + kind);
        }

        std::vector<double> grid;
        if (section.contains("grid")) {
            const json& g = child(section, "grid");
            grid = dynamics::uniform_grid(num(g, "start"), num(g, "stop"),
                                          static_cast<int>(integer_or(g, "points", 512)));
        } else {
            grid = dynamics::default_grid(kappa);
        }

        {
            csv::Writer rows(out_path(out_dir, "canonical_curves.csv"), header);
            for (double m : grid) {
                std::vector<std::string> line{csv::format(m)};
                for (const auto& curve : curves) line.push_back(csv::format(curve.value(m)));
                rows.row_strings(line);
            }
        }
        report.files.push_back(out_path(out_dir, "canonical_curves.csv"));

        {
            csv::Writer summary(out_path(out_dir, "dynamics_summary.csv"),
                                {"label", "side", "kappa", "maturity_ratio", "regime",
                                 "root1_re", "root1_im", "root2_re", "root2_im"});
            for (size_t k = 0; k < curves.size(); ++k) {
                const auto& curve = curves[k];
                summary.row(std::string(1, kinds[k]), "supply", curve.kappa(),
                            curve.maturity_ratio(), dynamics::to_string(curve.regime()),
                            curve.exponent_first().real(), curve.exponent_first().imag(),
                            curve.exponent_second().real(), curve.exponent_second().imag());
            }
        }
        report.files.push_back(out_path(out_dir, "dynamics_summary.csv"));
        return;
    }

    auto parse_params = [&](const char* key, dynamics::MarketSide side) {
        const json& j = child(section, key);
        dynamics::DynamicsParams params;
        params.side = side;
        params.kappa = num(j, "kappa");
        params.c = num(j, "c");
        params.M = num(j, "M");
        params.validate();
        const auto amplitudes = num_array(j, "amplitudes");
        if (amplitudes.size() != 2) invariant_error("dynamics: amplitudes must hold two values");
        return dynamics::solve(params, amplitudes[0], amplitudes[1]);
    };
    const dynamics::Solution supply = parse_params("supply", dynamics::MarketSide::Supply);
    const dynamics::Solution demand = parse_params("demand", dynamics::MarketSide::Demand);
    for (const auto* curve : {&supply, &demand}) {
        if (curve->regime() == dynamics::RootRegime::RealRepeated) {
            report.warnings.push_back(
                "dynamics: repeated characteristic root, boundary regime");
        }
    }

    std::vector<double> grid;
    if (section.contains("grid")) {
        const json& g = child(section, "grid");
        grid = dynamics::uniform_grid(num(g, "start"), num(g, "stop"),
                                      static_cast<int>(integer_or(g, "points", 512)));
    } else {
        grid = dynamics::default_grid(std::max(std::abs(supply.kappa()),
                                               std::abs(demand.kappa())));
    }

    const auto fit = dynamics::perfect_fit_check(supply, demand, grid);
    double scale = 1.0;
    for (double m : grid) {
        scale = std::max({scale, std::abs(supply.value(m)), std::abs(demand.value(m))});
    }

    {
        csv::Writer rows(out_path(out_dir, "curves.csv"),
                         {"m", "rho_supply", "rho_demand", "fit_flag"});
        for (double m : grid) {
            const double vs = supply.value(m);
            const double vd = demand.value(m);
            rows.row(m, vs, vd, std::abs(vs - vd) <= 1e-9 * scale);
        }
    }
    report.files.push_back(out_path(out_dir, "curves.csv"));

    {
        csv::Writer summary(out_path(out_dir, "dynamics_summary.csv"),
                            {"label", "side", "kappa", "maturity_ratio", "regime", "root1_re",
                             "root1_im", "root2_re", "root2_im"});
        const std::pair<const char*, const dynamics::Solution*> rows[] = {
            {"supply", &supply}, {"demand", &demand}};
        for (const auto& [label, curve] : rows) {
            summary.row(label, label, curve->kappa(), curve->maturity_ratio(),
                        dynamics::to_string(curve->regime()), curve->exponent_first().real(),
                        curve->exponent_first().imag(), curve->exponent_second().real(),
                        curve->exponent_second().imag());
        }
    }
    report.files.push_back(out_path(out_dir, "dynamics_summary.csv"));

    {
        csv::Writer fit_csv(out_path(out_dir, "dynamics_fit.csv"), {"status", "crossings"});
        std::ostringstream crossings;
        for (size_t k = 0; k < fit.crossings.size(); ++k) {
            if (k > 0) crossings << ' ';
            crossings << csv::format(fit.crossings[k]);
        }
        fit_csv.row(dynamics::to_string(fit.status), crossings.str());
    }
    report.files.push_back(out_path(out_dir, "dynamics_fit.csv"));
}

exchange::FrameReference parse_frame(const json& j, exchange::Side side) {
    exchange::FrameReference ref{num(j, "rho"), num(j, "m"), num(j, "c"),
                                 num_or(j, "K", 0.0), num_or(j, "M", 1.0), side};
    ref.validate();
    return ref;
}

exchange::ExchangeSpec parse_exchange(const json& j) {
    exchange::ExchangeSpec spec{parse_frame(child(j, "supply"), exchange::Side::Supply),
                                parse_frame(child(j, "demand"), exchange::Side::Demand),
                                num(j, "rho_star"), num(j, "c"), num_or(j, "M", 1.0)};
    spec.validate();
    return spec;
}

void run_exchange(const json& section, const std::string& out_dir, RunReport& report) {
    const exchange::ExchangeSpec spec = parse_exchange(section);
    const auto growth = exchange::growth_report(spec);

    {
        csv::Writer rows(out_path(out_dir, "growth.csv"),
                         {"rho_star", "c", "M", "delta_K", "r", "threshold", "grows", "regime",
                          "global_capital"});
        rows.row(spec.rho_star, spec.c, spec.M, growth.delta_K, growth.r, growth.threshold,
                 growth.grows, exchange::to_string(growth.regime),
                 exchange::global_capital(spec));
    }
    report.files.push_back(out_path(out_dir, "growth.csv"));

    if (section.contains("after")) {
        const exchange::ExchangeSpec after = parse_exchange(child(section, "after"));
        {
            csv::Writer rows(out_path(out_dir, "inflation.csv"),
                             {"threshold_before", "threshold_after", "diagnosis"});
            rows.row(exchange::growth_threshold(spec.supply, spec.demand),
                     exchange::growth_threshold(after.supply, after.demand),
                     exchange::to_string(exchange::inflation_diagnostic(spec, after)));
        }
        report.files.push_back(out_path(out_dir, "inflation.csv"));
    }
}

valuation::Capacity parse_capacity(const json& j) {
    const std::string kind = child(j, "kind").get<std::string>();
    if (kind == "table") {
        const long states = integer(j, "states");
        return valuation::Capacity(static_cast<int>(states), num_array(j, "table"));
    }
    if (kind == "additive") {
        return valuation::Capacity::additive(num_array(j, "point_weights"));
    }
    if (kind == "power") {
        return valuation::Capacity::power(static_cast<int>(integer(j, "states")),
                                          num(j, "exponent"));
    }
    invariant_error("valuation: capacity kind must be table, additive or power");
}

void run_valuation(const json& section, const std::string& out_dir, RunReport& report) {
    std::vector<std::pair<std::string, std::string>> metrics;

    std::unique_ptr<valuation::Capacity> capacity;
    if (section.contains("capacity")) {
        capacity = std::make_unique<valuation::Capacity>(
            parse_capacity(child(section, "capacity")));
    }

    std::unique_ptr<valuation::ValueParams> params;
    if (section.contains("value_params")) {
        const json& vp = child(section, "value_params");
        params = std::make_unique<valuation::ValueParams>(
            valuation::ValueParams{num(vp, "rho"), num(vp, "c_gain"), num(vp, "c_loss")});
        params->validate();
    }

    double c_org = num_or(section, "c_org", -1.0);
    if (capacity && section.contains("org")) {
        const json& org_json = child(section, "org");
        valuation::OrgStructure org;
        org.states = capacity->states();
        for (const auto& dept : child(org_json, "departments")) {
            org.departments.push_back(event_mask(dept, org.states, "departments"));
        }
        for (const auto& events : child(org_json, "function_events")) {
            std::vector<valuation::EventMask> partition;
            for (const auto& event : events) {
                partition.push_back(event_mask(event, org.states, "function_events"));
            }
            org.function_events.push_back(std::move(partition));
        }
        org.validate();

        const double capacity_total = valuation::org_capacity(org, *capacity);
        metrics.emplace_back("additivity",
                             valuation::to_string(valuation::additivity_check(org, *capacity)));
        metrics.emplace_back("org_capacity", csv::format(capacity_total));
        if (c_org < 0.0) c_org = capacity_total;
    }

    if (section.contains("marketing_outcomes")) {
        valuation::OutcomeSet outcomes{num_array(section, "marketing_outcomes"),
                                       valuation::OutcomeKind::Marketing};
        metrics.emplace_back("payoff",
                             csv::format(valuation::payoff(outcomes, num(section, "capability"))));
    }

    if (section.contains("c_tech")) {
        if (c_org < 0.0) invariant_error("valuation: profitability needs c_org or an org");
        metrics.emplace_back("profitability_complexity",
                             csv::format(valuation::profitability_complexity(
                                 c_org, integer(section, "c_tech"))));
    }

    if (section.contains("realized_outcomes")) {
        if (!params) invariant_error("valuation: realized outcomes need value_params");
        valuation::OutcomeSet outcomes{num_array(section, "realized_outcomes"),
                                       valuation::OutcomeKind::Realized};
        metrics.emplace_back("project_value",
                             csv::format(valuation::project_value(outcomes, *params)));
    }

    if (section.contains("prospect")) {
        if (!capacity) invariant_error("valuation: a prospect needs a capacity");
        std::vector<valuation::WeightedOutcome> prospect;
        for (const auto& item : child(section, "prospect")) {
            prospect.push_back({num(item, "epsilon"),
                                event_mask(child(item, "event"), capacity->states(), "event")});
        }
        std::function<double(double)> value_fn = [](double e) { return e; };
        if (params) {
            const valuation::ValueParams captured = *params;
            value_fn = [captured](double e) { return valuation::outcome_value(e, captured); };
        }
        metrics.emplace_back("prospect_value",
                             csv::format(valuation::prospect_value(prospect, *capacity,
                                                                   value_fn)));
    }

    if (metrics.empty()) invariant_error("valuation: section holds nothing to compute");
    std::sort(metrics.begin(), metrics.end());
    {
        csv::Writer rows(out_path(out_dir, "valuation.csv"), {"metric", "value"});
        for (const auto& [name, value] : metrics) rows.row(name, value);
    }
    report.files.push_back(out_path(out_dir, "valuation.csv"));
}

void run_industrialization(const json& section, const std::string& out_dir,
                           RunReport& report) {
    industrial::BlockPattern pattern{
        bid::PermutationMatrix(int_array(child(section, "base"), "base")), {}};
    for (int d : int_array(child(section, "block_orders"), "block_orders")) {
        pattern.block_orders.push_back(d);
    }
    pattern.validate();

    std::vector<bid::BistochasticMatrix> blocks;
    if (section.contains("uniform_blocks") && child(section, "uniform_blocks").get<bool>()) {
        for (int i = 0; i < pattern.functions(); ++i) {
            const int d = pattern.block_orders[static_cast<size_t>(i)];
            blocks.push_back(bid::BistochasticMatrix::validated(std::vector<std::vector<double>>(
                static_cast<size_t>(d),
                std::vector<double>(static_cast<size_t>(d), 1.0 / d))));
        }
    } else {
        for (const auto& block : child(section, "blocks")) {
            blocks.push_back(bid::BistochasticMatrix::validated(matrix_of(block, "blocks")));
        }
    }
    const industrial::BlockMatrix expanded =
        industrial::block_expand(pattern, std::move(blocks));
    const auto decomp = industrial::block_birkhoff(expanded);

    const auto e_parent = num_array(section, "E");
    const auto i_parent = num_array(section, "I");
    industrial::SplitOperators splits;
    if (section.contains("E_split")) {
        splits.e_split = matrix_of(child(section, "E_split"), "E_split");
        splits.i_split = matrix_of(child(section, "I_split"), "I_split");
    } else {
        splits = industrial::uniform_split(e_parent, i_parent, expanded.pattern);
    }
    industrial::check_split_conservation(splits, e_parent, i_parent, expanded.pattern);

    std::vector<int> selected;
    if (section.contains("selected")) {
        selected = int_array(child(section, "selected"), "selected");
    } else {
        for (size_t a = 0; a < decomp.terms.size(); ++a) selected.push_back(static_cast<int>(a));
    }

    struct Epoch {
        std::string label;
        std::vector<std::pair<int, int>> flips;
    };
    std::vector<Epoch> epochs;
    if (section.contains("epochs")) {
        for (const auto& epoch : child(section, "epochs")) {
            Epoch parsed{child(epoch, "label").get<std::string>(), {}};
            for (const auto& flip : child(epoch, "flips")) {
                const auto pair = int_array(flip, "flips");
                if (pair.size() != 2) invariant_error("industrialization: flips hold [i, k]");
                parsed.flips.emplace_back(pair[0], pair[1]);
            }
            epochs.push_back(std::move(parsed));
        }
    } else {
        epochs.push_back(Epoch{"delivery", {}});
    }

    const long beta_label = integer_or(section, "beta", 0);
    {
        csv::Writer rows(out_path(out_dir, "externality.csv"),
                         {"epoch", "beta", "i", "j", "H", "class", "negative_terms"});
        for (const auto& epoch : epochs) {
            auto e_split = splits.e_split;
            for (const auto& [i, k] : epoch.flips) {
                if (i < 0 || i >= static_cast<int>(e_split.size()) || k < 0 ||
                    k >= static_cast<int>(e_split[static_cast<size_t>(i)].size())) {
                    invariant_error("industrialization: flip index out of range");
                }
                auto& cell = e_split[static_cast<size_t>(i)][static_cast<size_t>(k)];
                cell = -cell;
            }
            for (int i = 0; i < expanded.pattern.functions(); ++i) {
                const int l = expanded.pattern.base.image(i);
                std::vector<bid::BirkhoffTerm> block_terms;
                for (const auto& term : decomp.terms) {
                    block_terms.push_back(
                        {term.weight,
                         industrial::block_restrict(term.perm, expanded.pattern, i)});
                }
                const auto t_selected = industrial::technical_select(block_terms, selected);
                const auto result = industrial::externality_metric(
                    e_split[static_cast<size_t>(i)], splits.i_split[static_cast<size_t>(l)],
                    t_selected);
                rows.row(epoch.label, beta_label, static_cast<long>(i), static_cast<long>(l),
                         result.h, industrial::to_string(result.classification),
                         static_cast<long>(result.negative_terms.size()));
            }
        }
    }
    report.files.push_back(out_path(out_dir, "externality.csv"));

    if (section.contains("advantage")) {
        const json& advantage = child(section, "advantage");
        std::vector<industrial::Candidate> candidates;
        for (const auto& item : child(advantage, "candidates")) {
            industrial::Candidate candidate;
            candidate.beta = static_cast<int>(integer(item, "beta"));
            candidate.e_row = num_array(item, "E_row");
            candidate.i_row = num_array(item, "I_row");
            for (const auto& row : child(item, "T")) {
                candidate.t.push_back(int_array(row, "T"));
            }
            candidates.push_back(std::move(candidate));
        }
        const auto choice = industrial::comparative_advantage(candidates);
        if (choice.tie) {
            report.warnings.push_back(
                "industrialization: comparative advantage tie, lowest index chosen");
        }
        {
            csv::Writer rows(out_path(out_dir, "advantage.csv"),
                             {"i", "j", "chosen_beta", "H", "tie"});
            rows.row(integer(advantage, "i"), integer(advantage, "j"),
                     static_cast<long>(choice.beta), choice.h, choice.tie);
        }
        report.files.push_back(out_path(out_dir, "advantage.csv"));
    }
}

struct Section {
    const char* name;
    void (*fn)(const json&, const std::string&, RunReport&);
};

// Name order keeps the run and the manifest deterministic.
constexpr Section kSections[] = {
    {"behavior", run_behavior},
    {"bid", run_bid},
    {"dynamics", run_dynamics},
    {"exchange", run_exchange},
    {"industrialization", run_industrialization},
    {"valuation", run_valuation},
};

bool known_section(const std::string& key) {
    for (const auto& section : kSections) {
        if (key == section.name) return true;
    }
    return false;
}

} // namespace

bool RunReport::ok() const {
    return std::all_of(sections.begin(), sections.end(),
                       [](const SectionStatus& s) { return s.ok; });
}

ScenarioDoc parse_scenario(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& error) {
        throw ParseError(origin + ": parse error at byte " + std::to_string(error.byte) + ": " +
                         error.what());
    }
    if (!root.is_object()) {
        throw ValidationError(ErrorKind::ScenarioInvariant,
                              origin + ": scenario must be an object");
    }
    int sections = 0;
    for (const auto& [key, value] : root.items()) {
        if (key == "name" || key == "description" || key == "output_dir") continue;
        if (!known_section(key)) {
            throw ValidationError(ErrorKind::ScenarioInvariant,
                                  origin + ": unknown section '" + key + "'");
        }
        ++sections;
    }
    if (sections == 0) {
        throw ValidationError(ErrorKind::ScenarioInvariant,
                              origin + ": scenario holds no sections");
    }
    ScenarioDoc doc;
    doc.root = std::move(root);
    doc.name = doc.root.value("name", origin);
    return doc;
}

ScenarioDoc load_scenario(const std::string& name_or_path) {
    if (const BuiltinScenario* builtin = find_builtin(name_or_path)) {
        return parse_scenario(builtin->text, builtin->name);
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw IoError("cannot open scenario '" + name_or_path +
                      "' (not a bundled name, not a readable file)");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), fs::path(name_or_path).stem().string());
}

void apply_override(json& root, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("override must look like section.key=value: " + assignment);
    }
    std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    std::replace(path.begin(), path.end(), '.', '/');
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value; // plain string
    }
    root[json::json_pointer("/" + path)] = parsed;
}

RunReport run(const ScenarioDoc& doc, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.scenario = doc.name;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    for (const auto& section : kSections) {
        if (!doc.root.contains(section.name)) continue;
        SectionStatus status{section.name, true, ""};
        try {
            section.fn(doc.root[section.name], out_dir, report);
        } catch (const std::exception& error) {
            status.ok = false;
            status.detail = error.what();
        }
        report.sections.push_back(std::move(status));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace fecon::scenario
