#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "heatcert/errors.hpp"
#include "heatcert/fd.hpp"
#include "heatcert/heat.hpp"
#include "heatcert/kaplan.hpp"
#include "heatcert/picard.hpp"
#include "heatcert/sobolev.hpp"
#include "heatcert/wave.hpp"

namespace heatcert::app {

namespace {

const std::vector<double> kTableAmplitudes{1.60, 2.0, 4.0, 10.0, 20.0};
const std::vector<double> kFdAmplitudes{2.0, 4.0, 10.0, 20.0};

ode::Tolerances tolerances(const RunConfig& cfg) {
    ode::Tolerances t;
    if (cfg.rtol) t.rtol = *cfg.rtol;
    if (cfg.atol) t.atol = *cfg.atol;
    if (cfg.blowup_threshold) t.blowup_threshold = *cfg.blowup_threshold;
    return t;
}

heat::HeatScenario scenario_for(const RunConfig& cfg, double A) {
    return {cfg.p, A, cfg.modes, cfg.horizon.value_or(50.0), tolerances(cfg)};
}

std::string amp_label(double A) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "A_%g", A);
    return buf;
}

json base_record(const char* command, const RunConfig& cfg) {
    json r;
    r["spec_version"] = kSpecVersion;
    r["command"] = command;
    json c;
    c["p"] = cfg.p;
    c["modes"] = cfg.modes;
    put_optional(c, "horizon", cfg.horizon);
    put_optional(c, "rtol", cfg.rtol);
    put_optional(c, "atol", cfg.atol);
    put_optional(c, "blowup_threshold", cfg.blowup_threshold);
    c["seed"] = cfg.seed;
    r["config"] = c;
    r["tables"] = json::object();
    return r;
}

bool is_two_mode(const std::vector<int>& modes) { return modes == std::vector<int>{1, 3}; }

std::vector<std::string> coordinate_columns(const std::vector<int>& modes) {
    if (is_two_mode(modes)) return {"alpha", "gamma"};
    std::vector<std::string> cols;
    for (int k : modes) cols.push_back("a" + std::to_string(k));
    return cols;
}

// Trajectory plus the per-figure CSVs.
void add_trajectory_tables(json& record, const std::vector<int>& sorted_modes,
                           const std::vector<heat::TrajectorySample>& traj, const std::string& time_col) {
    std::vector<std::string> cols{time_col};
    for (auto& c : coordinate_columns(sorted_modes)) cols.push_back(c);
    cols.insert(cols.end(), {"norm_phi_ap", "R", "ratio"});
    TableBuilder full(cols);
    TableBuilder alpha({time_col, "alpha"});
    TableBuilder gamma({time_col, "gamma"});
    TableBuilder norm_r({time_col, "norm_phi_ap", "R"});
    TableBuilder ratio({time_col, "ratio"});
    const auto pos1 = std::find(sorted_modes.begin(), sorted_modes.end(), 1) - sorted_modes.begin();
    const auto it3 = std::find(sorted_modes.begin(), sorted_modes.end(), 3);
    for (const auto& s : traj) {
        std::vector<Cell> row{s.t};
        for (double a : s.a) row.emplace_back(a);
        row.insert(row.end(), {s.norm_phi_ap, s.R, s.ratio});
        full.row(row);
        alpha.row({s.t, s.a[pos1]});
        if (it3 != sorted_modes.end()) gamma.row({s.t, s.a[it3 - sorted_modes.begin()]});
        norm_r.row({s.t, s.norm_phi_ap, s.R});
        ratio.row({s.t, s.ratio});
    }
    auto& t = record["tables"];
    t["trajectory.csv"] = full.to_json();
    t["fig_alpha.csv"] = alpha.to_json();
    if (it3 != sorted_modes.end()) t["fig_gamma.csv"] = gamma.to_json();
    t["fig_norm_R.csv"] = norm_r.to_json();
    t["fig_ratio.csv"] = ratio.to_json();
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string fmt(const ExtendedReal& v) { return v.to_string(); }
std::string fmt(double v) { return format_number(v); }

}  // namespace

void RunConfig::validate() const {
    if (p < 2) throw DomainError("--p must be >= 2");
    if (modes.empty()) throw DomainError("--modes must not be empty");
    for (int k : modes)
        if (k < 1) throw DomainError("--modes entries must be >= 1");
    {
        auto s = sorted(modes);
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("--modes has duplicates");
    }
    for (double A : amplitudes)
        if (!(A >= 0.0) || !std::isfinite(A)) throw DomainError("--A values must be finite and >= 0");
    if (horizon && !(*horizon > 0.0)) throw DomainError("--horizon must be > 0");
    if (rtol && !(*rtol > 0.0 && *rtol < 1.0)) throw DomainError("--rtol must lie in (0, 1)");
    if (atol && !(*atol > 0.0 && *atol < 1.0)) throw DomainError("--atol must lie in (0, 1)");
    if (blowup_threshold && !(*blowup_threshold > 0.0)) throw DomainError("--blowup-threshold must be > 0");
    if (k_max < 0) throw DomainError("--kmax must be >= 0");
    if (truncation < 1) throw DomainError("--truncation must be >= 1");
    if (grid < 64) throw DomainError("--grid must be >= 64");
    if (trials < 1) throw DomainError("--trials must be >= 1");
}

CommandOutput cmd_table(const RunConfig& cfg) {
    if (cfg.amplitudes.empty()) throw DomainError("table: amplitude list is empty");
    json rec = base_record("table", cfg);
    TableBuilder tb({"A", "t_N", "t_G", "t_K", "eta"});
    json rows = json::array();
    std::ostringstream sum;
    sum << "A,t_N,t_G,t_K,eta\n";
    for (double A : cfg.amplitudes) {
        const auto r = heat::run_scenario(scenario_for(cfg, A), false);
        tb.row({A, r.tN, r.tG, Cell(r.tK), Cell(r.eta)});
        json row;
        row["A"] = A;
        put_extended(row, "t_N", r.tN);
        put_extended(row, "t_G", r.tG);
        put_optional(row, "t_K", r.tK);
        put_optional(row, "eta", r.eta);
        row["outcome"] = std::string(ode::to_string(r.outcome));
        rows.push_back(row);
        sum << fmt(A) << ',' << fmt(r.tN) << ',' << fmt(r.tG) << ',' << (r.tK ? fmt(*r.tK) : "") << ','
            << (r.eta ? fmt(*r.eta) : "") << '\n';
    }
    rec["rows"] = rows;
    rec["tables"]["table.csv"] = tb.to_json();
    return {{{"", "table.json", rec}}, sum.str()};
}

CommandOutput cmd_scenario(const RunConfig& cfg) {
    const std::vector<double> amps = cfg.amplitudes.empty() ? std::vector<double>{1.0} : cfg.amplitudes;
    CommandOutput out;
    std::ostringstream sum;
    for (double A : amps) {
        const auto r = heat::run_scenario(scenario_for(cfg, A), true);
        json rec = base_record("scenario", cfg);
        rec["A"] = A;
        rec["p"] = cfg.p;
        rec["modes"] = sorted(cfg.modes);
        put_extended(rec, "t_N", r.tN);
        put_extended(rec, "t_G", r.tG);
        put_optional(rec, "t_K", r.tK);
        put_optional(rec, "eta", r.eta);
        rec["outcome"] = std::string(ode::to_string(r.outcome));
        rec["global"] = r.global;
        add_trajectory_tables(rec, sorted(cfg.modes), r.trajectory, "t");
        out.records.push_back({amp_label(A), "scenario.json", rec});
        sum << "A=" << fmt(A) << " t_N=" << fmt(r.tN) << " t_G=" << fmt(r.tG) << " outcome=" << ode::to_string(r.outcome)
            << '\n';
    }
    out.summary = sum.str();
    return out;
}

CommandOutput cmd_critical(const RunConfig& cfg) {
    const double horizon = cfg.horizon.value_or(50.0);
    constexpr double kTol = 1e-4;
    const double c = heat::critical_amplitude(cfg.p, cfg.modes, horizon, kTol, 0.7, 1.6, tolerances(cfg));
    json rec = base_record("critical", cfg);
    rec["critical_amplitude"] = c;
    rec["bisection_tolerance"] = kTol;
    rec["bracket"] = {0.7, 1.6};
    rec["C_N"] = heat::c_n();
    rec["C_K"] = heat::c_k();
    rec["above_C_N"] = c > heat::c_n();
    CommandOutput out{{{"", "critical.json", rec}}, "critical amplitude " + fmt(c) + "\n"};
    if (!(c > heat::c_n())) {
        out.property_ok = false;
        out.property_message = "critical amplitude does not exceed C_N";
    }
    return out;
}

CommandOutput cmd_limit(const RunConfig& cfg) {
    const auto lim = heat::rescaled_limit(cfg.p, cfg.modes, cfg.horizon.value_or(50.0), tolerances(cfg));
    const double ck = heat::c_k();
    json rec = base_record("limit", cfg);
    rec["C_G"] = lim.C_G;
    rec["C_K"] = ck;
    rec["eta_limit"] = (ck - lim.C_G) / (ck + lim.C_G);
    add_trajectory_tables(rec, sorted(cfg.modes), lim.trajectory, "tt");
    // Limit profile χ(𝚝) of the rescaled PDE; pole at 𝚝 = sqrt(π/2).
    const std::vector<double> tts{0.0, 0.4, 0.8, 1.2};
    std::vector<std::string> cols{"x"};
    for (double tt : tts) cols.push_back("chi_tt" + format_number(tt));
    TableBuilder prof(cols);
    constexpr int kPoints = 129;
    for (int i = 0; i < kPoints; ++i) {
        const double x = std::numbers::pi * i / (kPoints - 1);
        std::vector<Cell> row{x};
        for (double tt : tts) row.emplace_back(fd::chi_profile(tt, x));
        prof.row(row);
    }
    rec["tables"]["fig_profile.csv"] = prof.to_json();
    return {{{"", "limit.json", rec}},
            "C_G " + fmt(lim.C_G) + "  eta_limit " + fmt(rec["eta_limit"].get<double>()) + "\n"};
}

CommandOutput cmd_kaplan(const RunConfig& cfg) {
    const std::vector<double> amps = cfg.amplitudes.empty() ? kTableAmplitudes : cfg.amplitudes;
    json rec = base_record("kaplan", cfg);
    TableBuilder tb({"A", "Q0", "t_K", "t_K_quadrature", "t_K_comparison"});
    json rows = json::array();
    std::ostringstream sum;
    for (double A : amps) {
        const std::map<int, double> coeffs{{1, A}};
        const double Q0 = kaplan::q_of_sine_coeffs(coeffs);
        const auto nonneg = kaplan::check_nonnegative(coeffs);
        json row;
        row["A"] = A;
        row["Q0"] = Q0;
        row["nonnegative_on_grid"] = nonneg.nonnegative;
        row["nonnegativity_grid_points"] = nonneg.grid_points;
        if (Q0 > 1.0) {
            const kaplan::KaplanInput in{Q0, cfg.p, nonneg};
            const double tk = kaplan::kaplan_time(in);
            const auto q = kaplan::kaplan_time_by_quadrature(in);
            const ExtendedReal cmp = kaplan::comparison_blowup_time(in, cfg.horizon.value_or(50.0));
            row["t_K"] = tk;
            row["t_K_quadrature"] = q.value;
            row["t_K_quadrature_error"] = q.abs_error;
            put_extended(row, "t_K_comparison", cmp);
            tb.row({A, Q0, tk, q.value, cmp});
            sum << "A=" << fmt(A) << " t_K=" << fmt(tk) << '\n';
        } else {
            row["t_K"] = nullptr;
            tb.row({A, Q0, Cell(), Cell(), Cell()});
            sum << "A=" << fmt(A) << " Kaplan criterion not applicable (Q0 <= 1)\n";
        }
        rows.push_back(row);
    }
    rec["rows"] = rows;
    rec["tables"]["kaplan.csv"] = tb.to_json();
    return {{{"", "kaplan.json", rec}}, sum.str()};
}

CommandOutput cmd_sobolev(const RunConfig& cfg) {
    json rec = base_record("sobolev", cfg);
    const auto best = sobolev::maximize_ratio();
    rec["lambda_star"] = best.lambda;
    rec["ratio_star"] = best.ratio;
    rec["label"] = "lower bound on the multiplication constant";
    TableBuilder ratio({"lambda", "ratio"});
    for (int i = 0; i <= 100; ++i) {
        const double l = 0.1 * std::pow(100.0, i / 100.0);
        ratio.row({l, sobolev::ratio_lower_bound(l)});
    }
    TableBuilder conv({"k", "C_quadrature", "C_closed_form"});
    for (double k : {0.0, 1.0, 3.0, 10.0}) conv.row({k, sobolev::convolution_constant(k).value, 1.0 / (4.0 + k * k)});
    const auto alg = sobolev::algebra_property_test(cfg.seed, cfg.trials);
    rec["algebra"] = {{"seed", alg.seed},
                      {"trials", alg.trials},
                      {"violations", alg.violations},
                      {"max_ratio", alg.max_ratio}};
    rec["tables"]["sobolev_ratio.csv"] = ratio.to_json();
    rec["tables"]["convolution.csv"] = conv.to_json();
    CommandOutput out{{{"", "sobolev.json", rec}},
                      "lambda* " + fmt(best.lambda) + "  ratio* " + fmt(best.ratio) + "  algebra violations " +
                          std::to_string(alg.violations) + "/" + std::to_string(alg.trials) + "\n"};
    if (alg.violations > 0 || best.ratio > 1.0) {
        out.property_ok = false;
        out.property_message = "multiplication inequality violated";
    }
    return out;
}

CommandOutput cmd_picard(const RunConfig& cfg) {
    const double A = cfg.amplitudes.empty() ? 1.0 : cfg.amplitudes.front();
    const double t1 = cfg.horizon.value_or(2.0);
    heat::HeatScenario s = scenario_for(cfg, A);
    const auto setup = picard::setup_from_heat(s, cfg.truncation, t1, cfg.intervals);
    const auto rep = picard::iterate_and_check(setup, cfg.k_max);
    json rec = base_record("picard", cfg);
    rec["A"] = A;
    rec["t0"] = 0.0;
    rec["t1"] = t1;
    rec["truncation"] = cfg.truncation;
    rec["intervals"] = cfg.intervals;
    rec["k_max"] = cfg.k_max;
    rec["Sigma"] = rep.Sigma;
    rec["varrho"] = rep.varrho;
    rec["L"] = rep.L;
    rec["Lambda"] = rep.Lambda;
    rec["lipschitz_formula"] = rep.lipschitz_formula;
    rec["tube_tolerance"] = rep.tube_tolerance;
    rec["base_ok"] = rep.base_ok;
    rec["tube_ok"] = rep.tube_ok;
    rec["factorial_ok"] = rep.factorial_ok;
    rec["cauchy_ok"] = rep.cauchy_ok;
    rec["fixed_point_change"] = rep.fixed_point_change;
    TableBuilder it({"k", "sup_step", "factorial_bound", "min_tube_margin", "factorial_ok"});
    for (const auto& c : rep.iterates)
        it.row({c.k, c.sup_step, c.factorial_bound, c.min_tube_margin, c.factorial_ok ? 1 : 0});
    TableBuilder cc({"k", "k_prime", "sup_distance", "bound", "ok"});
    for (const auto& c : rep.cauchy) cc.row({c.k, c.k_prime, c.sup_distance, c.bound, c.ok ? 1 : 0});
    rec["tables"]["picard_iterates.csv"] = it.to_json();
    rec["tables"]["picard_cauchy.csv"] = cc.to_json();
    CommandOutput out{{{"", "picard.json", rec}},
                      std::string("picard: tube ") + (rep.tube_ok ? "ok" : "VIOLATED") + ", factorial bound " +
                          (rep.factorial_ok ? "ok" : "VIOLATED") + ", fixed-point change " +
                          fmt(rep.fixed_point_change) + "\n"};
    if (!rep.ok()) {
        out.property_ok = false;
        out.property_message = "Picard verification failed";
    }
    return out;
}

CommandOutput cmd_fd(const RunConfig& cfg) {
    const std::vector<double> amps = cfg.amplitudes.empty() ? kFdAmplitudes : cfg.amplitudes;
    json rec = base_record("fd", cfg);
    rec["label"] = "reference estimates (finite differences, no rigor)";
    TableBuilder tb({"A", "theta_N", "theta_2N", "rel_diff", "extrapolated", "min_value"});
    json rows = json::array();
    std::ostringstream sum;
    CommandOutput out;
    for (double A : amps) {
        fd::FdConfig c;
        c.N = cfg.grid;
        c.A = A;
        c.p = cfg.p;
        c.horizon = cfg.horizon.value_or(10.0);
        if (cfg.blowup_threshold) c.blowup_threshold = *cfg.blowup_threshold;
        if (cfg.rtol) c.rtol = *cfg.rtol;
        if (cfg.atol) c.atol = *cfg.atol;
        const auto e = fd::fd_blowup_time(c);
        json row;
        row["A"] = A;
        row["N"] = c.N;
        put_extended(row, "theta_N", e.coarse.theta);
        put_extended(row, "theta_2N", e.fine.theta);
        row["rel_diff"] = std::isfinite(e.rel_diff) ? json(e.rel_diff) : json(nullptr);
        row["refinement_agrees"] = e.agree;
        put_optional(row, "extrapolated", e.extrapolated);
        row["min_value"] = std::min(e.coarse.min_value, e.fine.min_value);
        rows.push_back(row);
        tb.row({A, e.coarse.theta, e.fine.theta, e.rel_diff, Cell(e.extrapolated), row["min_value"].get<double>()});

        TableBuilder curve({"t", "max_norm"});
        const auto& pts = e.coarse.curve;
        const std::size_t stride = std::max<std::size_t>(1, pts.size() / 2000);
        for (std::size_t i = 0; i < pts.size(); i += stride) curve.row({pts[i].first, pts[i].second});
        if (!pts.empty() && (pts.size() - 1) % stride != 0) curve.row({pts.back().first, pts.back().second});
        rec["tables"]["fd_curve_" + amp_label(A) + ".csv"] = curve.to_json();

        sum << "A=" << fmt(A) << " theta_fd=" << fmt(e.coarse.theta) << " (2N: " << fmt(e.fine.theta) << ")\n";
        if (!e.agree) {
            out.property_ok = false;
            out.property_message = "N and 2N estimates differ by more than 2%";
        }
        if (row["min_value"].get<double>() < -1e-10) {
            out.property_ok = false;
            out.property_message = "fd solution lost positivity";
        }
    }
    rec["rows"] = rows;
    rec["tables"]["fd.csv"] = tb.to_json();
    out.records.push_back({"", "fd.json", rec});
    out.summary = sum.str();
    return out;
}

CommandOutput cmd_wave(const RunConfig& cfg) {
    std::vector<wave::WaveDatum> data;
    if (cfg.sup_abs) {
        data.push_back({cfg.sup_pos.value_or(*cfg.sup_abs), *cfg.sup_abs, cfg.p});
    } else {
        data = {{0.5, 1.0, 3}, {1.0, 1.0, 2}, {0.5, 1.0, 2}, {0.0, 1.0, 2}, {0.0, 0.0, 2}};
    }
    json rec = base_record("wave", cfg);
    TableBuilder tb({"p", "sup_pos", "sup_abs", "t_N", "theta", "case"});
    json rows = json::array();
    std::ostringstream sum;
    CommandOutput out;
    for (const auto& d : data) {
        const auto tn = wave::wave_tn(d);
        const auto th = wave::wave_theta(d);
        const auto c = wave::classify(d);
        json row;
        row["p"] = d.p;
        row["sup_pos"] = d.sup_pos;
        row["sup_abs"] = d.sup_abs;
        put_extended(row, "t_N", tn);
        put_extended(row, "theta", th);
        row["case"] = wave::to_string(c);
        rows.push_back(row);
        tb.row({d.p, d.sup_pos, d.sup_abs, tn, th, static_cast<int>(c) + 1});
        sum << "p=" << d.p << " sup=" << fmt(d.sup_pos) << " |sup|=" << fmt(d.sup_abs) << " t_N=" << fmt(tn)
            << " theta=" << fmt(th) << " case " << wave::to_string(c) << '\n';
        const bool equal = th == tn;
        if (th < tn || equal != (c == wave::WaveCase::I)) {
            out.property_ok = false;
            out.property_message = "theta >= t_N with equality exactly in case i fails";
        }
    }
    if (data.size() == 1 && wave::wave_tn(data[0]).is_finite()) {
        TableBuilder bound({"t", "R"});
        const double tn = wave::wave_tn(data[0]).value();
        for (int i = 0; i < 64; ++i) {
            const double t = 0.95 * tn * i / 63.0;
            bound.row({t, wave::wave_growth_bound(data[0], t)});
        }
        rec["tables"]["wave_bound.csv"] = bound.to_json();
    }
    rec["rows"] = rows;
    rec["tables"]["wave.csv"] = tb.to_json();
    out.records.push_back({"", "wave.json", rec});
    out.summary = sum.str();
    return out;
}

const std::vector<CommandInfo>& commands() {
    static const std::vector<CommandInfo> table{
        {"table", "Existence-time table t_N, t_G, t_K, eta over amplitudes", cmd_table},
        {"scenario", "Coupled Galerkin/control run with trajectory CSVs", cmd_scenario},
        {"critical", "Critical amplitude separating global existence from blow-up", cmd_critical},
        {"limit", "Large-amplitude limit system and its blow-up time C_G", cmd_limit},
        {"kaplan", "Kaplan upper bound with quadrature and comparison cross-checks", cmd_kaplan},
        {"sobolev", "Multiplication-constant bounds and algebra property trials", cmd_sobolev},
        {"picard", "Picard iteration with tube and factorial-bound checks", cmd_picard},
        {"fd", "Finite-difference reference estimates of the blow-up time", cmd_fd},
        {"wave", "Closed-form wave example: t_N versus the exact existence time", cmd_wave},
    };
    return table;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        const auto& cmds = commands();
        auto it = std::find_if(cmds.begin(), cmds.end(), [&](const CommandInfo& c) { return cfg.subcommand == c.name; });
        if (it == cmds.end()) {
            err << "unknown command: " << cfg.subcommand << '\n';
            return kUsage;
        }
        RunConfig effective = cfg;
        if (cfg.subcommand == "table" && effective.amplitudes.empty()) effective.amplitudes = kTableAmplitudes;
        const CommandOutput res = it->fn(effective);
        for (const auto& r : res.records) write_record(cfg.out / r.subdir, r.name, r.record);
        out << res.summary;
        if (!res.property_ok) {
            err << "property violation: " << res.property_message << '\n';
            return kProperty;
        }
        return kOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PropertyViolation& e) {
        err << "property violation: " << e.what() << '\n';
        return kProperty;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    }
}

}  // namespace heatcert::app
