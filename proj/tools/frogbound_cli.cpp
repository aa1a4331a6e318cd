// frogbound: bounds, series solving, simulation and coupling checks for
// the frog model on homogeneous trees, as CSV or JSON lines.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frogbound/branching.hpp"
#include "frogbound/frog_sim.hpp"
#include "frogbound/model_core.hpp"
#include "frogbound/renewal.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitViolation = 3;

// Truncation (not rounding) to 7 decimals: the printed tables in the
// source material chop the 8th digit, so we mirror that convention.
// The %.9f detour absorbs representation noise below 1e-9.
double trunc7(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    buf[std::strlen(buf) - 2] = '\0';
    return std::strtod(buf, nullptr);
}

void write_csv(std::ostream& os, const std::vector<ordered_json>& rows) {
    if (rows.empty()) return;
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        if (!first) os << ',';
        os << it.key();
        first = false;
    }
    os << '\n';
    char buf[64];
    for (const ordered_json& row : rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (!first) os << ',';
            first = false;
            const auto& v = it.value();
            if (v.is_number_float()) {
                std::snprintf(buf, sizeof buf, "%.7f", v.get<double>());
                os << buf;
            } else if (v.is_string()) {
                os << v.get<std::string>();
            } else {
                os << v.dump();
            }
        }
        os << '\n';
    }
}

void write_rows(std::ostream& os, const std::vector<ordered_json>& rows,
                const std::string& format) {
    if (format == "json") {
        for (const ordered_json& row : rows) os << row.dump() << '\n';
    } else {
        write_csv(os, rows);
    }
}

// "--d 7" or "--d 2..10"
std::vector<int> parse_d_list(const std::string& spec) {
    const auto dots = spec.find("..");
    std::size_t pos = 0;
    std::vector<int> out;
    if (dots == std::string::npos) {
        out.push_back(std::stoi(spec, &pos));
        if (pos != spec.size()) throw std::invalid_argument("trailing junk in --d");
    } else {
        const int lo = std::stoi(spec.substr(0, dots));
        const std::string rest = spec.substr(dots + 2);
        const int hi = std::stoi(rest, &pos);
        if (pos != rest.size()) throw std::invalid_argument("trailing junk in --d");
        if (hi < lo) throw std::invalid_argument("--d range is empty");
        for (int d = lo; d <= hi; ++d) out.push_back(d);
    }
    for (int d : out)
        if (d < 2) throw std::invalid_argument("--d values must be >= 2");
    return out;
}

ordered_json bounds_row(int d, bool with_literature) {
    const frogbound::BoundsReport rep = frogbound::bounds_report(d);
    ordered_json row;
    row["d"] = rep.d;
    row["lb_pc"] = trunc7(rep.lb_pc);
    row["lb_pc_hat"] = trunc7(rep.lb_pc_hat);
    row["ub_pc"] = trunc7(rep.ub_pc);
    if (with_literature) {
        row["amp2002_lb"] = trunc7(rep.amp2002_lb);
        row["amp2002_ub"] = trunc7(rep.amp2002_ub);
        row["lmp2005_ub"] = trunc7(rep.lmp2005_ub);
        row["gms2018_ub"] = trunc7(rep.gms2018_ub);
        row["l2019_ub"] = trunc7(rep.l2019_ub);
        row["amp2002_ub_vacuous"] = rep.amp2002_ub_vacuous;
        row["lmp2005_ub_vacuous"] = rep.lmp2005_ub_vacuous;
        row["gms2018_ub_vacuous"] = rep.gms2018_ub_vacuous;
        row["l2019_ub_vacuous"] = rep.l2019_ub_vacuous;
    }
    return row;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open --out file: " + path);
        os = &file;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frog model on T_d: critical-parameter bounds and checks"};
    app.require_subcommand(1);

    std::string d_spec = "2";
    std::string format = "csv";
    std::string out_path;
    double p = 0.5;
    double tol = 1e-10;
    int replicas = 1;
    long max_activations = 10000;
    long max_steps = 100000000;
    long couple_steps = 10000;
    std::uint64_t seed = 0;
    frogbound::Variant variant = frogbound::Variant::full;
    std::string replica_csv;
    std::string trace_path;

    const std::map<std::string, frogbound::Variant> variant_map{
        {"full", frogbound::Variant::full},
        {"oriented", frogbound::Variant::oriented}};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json lines")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "output path (default stdout)");
    };

    CLI::App* cmd_bounds =
        app.add_subcommand("bounds", "closed-form bounds per degree");
    cmd_bounds->add_option("--d", d_spec, "degree, or range a..b");
    add_common(cmd_bounds);

    CLI::App* cmd_table = app.add_subcommand(
        "table", "bounds for d = 2..10, 20, 50, 100");
    add_common(cmd_table);

    CLI::App* cmd_solve =
        app.add_subcommand("solve", "renewal-series bracket on the oriented critical point");
    cmd_solve->add_option("--d", d_spec, "degree, or range a..b");
    cmd_solve->add_option("--tol", tol, "bracket width target");
    add_common(cmd_solve);

    CLI::App* cmd_simulate =
        app.add_subcommand("simulate", "seeded Monte Carlo survival frequency");
    cmd_simulate->add_option("--d", d_spec, "degree, or range a..b");
    cmd_simulate->add_option("--p", p, "lifetime parameter")->required();
    cmd_simulate->add_option("--variant", variant, "full or oriented")
        ->transform(CLI::CheckedTransformer(variant_map));
    cmd_simulate->add_option("--replicas", replicas);
    cmd_simulate->add_option("--max-activations", max_activations);
    cmd_simulate->add_option("--max-steps", max_steps);
    cmd_simulate->add_option("--seed", seed);
    cmd_simulate->add_option("--replica-csv", replica_csv,
                             "write per-replica outcomes to this CSV file");
    add_common(cmd_simulate);

    CLI::App* cmd_couple =
        app.add_subcommand("couple", "pathwise dominance check against the two-type process");
    cmd_couple->add_option("--d", d_spec, "degree, or range a..b");
    cmd_couple->add_option("--p", p, "lifetime parameter")->required();
    cmd_couple->add_option("--steps", couple_steps, "coupled steps per run");
    cmd_couple->add_option("--seed", seed);
    cmd_couple->add_option("--trace", trace_path, "write the step trace to this CSV file");
    add_common(cmd_couple);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const std::vector<int> ds = parse_d_list(d_spec);
        std::vector<ordered_json> rows;
        Output output;
        output.open(out_path);
        int exit_code = 0;

        if (cmd_bounds->parsed()) {
            for (int d : ds) rows.push_back(bounds_row(d, true));
        } else if (cmd_table->parsed()) {
            for (int d : {2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 50, 100})
                rows.push_back(bounds_row(d, false));
        } else if (cmd_solve->parsed()) {
            for (int d : ds) {
                const frogbound::RcBracket rc = frogbound::solve_rc(d, tol);
                ordered_json row;
                row["d"] = d;
                row["r_lo"] = trunc7(rc.lo);
                row["r_hi"] = trunc7(rc.hi);
                row["p_lo"] = trunc7(frogbound::p_of_r(rc.lo, d));
                row["p_hi"] = trunc7(frogbound::p_of_r(rc.hi, d));
                row["terms_used"] = rc.terms_used;
                row["tol_reached"] = rc.tol_reached;
                rows.push_back(row);
                if (!rc.tol_reached) exit_code = kExitNumeric;
            }
        } else if (cmd_simulate->parsed()) {
            for (int d : ds) {
                frogbound::SimConfig config;
                config.d = d;
                config.p = p;
                config.variant = variant;
                config.replicas = replicas;
                config.max_activations = max_activations;
                config.max_steps = max_steps;
                config.seed = seed;
                const frogbound::SurvivalEstimate est =
                    frogbound::survival_frequency(config);
                long survived = 0;
                for (const auto& o : est.outcomes) survived += o.reached_cap;
                ordered_json row;
                row["d"] = d;
                row["p"] = trunc7(p);
                row["variant"] = frogbound::variant_name(variant);
                row["replicas"] = replicas;
                row["max_activations"] = max_activations;
                row["max_steps"] = max_steps;
                row["seed"] = seed;
                row["survived"] = survived;
                row["freq"] = trunc7(est.freq);
                row["wilson_lo"] = trunc7(est.wilson_lo);
                row["wilson_hi"] = trunc7(est.wilson_hi);
                rows.push_back(row);
                if (!replica_csv.empty()) {
                    std::ofstream rf(replica_csv);
                    if (!rf)
                        throw std::runtime_error("cannot open --replica-csv file");
                    frogbound::write_outcomes_csv(rf, est.outcomes);
                }
            }
        } else if (cmd_couple->parsed()) {
            for (int d : ds) {
                const frogbound::ModelParams params(d, p);
                const frogbound::CoupledResult res = frogbound::run_coupled(
                    params, couple_steps, seed, !trace_path.empty());
                ordered_json row;
                row["d"] = d;
                row["p"] = trunc7(p);
                row["steps"] = res.steps;
                row["violations"] = res.violations;
                row["class_anomalies"] = res.class_anomalies;
                row["seeded"] = res.seeded;
                row["seed_retries"] = res.seed_retries;
                row["both_extinct"] = res.both_extinct;
                row["final_tt1"] = res.final_tt1;
                row["final_tt2"] = res.final_tt2;
                row["final_fm1"] = res.final_fm1;
                row["final_fm2"] = res.final_fm2;
                rows.push_back(row);
                if (!trace_path.empty()) {
                    std::ofstream tf(trace_path);
                    if (!tf) throw std::runtime_error("cannot open --trace file");
                    frogbound::write_trace_csv(tf, res);
                }
                if (res.violations > 0) exit_code = kExitViolation;
            }
        }

        write_rows(*output.os, rows, format);
        return exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
