#include "sr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "sr/converge.hpp"
#include "sr/convex.hpp"
#include "sr/csvio.hpp"
#include "sr/lattice.hpp"
#include "sr/meanfield.hpp"
#include "sr/rng.hpp"

namespace sr {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

const json& need(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw SchemaError(std::string("missing required field: ") + field);
    return *it;
}

double need_number(const json& j, const char* field) {
    const json& v = need(j, field);
    if (!v.is_number()) throw SchemaError(std::string(field) + ": expected a number");
    return v.get<double>();
}

double opt_number(const json& j, const char* field, double fallback) {
    auto it = j.find(field);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw SchemaError(std::string(field) + ": expected a number");
    return it->get<double>();
}

std::vector<double> need_grid(const json& j, const char* field, bool increasing = true) {
    const json& v = need(j, field);
    if (!v.is_array() || v.empty())
        throw SchemaError(std::string(field) + ": expected a nonempty array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw SchemaError(std::string(field) + ": entries must be numbers");
        out.push_back(x.get<double>());
    }
    if (increasing)
        for (size_t i = 1; i < out.size(); ++i)
            if (!(out[i] > out[i - 1]))
                throw SchemaError(std::string(field) + ": must be strictly increasing");
    return out;
}

CostFunction cost_from_json(const json& j) {
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "riesz") return CostFunction::riesz(need_number(j, "exponent"),
                                                    opt_number(j, "r0", 1.0));
    if (kind == "hard_sphere") return CostFunction::hard_sphere();
    if (kind == "step")
        return CostFunction::step(need_number(j, "M"), opt_number(j, "cutoff", 1.0));
    if (kind == "tabulated") {
        auto r = need_grid(j, "radii");
        auto v = need_grid(j, "values", false);
        return CostFunction::tabulated(r, v, need_number(j, "r0"));
    }
    throw SchemaError("cost.kind: unknown kind '" + kind + "'");
}

PotentialField potential_from_json(const json& j, int dim) {
    PotentialField pot;
    double edge = opt_number(j, "edge", 1.0);
    pot.domain = Box::cube(dim, edge);
    int cells = static_cast<int>(opt_number(j, "cells", 64));
    if (cells < 1) throw SchemaError("potential.cells: must be >= 1");
    pot.cells_per_dim.assign(dim, cells);
    size_t n = 1;
    for (int c : pot.cells_per_dim) n *= static_cast<size_t>(c);
    pot.values.resize(n);

    std::string kind = need(j, "kind").get<std::string>();
    std::vector<double> x(dim);
    for (size_t i = 0; i < n; ++i) {
        pot.cell_center(i, x.data());
        if (kind == "constant") {
            pot.values[i] = need_number(j, "value");
        } else if (kind == "linear") {
            double v = opt_number(j, "offset", 0.0);
            auto slopes = need_grid(j, "slopes", false);
            if (static_cast<int>(slopes.size()) != dim)
                throw SchemaError("potential.slopes: one slope per dimension");
            for (int a = 0; a < dim; ++a) v += slopes[a] * x[a];
            pot.values[i] = v;
        } else if (kind == "quadratic_well") {
            double depth = need_number(j, "depth");
            double v = -depth;
            for (int a = 0; a < dim; ++a) {
                double c = pot.domain.lo[a] + 0.5 * pot.domain.edge[a];
                v += depth * 4.0 * (x[a] - c) * (x[a] - c) /
                     (pot.domain.edge[a] * pot.domain.edge[a]);
            }
            pot.values[i] = v;
        } else if (kind == "values") {
            auto vals = need_grid(j, "values", false);
            if (vals.size() != n)
                throw SchemaError("potential.values: length must match the grid");
            pot.values[i] = vals[i];
        } else {
            throw SchemaError("potential.kind: unknown kind '" + kind + "'");
        }
    }
    return pot;
}

// Conjugate profile g = f* for a handful of closed-form costs, sampled on a
// lambda grid.
SampledConvexFunction fstar_from_json(const json& j) {
    std::string kind = need(j, "kind").get<std::string>();
    double lam_lo = opt_number(j, "lambda_min", -2.0);
    double lam_hi = opt_number(j, "lambda_max", 8.0);
    int n = static_cast<int>(opt_number(j, "points", 257));
    if (!(lam_lo < lam_hi) || n < 2)
        throw SchemaError("fstar: bad lambda grid parameters");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lam_lo + (lam_hi - lam_lo) * i / (n - 1);

    std::vector<double> vals(n);
    if (kind == "step_closed_form") {
        double M = need_number(j, "M");
        // t grid through the integers: the sup sits at a kink of the profile
        long t_hi = static_cast<long>(
                        std::ceil(2.0 * (1.0 + pos_part(lam_hi) / std::max(M, 1e-9)))) +
                    2;
        const int per_unit = 400;
        for (int i = 0; i < n; ++i) {
            double best = 0.0;
            for (long k = 0; k <= t_hi * per_unit; ++k) {
                double t = static_cast<double>(k) / per_unit;
                best = std::max(best, grid[i] * t - step_cost_profile(M, t));
            }
            vals[i] = best;
        }
    } else if (kind == "hard_sphere") {
        double gamma_d = opt_number(j, "packing_fraction", 1.0);
        for (int i = 0; i < n; ++i) vals[i] = gamma_d * pos_part(grid[i]);
    } else if (kind == "linear") {
        double slope = need_number(j, "slope");
        for (int i = 0; i < n; ++i) vals[i] = slope * pos_part(grid[i]);
    } else if (kind == "from_csv") {
        CsvTable t = read_csv(need(j, "path").get<std::string>());
        grid.clear();
        vals.clear();
        for (const auto& row : t.rows) {
            if (row.size() < 2) throw SchemaError("fstar.from_csv: need two columns");
            grid.push_back(row[0]);
            vals.push_back(row[1]);
        }
    } else {
        throw SchemaError("fstar.kind: unknown kind '" + kind + "'");
    }
    return SampledConvexFunction(grid, vals, DomainConvention::finite);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct ArtifactWriter {
    std::string dir;
    std::vector<std::pair<std::string, uint64_t>> outputs;

    void csv(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows) {
        std::string body = make_csv(header, rows);
        atomic_write_file(join_path(dir, name), body);
        outputs.emplace_back(name, fnv1a64(body));
    }

    void text(const std::string& name, const std::string& body) {
        atomic_write_file(join_path(dir, name), body);
        outputs.emplace_back(name, fnv1a64(body));
    }

    void manifest(const ExperimentSpec& spec, uint64_t spec_hash) {
        json m;
        m["version"] = kVersion;
        m["task"] = spec.task;
        m["seed"] = spec.seed;
        m["spec_hash"] = spec_hash;
        json files = json::array();
        for (const auto& [name, hash] : outputs)
            files.push_back({{"path", name}, {"fnv1a64", hash}});
        m["outputs"] = files;
        atomic_write_file(join_path(dir, "manifest.json"), m.dump(2) + "\n");
    }
};

void task_energy(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    double eps = opt_number(p, "eps", 1.0);
    double edge = opt_number(p, "edge", 1.0);
    PointConfiguration cfg(Box::cube(spec.dim, edge));
    const json& pts = need(p, "points");
    if (!pts.is_array()) throw SchemaError("points: expected an array");
    for (const auto& pt : pts) {
        if (!pt.is_array() || static_cast<int>(pt.size()) != spec.dim)
            throw SchemaError("points: each entry needs one coordinate per dimension");
        std::vector<double> x;
        for (const auto& c : pt) x.push_back(c.get<double>());
        cfg.push_back(x.data());
    }
    cfg.validate();
    double xi = interaction_energy(cfg, spec.cost, eps);
    double scaled = scaled_energy(ScaledMeasure{cfg, eps}, spec.cost);
    w.csv("energy.csv", {"n_points", "eps", "energy", "scaled_energy"},
          {{static_cast<double>(cfg.total_count()), eps, xi, scaled}});
}

void task_zeta(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    auto r_list = need_grid(p, "r_list");
    double tol = opt_number(p, "tol", 1e-6);
    BravaisLattice lat = spec.dim == 2 && p.value("lattice", "cartesian") == "hexagonal"
                             ? BravaisLattice::hexagonal()
                             : BravaisLattice::cartesian(spec.dim);
    std::vector<std::vector<double>> rows;
    for (double r : r_list) {
        ZetaResult z = epstein_zeta(spec.cost, lat, r, tol);
        double tail = kInf;
        try {
            tail = zeta_tail_bound(spec.cost, lat, r, spec.dim);
        } catch (const DomainError&) {
        }
        rows.push_back({r, z.value, z.error_bound, z.certified ? 1.0 : 0.0,
                        static_cast<double>(z.points_used), tail});
    }
    w.csv("zeta.csv", {"r", "value", "error_bound", "certified", "points", "tail_bound"},
          rows);
}

void task_gamma(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    auto lambdas = need_grid(p, "lambda_list");
    auto ks = need_grid(p, "k_list");
    std::string method = p.value("method", "anneal");
    AnnealSchedule sched = schedule_from_json(p);
    std::vector<std::vector<double>> rows;
    for (size_t li = 0; li < lambdas.size(); ++li) {
        for (size_t ki = 0; ki < ks.size(); ++ki) {
            GammaEstimate est;
            if (method == "dp") {
                if (spec.dim != 1) throw SchemaError("method dp: requires dimension 1");
                est = gamma_bruteforce_1d(spec.cost, lambdas[li], ks[ki],
                                          opt_number(p, "grid_step", 0.25));
            } else if (method == "anneal") {
                est = gamma_anneal(spec.cost, lambdas[li], ks[ki], spec.dim, sched,
                                   derive_seed(spec.seed, {li, ki}));
            } else {
                throw SchemaError("method: expected 'anneal' or 'dp'");
            }
            rows.push_back({lambdas[li], ks[ki], est.value,
                            est.value / std::pow(ks[ki], spec.dim),
                            static_cast<double>(est.config.total_count())});
        }
    }
    w.csv("gamma.csv", {"lambda", "k", "value", "value_per_volume", "n_points"}, rows);
}

GEstimate profile_point(const ExperimentSpec& spec, double lambda, size_t lambda_index,
                        const std::vector<double>& ks, int replicas,
                        const AnnealSchedule& sched) {
    return estimate_g(spec.cost, lambda, ks, spec.dim, replicas,
                      derive_seed(spec.seed, {lambda_index}), sched);
}

void task_g_profile(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    auto lambdas = need_grid(p, "lambda_list");
    auto ks = need_grid(p, "k_list");
    int replicas = static_cast<int>(opt_number(p, "replicas", 2));
    AnnealSchedule sched = schedule_from_json(p);
    std::vector<std::vector<double>> rows;
    for (size_t li = 0; li < lambdas.size(); ++li) {
        GEstimate g = profile_point(spec, lambdas[li], li, ks, replicas, sched);
        rows.push_back({lambdas[li], g.g_value, g.uncertainty});
    }
    w.csv("g.csv", {"lambda", "g", "uncertainty"}, rows);
}

void task_f_profile(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    auto lambdas = need_grid(p, "lambda_list");
    auto ks = need_grid(p, "k_list");
    auto t_grid = need_grid(p, "t_grid");
    int replicas = static_cast<int>(opt_number(p, "replicas", 2));
    AnnealSchedule sched = schedule_from_json(p);

    std::vector<double> g_vals;
    std::vector<std::vector<double>> g_rows;
    for (size_t li = 0; li < lambdas.size(); ++li) {
        GEstimate g = profile_point(spec, lambdas[li], li, ks, replicas, sched);
        g_vals.push_back(g.g_value);
        g_rows.push_back({lambdas[li], g.g_value, g.uncertainty});
    }
    w.csv("g.csv", {"lambda", "g", "uncertainty"}, g_rows);

    SampledConvexFunction g_fn(lambdas, g_vals, DomainConvention::finite);
    SampledConvexFunction f = f_profile_from_g(g_fn, t_grid);
    std::vector<std::vector<double>> f_rows;
    for (size_t i = 0; i < f.size(); ++i) f_rows.push_back({f.grid[i], f.values[i]});
    w.csv("f.csv", {"t", "f"}, f_rows);
}

void task_meanfield(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    PotentialField pot = potential_from_json(need(p, "potential"), spec.dim);
    SampledConvexFunction fstar = fstar_from_json(need(p, "fstar"));
    MeanFieldSolution sol;
    if (p.contains("kappa"))
        sol = solve_meanfield_constrained(pot, fstar, need_number(p, "kappa"));
    else
        sol = solve_meanfield(pot, fstar);

    std::vector<std::vector<double>> rows;
    std::vector<double> x(spec.dim);
    for (size_t i = 0; i < pot.cell_count(); ++i) {
        pot.cell_center(i, x.data());
        std::vector<double> row(x.begin(), x.end());
        row.push_back(pot.values[i]);
        row.push_back(sol.density[i]);
        double lo = sol.density[i], hi = sol.density[i];
        for (const auto& mv : sol.multivalued_cells)
            if (mv.cell == i) {
                lo = mv.lo;
                hi = mv.hi;
            }
        row.push_back(lo);
        row.push_back(hi);
        rows.push_back(std::move(row));
    }
    std::vector<std::string> header;
    for (int a = 0; a < spec.dim; ++a) header.push_back("x" + std::to_string(a));
    header.insert(header.end(), {"U", "density", "interval_lo", "interval_hi"});
    w.csv("solution.csv", header, rows);
    w.csv("summary.csv", {"value", "mass", "multiplier", "multivalued_cells"},
          {{sol.value, sol.total_mass(pot),
            sol.multiplier.value_or(std::nan("")),
            static_cast<double>(sol.multivalued_cells.size())}});
}

void task_converge(const ExperimentSpec& spec, ArtifactWriter& w) {
    const json& p = spec.params;
    PotentialField pot = potential_from_json(need(p, "potential"), spec.dim);
    SampledConvexFunction fstar = fstar_from_json(need(p, "fstar"));
    std::vector<double> eps = need_grid(p, "eps_list", false);
    AnnealSchedule sched = schedule_from_json(p);

    ConvergenceRun run = run_convergence(pot, spec.cost, fstar, eps, sched, spec.seed);

    std::vector<std::vector<double>> trend;
    for (const auto& r : run.per_eps) {
        trend.push_back({r.eps, static_cast<double>(r.n_found), r.scaled_value,
                         run.continuum_value, r.l1_distance, r.mass_bound,
                         r.mass_bound_ok ? 1.0 : 0.0});
    }
    w.csv("trend.csv",
          {"eps", "n_found", "scaled_value", "continuum_value", "l1_distance",
           "mass_bound", "mass_bound_ok"},
          trend);

    std::vector<std::vector<double>> dens;
    std::vector<double> x(spec.dim);
    for (size_t i = 0; i < run.continuum_density.size(); ++i) {
        pot.cell_center(i, x.data());
        std::vector<double> row(x.begin(), x.end());
        row.push_back(run.continuum_density[i]);
        dens.push_back(std::move(row));
    }
    std::vector<std::string> header;
    for (int a = 0; a < spec.dim; ++a) header.push_back("x" + std::to_string(a));
    header.push_back("continuum_density");
    w.csv("density_compare.csv", header, dens);

    for (const auto& r : run.per_eps) {
        std::vector<std::vector<double>> pts;
        for (size_t i = 0; i < r.config.size(); ++i) {
            std::vector<double> row(r.config.point(i),
                                    r.config.point(i) + spec.dim);
            row.push_back(static_cast<double>(r.config.multiplicity[i]));
            pts.push_back(std::move(row));
        }
        std::vector<std::string> ph;
        for (int a = 0; a < spec.dim; ++a) ph.push_back("x" + std::to_string(a));
        ph.push_back("multiplicity");
        std::ostringstream name;
        name << "config_eps_" << r.eps << ".csv";
        w.csv(name.str(), ph, pts);
    }
}

void task_verify(const ExperimentSpec& spec, ArtifactWriter& w) {
    // Compact invariant suite over the spec's cost: hypothesis checks, the
    // envelope order l_- <= l <= l_+, additivity on random splits, and a
    // conjugation round trip. Any failure throws and maps to exit 4.
    std::ostringstream report;
    HypothesisReport hyp = spec.cost.validate_hypotheses(spec.dim);
    report << "hypotheses: " << (hyp.all_pass() ? "pass" : "FAIL") << "\n";
    if (!hyp.all_pass())
        throw DomainError("verify: cost violates the standing hypotheses: " + hyp.note);

    auto engine = make_engine(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        double r = 2.0 * unif(engine) + 1e-3;
        double lo = spec.cost.lower_envelope(r, spec.dim);
        double up = spec.cost.upper_envelope(r);
        double mid = spec.cost(r);
        if (lo > mid + 1e-12 || (r >= spec.cost.r0() && mid > up + 1e-12))
            throw DomainError("verify: envelope ordering violated");
    }

    for (int rep = 0; rep < 50; ++rep) {
        Box box = Box::cube(spec.dim, 4.0);
        PointConfiguration a(box), b(box), merged(box);
        std::vector<double> x(spec.dim);
        int na = 2 + static_cast<int>(unif(engine) * 6);
        int nb = 2 + static_cast<int>(unif(engine) * 6);
        for (int i = 0; i < na + nb; ++i) {
            for (int d = 0; d < spec.dim; ++d) x[d] = 4.0 * unif(engine);
            (i < na ? a : b).push_back(x.data());
            merged.push_back(x.data());
        }
        double ea = interaction_energy(a, spec.cost, 1.0);
        double eb = interaction_energy(b, spec.cost, 1.0);
        double em = interaction_energy(merged, spec.cost, 1.0);
        if (std::isfinite(em) && em + 1e-9 * (1.0 + std::abs(em)) < ea + eb)
            throw DomainError("verify: union energy fell below the parts");
    }

    std::vector<double> t_grid, fv;
    for (int i = 0; i <= 64; ++i) {
        double t = 4.0 * i / 64.0;
        t_grid.push_back(t);
        fv.push_back(t * t);
    }
    SampledConvexFunction parabola(t_grid, fv, DomainConvention::finite);
    std::vector<double> lam;
    for (int i = 0; i <= 64; ++i) lam.push_back(-2.0 + 12.0 * i / 64.0);
    SampledConvexFunction conj = legendre_transform(parabola, lam);
    SampledConvexFunction back = legendre_transform(conj, t_grid);
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (std::abs(back.values[i] - fv[i]) > 0.02)
            throw DomainError("verify: conjugation round trip drifted");
    }
    report << "envelopes: pass\nadditivity: pass\nconjugation: pass\n";
    w.text("verify.txt", report.str());
}

}  // namespace

AnnealSchedule schedule_from_json(const json& j) {
    AnnealSchedule s;
    auto it = j.find("schedule");
    if (it == j.end()) return s;
    const json& o = *it;
    s.stages = static_cast<int>(opt_number(o, "stages", s.stages));
    s.proposals_per_volume = static_cast<int>(
        opt_number(o, "proposals_per_volume", s.proposals_per_volume));
    s.cooling = opt_number(o, "cooling", s.cooling);
    s.initial_sigma = opt_number(o, "initial_sigma", s.initial_sigma);
    s.insert_prob = opt_number(o, "insert_prob", s.insert_prob);
    s.delete_prob = opt_number(o, "delete_prob", s.delete_prob);
    if (!s.valid()) throw SchemaError("schedule: invalid parameter combination");
    return s;
}

ExperimentSpec parse_experiment(const std::string& json_text,
                                const std::optional<std::string>& out_override,
                                const std::optional<uint64_t>& seed_override) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("json parse error: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("spec root must be a JSON object");

    ExperimentSpec spec;
    spec.task = need(doc, "task").get<std::string>();
    static const std::vector<std::string> tasks = {
        "energy", "zeta",      "gamma",    "g_profile",
        "f_profile", "meanfield", "converge", "verify"};
    if (std::find(tasks.begin(), tasks.end(), spec.task) == tasks.end())
        throw SchemaError("task: unknown task '" + spec.task + "'");

    double dim = need_number(doc, "dimension");
    if (dim != std::floor(dim) || dim < 1 || dim > 3)
        throw SchemaError("dimension: expected an integer in [1, 3]");
    spec.dim = static_cast<int>(dim);

    spec.cost = cost_from_json(need(doc, "cost"));

    const json& seed = need(doc, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw SchemaError("seed: expected a 64-bit integer (wall-clock seeding refused)");
    spec.seed = seed.get<uint64_t>();
    if (seed_override) spec.seed = *seed_override;

    spec.out_dir = doc.value("out", "run");
    if (out_override) spec.out_dir = *out_override;
    spec.params = doc.value("params", json::object());
    return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    ArtifactWriter w;
    w.dir = spec.out_dir;
    std::filesystem::create_directories(w.dir);

    if (spec.task == "energy")
        task_energy(spec, w);
    else if (spec.task == "zeta")
        task_zeta(spec, w);
    else if (spec.task == "gamma")
        task_gamma(spec, w);
    else if (spec.task == "g_profile")
        task_g_profile(spec, w);
    else if (spec.task == "f_profile")
        task_f_profile(spec, w);
    else if (spec.task == "meanfield")
        task_meanfield(spec, w);
    else if (spec.task == "converge")
        task_converge(spec, w);
    else if (spec.task == "verify")
        task_verify(spec, w);
    else
        throw SchemaError("task: unknown task '" + spec.task + "'");

    json spec_echo;
    spec_echo["task"] = spec.task;
    spec_echo["dimension"] = spec.dim;
    spec_echo["seed"] = spec.seed;
    w.manifest(spec, fnv1a64(spec_echo.dump()));

    ExperimentResult res;
    res.exit_code = 0;
    for (const auto& [name, hash] : w.outputs)
        res.artifacts.push_back(join_path(w.dir, name));
    res.artifacts.push_back(join_path(w.dir, "manifest.json"));
    res.message = "ok";
    return res;
}

std::vector<std::string> emit_plot_data(const std::string& run_dir) {
    std::vector<std::string> written;
    auto emit = [&](const std::string& src, const std::string& dst,
                    const std::string& series, int xcol, int ycol, int errcol) {
        std::string path = join_path(run_dir, src);
        if (!std::filesystem::exists(path)) return;
        CsvTable t = read_csv(path);
        std::ostringstream out;
        out << "series,x,y,y_err\n";
        char buf[128];
        for (const auto& row : t.rows) {
            double err = errcol >= 0 && errcol < static_cast<int>(row.size())
                             ? row[errcol]
                             : 0.0;
            out << series << ',';
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", row[xcol],
                          row[ycol], err);
            out << buf;
        }
        std::string dst_path = join_path(run_dir, dst);
        atomic_write_file(dst_path, out.str());
        written.push_back(dst_path);
    };

    emit("g.csv", "plot_g.csv", "g_estimate", 0, 1, 2);
    emit("f.csv", "plot_f.csv", "f_estimate", 0, 1, -1);
    emit("trend.csv", "plot_trend.csv", "scaled_value", 0, 2, -1);
    emit("zeta.csv", "plot_zeta.csv", "zeta", 0, 1, 2);
    emit("gamma.csv", "plot_gamma.csv", "gamma_per_volume", 1, 3, -1);
    if (written.empty())
        throw DomainError("plotdata: no recognized result files in " + run_dir);
    return written;
}

}  // namespace sr
