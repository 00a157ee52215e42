#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csmm/acceptance.hpp"
#include "csmm/amp.hpp"
#include "csmm/lasso.hpp"
#include "csmm/minimax_cs.hpp"
#include "csmm/parallel.hpp"
#include "csmm/prior.hpp"
#include "csmm/scalar_risk.hpp"
#include "csmm/state_evolution.hpp"
#include "csmm/table.hpp"
#include "csmm/version.hpp"
#include "csmm/weak_risk.hpp"

namespace {

using csmm::Cell;
using csmm::Table;

constexpr int exit_validation = 1;
constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

// --grid start:stop:steps:lin|log
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;
    bool log = false;
    std::string text;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    g.text = text;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) {
        throw CLI::ValidationError("--grid", "expected start:stop:steps:lin|log");
    }
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        g.steps = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "non-numeric start/stop/steps");
    }
    if (parts[3] == "log") {
        g.log = true;
    } else if (parts[3] == "lin") {
        g.log = false;
    } else {
        throw CLI::ValidationError("--grid", "scale must be lin or log");
    }
    if (g.steps < 1) throw CLI::ValidationError("--grid", "steps must be >= 1");
    if (g.log && (g.start <= 0.0 || g.stop <= 0.0)) {
        throw CLI::ValidationError("--grid", "log scale needs positive endpoints");
    }
    return g;
}

std::vector<double> grid_values(const GridSpec& g) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(g.steps));
    if (g.steps == 1) {
        v.push_back(g.start);
        return v;
    }
    for (int i = 0; i < g.steps; ++i) {
        const double t = static_cast<double>(i) / (g.steps - 1);
        if (g.log) {
            v.push_back(g.start * std::pow(g.stop / g.start, t));
        } else {
            v.push_back(g.start + t * (g.stop - g.start));
        }
    }
    return v;
}

struct OutputOptions {
    std::string format = "csv";
    std::string out;

    void attach(CLI::App* cmd, bool allow_text = false) {
        std::vector<std::string> choices = {"csv", "json"};
        if (allow_text) {
            choices.insert(choices.begin(), "text");
            format = "text";
        }
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember(choices))
            ->capture_default_str();
        cmd->add_option("--out", out, "Output path (default stdout)");
    }

    int emit_table(const Table& t) const {
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!out.empty()) {
            file.open(out);
            if (!file) {
                std::cerr << "error: cannot open output file " << out << "\n";
                return exit_numerical;
            }
            os = &file;
        }
        if (format == "json") {
            csmm::write_json(t, *os);
        } else {
            csmm::write_csv(t, *os);
        }
        return 0;
    }
};

struct PriorOptions {
    std::string kind = "three-point";
    double eps = 0.1;
    double mu = 1.0;
    std::string atoms_text;

    void attach(CLI::App* cmd) {
        cmd->add_option("--prior", kind,
                        "Signal law: three-point | zero | atoms | weak | lf "
                        "(lf = least-favorable law for p, delta, xi, sigma)")
            ->check(CLI::IsMember({"three-point", "zero", "atoms", "weak", "lf"}))
            ->capture_default_str();
        cmd->add_option("--eps", eps, "Nonzero mass of the three-point law")
            ->capture_default_str();
        cmd->add_option("--mu", mu, "Spike location of the three-point law")
            ->capture_default_str();
        cmd->add_option("--atoms", atoms_text,
                        "Explicit law as value:weight,value:weight,...");
    }

    csmm::Prior build(double p, double delta, double xi, double sigma,
                      std::string* desc) const {
        std::ostringstream d;
        csmm::Prior prior = csmm::DiscretePrior::point_mass_at_zero();
        if (kind == "three-point") {
            prior = csmm::DiscretePrior::three_point(eps, mu);
            d << "three-point(eps=" << eps << ",mu=" << mu << ")";
        } else if (kind == "zero") {
            d << "zero";
        } else if (kind == "atoms") {
            std::vector<double> atoms, weights;
            std::stringstream ss(atoms_text);
            std::string pair;
            while (std::getline(ss, pair, ',')) {
                const auto colon = pair.find(':');
                if (colon == std::string::npos) {
                    throw std::invalid_argument("--atoms entries must be value:weight");
                }
                atoms.push_back(std::stod(pair.substr(0, colon)));
                weights.push_back(std::stod(pair.substr(colon + 1)));
            }
            prior = csmm::DiscretePrior(std::move(atoms), std::move(weights));
            d << "atoms(" << atoms_text << ")";
        } else if (kind == "weak") {
            prior = csmm::WeakLpPrior{p, xi};
            d << "weak(p=" << p << ",xi=" << xi << ")";
        } else {  // lf
            const csmm::MinimaxReport rep =
                sigma > 0.0 ? csmm::minimax_noisy(p, delta, xi, sigma)
                            : csmm::minimax_noiseless(p, delta, xi);
            prior = rep.least_favorable;
            d << "lf(p=" << p << ",delta=" << delta << ",xi=" << xi
              << ",sigma=" << sigma << ",eps=" << rep.eps << ",mu=" << rep.mu << ")";
        }
        if (desc) *desc = d.str();
        return prior;
    }
};

void add_param(Table& t, const std::string& key, double v) {
    t.params.emplace_back(key, csmm::format_real(v));
}
void add_param(Table& t, const std::string& key, long long v) {
    t.params.emplace_back(key, std::to_string(v));
}
void add_param(Table& t, const std::string& key, const std::string& v) {
    t.params.emplace_back(key, v);
}
void add_param(Table& t, const std::string& key, bool v) {
    t.params.emplace_back(key, v ? "true" : "false");
}

int run_scalar_risk(const std::vector<double>& ps, const GridSpec& grid, bool weak,
                    const OutputOptions& out) {
    Table t;
    t.command = "scalar-risk";
    add_param(t, "grid", grid.text);
    add_param(t, "weak", weak);
    t.columns = {"p", "xi_p", "value", "tau", "mu", "eps"};
    if (weak) {
        t.columns.push_back("weak_value");
        t.columns.push_back("weak_tau");
    }
    t.columns.push_back("error");

    for (double p : ps) {
        for (double xi_p : grid_values(grid)) {
            std::vector<Cell> row;
            row.push_back(Cell::of(p));
            row.push_back(Cell::of(xi_p));
            try {
                const double xi = std::pow(xi_p, 1.0 / p);
                const csmm::ScalarMinimax sm = csmm::scalar_minimax(p, xi);
                row.push_back(Cell::of(sm.value));
                row.push_back(Cell::of(sm.tau));
                row.push_back(Cell::of(sm.mu));
                row.push_back(Cell::of(sm.eps));
                if (weak) {
                    const csmm::WeakMinimax wm = csmm::weak_minimax(p, xi);
                    row.push_back(Cell::of(wm.value));
                    row.push_back(Cell::of(wm.tau));
                }
                row.push_back(Cell());
            } catch (const std::exception& e) {
                row.resize(t.columns.size() - 1);
                row.push_back(Cell::of(std::string(e.what())));
            }
            t.add_row(std::move(row));
        }
    }
    return out.emit_table(t);
}

int run_weak_risk(const std::vector<double>& ps, const GridSpec& grid, double tau,
                  bool tau_given, const OutputOptions& out) {
    Table t;
    t.command = "weak-risk";
    add_param(t, "grid", grid.text);
    if (tau_given) add_param(t, "tau", tau);
    t.columns = {"p", "xi_p", "value", "tau", "error"};

    for (double p : ps) {
        for (double xi_p : grid_values(grid)) {
            std::vector<Cell> row;
            row.push_back(Cell::of(p));
            row.push_back(Cell::of(xi_p));
            try {
                const double xi = std::pow(xi_p, 1.0 / p);
                if (tau_given) {
                    row.push_back(Cell::of(csmm::weak_lf_mse(p, xi, tau)));
                    row.push_back(Cell::of(tau));
                } else {
                    const csmm::WeakMinimax wm = csmm::weak_minimax(p, xi);
                    row.push_back(Cell::of(wm.value));
                    row.push_back(Cell::of(wm.tau));
                }
                row.push_back(Cell());
            } catch (const std::exception& e) {
                row.resize(t.columns.size() - 1);
                row.push_back(Cell::of(std::string(e.what())));
            }
            t.add_row(std::move(row));
        }
    }
    return out.emit_table(t);
}

int run_minimax(const std::string& family, double p, double delta, double xi,
                double sigma, const std::string& grid_over, const GridSpec* grid,
                const OutputOptions& out) {
    Table t;
    t.command = "minimax";
    add_param(t, "family", family);
    add_param(t, "p", p);
    add_param(t, "delta", delta);
    add_param(t, "xi", xi);
    add_param(t, "sigma", sigma);
    if (grid) {
        add_param(t, "grid", grid->text);
        add_param(t, "grid_over", grid_over);
    }
    t.columns = {"mode", "family", "p",   "delta",  "xi", "sigma", "value",
                 "npi",  "xi_eff", "tau", "lambda", "mu", "eps",   "error"};

    std::vector<double> deltas = {delta};
    std::vector<double> xis = {xi};
    if (grid) {
        if (grid_over == "delta") {
            deltas = grid_values(*grid);
        } else {
            xis = grid_values(*grid);
        }
    }

    const bool weak = family == "weak";
    const std::string mode = sigma > 0.0 ? "noisy" : "noiseless";
    for (double d : deltas) {
        for (double x : xis) {
            std::vector<Cell> row;
            row.push_back(Cell::of(mode));
            row.push_back(Cell::of(family));
            row.push_back(Cell::of(p));
            row.push_back(Cell::of(d));
            row.push_back(Cell::of(x));
            row.push_back(Cell::of(sigma));
            try {
                csmm::MinimaxReport rep;
                if (weak) {
                    rep = sigma > 0.0 ? csmm::minimax_noisy_weak(p, d, x, sigma)
                                      : csmm::minimax_noiseless_weak(p, d, x);
                } else {
                    rep = sigma > 0.0 ? csmm::minimax_noisy(p, d, x, sigma)
                                      : csmm::minimax_noiseless(p, d, x);
                }
                row.push_back(Cell::of(rep.value));
                row.push_back(Cell::of(rep.npi));
                row.push_back(Cell::of(rep.xi_eff));
                row.push_back(Cell::of(rep.tau));
                row.push_back(Cell::of(rep.lambda));
                if (weak) {
                    row.push_back(Cell());
                    row.push_back(Cell());
                } else {
                    row.push_back(Cell::of(rep.mu));
                    row.push_back(Cell::of(rep.eps));
                }
                row.push_back(Cell());
            } catch (const std::exception& e) {
                row.resize(t.columns.size() - 1);
                row.push_back(Cell::of(std::string(e.what())));
            }
            t.add_row(std::move(row));
        }
    }
    return out.emit_table(t);
}

int run_se(double delta, double sigma, double tau, const PriorOptions& popt, double p,
           double xi, const GridSpec* grid, const OutputOptions& out) {
    std::string prior_desc;
    const csmm::Prior prior = popt.build(p, delta, xi, sigma, &prior_desc);
    const csmm::SEConfig cfg{delta, sigma, tau, prior};
    const csmm::Calibration cal = csmm::calibrate_lambda(cfg);
    const csmm::FixedPoint fp = csmm::solve_fixed_point(cfg);

    Table t;
    t.command = "se";
    add_param(t, "delta", delta);
    add_param(t, "sigma", sigma);
    add_param(t, "tau", tau);
    add_param(t, "prior", prior_desc);
    add_param(t, "m_star", fp.m);
    add_param(t, "npi_star", fp.npi);
    add_param(t, "lambda", cal.lambda);
    add_param(t, "onsager", cal.onsager);
    add_param(t, "iterations", static_cast<long long>(fp.iterations));
    add_param(t, "converged", fp.converged);
    add_param(t, "diverged", fp.diverged);

    GridSpec g;
    if (grid) {
        g = *grid;
    } else {
        g.start = 0.0;
        g.steps = 201;
        g.log = false;
        g.stop = fp.diverged ? 10.0 * (sigma * sigma + csmm::scale_hint(prior) + 1.0)
                             : 2.0 * std::max(fp.m, 1e-8);
        g.text = "auto";
    }
    add_param(t, "grid", g.text);

    t.columns = {"m", "psi"};
    for (double m : grid_values(g)) {
        t.add_row({Cell::of(m), Cell::of(csmm::se_map(m, cfg))});
    }
    return out.emit_table(t);
}

int run_calibrate(double delta, double sigma, const PriorOptions& popt, double p,
                  double xi, double lambda, bool lambda_given, double tau,
                  bool tau_given, const OutputOptions& out) {
    std::string prior_desc;
    const csmm::Prior prior = popt.build(p, delta, xi, sigma, &prior_desc);

    csmm::Calibration cal;
    std::string direction;
    if (lambda_given) {
        cal = csmm::calibrate_tau(lambda, delta, sigma, prior);
        direction = "lambda->tau";
    } else {
        cal = csmm::calibrate_lambda(csmm::SEConfig{delta, sigma, tau, prior});
        direction = "tau->lambda";
    }

    Table t;
    t.command = "calibrate";
    add_param(t, "delta", delta);
    add_param(t, "sigma", sigma);
    add_param(t, "prior", prior_desc);
    if (lambda_given) add_param(t, "lambda", lambda);
    if (tau_given) add_param(t, "tau", tau);
    t.columns = {"direction", "lambda", "tau", "m", "npi", "onsager", "valid"};
    t.add_row({Cell::of(direction), Cell::of(cal.lambda), Cell::of(cal.tau),
               Cell::of(cal.m), Cell::of(cal.npi), Cell::of(cal.onsager),
               Cell::of(cal.valid)});
    return out.emit_table(t);
}

int run_amp(int N, int n, const PriorOptions& popt, double p, double xi, double sigma,
            double lambda, bool lambda_given, double tau, bool tau_given, int trials,
            std::uint64_t seed, int max_iter, double tol, const OutputOptions& out) {
    const double delta = static_cast<double>(n) / N;
    std::string prior_desc;
    const csmm::Prior prior = popt.build(p, delta, xi, sigma, &prior_desc);

    csmm::Calibration cal;
    double tau_run = tau;
    double lambda_ref = lambda;
    if (lambda_given) {
        cal = csmm::calibrate_tau(lambda, delta, sigma, prior);
        tau_run = cal.tau;
    } else {
        cal = csmm::calibrate_lambda(csmm::SEConfig{delta, sigma, tau, prior});
        lambda_ref = cal.lambda;
    }
    const double predicted = cal.m;

    Table t;
    t.command = "amp";
    add_param(t, "N", static_cast<long long>(N));
    add_param(t, "n", static_cast<long long>(n));
    add_param(t, "delta", delta);
    add_param(t, "sigma", sigma);
    add_param(t, "prior", prior_desc);
    add_param(t, "lambda", lambda_ref);
    add_param(t, "tau", tau_run);
    add_param(t, "trials", static_cast<long long>(trials));
    add_param(t, "seed", static_cast<long long>(seed));
    add_param(t, "max_iter", static_cast<long long>(max_iter));
    add_param(t, "tol", tol);
    add_param(t, "predicted_mse", predicted);
    t.columns = {"trial",     "seed",          "iterations",
                 "converged", "diverged",      "empirical_mse",
                 "predicted_mse", "relative_gap", "lambda_theta_residual"};

    struct TrialRow {
        int iterations = 0;
        bool converged = false;
        bool diverged = false;
        double mse = 0.0;
        double gap = 0.0;
        double resid = 0.0;
    };
    std::vector<TrialRow> rows(static_cast<std::size_t>(trials));
    csmm::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        const csmm::ProblemInstance inst =
            csmm::generate_instance(N, n, prior, sigma, seed + i);
        const csmm::AmpState st = csmm::amp_run(inst, tau_run, max_iter, tol);
        TrialRow r;
        r.iterations = st.iterations;
        r.converged = st.converged;
        r.diverged = st.diverged;
        r.mse = csmm::empirical_mse(st.x_hat, inst.x0);
        r.gap = predicted > 0.0 ? std::abs(r.mse - predicted) / predicted : r.mse;
        const double lambda_hat =
            st.theta * (1.0 - static_cast<double>(st.support) / n);
        r.resid = std::abs(lambda_ref - lambda_hat);
        rows[i] = r;
    });

    double mean = 0.0, mean_resid = 0.0;
    for (int i = 0; i < trials; ++i) {
        const TrialRow& r = rows[static_cast<std::size_t>(i)];
        t.add_row({Cell::of(std::to_string(i)), Cell::of(static_cast<long long>(seed + i)),
                   Cell::of(r.iterations), Cell::of(r.converged), Cell::of(r.diverged),
                   Cell::of(r.mse), Cell::of(predicted), Cell::of(r.gap),
                   Cell::of(r.resid)});
        mean += r.mse;
        mean_resid += r.resid;
    }
    mean /= trials;
    mean_resid /= trials;
    double se = 0.0;
    if (trials > 1) {
        double ss = 0.0;
        for (const TrialRow& r : rows) ss += (r.mse - mean) * (r.mse - mean);
        se = std::sqrt(ss / (trials - 1)) / std::sqrt(static_cast<double>(trials));
    }
    const double mean_gap = predicted > 0.0 ? std::abs(mean - predicted) / predicted : mean;
    t.add_row({Cell::of(std::string("mean")), Cell(), Cell(), Cell(), Cell(),
               Cell::of(mean), Cell::of(predicted), Cell::of(mean_gap),
               Cell::of(mean_resid)});
    t.add_row({Cell::of(std::string("stderr")), Cell(), Cell(), Cell(), Cell(),
               Cell::of(se), Cell(), Cell(), Cell()});
    return out.emit_table(t);
}

int run_lasso(int N, int n, const PriorOptions& popt, double p, double xi, double sigma,
              double lambda, const std::string& solver, bool accelerate,
              std::uint64_t seed, int max_iter, double tol, const OutputOptions& out) {
    const double delta = static_cast<double>(n) / N;
    std::string prior_desc;
    const csmm::Prior prior = popt.build(p, delta, xi, sigma, &prior_desc);
    const csmm::ProblemInstance inst = csmm::generate_instance(N, n, prior, sigma, seed);

    Table t;
    t.command = "lasso";
    add_param(t, "N", static_cast<long long>(N));
    add_param(t, "n", static_cast<long long>(n));
    add_param(t, "sigma", sigma);
    add_param(t, "prior", prior_desc);
    add_param(t, "lambda", lambda);
    add_param(t, "solver", solver);
    add_param(t, "accelerate", accelerate);
    add_param(t, "seed", static_cast<long long>(seed));
    add_param(t, "max_iter", static_cast<long long>(max_iter));
    add_param(t, "tol", tol);
    t.columns = {"solver",    "objective", "kkt_residual",  "iterations",
                 "converged", "support",   "mse_vs_signal"};

    auto add_solution = [&](const std::string& name, const csmm::LassoSolution& sol) {
        long long support = 0;
        for (int i = 0; i < sol.x_hat.size(); ++i) {
            if (sol.x_hat[i] != 0.0) ++support;
        }
        t.add_row({Cell::of(name), Cell::of(sol.objective), Cell::of(sol.residual),
                   Cell::of(sol.iterations), Cell::of(sol.converged), Cell::of(support),
                   Cell::of(csmm::empirical_mse(sol.x_hat, inst.x0))});
    };

    csmm::LassoSolution prox_sol, cd_sol;
    bool have_prox = false, have_cd = false;
    if (solver == "prox" || solver == "both") {
        prox_sol = csmm::solve_lasso(inst, lambda, tol, max_iter, accelerate);
        add_solution("prox", prox_sol);
        have_prox = true;
    }
    if (solver == "cd" || solver == "both") {
        cd_sol = csmm::solve_lasso_cd(inst, lambda, tol, max_iter);
        add_solution("cd", cd_sol);
        have_cd = true;
    }
    if (have_prox && have_cd) {
        const double scale = std::max(std::abs(prox_sol.objective), 1e-300);
        add_param(t, "objective_gap_rel",
                  std::abs(prox_sol.objective - cd_sol.objective) / scale);
    }
    return out.emit_table(t);
}

int run_validate(const std::string& only, const OutputOptions& out) {
    std::vector<std::string> subset;
    if (!only.empty()) {
        std::stringstream ss(only);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!name.empty()) subset.push_back(name);
        }
    }
    const std::vector<csmm::CriterionResult> results = csmm::run_acceptance(subset);

    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
    }

    if (out.format == "text") {
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!out.out.empty()) {
            file.open(out.out);
            if (!file) {
                std::cerr << "error: cannot open output file " << out.out << "\n";
                return exit_numerical;
            }
            os = &file;
        }
        for (const auto& r : results) *os << csmm::format_criterion_line(r) << "\n";
        *os << "summary: " << (results.size() - failures) << "/" << results.size()
            << " criteria passed\n";
    } else {
        Table t;
        t.command = "validate";
        add_param(t, "only", only.empty() ? std::string("all") : only);
        t.columns = {"name", "pass", "measured", "detail"};
        for (const auto& r : results) {
            t.add_row({Cell::of(r.name), Cell::of(r.pass), Cell::of(r.measured),
                       Cell::of(r.detail)});
        }
        const int rc = out.emit_table(t);
        if (rc != 0) return rc;
    }
    return failures == 0 ? 0 : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Minimax risk, state evolution and message-passing toolkit for "
        "l1-penalized reconstruction.\n"
        "Thread count defaults to the hardware, override with CSMM_THREADS.\n"
        "Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 numerical failure."};
    app.set_version_flag("--version", std::string(csmm::version));
    app.require_subcommand(1);

    int rc = 0;

    // scalar-risk
    {
        auto* cmd = app.add_subcommand("scalar-risk",
                                       "Minimax soft-thresholding risk over moment balls");
        auto ps = std::make_shared<std::vector<double>>(std::vector<double>{1.0});
        auto grid_text = std::make_shared<std::string>("0.1:0.1:1:lin");
        auto weak = std::make_shared<bool>(false);
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--p", *ps, "Moment exponents (repeatable)")
            ->capture_default_str();
        cmd->add_option("--grid", *grid_text, "Grid over xi^p: start:stop:steps:lin|log")
            ->capture_default_str();
        cmd->add_flag("--weak", *weak, "Append weak-ball columns");
        out->attach(cmd);
        cmd->callback([=, &rc] {
            rc = run_scalar_risk(*ps, parse_grid(*grid_text), *weak, *out);
        });
    }

    // weak-risk
    {
        auto* cmd = app.add_subcommand("weak-risk",
                                       "Minimax risk over weak (tail-constrained) balls");
        auto ps = std::make_shared<std::vector<double>>(std::vector<double>{1.0});
        auto grid_text = std::make_shared<std::string>("0.1:0.1:1:lin");
        auto tau = std::make_shared<double>(0.0);
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--p", *ps, "Moment exponents (repeatable)")
            ->capture_default_str();
        cmd->add_option("--grid", *grid_text, "Grid over xi^p: start:stop:steps:lin|log")
            ->capture_default_str();
        auto* tau_opt = cmd->add_option("--tau", *tau,
                                        "Evaluate at this threshold instead of minimizing");
        out->attach(cmd);
        cmd->callback([=, &rc] {
            rc = run_weak_risk(*ps, parse_grid(*grid_text), *tau, tau_opt->count() > 0,
                               *out);
        });
    }

    // minimax
    {
        auto* cmd = app.add_subcommand(
            "minimax", "Minimax reconstruction risk at undersampling ratio delta");
        auto family = std::make_shared<std::string>("strong");
        auto p = std::make_shared<double>(1.0);
        auto delta = std::make_shared<double>(0.25);
        auto xi = std::make_shared<double>(0.3);
        auto sigma = std::make_shared<double>(0.0);
        auto grid_text = std::make_shared<std::string>();
        auto grid_over = std::make_shared<std::string>("xi");
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--family", *family, "Ball family")
            ->check(CLI::IsMember({"strong", "weak"}))
            ->capture_default_str();
        cmd->add_option("--p", *p, "Moment exponent")->capture_default_str();
        cmd->add_option("--delta", *delta, "Undersampling ratio n/N")
            ->capture_default_str();
        cmd->add_option("--xi", *xi, "Ball radius")->capture_default_str();
        cmd->add_option("--sigma", *sigma, "Noise level (0 = noiseless)")
            ->capture_default_str();
        cmd->add_option("--grid", *grid_text, "Grid start:stop:steps:lin|log");
        cmd->add_option("--grid-over", *grid_over, "Variable the grid sweeps")
            ->check(CLI::IsMember({"xi", "delta"}))
            ->capture_default_str();
        out->attach(cmd);
        cmd->callback([=, &rc] {
            GridSpec g;
            const bool has_grid = !grid_text->empty();
            if (has_grid) g = parse_grid(*grid_text);
            rc = run_minimax(*family, *p, *delta, *xi, *sigma, *grid_over,
                             has_grid ? &g : nullptr, *out);
        });
    }

    // se
    {
        auto* cmd = app.add_subcommand(
            "se", "State evolution map, highest fixed point, calibrated penalty");
        auto delta = std::make_shared<double>(0.25);
        auto sigma = std::make_shared<double>(1.0);
        auto tau = std::make_shared<double>(1.5);
        auto p = std::make_shared<double>(1.0);
        auto xi = std::make_shared<double>(0.3);
        auto popt = std::make_shared<PriorOptions>();
        auto grid_text = std::make_shared<std::string>();
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--delta", *delta, "Undersampling ratio")->capture_default_str();
        cmd->add_option("--sigma", *sigma, "Noise level")->capture_default_str();
        cmd->add_option("--tau", *tau, "Threshold multiplier")->capture_default_str();
        cmd->add_option("--p", *p, "Moment exponent (weak/lf priors)")
            ->capture_default_str();
        cmd->add_option("--xi", *xi, "Ball radius (weak/lf priors)")
            ->capture_default_str();
        popt->attach(cmd);
        cmd->add_option("--grid", *grid_text,
                        "Grid of map arguments start:stop:steps:lin|log");
        out->attach(cmd);
        cmd->callback([=, &rc] {
            GridSpec g;
            const bool has_grid = !grid_text->empty();
            if (has_grid) g = parse_grid(*grid_text);
            rc = run_se(*delta, *sigma, *tau, *popt, *p, *xi, has_grid ? &g : nullptr,
                        *out);
        });
    }

    // calibrate
    {
        auto* cmd = app.add_subcommand(
            "calibrate", "Convert between penalty and threshold multiplier");
        auto delta = std::make_shared<double>(0.25);
        auto sigma = std::make_shared<double>(1.0);
        auto p = std::make_shared<double>(1.0);
        auto xi = std::make_shared<double>(0.3);
        auto popt = std::make_shared<PriorOptions>();
        auto lambda = std::make_shared<double>(0.0);
        auto tau = std::make_shared<double>(0.0);
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--delta", *delta, "Undersampling ratio")->capture_default_str();
        cmd->add_option("--sigma", *sigma, "Noise level")->capture_default_str();
        cmd->add_option("--p", *p, "Moment exponent (weak/lf priors)")
            ->capture_default_str();
        cmd->add_option("--xi", *xi, "Ball radius (weak/lf priors)")
            ->capture_default_str();
        popt->attach(cmd);
        auto* lam_opt = cmd->add_option("--lambda", *lambda, "Penalty to invert");
        auto* tau_opt = cmd->add_option("--tau", *tau, "Threshold to calibrate");
        lam_opt->excludes(tau_opt);
        out->attach(cmd);
        cmd->callback([=, &rc] {
            const bool lg = lam_opt->count() > 0;
            const bool tg = tau_opt->count() > 0;
            if (!lg && !tg) {
                throw CLI::RequiredError("calibrate: one of --lambda/--tau");
            }
            rc = run_calibrate(*delta, *sigma, *popt, *p, *xi, *lambda, lg, *tau, tg,
                               *out);
        });
    }

    // amp
    {
        auto* cmd = app.add_subcommand(
            "amp", "Message-passing trials against the state-evolution prediction");
        auto N = std::make_shared<int>(4000);
        auto n = std::make_shared<int>(1000);
        auto p = std::make_shared<double>(1.0);
        auto xi = std::make_shared<double>(0.3);
        auto sigma = std::make_shared<double>(1.0);
        auto popt = std::make_shared<PriorOptions>();
        auto lambda = std::make_shared<double>(0.0);
        auto tau = std::make_shared<double>(0.0);
        auto trials = std::make_shared<int>(1);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto max_iter = std::make_shared<int>(2000);
        auto tol = std::make_shared<double>(1e-8);
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--N", *N, "Signal length")->capture_default_str();
        cmd->add_option("--n", *n, "Measurement count")->capture_default_str();
        cmd->add_option("--p", *p, "Moment exponent (weak/lf priors)")
            ->capture_default_str();
        cmd->add_option("--xi", *xi, "Ball radius (weak/lf priors)")
            ->capture_default_str();
        cmd->add_option("--sigma", *sigma, "Noise level")->capture_default_str();
        popt->attach(cmd);
        auto* lam_opt = cmd->add_option("--lambda", *lambda, "Penalty target");
        auto* tau_opt = cmd->add_option("--tau", *tau, "Threshold multiplier");
        lam_opt->excludes(tau_opt);
        cmd->add_option("--trials", *trials, "Independent instances")
            ->capture_default_str();
        cmd->add_option("--seed", *seed, "Base seed; trial k uses seed+k")
            ->capture_default_str();
        cmd->add_option("--max-iter", *max_iter, "Iteration cap")->capture_default_str();
        cmd->add_option("--tol", *tol, "Relative stopping tolerance")
            ->capture_default_str();
        out->attach(cmd);
        cmd->callback([=, &rc] {
            const bool lg = lam_opt->count() > 0;
            const bool tg = tau_opt->count() > 0;
            if (!lg && !tg) {
                throw CLI::RequiredError("amp: one of --lambda/--tau");
            }
            rc = run_amp(*N, *n, *popt, *p, *xi, *sigma, *lambda, lg, *tau, tg, *trials,
                         *seed, *max_iter, *tol, *out);
        });
    }

    // lasso
    {
        auto* cmd = app.add_subcommand(
            "lasso", "Direct penalized least-squares solve on one instance");
        auto N = std::make_shared<int>(500);
        auto n = std::make_shared<int>(125);
        auto p = std::make_shared<double>(1.0);
        auto xi = std::make_shared<double>(0.3);
        auto sigma = std::make_shared<double>(1.0);
        auto popt = std::make_shared<PriorOptions>();
        auto lambda = std::make_shared<double>(1.0);
        auto solver = std::make_shared<std::string>("both");
        auto accelerate = std::make_shared<bool>(true);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto max_iter = std::make_shared<int>(100000);
        auto tol = std::make_shared<double>(1e-10);
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--N", *N, "Signal length")->capture_default_str();
        cmd->add_option("--n", *n, "Measurement count")->capture_default_str();
        cmd->add_option("--p", *p, "Moment exponent (weak/lf priors)")
            ->capture_default_str();
        cmd->add_option("--xi", *xi, "Ball radius (weak/lf priors)")
            ->capture_default_str();
        cmd->add_option("--sigma", *sigma, "Noise level")->capture_default_str();
        popt->attach(cmd);
        cmd->add_option("--lambda", *lambda, "Penalty")->capture_default_str();
        cmd->add_option("--solver", *solver, "Solver selection")
            ->check(CLI::IsMember({"prox", "cd", "both"}))
            ->capture_default_str();
        cmd->add_flag("--accelerate,!--no-accelerate", *accelerate,
                      "Momentum in the proximal solver");
        cmd->add_option("--seed", *seed, "Instance seed")->capture_default_str();
        cmd->add_option("--max-iter", *max_iter, "Iteration cap")->capture_default_str();
        cmd->add_option("--tol", *tol, "Stationarity tolerance")->capture_default_str();
        out->attach(cmd);
        cmd->callback([=, &rc] {
            rc = run_lasso(*N, *n, *popt, *p, *xi, *sigma, *lambda, *solver, *accelerate,
                           *seed, *max_iter, *tol, *out);
        });
    }

    // validate
    {
        auto* cmd = app.add_subcommand("validate", "Run the acceptance suite");
        auto only = std::make_shared<std::string>();
        auto out = std::make_shared<OutputOptions>();
        cmd->add_option("--only", *only, "Comma-separated criteria, e.g. A1,A5");
        out->attach(cmd, /*allow_text=*/true);
        cmd->callback([=, &rc] { rc = run_validate(*only, *out); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return rc;
}
