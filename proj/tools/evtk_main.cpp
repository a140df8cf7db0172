// evtk: right-endpoint estimation, max-domain tests, tail probabilities and
// the simulation harness, behind one CSV-in/CSV-out command line.

#include <CLI11.hpp>

#include "evtk/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"extreme-value right-endpoint toolkit"};
    app.require_subcommand(1);

    evtk::cli::RunConfig cfg;
    std::string input;

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--input", input, "input CSV file (UTF-8, header row)")->required();
        sub->add_option("--column", cfg.column, "name of the value column")->required();
        sub->add_option("--unit-divisor", cfg.unit_divisor,
                        "divide values by this (365.25 turns day-recorded lifetimes "
                        "into years)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output-dir", cfg.output_dir, "directory for result files");
    };
    auto add_krange = [&](CLI::App* sub) {
        sub->add_option("--k-min", cfg.k_min, "smallest k scanned");
        sub->add_option("--k-max", cfg.k_max, "largest k scanned");
        sub->add_option("--k-step", cfg.k_step, "k scan stride");
    };

    std::size_t k_point = 0;

    auto* est = app.add_subcommand("estimate", "right-endpoint estimates");
    add_io(est);
    add_krange(est);
    auto* est_k = est->add_option("--k", k_point, "point-estimate at this k");
    est->add_option("--alpha", cfg.alpha, "level of the confidence upper bound");
    est->add_option("--method", cfg.methods,
                    "estimators: all or a list from MAX,FAN,MOMINV,RB1,RB2,POTML")
        ->delimiter(',');

    auto* dom = app.add_subcommand("test-domain", "max-domain-of-attraction tests");
    add_io(dom);
    add_krange(dom);
    dom->add_option("--alpha", cfg.alpha, "significance level");
    dom->add_option("--tests", cfg.tests,
                    "curves to emit: all, none or a list from GSTAR,RATIO,GREENWOOD,T1")
        ->delimiter(',');
    dom->add_option("--select-tests", cfg.select_tests,
                    "tests entering the k-selection rule (default GREENWOOD,T1)")
        ->delimiter(',');

    auto* tp = app.add_subcommand("tail-prob", "exceedance probability of a level");
    add_io(tp);
    add_krange(tp);
    auto* tp_k = tp->add_option("--k", k_point, "point-estimate at this k");
    tp->add_option("--x", cfg.x_level, "level whose exceedance probability is estimated")
        ->required();
    tp->add_option("--method", cfg.methods, "MOMINV, POTML or both")->delimiter(',');

    auto* tr = app.add_subcommand("trend-test", "GPD scale-trend deviance test");
    add_io(tr);
    tr->add_option("--time-column", cfg.time_column, "column with the time index (e.g. year)")
        ->required();
    tr->add_option("--thresholds", cfg.thresholds, "thresholds, in output units")
        ->required()
        ->delimiter(',');

    auto* sim = app.add_subcommand("simulate", "Monte Carlo study of the estimators");
    sim->add_option("--model", cfg.model_id, "parent model 1..4")->required();
    sim->add_option("--tau1", cfg.tau1, "models 1/3");
    sim->add_option("--tau2", cfg.tau2, "models 1/3");
    sim->add_option("--lambda", cfg.lambda, "model 2");
    sim->add_option("--gamma", cfg.gamma, "model 4 (negative)");
    sim->add_option("--n", cfg.n, "sample size");
    sim->add_option("--replicates", cfg.replicates, "number of replicates");
    sim->add_option("--seed", cfg.seed, "RNG seed");
    sim->add_option("--kstar-min", cfg.kstar_min, "smallest k* in the grid");
    sim->add_option("--kstar-max", cfg.kstar_max, "largest k* in the grid (default n)");
    sim->add_option("--kstar-stride", cfg.kstar_stride, "k* grid stride");
    sim->add_option("--potml-stride", cfg.potml_stride,
                    "POTML evaluated at k* multiples of this");
    sim->add_option("--estimators", cfg.methods,
                    "list from MAX,FAN,MOMINV,RB1,RB2,POTML")
        ->delimiter(',');
    sim->add_option("--tests", cfg.tests,
                    "p-value curves: none, all or a list from GSTAR,RATIO,GREENWOOD,T1")
        ->delimiter(',');
    sim->add_option("--output-dir", cfg.output_dir, "directory for result files");

    CLI11_PARSE(app, argc, argv);

    if (est->parsed()) cfg.command = evtk::cli::Command::Estimate;
    if (dom->parsed()) cfg.command = evtk::cli::Command::TestDomain;
    if (tp->parsed()) cfg.command = evtk::cli::Command::TailProb;
    if (tr->parsed()) cfg.command = evtk::cli::Command::TrendTest;
    if (sim->parsed()) cfg.command = evtk::cli::Command::Simulate;
    if (!input.empty()) cfg.input_path = input;
    if ((est->parsed() && est_k->count()) || (tp->parsed() && tp_k->count()))
        cfg.k = k_point;

    return evtk::cli::run(cfg);
}
