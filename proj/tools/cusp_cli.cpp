// Command-line front end: pi, arcsplit, decay, ternary, verify, coeffs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cusp/cli.hpp"

int main(int argc, char** argv) {
    using cusp::cli::Command;

    CLI::App app{"Circle-method computations for cusp-form coefficients weighted by the von Mangoldt function"};
    app.require_subcommand(1);

    cusp::cli::RunConfig cfg;
    std::string form = "tau";
    std::string file;
    double theta = cusp::kMaassTheta;

    auto add_form = [&](CLI::App* sub) {
        sub->add_option("--form", form, "coefficient source")->check(CLI::IsMember({"tau", "file"}));
        sub->add_option("--file", file, "coefficient file (n,value per line) when --form file");
        sub->add_option("--theta", theta, "exponent theta assumed for file coefficients");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output file"); };

    auto* pi = app.add_subcommand("pi", "pi_{a,Lambda}(x) by lattice, convolution and grid integral");
    pi->add_option("--x", cfg.x, "upper bound x")->required();
    pi->add_option("--grid", cfg.grid, "grid size N for the integral (default 4x + 8)");
    add_form(pi);

    auto* arcsplit = app.add_subcommand("arcsplit", "major/minor arc contributions (CSV) and totals");
    arcsplit->add_option("--x", cfg.x, "upper bound x")->required();
    arcsplit->add_option("--cconst", cfg.C, "C in P = exp(C sqrt(log x))");
    add_form(arcsplit);
    add_out(arcsplit);

    auto* decay = app.add_subcommand("decay", "|pi| / x^{3/2} on x = 10^2, 10^2.5, ... (CSV)");
    decay->add_option("--x", cfg.x, "largest x (default 1e5)");
    decay->add_option("--cconst", cfg.C, "C in P = exp(C sqrt(log x))");
    add_form(decay);
    add_out(decay);

    auto* ternary = app.add_subcommand("ternary", "r_tau(N)");
    ternary->add_option("--n", cfg.n, "N")->required();

    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("--suite", cfg.suite, "orthogonality | gauss | hecke | identity3way | fourthmoment | lemma4")->required();
    verify->add_option("--n", cfg.n, "size bound (q_max or coefficient limit)");
    verify->add_option("--x", cfg.x, "x for x-dependent suites");
    verify->add_option("--cconst", cfg.C, "C in P = exp(C sqrt(log x))");
    verify->add_option("--seed", cfg.seed, "seed for random coefficient series");
    verify->add_option("--tol", cfg.tol, "tolerance override");

    auto* coeffs = app.add_subcommand("coeffs", "write a coefficient file");
    coeffs->add_option("--n", cfg.n, "number of coefficients")->required();
    add_form(coeffs);
    add_out(coeffs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*pi) cfg.command = Command::pi;
    else if (*arcsplit) cfg.command = Command::arcsplit;
    else if (*decay) cfg.command = Command::decay;
    else if (*ternary) cfg.command = Command::ternary;
    else if (*verify) cfg.command = Command::verify;
    else cfg.command = Command::coeffs;

    cfg.form.builtin_tau = form == "tau";
    cfg.form.path = file;
    cfg.form.theta = theta;
    if (!cfg.form.builtin_tau && file.empty()) {
        std::cerr << "error: --form file needs --file <path>\n";
        return 1;
    }

    return cusp::cli::run(cfg, std::cout, std::cerr);
}
