#include "twistcoh/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    using namespace twistcoh::cli;
    RunConfig config;
    std::string pq, theta;

    CLI::App app{"Twisted cohomology of invariant-form models and diagonal Hopf manifolds"};
    app.add_option("command", config.command, "mn | dolbeault | bc | frolicher | spectrum | hopf | jets")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("--model", config.model, "builtin name or model file")->capture_default_str();
    app.add_option("--alpha", config.alpha, "weights: list a,b,c or range a:b:step")->capture_default_str();
    app.add_option("--format", config.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", config.out, "output file (default: standard output)");
    app.add_option("--jet-degree", config.jet_degree, "degree cutoff D for jets")->capture_default_str();
    app.add_option("--monoid-bound", config.monoid_bound, "total exponent bound B for monoid enumeration")
        ->capture_default_str();
    app.add_option("--pq", pq, "restrict to one bidegree p,q");
    app.add_option("--theta", theta, "override the Lee form: n comma-separated rationals");
    app.add_option("--beta", config.beta, "hopf: diagonal contraction eigenvalues")->capture_default_str();
    app.add_option("--subst", config.subst, "jets: substitution series separated by ';'")->capture_default_str();
    app.add_option("--rhs", config.rhs, "jets: right-hand side series")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_record(ConfigError(e.what())) << "\n";
        return 2;
    }

    try {
        if (!pq.empty()) config.pq = parse_pq(pq);
        if (!theta.empty()) config.theta = theta;
        std::string report = run(config);
        if (config.out.empty()) {
            std::cout << report;
        } else {
            std::ofstream out(config.out, std::ios::binary);
            if (!out) throw ConfigError("cannot write " + config.out);
            out << report;
        }
    } catch (const std::exception& e) {
        std::cerr << error_record(e) << "\n";
        return exit_code(e);
    }
    return 0;
}
