#include <CLI11.hpp>

#include "ltp/cli.hpp"

namespace ltp::cli {

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    CLI::App app{"Lubin-Tate formal groups, period rings and monodromy", "ltp"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");

    app.add_option("--p", cfg.p, "residue characteristic");
    app.add_option("--flavor", cfg.flavor, "qp | unramified | eisenstein (default: inferred)")
        ->check(CLI::IsMember({"auto", "qp", "unramified", "eisenstein"}));
    app.add_option("--h", cfg.h, "residue degree of an unramified F");
    app.add_option("--eis", cfg.eis, "Eisenstein polynomial c0,c1,...,1");
    app.add_option("--prec", cfg.prec, "digits reported (pi-adic)");
    app.add_option("--out-prec", cfg.out_prec, "report fewer digits than --prec");
    app.add_option("--deg", cfg.deg, "truncation degree D");
    app.add_option("--seed", cfg.seed, "seed for sampled quantities");
    app.add_option("--in", cfg.in, "input JSON");
    app.add_option("--out", cfg.out, "write output here instead of stdout");
    app.add_option("--a", cfg.a, "element a (basis rationals joined by ';')");
    app.add_option("--c", cfg.c, "unit c (basis rationals joined by ';')");
    app.add_option("--r", cfg.r, "radius r");
    app.add_option("--s", cfg.s, "right endpoint s of [r; s]");
    app.add_option("--k", cfg.k, "torsion level");
    app.add_option("--n", cfg.n, "exponent or integer n");
    app.add_option("--level", cfg.level, "level");
    app.add_option("--order", cfg.order, "orbit expansion order K");
    app.add_option("--samples", cfg.samples, "orbit samples");
    app.add_option("--j", cfg.j, "variable index");
    app.add_option("--d", cfg.d, "connection rank");
    app.add_option("--n-max", cfg.n_max, "exhaustive bound check up to n");
    app.add_option("--gauge", cfg.gauge_in, "gauge matrix JSON");
    app.add_flag("--check-only", cfg.check_only, "only test integrability");
    app.add_flag("--phi", cfg.phi, "apply Frobenius instead of gamma");

    for (const auto& [group, commands] : command_table()) {
        CLI::App* g = app.add_subcommand(group);
        g->require_subcommand(1);
        g->set_help_flag("--help", "print help");
        g->fallthrough();
        for (const auto& name : commands) {
            CLI::App* leaf = g->add_subcommand(name);
            leaf->fallthrough();
            leaf->set_help_flag("--help", "print help");
            leaf->callback([&cfg, group = group, name = name] {
                cfg.group = group;
                cfg.command = name;
            });
        }
    }

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    return run(cfg, out, err);
}

}  // namespace ltp::cli
