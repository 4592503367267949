#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "manin/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Point-count and leading-constant workbench for the cubic surface "
                 "x0(x1^2+x2^2) = x3^3"};
    app.require_subcommand(1);

    manin::RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", cfg.output, "write the report to this file (default stdout)");
        sub->add_option("--workers", cfg.workers,
                        "worker threads (default: MANIN_CUBIC_WORKERS or 1)");
    };

    auto* count = app.add_subcommand("count", "count rational points of height at most B");
    count->add_option("--max-height,-B", cfg.max_height, "height bound");
    count->add_option("--heights", cfg.heights, "explicit list of height bounds");
    count->add_option("--method", cfg.method, "brute | fast | descent | all")
        ->check(CLI::IsMember({"brute", "fast", "descent", "all"}));
    count->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_common(count);

    auto* compare = app.add_subcommand("compare", "counts against the predicted leading term");
    compare->add_option("--k-lo", cfg.k_lo, "first exponent: B = 2^k (default 10)");
    compare->add_option("--k-hi", cfg.k_hi, "last exponent (default 17)");
    compare->add_option("--heights", cfg.heights, "explicit list of height bounds");
    compare->add_option("--cutoff", cfg.cutoff, "Euler product cutoff (default 1e6)");
    compare->add_option("--tol", cfg.tol, "Euler product interval tolerance");
    compare->add_option("--fit-output", cfg.fit_output, "write the fit JSON here");
    add_common(compare);

    auto* fan = app.add_subcommand("fan", "fan, resolution, Picard and alpha report");
    fan->add_option("--file", cfg.fan_file, "fan file (one 'a b' ray per line; default: the "
                                            "surface's three-ray fan)");
    add_common(fan);

    auto* predict = app.add_subcommand("predict", "predicted leading constant, factor by factor");
    predict->add_option("--cutoff", cfg.cutoff, "Euler product cutoff (default 1e6)");
    predict->add_option("--tol", cfg.tol, "Euler product interval tolerance");
    add_common(predict);

    auto* density = app.add_subcommand("density", "p-adic density oracle N(p^k)/p^(3k)");
    density->add_option("--p", cfg.p, "prime")->required();
    density->add_option("--k", cfg.k, "exponent")->required();
    add_common(density);

    auto* cox = app.add_subcommand("cox", "Cox ring generators and relation");
    add_common(cox);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : {count, compare, fan, predict, density, cox}) {
        if (sub->parsed()) cfg.subcommand = sub->get_name();
    }
    return manin::run(cfg, std::cerr);
}
