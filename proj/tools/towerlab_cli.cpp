#include "towerlab/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <utility>
#include <vector>

int main(int argc, char** argv) {
    using namespace towerlab;

    CLI::App app{"Function-field tower laboratory: chain enumeration, identity checks and bounds"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    unsigned j = 0;
    unsigned k = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", cfg.output, "Write the report here instead of stdout");
        sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    std::vector<std::pair<CLI::Option*, CLI::Option*>> jk_options;
    auto add_tower = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "Characteristic");
        sub->add_option("--q-exp", cfg.q_exp, "q = p^q-exp");
        sub->add_option("--n", cfg.n, "n = j + k");
        jk_options.emplace_back(sub->add_option("--j", j, "Trace length j"),
                                sub->add_option("--k", k, "Trace length k"));
    };

    struct Entry {
        const char* name;
        const char* help;
        Command command;
    };
    const Entry entries[] = {
        {"count", "Count split chains level by level", Command::Count},
        {"verify", "Pointwise identities over GF(ell) and GF(ell^2)", Command::Verify},
        {"bounds", "Tower limits against Drinfeld-Vladut and earlier bounds", Command::Bounds},
        {"gv-scan", "Prime powers where the odd-power bound beats Gilbert-Varshamov", Command::GvScan},
        {"ramcheck", "Ramification tables, commuting squares and genus", Command::RamCheck},
        {"drinfeld-verify", "Isogenies, torsion kernels and J-invariants", Command::DrinfeldVerify},
        {"report-all", "The full acceptance grid", Command::ReportAll},
    };
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub);
        if (e.command != Command::GvScan && e.command != Command::ReportAll) {
            add_tower(sub);
        }
        if (e.command == Command::Count || e.command == Command::Verify) {
            sub->add_option("--levels", cfg.levels, "Chain level");
        }
        if (e.command == Command::GvScan) {
            sub->add_option("--max-ell", cfg.max_ell, "Largest ell scanned");
        }
        const Command cmd = e.command;
        sub->callback([&cfg, cmd] { cfg.command = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kValidation;
    }

    for (const auto& [jopt, kopt] : jk_options) {
        if (jopt->count() > 0) {
            cfg.j = j;
        }
        if (kopt->count() > 0) {
            cfg.k = k;
        }
    }
    cfg.format = parse_format(format);
    return run(cfg, std::cout, std::cerr);
}
