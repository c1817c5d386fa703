// Command-line front end: pgal <command> (--fixture NAME | --config PATH) [options]

#include "pgal/config.hpp"
#include "pgal/fixtures.hpp"
#include "pgal/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

int main(int argc, char** argv) {
    CLI::App app{"partial Galois theory over finite commutative rings"};
    app.require_subcommand(1, 1);

    std::string fixture, config, out_path;
    pgal::RunOptions opt;
    std::string engine = "auto";
    const std::map<std::string, pgal::Engine> engines{{"auto", pgal::Engine::automatic},
                                                      {"enumerate", pgal::Engine::enumerate},
                                                      {"structure", pgal::Engine::structure},
                                                      {"both", pgal::Engine::both}};

    auto common = [&](CLI::App* sub) {
        auto* f = sub->add_option("--fixture", fixture, "built-in instance (E0..E3, N1, H4 or its long name)");
        auto* c = sub->add_option("--config", config, "instance file")->check(CLI::ExistingFile);
        f->excludes(c);
        sub->add_option("--out", out_path, "write the JSON report here");
        sub->add_option("--budget", opt.budget, "enumeration budget")->check(CLI::PositiveNumber);
        sub->add_option("--engine", engine, "cohomology engine")
            ->check(CLI::IsMember({"auto", "enumerate", "structure", "both"}));
    };
    const std::map<std::string, std::string> help{
        {"validate", "check the partial action axioms"},
        {"invariants", "ring of invariants R^alpha"},
        {"galois", "search for Galois coordinates and test the regular representation"},
        {"cohomology", "H^n(G,alpha,U(R)) for n <= 3"},
        {"crossed", "partial crossed product for a twist"},
        {"delta-theta", "Delta(Theta), kappa and the matrix-ring verdict"},
        {"pics", "alpha* on the idempotent semilattice and Z^1 with PicS coefficients"},
        {"sequence", "seven-term sequence consequences"},
        {"census", "every restriction of a global action"},
    };
    std::map<CLI::App*, std::string> names;
    for (const auto& name : pgal::commands()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        common(sub);
        if (name == "cohomology") sub->add_option("--n", opt.n, "degree")->check(CLI::Range(0, 3));
        if (name == "crossed")
            sub->add_option("--twist", opt.twist, "identity | coboundary:SEED | values:v0,v1,...");
        names[sub] = name;
    }
    app.add_subcommand("fixtures", "list built-in instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    auto* sub = app.get_subcommands().front();
    if (sub->get_name() == "fixtures") {
        for (const auto& f : pgal::fixture_catalog()) std::cout << f.id << "  " << f.name << "  " << f.summary << '\n';
        return 0;
    }
    opt.command = names.at(sub);
    opt.engine = engines.at(engine);

    pgal::Instance inst;
    try {
        if (!config.empty()) inst = pgal::load_config(config);
        else if (!fixture.empty()) inst = pgal::fixture_instance(fixture);
        else {
            std::cerr << "one of --fixture or --config is required\n";
            return 2;
        }
    } catch (const pgal::parse_error& e) {
        std::cerr << config << ": " << e.what() << '\n';
        return 2;
    } catch (const pgal::error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    const auto res = pgal::run(inst, opt);
    std::cout << res.text;
    if (!out_path.empty()) {
        std::ofstream o(out_path);
        if (!o) {
            std::cerr << "cannot write " << out_path << '\n';
            return 2;
        }
        o << res.doc.dump(2) << '\n';
    }
    return res.status;
}
