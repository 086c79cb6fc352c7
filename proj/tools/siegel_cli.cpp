#include "siegel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw siegel::ParseError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel disk radius experiments"};
    app.require_subcommand(1, 1);

    siegel::RunConfig flags;
    std::string config_path;
    // (config key, option) for every subcommand; explicitly given flags override --config.
    std::vector<std::pair<std::string, CLI::Option*>> given;

    for (const auto& name : siegel::subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        auto opt = [&](const char* key, const char* flag, auto& dst, const char* help) {
            given.emplace_back(key, sub->add_option(flag, dst, help));
        };
        sub->add_option("--config", config_path, "JSON config; flags given on the command line override it");
        opt("theta", "--theta", flags.theta, "angle: p/q, quad:u,v,D,w, golden, silver, real:x@bits, decimal");
        opt("family", "--family", flags.family, "germ family descriptor");
        opt("N", "--N", flags.N, "coefficient count (0 = family default)");
        opt("bits", "--bits", flags.bits, "working precision in bits");
        opt("depth", "--depth", flags.depth, "continued fraction depth");
        opt("M", "--M", flags.M, "circle quadrature nodes");
        opt("radii", "--radii", flags.radii, "circle radii");
        opt("out", "--out", flags.out, "output prefix: writes <out>.csv and <out>.json");
        opt("seed", "--seed", flags.seed, "angle sample seed");
        opt("samples", "--samples", flags.samples, "random angle count");
        opt("window", "--window", flags.window, "radius estimator window fraction");
        opt("d", "--d", flags.d, "degree for scan-dstar");
        opt("m_max", "--m-max", flags.m_max, "largest multiplier for check-lemma");
        opt("count", "--count", flags.count, "boundary orbit sample size");
        opt("burnin", "--burnin", flags.burnin, "boundary orbit burn-in");
        opt("points", "--points", flags.points, "Leja points");
        opt("max_flagged_fraction", "--max-flagged", flags.max_flagged_fraction, "flagged fraction that gives exit 1");
        sub->callback([&flags, name] { flags.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    siegel::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = siegel::parse_config_text(slurp(config_path));
        nlohmann::json values = siegel::to_json(flags);
        values["out"] = flags.out;
        nlohmann::json overrides = nlohmann::json::object();
        for (const auto& [key, o] : given)
            if (o->count() > 0) overrides[key] = values[key];
        cfg = siegel::config_from_json(overrides, cfg);
        cfg.subcommand = flags.subcommand;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return siegel::run(cfg);
}
