#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "commands.hpp"

namespace {

std::vector<int> parse_modes(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace heatcert::app;
    CLI::App app{"Certified existence times for the nonlinear heat equation"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string modes = "1,3";
    std::string out_dir = "out";
    app.add_option("--A", cfg.amplitudes, "Amplitude of the datum A s_1 (repeatable)")->take_all();
    app.add_option("--p", cfg.p, "Nonlinearity exponent")->capture_default_str();
    app.add_option("--modes", modes, "Galerkin sine modes, comma separated")->capture_default_str();
    app.add_option("--horizon", cfg.horizon, "Integration horizon (t1 for picard)");
    app.add_option("--rtol", cfg.rtol, "Relative tolerance");
    app.add_option("--atol", cfg.atol, "Absolute tolerance");
    app.add_option("--blowup-threshold", cfg.blowup_threshold, "Max-norm treated as blow-up");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--kmax", cfg.k_max, "Picard iterations")->capture_default_str();
    app.add_option("--truncation", cfg.truncation, "Picard mode truncation K")->capture_default_str();
    app.add_option("--intervals", cfg.intervals, "Picard time intervals")->capture_default_str();
    app.add_option("--grid", cfg.grid, "Finite-difference interior points")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Algebra property trials")->capture_default_str();
    app.add_option("--sup-pos", cfg.sup_pos, "Wave datum: sup f0");
    app.add_option("--sup-abs", cfg.sup_abs, "Wave datum: sup |f0|");

    for (const auto& c : commands()) {
        app.add_subcommand(c.name, c.help)->callback([&cfg, name = std::string(c.name)] { cfg.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
        cfg.modes = parse_modes(modes);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: bad --modes value: " << e.what() << '\n';
        return kUsage;
    }
    cfg.out = out_dir;
    return run_command(cfg, std::cout, std::cerr);
}
