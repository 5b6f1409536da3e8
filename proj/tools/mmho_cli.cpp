// mmho-cli: experiment runner for the mmW handover/caching toolkit.
//
// Subcommands: fig3 | fig4 | fig5 | validate | single-run
// Exit codes: 0 success, 2 config error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mmho/config.hpp"
#include "mmho/report.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string mode = "compare";
    std::int64_t seed = -1;
    int trials = -1;
};

void add_common(CLI::App* cmd, Options& opt)
{
    cmd->add_option("--config", opt.config_path, "config file (key = value lines)");
    cmd->add_option("--seed", opt.seed, "override run.seed");
    cmd->add_option("--trials", opt.trials, "override run.trials");
    cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
    cmd->add_option("--mode", opt.mode, "analysis | simulation | compare")
        ->default_val("compare");
}

mmho::ExperimentConfig make_config(const Options& opt)
{
    mmho::ExperimentConfig cfg = mmho::load_config(opt.config_path);
    if (opt.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.trials >= 0)
        cfg.trials = opt.trials;
    auto errors = cfg.check();
    if (!errors.empty())
        throw mmho::ConfigError(std::move(errors));
    return cfg;
}

int emit(const Options& opt, const std::function<void(std::ostream&)>& writer)
{
    std::ostringstream buf;
    writer(buf);
    if (opt.out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open output file: " + opt.out_path);
        f << buf.str();
        if (!f)
            throw std::runtime_error("write failed: " + opt.out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mmW handover + caching experiment harness"};
    app.require_subcommand(1);

    Options o3, o4, o5, ov, os;
    CLI::App* fig3 = app.add_subcommand("fig3", "caching-duration CDF sweep");
    CLI::App* fig4 = app.add_subcommand("fig4", "HOF vs speed, caching on/off");
    CLI::App* fig5 = app.add_subcommand("fig5", "average caching rate vs distance");
    CLI::App* validate = app.add_subcommand("validate", "parse + echo a config");
    CLI::App* single = app.add_subcommand("single-run", "one traced trial");
    add_common(fig3, o3);
    add_common(fig4, o4);
    add_common(fig5, o5);
    add_common(validate, ov);
    add_common(single, os);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (fig3->parsed()) {
            const auto cfg = make_config(o3);
            const auto mode = mmho::parse_mode(o3.mode);
            return emit(o3, [&](std::ostream& out) { mmho::run_fig3(cfg, mode, out); });
        }
        if (fig4->parsed()) {
            const auto cfg = make_config(o4);
            const auto mode = mmho::parse_mode(o4.mode);
            return emit(o4, [&](std::ostream& out) { mmho::run_fig4(cfg, mode, out); });
        }
        if (fig5->parsed()) {
            const auto cfg = make_config(o5);
            const auto mode = mmho::parse_mode(o5.mode);
            return emit(o5, [&](std::ostream& out) { mmho::run_fig5(cfg, mode, out); });
        }
        if (validate->parsed()) {
            const auto cfg = make_config(ov);
            return emit(ov, [&](std::ostream& out) { out << cfg.describe(); });
        }
        if (single->parsed()) {
            const auto cfg = make_config(os);
            return emit(os, [&](std::ostream& out) { mmho::run_single(cfg, out); });
        }
    } catch (const mmho::ConfigError& e) {
        for (const auto& msg : e.errors())
            std::cerr << "config error: " << msg << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
