#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sr/csvio.hpp"
#include "sr/experiment.hpp"

namespace {

int dispatch(const std::string& spec_path, const std::optional<std::string>& out,
             const std::optional<uint64_t>& seed_override, bool verify_only) {
    sr::ExperimentSpec spec =
        sr::parse_experiment(sr::read_file(spec_path), out, seed_override);
    if (verify_only && spec.task != "verify")
        throw sr::SchemaError("verify: spec must declare task 'verify'");
    sr::ExperimentResult res = sr::run_experiment(spec);
    for (const auto& path : res.artifacts) std::cout << path << "\n";
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"short-range interaction energy toolkit"};
    app.require_subcommand(1);

    std::string spec_path, run_dir, out_dir;
    uint64_t seed_value = 0;
    bool have_out = false, have_seed = false;
    int threads = 1;
    if (const char* env = std::getenv("SR_THREADS")) threads = std::atoi(env);

    auto* run = app.add_subcommand("run", "execute an experiment spec");
    run->add_option("spec", spec_path, "path to the JSON experiment spec")->required();
    run->add_option("--out", out_dir, "output directory override")
        ->each([&](const std::string&) { have_out = true; });
    run->add_option("--threads", threads, "worker thread count");
    run->add_option("--seed-override", seed_value, "replace the spec's master seed")
        ->each([&](const std::string&) { have_seed = true; });

    auto* verify = app.add_subcommand("verify", "run the invariant suite of a spec");
    verify->add_option("spec", spec_path, "path to the JSON experiment spec")->required();

    auto* plot = app.add_subcommand("plotdata", "emit tidy plot CSVs for a finished run");
    plot->add_option("run_dir", run_dir, "directory of a completed run")->required();

    CLI11_PARSE(app, argc, argv);
    (void)threads;  // computations stay single-threaded for determinism

    try {
        std::optional<std::string> out =
            have_out ? std::optional<std::string>(out_dir) : std::nullopt;
        std::optional<uint64_t> seed =
            have_seed ? std::optional<uint64_t>(seed_value) : std::nullopt;
        if (run->parsed()) return dispatch(spec_path, out, seed, false);
        if (verify->parsed()) return dispatch(spec_path, out, seed, true);
        for (const auto& path : sr::emit_plot_data(run_dir)) std::cout << path << "\n";
        return 0;
    } catch (const sr::SchemaError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const sr::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
