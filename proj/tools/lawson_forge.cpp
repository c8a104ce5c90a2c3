#include <iostream>

#include "CLI11.hpp"

#include "lawson/io.hpp"

namespace {

lawson::io::RunConfig load_or_fail(const std::string& path) {
    return lawson::io::RunConfig::load(path);
}

void apply_overrides(lawson::io::RunConfig& cfg, const std::vector<double>& gammas,
                     const std::string& ambient, std::optional<std::uint64_t> seed,
                     std::optional<double> tolerance) {
    if (!gammas.empty())
        cfg.gamma1 = gammas;
    if (!ambient.empty())
        cfg.ambients = {ambient};
    if (seed)
        cfg.seed = *seed;
    if (tolerance)
        cfg.tolerance = *tolerance;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lawson_forge: discrete CMC nets in R^3 and S^3 from quaternionic Lax data"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", net_path, out_path, ambient, format = "json";
    std::string export_mode;
    std::vector<double> gammas;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;

    auto add_config_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--gamma", gammas, "spectral angle overrides");
        cmd->add_option("--ambient", ambient, "ambient override: r3, s3, or sphere")
            ->check(CLI::IsMember({"r3", "s3", "sphere"}));
        cmd->add_option("--seed", seed, "random preset seed override");
        cmd->add_option("--tolerance", tolerance, "uniform tolerance override");
    };

    CLI::App* generate = app.add_subcommand("generate", "generate nets and verify invariants");
    add_config_flags(generate);

    CLI::App* lawson_cmd =
        app.add_subcommand("lawson", "build the R^3/S^3 pair, family, and limit reports");
    add_config_flags(lawson_cmd);

    CLI::App* verify = app.add_subcommand("verify", "verify invariants of a stored net");
    verify->add_option("--config", net_path, "net file to verify")->required();
    verify->add_option("--out", out_dir, "output directory");
    verify->add_option("--tolerance", tolerance, "uniform tolerance override");

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "recover Lax data from a stored net");
    reconstruct->add_option("--config", net_path, "net file to reconstruct")->required();
    reconstruct->add_option("--out", out_dir, "output directory");

    CLI::App* export_cmd = app.add_subcommand("export", "export a stored net to OBJ");
    export_cmd->add_option("--config", net_path, "net file to export")->required();
    export_cmd->add_option("--out", out_path, "output OBJ path")->required();
    export_cmd->add_option("--format", format, "output format (obj)")
        ->check(CLI::IsMember({"obj", "json"}));
    export_cmd->add_option("--mode", export_mode, "projection mode: r3 or s3-stereographic")
        ->check(CLI::IsMember({"r3", "s3-stereographic"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            lawson::io::RunConfig cfg = load_or_fail(config_path);
            apply_overrides(cfg, gammas, ambient, seed, tolerance);
            return lawson::io::run_generate(cfg, out_dir);
        }
        if (lawson_cmd->parsed()) {
            lawson::io::RunConfig cfg = load_or_fail(config_path);
            apply_overrides(cfg, gammas, ambient, seed, tolerance);
            return lawson::io::run_lawson(cfg, out_dir);
        }
        if (verify->parsed())
            return lawson::io::run_verify(net_path, out_dir, tolerance);
        if (reconstruct->parsed())
            return lawson::io::run_reconstruct(net_path, out_dir);
        if (export_cmd->parsed()) {
            if (format == "json") {
                // The native file already is JSON; re-serialize canonically.
                lawson::io::NetFile nf = lawson::io::load_netfile(net_path);
                lawson::io::save_json(lawson::io::netfile_to_json(nf), out_path);
                return 0;
            }
            return lawson::io::run_export(net_path, out_path, export_mode);
        }
    } catch (const lawson::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
