// eqk: equivariant K-theory computations on toric and flag varieties.
//
//   eqk chi --fan P1.json [--divisor 0,2] [--oracle] [--json] [--threads N]
//   eqk demazure --type A2 --word 1,2,1 --weight 1,1 [--verify] [--json]
//   eqk grr --fan P2.json [--order N] --xi 1,2 [--json]
//   eqk verify --corpus data/corpus [--range R] [--threads N] [--json]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include <eqk/cli.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"Equivariant K-theory: localization, Demazure characters, completion"};
    app.require_subcommand(1);

    eqk::cli::chi_options chi;
    std::string chi_divisor;
    auto *chi_cmd = app.add_subcommand("chi", "Equivariant Euler characteristic of O(D) by fixed-point localization");
    chi_cmd->add_option("--fan", chi.fan_path, "Fan/divisor JSON document")->required();
    auto *div_opt = chi_cmd->add_option("--divisor", chi_divisor, "Comma-separated ray coefficients (overrides file)");
    chi_cmd->add_flag("--oracle", chi.oracle, "Also run the Cech and nef oracles and compare");
    chi_cmd->add_flag("--json", chi.json, "Emit JSON");
    chi_cmd->add_option("--threads", chi.threads, "Worker threads")->check(CLI::PositiveNumber);

    eqk::cli::demazure_options dem;
    auto *dem_cmd = app.add_subcommand("demazure", "Demazure character of a Schubert variety line bundle");
    dem_cmd->add_option("--type", dem.type, "Root system type, e.g. A2, B2, G2")->required();
    dem_cmd->add_option("--word", dem.word, "Reduced word, comma-separated 1-based letters (may be empty)");
    dem_cmd->add_option("--weight", dem.weight, "Dominant weight in fundamental-weight coordinates")->required();
    dem_cmd->add_flag("--verify", dem.verify, "Run the word-independence and Weyl-specialization sweep for the type");
    dem_cmd->add_option("--max-coord", dem.max_coord, "Largest weight coordinate in the --verify sweep");
    dem_cmd->add_flag("--json", dem.json, "Emit JSON");
    dem_cmd->add_option("--threads", dem.threads, "Worker threads")->check(CLI::PositiveNumber);

    eqk::cli::grr_options grr;
    std::size_t grr_order = 0;
    auto *grr_cmd = app.add_subcommand("grr", "Todd-class constant-term check along a generic direction");
    grr_cmd->add_option("--fan", grr.fan_path, "Fan/divisor JSON document")->required();
    auto *order_opt = grr_cmd->add_option("--order", grr_order, "Truncation order (default dim + 2)");
    grr_cmd->add_option("--xi", grr.xi, "Generic direction, comma-separated")->required();
    grr_cmd->add_flag("--json", grr.json, "Emit JSON");

    eqk::cli::verify_options ver;
    auto *ver_cmd = app.add_subcommand("verify", "Run all verification sweeps over a corpus directory");
    ver_cmd->add_option("--corpus", ver.corpus_dir, "Directory of fan and root-datum JSON documents")->required();
    ver_cmd->add_option("--range", ver.range, "Divisor coefficient range [-R, R] when a file does not set one");
    ver_cmd->add_option("--threads", ver.threads, "Worker threads")->check(CLI::PositiveNumber);
    ver_cmd->add_flag("--json", ver.json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : eqk::cli::invalid_input;
    }

    if (*chi_cmd) {
        if (*div_opt) {
            chi.divisor = chi_divisor;
        }
        return eqk::cli::cmd_chi(chi, std::cout, std::cerr);
    }
    if (*dem_cmd) {
        return eqk::cli::cmd_demazure(dem, std::cout, std::cerr);
    }
    if (*grr_cmd) {
        if (*order_opt) {
            grr.order = grr_order;
        }
        return eqk::cli::cmd_grr(grr, std::cout, std::cerr);
    }
    return eqk::cli::cmd_verify(ver, std::cout, std::cerr);
}
