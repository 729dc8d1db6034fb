#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "disco/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = disco::cli;
    CLI::App app{"Model checking and proof checking for discounted coalition logic"};
    app.require_subcommand(1);

    std::string game_path;
    auto* validate = app.add_subcommand("validate", "Validate a game description");
    validate->add_option("game", game_path, "Game file")->required();

    cli::CheckOptions check;
    std::size_t max_depth = 0, horizon = 0;
    std::string witness;
    auto* check_cmd = app.add_subcommand("check", "Decide a formula at a state");
    check_cmd->add_option("game", check.game, "Game file")->required();
    check_cmd->add_option("--state", check.state, "Start state")->required();
    check_cmd->add_option("--gamma", check.gamma, "Discount factor, e.g. 1/2")->required();
    check_cmd->add_option("--formula", check.formula, "Formula to check")->required();
    auto* depth_opt = check_cmd->add_option("--max-depth", max_depth, "Search depth before giving up");
    auto* witness_opt = check_cmd->add_option("--witness", witness, "Write the strategy witness here");
    auto* oracle_opt = check_cmd->add_option("--oracle", horizon, "Use the brute-force oracle with this horizon");

    cli::SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Play a strategy against the default adversary");
    sim_cmd->add_option("game", sim.game, "Game file")->required();
    sim_cmd->add_option("strategy", sim.strategy, "Strategy file")->required();
    sim_cmd->add_option("--start", sim.start, "Start state")->required();
    sim_cmd->add_option("--depth", sim.depth, "Number of steps")->required();
    sim_cmd->add_option("--gamma", sim.gamma, "Discount factor")->required();

    std::string script_path;
    auto* prove = app.add_subcommand("prove", "Verify a proof script");
    prove->add_option("script", script_path, "Proof script")->required();

    std::optional<std::string> gamma;
    std::string corpus = DISCO_CORPUS_DIR;
    auto* reproduce = app.add_subcommand("reproduce", "Re-check the worked examples on the corpus");
    reproduce->add_option("--gamma", gamma, "Discount factor for the first two games");
    reproduce->add_option("--corpus", corpus, "Corpus directory");

    std::string antecedent, consequent;
    auto* gen = app.add_subcommand("gen", "Generate proof scripts");
    gen->require_subcommand(1);
    auto* supermono = gen->add_subcommand("supermono", "Script for [C]_x f -> [D]_y f");
    supermono->add_option("--antecedent", antecedent, "[C]_x f")->required();
    supermono->add_option("--consequent", consequent, "[D]_y f")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kUsage;
    }

    if (*validate) return cli::cmd_validate(game_path, std::cout, std::cerr);
    if (*check_cmd) {
        if (*depth_opt) check.max_depth = max_depth;
        if (*witness_opt) check.witness = witness;
        if (*oracle_opt) check.oracle_horizon = horizon;
        return cli::cmd_check(check, std::cout, std::cerr);
    }
    if (*sim_cmd) return cli::cmd_simulate(sim, std::cout, std::cerr);
    if (*prove) return cli::cmd_prove(script_path, std::cout, std::cerr);
    if (*reproduce) return cli::cmd_reproduce(corpus, gamma, std::cout, std::cerr);
    if (*supermono) return cli::cmd_gen_supermono(antecedent, consequent, std::cout, std::cerr);
    return cli::kUsage;
}
