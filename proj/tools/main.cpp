// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv)
{
    using namespace jumpgraph;

    CLI::App app{"Stack-sensitive control-flow graph reconstruction for EVM bytecode"};
    cli::RunConfig config;

    std::string hex, file, dot, json, solver = "worklist";
    auto* hex_opt = app.add_option("--hex", hex, "Bytecode as hex text (0x prefix optional)");
    auto* file_opt = app.add_option("--file", file, "File holding hex bytecode");
    hex_opt->excludes(file_opt);
    app.add_flag("--blocks", config.blocks, "Print the block partition");
    auto* dot_opt = app.add_option("--dot", dot, "Write the CFG as DOT ('-' for stdout)");
    auto* json_opt = app.add_option("--json", json, "Write the CFG as JSON ('-' for stdout)");
    app.add_flag("--check", config.check, "Validate against the executable semantics");
    app.add_option("--max-steps", config.max_steps, "Oracle expansion bound")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-states", config.max_states, "Oracle state bound")
        ->check(CLI::PositiveNumber);
    app.add_option("--solver", solver, "Fixpoint strategy")
        ->check(CLI::IsMember({"worklist", "naive"}));
    auto* verbose = app.add_flag("-v,--verbose", "Verbose output (repeat for solver trace)");

    CLI11_PARSE(app, argc, argv);

    if (*hex_opt)
        config.hex = hex;
    if (*file_opt)
        config.file = file;
    if (*dot_opt)
        config.dot_path = dot;
    if (*json_opt)
        config.json_path = json;
    config.solver = solver == "naive" ? SolverMode::Naive : SolverMode::Worklist;
    config.verbosity = static_cast<int>(verbose->count());

    return cli::run(config, std::cout, std::cerr);
}
