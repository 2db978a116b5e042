// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/cfg.hpp>
#include <jumpgraph/cli.hpp>
#include <jumpgraph/oracle.hpp>

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace jumpgraph::cli
{
namespace
{
std::string read_input(const RunConfig& config)
{
    if (config.hex)
        return *config.hex;
    std::ifstream in(*config.file, std::ios::binary);
    if (!in)
        throw Error("IoError", "cannot read input file '" + *config.file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_artifact(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("IoError", "cannot write '" + path + "'");
    f << text;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
    std::optional<Pc> pc)
{
    nlohmann::json e = {{"kind", kind}, {"message", message}};
    if (pc)
        e["pc"] = hex_pc(*pc);
    err << nlohmann::json{{"error", e}}.dump() << '\n';
}

void print_blocks(const EquationSystem& sys, std::ostream& out)
{
    for (const auto& [start, b] : sys.blocks.blocks)
    {
        out << "block " << hex_pc(start) << ".." << hex_pc(b.end_pc) << " ("
            << to_string(b.terminator) << ")";
        const auto& x = sys.at(start);
        out << " contexts=" << x.size() << '\n';
        for (const auto& instr : b.body)
            out << "  " << hex_pc(instr.pc) << ": " << instr.to_string() << '\n';
    }
    for (const Pc pc : sys.blocks.unreached)
        out << "unreached " << hex_pc(pc) << '\n';
}

void validate(const RunConfig& c)
{
    if (c.hex.has_value() == c.file.has_value())
        throw Error("ConfigError", "exactly one of --hex or --file is required");
    if (!c.blocks && !c.dot_path && !c.json_path && !c.check)
        throw Error("ConfigError", "nothing to do: request --blocks, --dot, --json or --check");
    if (c.max_steps == 0 || c.max_states == 0)
        throw Error("ConfigError", "oracle bounds must be positive");
}
}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try
    {
        validate(config);
        const Program program = decode_bytecode(read_input(config));
        if (config.verbosity > 0)
            for (const auto& d : program.diagnostics)
                err << "warning: " << d << '\n';

        SolveOptions options;
        options.mode = config.solver;
        if (config.verbosity > 1)
            options.trace = &err;
        const EquationSystem sys = solve(program, options);
        const Cfg cfg = build_cfg(sys);

        if (config.blocks)
            print_blocks(sys, out);
        if (config.dot_path)
            write_artifact(*config.dot_path, export_dot(cfg, sys), out);
        if (config.json_path)
            write_artifact(*config.json_path, export_json(cfg, sys), out);

        out << "vertices: " << cfg.vertices.size() << '\n';
        out << "edges: " << cfg.jump_edges.size() << " jump, " << cfg.next_edges.size()
            << " next\n";
        if (config.verbosity > 0)
            out << "solver iterations: " << sys.stats.iterations << '\n';

        if (config.check)
        {
            const auto ts = oracle::enumerate(program, config.max_steps, config.max_states);
            auto verdict = oracle::check_jumps_to(program, sys, ts);
            const auto walk = oracle::check_walk(program, cfg, sys, ts);
            verdict.violations.insert(
                verdict.violations.end(), walk.violations.begin(), walk.violations.end());
            if (walk.status == oracle::Status::Fail)
                verdict.status = oracle::Status::Fail;
            out << verdict.to_json() << '\n';
            if (verdict.status == oracle::Status::Fail)
                return check_failed;
        }
        return ok;
    }
    catch (const Error& e)
    {
        report_error(err, e.kind(), e.what(), e.pc());
    }
    catch (const std::exception& e)
    {
        report_error(err, "InternalError", e.what(), std::nullopt);
    }
    return analysis_error;
}
}  // namespace jumpgraph::cli
