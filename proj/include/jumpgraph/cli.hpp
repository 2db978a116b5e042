// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "equations.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace jumpgraph::cli
{
struct RunConfig
{
    std::optional<std::string> hex;   ///< inline hex
    std::optional<std::string> file;  ///< path to a hex file
    bool blocks = false;
    std::optional<std::string> dot_path;   ///< "-" for stdout
    std::optional<std::string> json_path;  ///< "-" for stdout
    bool check = false;
    std::size_t max_steps = 100000;
    std::size_t max_states = 100000;
    SolverMode solver = SolverMode::Worklist;
    int verbosity = 0;
};

enum ExitCode : int
{
    ok = 0,
    analysis_error = 1,
    check_failed = 2,
};

/// Runs the full pipeline. Reports go to out, error reports (JSON) to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
}  // namespace jumpgraph::cli
