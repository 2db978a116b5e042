// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bytecode.hpp"

#include <cstdint>
#include <vector>

namespace jumpgraph::oracle
{
/// Bounds for generated test programs.
struct GeneratorShape
{
    unsigned max_blocks = 30;      ///< soft cap on emitted blocks
    unsigned functions = 2;        ///< shared callee bodies
    unsigned call_sites = 2;       ///< minimum call sites per function
    unsigned max_call_depth = 2;   ///< nesting of calls inside callees
    unsigned max_stack_use = 4;    ///< extra items pushed by filler
    bool branches = true;
    bool loops = true;
    bool early_exits = true;
    bool random_calls = true;      ///< extra call sites beyond the minimum

    /// One function called from exactly `call_sites` top-level sites, no branches.
    static GeneratorShape minimal();
};

struct GeneratedProgram
{
    std::vector<std::uint8_t> code;
    Program program;
    std::vector<Pc> function_entries;
};

/// Deterministic for a given (seed, shape) on every platform. Every jump
/// target is a pushed JUMPDEST and every path keeps the stack balanced.
GeneratedProgram generate_program(std::uint64_t seed, const GeneratorShape& shape);
}  // namespace jumpgraph::oracle
