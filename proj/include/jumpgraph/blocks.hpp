// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bytecode.hpp"

#include <map>
#include <set>
#include <string_view>
#include <vector>

namespace jumpgraph
{
enum class Terminator : std::uint8_t
{
    Jump,
    JumpI,
    End,
    FallToJumpdest,  ///< next instruction is a JUMPDEST
    CodeEnd,         ///< last instruction of the code, not a jump or halt
};

std::string_view to_string(Terminator t) noexcept;

/// Maximal straight-line run of instructions; identified by start_pc.
struct Block
{
    Pc start_pc = 0;
    Pc end_pc = 0;
    std::vector<Instruction> body;
    Terminator terminator = Terminator::CodeEnd;

    const Instruction& last() const { return body.back(); }
    /// pc of the instruction following the terminator.
    Pc next_pc() const { return end_pc + instruction_size(last()); }
};

struct BlockPartition
{
    std::map<Pc, Block> blocks;  ///< keyed by start_pc
    std::set<Pc> unreached;      ///< instructions that belong to no block

    /// Block containing pc (as start, interior or terminator). Throws LookupError.
    const Block& block_at(Pc pc) const;
    const Block* find(Pc pc) const noexcept;
};

BlockPartition partition_blocks(const Program& p);

inline const Block& block_at(const BlockPartition& blocks, Pc pc)
{
    return blocks.block_at(pc);
}
}  // namespace jumpgraph
