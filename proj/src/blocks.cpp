// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/blocks.hpp>

namespace jumpgraph
{
std::string_view to_string(Terminator t) noexcept
{
    switch (t)
    {
    case Terminator::Jump:
        return "jump";
    case Terminator::JumpI:
        return "jumpi";
    case Terminator::End:
        return "end";
    case Terminator::FallToJumpdest:
        return "fall_to_jumpdest";
    case Terminator::CodeEnd:
        return "code_end";
    }
    return "?";
}

const Block* BlockPartition::find(Pc pc) const noexcept
{
    auto it = blocks.upper_bound(pc);
    if (it == blocks.begin())
        return nullptr;
    --it;
    const Block& b = it->second;
    return pc <= b.end_pc ? &b : nullptr;
}

const Block& BlockPartition::block_at(Pc pc) const
{
    if (const Block* b = find(pc))
        return *b;
    if (unreached.contains(pc))
        throw LookupError("pc " + hex_pc(pc) + " is unreached code and belongs to no block", pc);
    throw LookupError("no block contains pc " + hex_pc(pc), pc);
}

BlockPartition partition_blocks(const Program& p)
{
    BlockPartition result;
    const auto& instrs = p.instructions;
    Block* open = nullptr;

    for (std::size_t i = 0; i < instrs.size(); ++i)
    {
        const Instruction& instr = instrs[i];
        const bool starts = instr.pc == 0 || instr.kind() == OpKind::JumpDest ||
                            (i > 0 && instrs[i - 1].kind() == OpKind::JumpI);
        if (starts)
        {
            open = &result.blocks[instr.pc];
            open->start_pc = instr.pc;
        }
        else if (open == nullptr)
        {
            result.unreached.insert(instr.pc);
            continue;
        }

        open->body.push_back(instr);
        open->end_pc = instr.pc;

        const bool last = i + 1 == instrs.size();
        const bool next_is_dest = !last && instrs[i + 1].kind() == OpKind::JumpDest;
        switch (instr.kind())
        {
        case OpKind::Jump:
            open->terminator = Terminator::Jump;
            open = nullptr;
            break;
        case OpKind::JumpI:
            open->terminator = Terminator::JumpI;
            open = nullptr;
            break;
        case OpKind::End:
            open->terminator = Terminator::End;
            open = nullptr;
            break;
        default:
            if (next_is_dest)
            {
                open->terminator = Terminator::FallToJumpdest;
                open = nullptr;
            }
            else if (last)
            {
                open->terminator = Terminator::CodeEnd;
                open = nullptr;
            }
            break;
        }
    }
    return result;
}
}  // namespace jumpgraph
