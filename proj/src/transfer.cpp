// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/transfer.hpp>

namespace jumpgraph
{
namespace
{
void require_height(const Instruction& instr, std::uint32_t n, std::uint32_t needed)
{
    if (n < needed)
        throw ArityError(std::string(instr.spec->mnemonic) + " at " + hex_pc(instr.pc) +
                             " needs " + std::to_string(needed) + " stack item(s), has " +
                             std::to_string(n),
            instr.pc);
}

void require_room(const Instruction& instr, std::uint32_t result_height)
{
    if (result_height > max_stack_height)
        throw ArityError(std::string(instr.spec->mnemonic) + " at " + hex_pc(instr.pc) +
                             " overflows the stack (" + std::to_string(result_height) +
                             " > 1024)",
            instr.pc);
}

/// sigma without positions [from, n).
StackState::Sigma drop_from(const StackState::Sigma& sigma, std::uint32_t from)
{
    StackState::Sigma r;
    for (const auto& [pos, dests] : sigma)
        if (pos < from)
            r.emplace(pos, dests);
    return r;
}
}  // namespace

StackState lambda(const Program& p, const Instruction& instr, const StackState& s)
{
    const std::uint32_t n = s.height();
    const OpSpec& spec = *instr.spec;

    switch (spec.kind)
    {
    case OpKind::Push:
    {
        require_room(instr, n + 1);
        const auto v = pushed_pc(instr);
        StackState r{n + 1, s.sigma()};
        if (v && p.is_jumpdest(*v))
            return r.with(n, {*v});
        return r;
    }
    case OpKind::Dup:
    {
        const unsigned x = spec.index();
        require_height(instr, n, x);
        require_room(instr, n + 1);
        StackState r{n + 1, s.sigma()};
        if (const DestSet* src = s.at(n - x))
            return r.with(n, *src);
        return r;
    }
    case OpKind::Swap:
    {
        const unsigned x = spec.index();
        require_height(instr, n, x + 1);
        const std::uint32_t top = n - 1;
        const std::uint32_t other = n - x - 1;
        const DestSet* top_dests = s.at(top);
        const DestSet* other_dests = s.at(other);
        // An absent entry moves as an absence; both absent is the identity.
        return s.with(top, other_dests ? *other_dests : DestSet{})
            .with(other, top_dests ? *top_dests : DestSet{});
    }
    default:
    {
        // JUMP, JUMPI and every remaining opcode: consume delta, produce alpha untracked.
        require_height(instr, n, spec.delta);
        const std::uint32_t base = n - spec.delta;
        require_room(instr, base + spec.alpha);
        return StackState{base + spec.alpha, drop_from(s.sigma(), base)};
    }
    }
}

AbstractState tau(const Program& p, const Instruction& instr, const AbstractState& pi)
{
    AbstractState r;
    for (const auto& [key, image] : pi.map())
    {
        std::set<StackState> out;
        for (const auto& st : image)
        {
            try
            {
                out.insert(lambda(p, instr, st));
            }
            catch (const ArityError& e)
            {
                throw ArityError(std::string(e.what()) + " (entry context " + key.to_string() +
                                     ")",
                    instr.pc);
            }
        }
        r.insert(key, out);
    }
    return r;
}
}  // namespace jumpgraph
