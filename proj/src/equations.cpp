// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/equations.hpp>
#include <jumpgraph/transfer.hpp>

#include <deque>
#include <ostream>
#include <set>

namespace jumpgraph
{
namespace
{
std::size_t total_states(const AbstractState& pi)
{
    std::size_t k = 0;
    for (const auto& [key, image] : pi.map())
        k += image.size();
    return k;
}

/// Groups contributions that share a target.
class RhsBuilder
{
public:
    void add(Pc target, const StackState& s) { by_target_[target].absorb(idmap(s)); }
    void add(Pc target, AbstractState value) { by_target_[target].absorb(value); }

    std::vector<Contribution> take()
    {
        std::vector<Contribution> out;
        out.reserve(by_target_.size());
        for (auto& [target, value] : by_target_)
            out.push_back({target, std::move(value)});
        return out;
    }

private:
    std::map<Pc, AbstractState> by_target_;
};

const DestSet& jump_targets(const Instruction& instr, const StackState& key, const StackState& s)
{
    const DestSet* top = s.top();
    if (top == nullptr)
        throw UnresolvedJump(std::string(instr.spec->mnemonic) + " at " + hex_pc(instr.pc) +
                                 ": target is not a tracked constant (stack " + s.to_string() +
                                 ", entry context " + key.to_string() + ")",
            instr.pc);
    return *top;
}
}  // namespace

const AbstractState& EquationSystem::at(Pc pc) const
{
    const auto it = vars.find(pc);
    if (it == vars.end())
        throw LookupError("no variable for pc " + hex_pc(pc), pc);
    return it->second;
}

std::vector<Contribution> constraint_rhs(const Program& p, Pc pc, const AbstractState& x_pc)
{
    const Instruction* instr = p.at(pc);
    if (instr == nullptr)
        throw LookupError("no instruction at pc " + hex_pc(pc), pc);
    if (x_pc.empty() || instr->kind() == OpKind::End)
        return {};

    const Pc next = pc + instruction_size(*instr);
    const Instruction* next_instr = p.at(next);
    RhsBuilder rhs;

    switch (instr->kind())
    {
    case OpKind::Jump:
    case OpKind::JumpI:
        for (const auto& [key, image] : x_pc.map())
        {
            for (const auto& s : image)
            {
                const DestSet& targets = jump_targets(*instr, key, s);
                const StackState after = lambda(p, *instr, s);
                for (const Pc d : targets)
                {
                    if (!p.is_jumpdest(d))
                        throw InvalidTarget(std::string(instr->spec->mnemonic) + " at " +
                                                hex_pc(pc) + " reaches non-JUMPDEST " +
                                                hex_pc(d),
                            pc, d);
                    rhs.add(d, after);
                }
                if (instr->kind() == OpKind::JumpI && next_instr != nullptr)
                    rhs.add(next, after);
            }
        }
        break;
    default:
        if (next_instr == nullptr)
            break;  // runs off the end of the code: halts
        if (next_instr->kind() == OpKind::JumpDest)
        {
            for (const auto& [key, image] : x_pc.map())
                for (const auto& s : image)
                    rhs.add(next, lambda(p, *instr, s));
        }
        else
        {
            rhs.add(next, tau(p, *instr, x_pc));
        }
        break;
    }
    return rhs.take();
}

namespace
{
void solve_worklist(EquationSystem& sys, const SolveOptions& options)
{
    std::deque<Pc> pending;
    std::set<Pc> queued;
    const auto push = [&](Pc pc) {
        if (queued.insert(pc).second)
            pending.push_back(pc);
    };
    push(0);

    while (!pending.empty())
    {
        Pc pc;
        if (options.order == WorklistOrder::Fifo)
        {
            pc = pending.front();
            pending.pop_front();
        }
        else
        {
            pc = pending.back();
            pending.pop_back();
        }
        queued.erase(pc);
        ++sys.stats.worklist_pops;
        ++sys.stats.iterations;

        const AbstractState& x_pc = sys.vars.at(pc);
        for (auto& c : constraint_rhs(sys.program, pc, x_pc))
        {
            auto& target = sys.vars.at(c.target);
            if (leq(c.value, target))
                continue;
            const std::size_t old_size = total_states(target);
            AbstractState before;
            if (options.observer)
                before = target;
            target.absorb(c.value);
            ++sys.stats.updates;
            if (options.observer)
                options.observer(c.target, before, target);
            if (options.trace)
                *options.trace << "pop " << hex_pc(pc) << " -> " << hex_pc(c.target)
                               << " states " << old_size << " -> " << total_states(target)
                               << '\n';
            push(c.target);
        }
    }
}

void solve_naive(EquationSystem& sys, const SolveOptions& options)
{
    for (;;)
    {
        ++sys.stats.iterations;
        const auto snapshot = sys.vars;
        for (const auto& [pc, x_pc] : snapshot)
            for (auto& c : constraint_rhs(sys.program, pc, x_pc))
                sys.vars.at(c.target).absorb(c.value);

        bool changed = false;
        for (const auto& [pc, value] : sys.vars)
        {
            const auto& before = snapshot.at(pc);
            if (value == before)
                continue;
            changed = true;
            ++sys.stats.updates;
            if (options.observer)
                options.observer(pc, before, value);
        }
        if (options.trace)
            *options.trace << "round " << sys.stats.iterations << (changed ? " changed" : " stable")
                           << '\n';
        if (!changed)
            break;
    }
}
}  // namespace

EquationSystem solve(const Program& p, const SolveOptions& options)
{
    EquationSystem sys;
    sys.program = p;
    sys.blocks = partition_blocks(p);
    for (const auto& instr : p.instructions)
        sys.vars.emplace(instr.pc, AbstractState{});
    if (p.instructions.empty())
        return sys;

    const StackState empty{0};
    sys.vars.at(0) = idmap(empty);
    if (options.observer)
        options.observer(0, AbstractState{}, sys.vars.at(0));

    if (options.mode == SolverMode::Naive)
        solve_naive(sys, options);
    else
        solve_worklist(sys, options);
    return sys;
}

std::vector<Pc> unsatisfied_constraints(const EquationSystem& sys)
{
    std::vector<Pc> bad;
    for (const auto& [pc, x_pc] : sys.vars)
    {
        for (const auto& c : constraint_rhs(sys.program, pc, x_pc))
        {
            const auto it = sys.vars.find(c.target);
            if (it == sys.vars.end() || !leq(c.value, it->second))
            {
                bad.push_back(pc);
                break;
            }
        }
    }
    if (!sys.program.instructions.empty() && !leq(idmap(StackState{0}), sys.at(0)))
        bad.insert(bad.begin(), 0);
    return bad;
}
}  // namespace jumpgraph
