// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/oracle.hpp>

#include <json.hpp>

#include <algorithm>
#include <deque>

namespace jumpgraph::oracle
{
namespace
{
/// Explicit operand stack, bottom first. A slot holds the jump destination
/// stored there, or nothing when the value is not a JUMPDEST address.
using Slots = std::vector<std::optional<Pc>>;

Slots to_slots(const StackState& s)
{
    Slots slots(s.height());
    for (const auto& [pos, dests] : s.sigma())
    {
        if (dests.size() != 1)
            throw std::invalid_argument("concrete stack slot s" + std::to_string(pos) +
                                        " holds " + std::to_string(dests.size()) +
                                        " destinations");
        slots[pos] = *dests.begin();
    }
    return slots;
}

StackState from_slots(const Slots& slots)
{
    StackState::Sigma sigma;
    for (std::uint32_t i = 0; i < slots.size(); ++i)
        if (slots[i])
            sigma[i] = {*slots[i]};
    return StackState{static_cast<std::uint32_t>(slots.size()), std::move(sigma)};
}

[[noreturn]] void underflow(const Instruction& instr, std::size_t have)
{
    throw ArityError("stack underflow executing " + std::string(instr.spec->mnemonic) + " at " +
                         hex_pc(instr.pc) + " with " + std::to_string(have) + " item(s)",
        instr.pc);
}

void check_overflow(const Instruction& instr, const Slots& slots)
{
    if (slots.size() > max_stack_height)
        throw ArityError("stack overflow executing " + std::string(instr.spec->mnemonic) +
                             " at " + hex_pc(instr.pc),
            instr.pc);
}

std::string trace_text(const std::vector<ConcreteState>& trace)
{
    std::string s;
    for (const auto& st : trace)
    {
        if (!s.empty())
            s += " => ";
        s += st.to_string();
    }
    return s;
}
}  // namespace

std::string ConcreteState::to_string() const
{
    return "<" + hex_pc(pc) + "," + stack.to_string() + ">";
}

std::vector<Successor> step(const Program& p, const ConcreteState& s)
{
    const Instruction* instr = p.at(s.pc);
    if (instr == nullptr || instr->kind() == OpKind::End)
        return {};

    Slots slots = to_slots(s.stack);
    const Pc next = s.pc + instruction_size(*instr);
    const bool has_next = p.at(next) != nullptr;
    std::vector<Successor> out;

    const auto jump_to = [&](const std::optional<Pc>& target, const Slots& after) {
        if (!target)
            throw UnresolvedJump(std::string(instr->spec->mnemonic) + " at " + hex_pc(s.pc) +
                                     " is stuck: top of stack is not a tracked address",
                s.pc);
        if (!p.is_jumpdest(*target))
            throw InvalidTarget("jump at " + hex_pc(s.pc) + " to non-JUMPDEST " + hex_pc(*target),
                s.pc, *target);
        out.push_back({{*target, from_slots(after)}, StepKind::Jump});
    };

    switch (instr->kind())
    {
    case OpKind::Jump:
    {
        if (slots.empty())
            throw UnresolvedJump("JUMP at " + hex_pc(s.pc) + " is stuck on an empty stack", s.pc);
        const auto target = slots.back();
        slots.pop_back();
        jump_to(target, slots);
        return out;
    }
    case OpKind::JumpI:
    {
        if (slots.empty())
            throw UnresolvedJump("JUMPI at " + hex_pc(s.pc) + " is stuck on an empty stack", s.pc);
        if (slots.size() < 2)
            underflow(*instr, slots.size());
        const auto target = slots.back();
        slots.resize(slots.size() - 2);
        jump_to(target, slots);
        if (has_next)
            out.push_back({{next, from_slots(slots)}, StepKind::Next});
        return out;
    }
    case OpKind::Push:
    {
        const auto v = pushed_pc(*instr);
        slots.push_back(v && p.is_jumpdest(*v) ? v : std::nullopt);
        break;
    }
    case OpKind::Dup:
    {
        const unsigned x = instr->spec->index();
        if (slots.size() < x)
            underflow(*instr, slots.size());
        slots.push_back(slots[slots.size() - x]);
        break;
    }
    case OpKind::Swap:
    {
        const unsigned x = instr->spec->index();
        if (slots.size() < x + 1)
            underflow(*instr, slots.size());
        std::swap(slots[slots.size() - 1], slots[slots.size() - 1 - x]);
        break;
    }
    default:
    {
        const auto delta = instr->spec->delta;
        if (slots.size() < delta)
            underflow(*instr, slots.size());
        slots.resize(slots.size() - delta);
        slots.resize(slots.size() + instr->spec->alpha);
        break;
    }
    }
    check_overflow(*instr, slots);
    if (has_next)
        out.push_back({{next, from_slots(slots)}, StepKind::Next});
    return out;
}

TraceSet enumerate(const Program& p, std::size_t max_steps, std::size_t max_states)
{
    TraceSet ts;
    if (p.instructions.empty())
        return ts;
    ts.initial = ConcreteState{0, StackState{0}};
    ts.states.insert(ts.initial);

    std::map<ConcreteState, ConcreteState> parent;
    std::deque<ConcreteState> frontier{ts.initial};
    while (!frontier.empty())
    {
        if (ts.steps >= max_steps)
        {
            ts.truncated = true;
            break;
        }
        const ConcreteState s = frontier.front();
        frontier.pop_front();
        ++ts.steps;

        std::vector<Successor> succs;
        try
        {
            succs = step(p, s);
        }
        catch (const Error& e)
        {
            std::vector<ConcreteState> trace{s};
            for (auto it = parent.find(s); it != parent.end(); it = parent.find(it->second))
                trace.push_back(it->second);
            std::reverse(trace.begin(), trace.end());
            throw Error(e.kind(), std::string(e.what()) + "; trace: " + trace_text(trace), e.pc());
        }

        auto& edges = ts.successors[s];
        for (const auto& succ : succs)
        {
            edges.push_back(succ);
            ts.transitions.insert({s, succ.state, succ.kind});
            if (ts.states.contains(succ.state))
                continue;
            if (ts.states.size() >= max_states)
            {
                ts.truncated = true;
                continue;
            }
            ts.states.insert(succ.state);
            parent.emplace(succ.state, s);
            frontier.push_back(succ.state);
        }
        if (ts.truncated && ts.states.size() >= max_states)
            break;
    }
    return ts;
}

std::vector<std::vector<ConcreteState>> maximal_traces(const TraceSet& ts, std::size_t limit)
{
    std::vector<std::vector<ConcreteState>> out;
    if (ts.states.empty())
        return out;

    std::vector<ConcreteState> path{ts.initial};
    std::set<ConcreteState> on_path{ts.initial};
    // Explicit DFS: per-level index of the next successor to try.
    std::vector<std::size_t> cursor{0};
    const std::vector<Successor> none;

    const auto succs_of = [&](const ConcreteState& s) -> const std::vector<Successor>& {
        const auto it = ts.successors.find(s);
        return it == ts.successors.end() ? none : it->second;
    };

    while (!path.empty() && out.size() < limit)
    {
        const auto& succs = succs_of(path.back());
        if (succs.empty() && cursor.back() == 0)
        {
            out.push_back(path);
            cursor.back() = 1;
        }
        if (cursor.back() >= succs.size())
        {
            on_path.erase(path.back());
            path.pop_back();
            cursor.pop_back();
            continue;
        }
        const ConcreteState next = succs[cursor.back()++].state;
        if (on_path.contains(next))
        {
            out.push_back(path);
            out.back().push_back(next);
            continue;
        }
        path.push_back(next);
        on_path.insert(next);
        cursor.push_back(0);
    }
    return out;
}

std::string Verdict::to_json() const
{
    using nlohmann::json;
    json vs = json::array();
    for (const auto& v : violations)
    {
        json jv = {{"kind", v.kind}, {"pc", v.pc}, {"detail", v.detail}};
        if (v.via)
            jv["via"] = *v.via;
        vs.push_back(std::move(jv));
    }
    const char* name = status == Status::Pass   ? "pass"
                       : status == Status::Fail ? "fail"
                                                : "inconclusive";
    json doc = {{"verdict", name}, {"violations", vs},
        {"coverage", {{"states", states}, {"transitions", transitions}, {"truncated", truncated}}}};
    return doc.dump();
}

namespace
{
Verdict start_verdict(const TraceSet& ts)
{
    Verdict v;
    v.states = ts.states.size();
    v.transitions = ts.transitions.size();
    v.truncated = ts.truncated;
    if (ts.truncated)
        v.status = Status::Inconclusive;
    return v;
}

void finish(Verdict& v)
{
    if (!v.violations.empty())
        v.status = Status::Fail;
}

/// Abstract state m covers concrete stack c: same height and every tracked
/// concrete destination is among the abstract ones.
bool covers(const StackState& m, const StackState& c)
{
    if (m.height() != c.height())
        return false;
    for (const auto& [pos, dests] : c.sigma())
    {
        const DestSet* abs = m.at(pos);
        if (abs == nullptr || !std::includes(abs->begin(), abs->end(), dests.begin(), dests.end()))
            return false;
    }
    return true;
}

const AbstractState* var_at(const EquationSystem& sys, Pc pc)
{
    const auto it = sys.vars.find(pc);
    return it == sys.vars.end() ? nullptr : &it->second;
}

constexpr std::size_t max_reported = 32;
}  // namespace

Verdict check_jumps_to(const Program& p, const EquationSystem& sys, const TraceSet& ts)
{
    Verdict v = start_verdict(ts);
    if (ts.truncated)
        return v;

    std::map<ConcreteState, Pc> producer;
    for (const auto& t : ts.transitions)
        producer.emplace(t.to, t.from.pc);

    for (const auto& s : ts.states)
    {
        const AbstractState* x = var_at(sys, s.pc);
        bool ok = false;
        if (x != nullptr)
            for (const auto& [key, image] : x->map())
                for (const auto& m : image)
                    ok = ok || covers(m, s.stack);
        if (!ok && v.violations.size() < max_reported)
        {
            const auto it = producer.find(s);
            std::optional<Pc> via;
            std::string detail = "state " + s.stack.to_string() + " at " + hex_pc(s.pc);
            if (it != producer.end())
            {
                via = it->second;
                detail += " (reached from " + hex_pc(it->second) + ")";
            }
            detail += " has no covering context in X_" + hex_pc(s.pc);
            v.violations.push_back({"uncovered_state", s.pc, detail, via});
        }
    }

    for (const auto& t : ts.transitions)
    {
        if (t.kind != StepKind::Jump)
            continue;
        const AbstractState* x = var_at(sys, t.from.pc);
        bool ok = false;
        if (x != nullptr)
            for (const auto& [key, image] : x->map())
                for (const auto& m : image)
                    if (const DestSet* top = m.top())
                        ok = ok || top->contains(t.to.pc);
        if (!ok && v.violations.size() < max_reported)
            v.violations.push_back({"missing_jump_target", t.from.pc,
                "jump at " + hex_pc(t.from.pc) + " to " + hex_pc(t.to.pc) +
                    " is not among the recorded destinations",
                t.from.pc});
    }
    (void)p;
    finish(v);
    return v;
}

Verdict check_walk(const Program& p, const Cfg& cfg, const EquationSystem& sys,
    const TraceSet& ts)
{
    Verdict v = start_verdict(ts);
    if (ts.truncated || ts.states.empty())
        return v;
    (void)p;

    const auto& block_starts = sys.blocks.blocks;
    using Candidates = std::set<ReplicaId>;
    struct Node
    {
        ConcreteState state;
        Candidates replicas;
        std::size_t parent;
        bool block_entry;
    };
    constexpr std::size_t no_parent = static_cast<std::size_t>(-1);

    std::vector<Node> nodes;
    std::set<std::pair<ConcreteState, Candidates>> seen;
    std::deque<std::size_t> todo;

    const auto block_path = [&](std::size_t idx, Pc last_block) {
        std::vector<Pc> blocks{last_block};
        for (; idx != no_parent; idx = nodes[idx].parent)
            if (nodes[idx].block_entry)
                blocks.push_back(nodes[idx].state.pc);
        std::reverse(blocks.begin(), blocks.end());
        std::string s;
        for (const Pc b : blocks)
            s += (s.empty() ? "" : " -> ") + hex_pc(b);
        return s;
    };

    if (!cfg.vertices.contains(cfg.entry) || cfg.entry.block_start != 0)
    {
        v.violations.push_back({"missing_entry", 0, "cfg has no entry replica B_0x0:1", {}});
        finish(v);
        return v;
    }

    const auto add = [&](ConcreteState s, Candidates r, std::size_t parent, bool entry) {
        if (!seen.emplace(s, r).second)
            return;
        nodes.push_back({std::move(s), std::move(r), parent, entry});
        todo.push_back(nodes.size() - 1);
    };
    add(ts.initial, {cfg.entry}, no_parent, true);

    while (!todo.empty() && v.violations.size() < max_reported)
    {
        const std::size_t idx = todo.front();
        todo.pop_front();
        const auto it = ts.successors.find(nodes[idx].state);
        if (it == ts.successors.end())
            continue;
        for (const auto& succ : it->second)
        {
            if (!block_starts.contains(succ.state.pc))
            {
                add(succ.state, nodes[idx].replicas, idx, false);
                continue;
            }
            const auto& edges = succ.kind == StepKind::Jump ? cfg.jump_edges : cfg.next_edges;
            Candidates next;
            for (const auto& r : nodes[idx].replicas)
                for (auto e = edges.lower_bound({r, ReplicaId{0, 0}});
                     e != edges.end() && e->first == r; ++e)
                    if (e->second.block_start == succ.state.pc)
                        next.insert(e->second);
            if (next.empty())
            {
                v.violations.push_back({"no_walk", succ.state.pc,
                    "trace " + block_path(idx, succ.state.pc) + " has no matching " +
                        (succ.kind == StepKind::Jump ? "E_jump" : "E_next") +
                        " walk in the cfg",
                    nodes[idx].state.pc});
                continue;
            }
            add(succ.state, std::move(next), idx, true);
        }
    }
    finish(v);
    return v;
}
}  // namespace jumpgraph::oracle
