// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cfg.hpp"
#include "equations.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace jumpgraph::oracle
{
/// Program state <pc, <n, sigma>> of the simplified jump semantics.
/// Destination sets are always singletons.
struct ConcreteState
{
    Pc pc = 0;
    StackState stack;

    std::string to_string() const;
    friend auto operator<=>(const ConcreteState&, const ConcreteState&) = default;
    friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

enum class StepKind : std::uint8_t
{
    Next,  ///< pc + size(b_pc)
    Jump,  ///< taken JUMP / JUMPI
};

struct Successor
{
    ConcreteState state;
    StepKind kind;
    friend auto operator<=>(const Successor&, const Successor&) = default;
};

/// Execute one instruction. JUMPI yields both the taken and the fallthrough
/// state; halting instructions and running off the end yield nothing.
/// Throws UnresolvedJump (stuck), InvalidTarget or ArityError.
std::vector<Successor> step(const Program& p, const ConcreteState& s);

struct Transition
{
    ConcreteState from;
    ConcreteState to;
    StepKind kind;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Reachable state graph from <0, <0, {}>>.
struct TraceSet
{
    ConcreteState initial;
    std::set<ConcreteState> states;
    std::set<Transition> transitions;
    std::map<ConcreteState, std::vector<Successor>> successors;
    std::size_t steps = 0;
    bool truncated = false;
};

/// Breadth-first closure of step with memoization. Stops early and sets
/// truncated when max_steps expansions or max_states distinct states are hit.
TraceSet enumerate(const Program& p, std::size_t max_steps, std::size_t max_states);

/// Maximal traces as state sequences, up to limit of them. A trace that
/// would revisit a state is cut at the revisit.
std::vector<std::vector<ConcreteState>> maximal_traces(const TraceSet& ts, std::size_t limit);

struct Violation
{
    std::string kind;
    Pc pc = 0;
    std::string detail;
    std::optional<Pc> via;  ///< pc of the instruction that produced the state
};

enum class Status : std::uint8_t
{
    Pass,
    Fail,
    Inconclusive,
};

struct Verdict
{
    Status status = Status::Pass;
    std::vector<Violation> violations;
    std::size_t states = 0;
    std::size_t transitions = 0;
    bool truncated = false;

    bool passed() const noexcept { return status == Status::Pass; }
    std::string to_json() const;
};

/// Every reached state is covered by X_pc and every executed jump target is
/// among the destinations recorded on top of the stack at the jump.
Verdict check_jumps_to(const Program& p, const EquationSystem& sys, const TraceSet& ts);

/// Every trace projects onto a directed walk of replicas in cfg.
Verdict check_walk(const Program& p, const Cfg& cfg, const EquationSystem& sys,
                   const TraceSet& ts);
}  // namespace jumpgraph::oracle
