// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "blocks.hpp"
#include "bytecode.hpp"
#include "domain.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace jumpgraph
{
enum class SolverMode : std::uint8_t
{
    Worklist,  ///< pending-pc worklist seeded with pc 0
    Naive,     ///< whole-system re-evaluation until nothing changes
};

enum class WorklistOrder : std::uint8_t
{
    Fifo,
    Lifo,
};

/// Called whenever X_pc grows: (pc, value before, value after).
using IterateObserver =
    std::function<void(Pc pc, const AbstractState& before, const AbstractState& after)>;

struct SolveOptions
{
    SolverMode mode = SolverMode::Worklist;
    WorklistOrder order = WorklistOrder::Fifo;
    IterateObserver observer;
    std::ostream* trace = nullptr;  ///< one line per worklist pop / naive round
};

struct SolveStats
{
    std::size_t iterations = 0;     ///< naive rounds, or worklist pops
    std::size_t worklist_pops = 0;
    std::size_t updates = 0;        ///< number of times some X_pc grew
};

/// Variables X_pc (stack states before executing b_pc) of the addresses
/// equation system together with the program they describe.
struct EquationSystem
{
    Program program;
    BlockPartition blocks;
    std::map<Pc, AbstractState> vars;  ///< one entry per instruction pc
    SolveStats stats;

    const AbstractState& at(Pc pc) const;
};

/// One right-hand side produced by the constraint of an instruction.
struct Contribution
{
    Pc target;
    AbstractState value;
};

/// Evaluate the constraint of the instruction at pc against current X_pc.
/// Throws UnresolvedJump, InvalidTarget or ArityError.
std::vector<Contribution> constraint_rhs(const Program& p, Pc pc, const AbstractState& x_pc);

/// Build the addresses equation system of p and solve it to its least fixpoint.
EquationSystem solve(const Program& p, const SolveOptions& options = {});

/// Re-evaluate every constraint; returns the pcs whose constraint is not
/// satisfied by sys.vars. Empty at a fixpoint.
std::vector<Pc> unsatisfied_constraints(const EquationSystem& sys);
}  // namespace jumpgraph
