// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bytecode.hpp"
#include "domain.hpp"

namespace jumpgraph
{
/// Updating function: stack effect of one instruction on one stack state.
///
/// Destinations are introduced only by a PUSH whose value is a JUMPDEST of
/// the program, copied by DUP, moved by SWAP, and dropped by everything that
/// consumes the slot. JUMP/JUMPI only consume their operands here; routing
/// to the target is done by the equation system.
///
/// Throws ArityError on underflow or when the result exceeds 1024 items.
StackState lambda(const Program& p, const Instruction& instr, const StackState& s);

/// Transfer function: lambda applied to every member of every image.
AbstractState tau(const Program& p, const Instruction& instr, const AbstractState& pi);
}  // namespace jumpgraph
