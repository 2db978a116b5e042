// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <jumpgraph/equations.hpp>
#include <jumpgraph/generator.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace jumpgraph;
using namespace jumpgraph::test;

namespace
{
AbstractState single(const StackState& key, const StackState& value)
{
    AbstractState pi;
    pi.insert(key, value);
    return pi;
}

const StackState empty{0};
}  // namespace

TEST(equations, idmap_examples)
{
    EXPECT_EQ(idmap(empty), single(empty, empty));
    const auto s = stack(7, {{5, {0x954}}});
    EXPECT_EQ(idmap(s), single(s, s));
}

TEST(equations, linear_fixture)
{
    const auto sys = solve(decode_bytecode(linear_hex));
    EXPECT_EQ(sys.at(0x00), idmap(empty));
    EXPECT_EQ(sys.at(0x02), single(empty, stack(1, {{0, {0x03}}})));
    EXPECT_EQ(sys.at(0x03), idmap(empty));
    EXPECT_EQ(sys.at(0x04), idmap(empty));
    EXPECT_TRUE(unsatisfied_constraints(sys).empty());
}

TEST(equations, shared_fn_fixture)
{
    const auto sys = solve(decode_bytecode(shared_fn_hex));
    const auto ret5 = stack(1, {{0, {0x05}}});
    const auto retb = stack(1, {{0, {0x0b}}});
    EXPECT_EQ(sys.at(0x10), join(idmap(ret5), idmap(retb)));
    EXPECT_EQ(sys.at(0x11), join(idmap(ret5), idmap(retb)));
    EXPECT_EQ(sys.at(0x05), idmap(empty));
    EXPECT_EQ(sys.at(0x0b), idmap(empty));
    EXPECT_EQ(sys.at(0x0a), single(empty, stack(2, {{0, {0x0b}}, {1, {0x10}}})));
    // Unreached filler is never assigned.
    for (const Pc pc : {0x0d, 0x0e, 0x0f})
        EXPECT_TRUE(sys.at(pc).empty());
}

TEST(equations, branch_fixture)
{
    const auto p = decode_bytecode(branch_hex);
    const auto x4 = single(empty, stack(2, {{1, {0x06}}}));
    const auto rhs = constraint_rhs(p, 0x04, x4);
    ASSERT_EQ(rhs.size(), 2u);
    EXPECT_EQ(rhs[0].target, 0x05u);
    EXPECT_EQ(rhs[0].value, idmap(empty));
    EXPECT_EQ(rhs[1].target, 0x06u);
    EXPECT_EQ(rhs[1].value, idmap(empty));

    const auto sys = solve(p);
    EXPECT_EQ(sys.at(0x04), x4);
    EXPECT_EQ(sys.at(0x05), idmap(empty));
    EXPECT_EQ(sys.at(0x06), idmap(empty));
}

TEST(equations, fallthrough_into_jumpdest_opens_fresh_context)
{
    // 0: PUSH1 00 ; 2: JUMPDEST ; 3: POP ; 4: STOP
    const auto sys = solve(decode_bytecode("60005b5000"));
    EXPECT_EQ(sys.at(0x02), idmap(StackState{1}));
    EXPECT_EQ(sys.at(0x03), idmap(StackState{1}));
    EXPECT_EQ(sys.at(0x04), single(StackState{1}, empty));
}

TEST(equations, unresolved_jump)
{
    try
    {
        solve(decode_bytecode("56"));
        FAIL();
    }
    catch (const UnresolvedJump& e)
    {
        EXPECT_EQ(e.pc(), Pc{0});
    }
    // Jump to a computed address: PUSH1 1; PUSH1 2; ADD; JUMP; JUMPDEST
    EXPECT_THROW(solve(decode_bytecode("600160020156" "5b")), UnresolvedJump);
}

TEST(equations, arity_error_reports_pc)
{
    try
    {
        solve(decode_bytecode("600150" "50" "00"));
        FAIL();
    }
    catch (const ArityError& e)
    {
        EXPECT_EQ(e.pc(), Pc{3});
    }
}

TEST(equations, every_instruction_has_a_variable)
{
    const auto p = decode_bytecode(shared_fn_hex);
    const auto sys = solve(p);
    EXPECT_EQ(sys.vars.size(), p.instructions.size());
}

TEST(equations, trace_log)
{
    std::ostringstream log;
    SolveOptions opts;
    opts.trace = &log;
    solve(decode_bytecode(linear_hex), opts);
    EXPECT_NE(log.str().find("pop 0x0"), std::string::npos);
}

TEST(equations, solver_properties_on_generated_programs)
{
    oracle::GeneratorShape shape;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const auto g = oracle::generate_program(seed, shape);
        bool monotone = true;
        SolveOptions opts;
        opts.observer = [&](Pc, const AbstractState& before, const AbstractState& after) {
            monotone = monotone && leq(before, after);
        };
        const auto fifo = solve(g.program, opts);
        EXPECT_TRUE(monotone) << "seed " << seed;
        EXPECT_TRUE(unsatisfied_constraints(fifo).empty()) << "seed " << seed;

        opts.order = WorklistOrder::Lifo;
        EXPECT_EQ(solve(g.program, opts).vars, fifo.vars) << "seed " << seed;
        opts.mode = SolverMode::Naive;
        EXPECT_EQ(solve(g.program, opts).vars, fifo.vars) << "seed " << seed;
        EXPECT_TRUE(monotone);
    }
}

TEST(equations, minimal_shape_has_two_contexts_in_callee)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto g = oracle::generate_program(seed, oracle::GeneratorShape::minimal());
        ASSERT_EQ(g.function_entries.size(), 1u);
        const auto sys = solve(g.program);
        EXPECT_EQ(sys.at(g.function_entries[0]).size(), 2u) << "seed " << seed;
    }
}
