// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <jumpgraph/generator.hpp>
#include <jumpgraph/oracle.hpp>
#include <jumpgraph/transfer.hpp>

#include <json.hpp>

#include <gtest/gtest.h>

using namespace jumpgraph;
using namespace jumpgraph::oracle;
using namespace jumpgraph::test;

namespace
{
constexpr std::size_t bound = 100000;

struct Pipeline
{
    Program program;
    EquationSystem sys;
    Cfg cfg;
    TraceSet ts;

    explicit Pipeline(const Program& p)
      : program(p), sys(solve(p)), cfg(build_cfg(sys)), ts(enumerate(p, bound, bound))
    {}
};
}  // namespace

TEST(oracle, step_examples)
{
    const auto linear = decode_bytecode(linear_hex);
    const auto s0 = step(linear, {0, StackState{0}});
    ASSERT_EQ(s0.size(), 1u);
    EXPECT_EQ(s0[0].state, (ConcreteState{2, stack(1, {{0, {0x03}}})}));

    const auto branch = decode_bytecode(branch_hex);
    const auto s4 = step(branch, {4, stack(2, {{1, {0x06}}})});
    ASSERT_EQ(s4.size(), 2u);
    EXPECT_EQ(s4[0].state, (ConcreteState{6, StackState{0}}));
    EXPECT_EQ(s4[0].kind, StepKind::Jump);
    EXPECT_EQ(s4[1].state, (ConcreteState{5, StackState{0}}));
    EXPECT_EQ(s4[1].kind, StepKind::Next);

    EXPECT_TRUE(step(linear, {4, StackState{0}}).empty());
}

TEST(oracle, step_errors)
{
    const auto p = decode_bytecode("56");
    EXPECT_THROW(step(p, {0, StackState{0}}), UnresolvedJump);
    EXPECT_THROW(step(p, {0, StackState{1}}), UnresolvedJump);
    const auto pop = decode_bytecode("5000");
    EXPECT_THROW(step(pop, {0, StackState{0}}), ArityError);
    // A tracked slot that is not a JUMPDEST of this program.
    EXPECT_THROW(step(p, {0, stack(1, {{0, {0x40}}})}), InvalidTarget);
}

TEST(oracle, enumerate_examples)
{
    {
        const auto ts = enumerate(decode_bytecode("00"), bound, bound);
        EXPECT_EQ(ts.states, (std::set<ConcreteState>{{0, StackState{0}}}));
        EXPECT_TRUE(ts.transitions.empty());
        EXPECT_FALSE(ts.truncated);
    }
    {
        const auto ts = enumerate(decode_bytecode(linear_hex), bound, bound);
        const auto traces = maximal_traces(ts, 10);
        ASSERT_EQ(traces.size(), 1u);
        ASSERT_EQ(traces[0].size(), 4u);
        EXPECT_EQ(traces[0].back().pc, 0x04u);
    }
    {
        const auto ts = enumerate(decode_bytecode(branch_hex), bound, bound);
        const auto traces = maximal_traces(ts, 10);
        EXPECT_EQ(traces.size(), 2u);
    }
}

TEST(oracle, enumerate_bounds_and_loops)
{
    // JUMPDEST; PUSH1 0; PUSH1 0; JUMPI: loops back to 0, which is a JUMPDEST
    const auto p = decode_bytecode("5b6000600057");
    const auto ts = enumerate(p, bound, bound);
    EXPECT_FALSE(ts.truncated);
    EXPECT_EQ(ts.states.size(), 4u);

    const auto gen = generate_program(3, GeneratorShape{});
    const auto small = enumerate(gen.program, 2, bound);
    EXPECT_TRUE(small.truncated);
    const auto tiny = enumerate(gen.program, bound, 2);
    EXPECT_TRUE(tiny.truncated);
    EXPECT_LE(tiny.states.size(), 2u);

    const auto sys = solve(gen.program);
    EXPECT_EQ(check_jumps_to(gen.program, sys, small).status, Status::Inconclusive);
}

TEST(oracle, enumerate_error_carries_trace)
{
    // PUSH1 1; PUSH1 2; ADD; JUMP
    try
    {
        enumerate(decode_bytecode("6001600201565b"), bound, bound);
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.kind(), "UnresolvedJump");
        EXPECT_NE(std::string(e.what()).find("trace:"), std::string::npos);
    }
}

TEST(oracle, checks_pass_on_fixtures)
{
    for (const char* hex : {"00", linear_hex, branch_hex, shared_fn_hex})
    {
        Pipeline run(decode_bytecode(hex));
        EXPECT_TRUE(check_jumps_to(run.program, run.sys, run.ts).passed()) << hex;
        EXPECT_TRUE(check_walk(run.program, run.cfg, run.sys, run.ts).passed()) << hex;
    }
}

TEST(oracle, deleted_context_is_detected)
{
    Pipeline run(decode_bytecode(shared_fn_hex));
    run.sys.vars.at(0x10).erase(stack(1, {{0, {0x0b}}}));
    const auto v = check_jumps_to(run.program, run.sys, run.ts);
    EXPECT_EQ(v.status, Status::Fail);
    ASSERT_FALSE(v.violations.empty());
    EXPECT_EQ(v.violations[0].kind, "uncovered_state");
    EXPECT_EQ(v.violations[0].pc, 0x10u);
    EXPECT_EQ(v.violations[0].via, Pc{0x0a});
}

TEST(oracle, removed_edge_is_detected)
{
    Pipeline run(decode_bytecode(shared_fn_hex));
    run.cfg.jump_edges.erase({{0x05, 1}, {0x10, 2}});
    const auto v = check_walk(run.program, run.cfg, run.sys, run.ts);
    EXPECT_EQ(v.status, Status::Fail);
    ASSERT_EQ(v.violations.size(), 1u);
    EXPECT_EQ(v.violations[0].kind, "no_walk");
    EXPECT_EQ(v.violations[0].pc, 0x10u);
    EXPECT_NE(v.violations[0].detail.find("0x0 -> 0x10 -> 0x5 -> 0x10"), std::string::npos)
        << v.violations[0].detail;
}

TEST(oracle, verdict_json)
{
    Pipeline run(decode_bytecode(linear_hex));
    const auto doc = nlohmann::json::parse(check_walk(run.program, run.cfg, run.sys, run.ts).to_json());
    EXPECT_EQ(doc.at("verdict"), "pass");
    EXPECT_TRUE(doc.at("violations").empty());
    EXPECT_EQ(doc.at("coverage").at("states"), 4);
    EXPECT_EQ(doc.at("coverage").at("truncated"), false);
}

TEST(oracle, generator_round_trip_and_determinism)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto g = generate_program(seed, GeneratorShape{});
        EXPECT_EQ(encode(decode_bytecode(to_hex(g.code))), g.code);
        EXPECT_EQ(generate_program(seed, GeneratorShape{}).code, g.code);
    }
}

TEST(oracle, generator_smoke_minimal)
{
    Pipeline run(generate_program(0, GeneratorShape::minimal()).program);
    EXPECT_FALSE(run.ts.truncated);
    EXPECT_TRUE(check_jumps_to(run.program, run.sys, run.ts).passed());
    EXPECT_TRUE(check_walk(run.program, run.cfg, run.sys, run.ts).passed());
}

TEST(oracle, concrete_transitions_agree_with_lambda)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const auto g = generate_program(seed, GeneratorShape{});
        const auto ts = enumerate(g.program, bound, bound);
        ASSERT_FALSE(ts.truncated);
        for (const auto& t : ts.transitions)
        {
            const Instruction* instr = g.program.at(t.from.pc);
            EXPECT_EQ(lambda(g.program, *instr, t.from.stack), t.to.stack);
        }
    }
}
