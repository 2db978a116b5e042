// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <jumpgraph/cfg.hpp>
#include <jumpgraph/generator.hpp>

#include <json.hpp>

#include <gtest/gtest.h>

using namespace jumpgraph;
using namespace jumpgraph::test;

namespace
{
using Edges = std::set<Edge>;
using Vertices = std::set<ReplicaId>;

/// Hand-built system for the block at 0x64b reached from two call sites.
EquationSystem paper_system()
{
    std::vector<std::uint8_t> code(0x955, 0x00);
    for (const Pc d : {0x142, 0x64b, 0x954})
        code[d] = 0x5b;
    EquationSystem sys;
    sys.program = decode(code);
    sys.blocks = partition_blocks(sys.program);
    for (const auto& i : sys.program.instructions)
        sys.vars[i.pc] = {};
    const auto k1 = stack(7, {{5, {0x954}}});
    const auto k2 = stack(3, {{1, {0x142}}});
    sys.vars[0x64b] = join(idmap(k1), idmap(k2));
    return sys;
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}
}  // namespace

TEST(cfg, get_id_get_stack_get_size_paper_block)
{
    const auto sys = paper_system();
    const auto k1 = stack(7, {{5, {0x954}}});
    const auto k2 = stack(3, {{1, {0x142}}});
    EXPECT_EQ(get_id(0x64b, k1, sys), 1u);
    EXPECT_EQ(get_id(0x64b, k2, sys), 2u);
    EXPECT_EQ(get_stack(0x64b, 1, sys), k1);
    EXPECT_EQ(get_stack(0x64b, 2, sys), k2);
    EXPECT_EQ(get_size(0x64b, 1, sys), 7u);
    EXPECT_EQ(get_size(0x64b, 2, sys), 3u);
    EXPECT_THROW(get_id(0x64b, StackState{1}, sys), LookupError);
    EXPECT_THROW(get_stack(0x64b, 3, sys), LookupError);
}

TEST(cfg, get_size_ambiguity)
{
    auto sys = paper_system();
    sys.vars[0x64b].insert(stack(3, {{1, {0x142}}}), StackState{9});
    EXPECT_THROW(get_size(0x64b, 2, sys), LookupError);
    EXPECT_EQ(get_sizes(0x64b, 2, sys), (std::set<std::uint32_t>{3, 9}));
}

TEST(cfg, linear)
{
    const auto sys = solve(decode_bytecode(linear_hex));
    const auto cfg = build_cfg(sys);
    EXPECT_EQ(cfg.vertices, (Vertices{{0x00, 1}, {0x03, 1}}));
    EXPECT_EQ(cfg.jump_edges, (Edges{{{0x00, 1}, {0x03, 1}}}));
    EXPECT_TRUE(cfg.next_edges.empty());
    EXPECT_EQ(get_size(0x03, 1, sys), 0u);
    EXPECT_EQ(get_id(0x03, StackState{0}, sys), 1u);
}

TEST(cfg, shared_fn)
{
    const auto sys = solve(decode_bytecode(shared_fn_hex));
    const auto cfg = build_cfg(sys);
    EXPECT_EQ(cfg.vertices,
        (Vertices{{0x00, 1}, {0x05, 1}, {0x0b, 1}, {0x10, 1}, {0x10, 2}}));
    EXPECT_EQ(cfg.jump_edges, (Edges{
                                  {{0x00, 1}, {0x10, 1}},
                                  {{0x10, 1}, {0x05, 1}},
                                  {{0x05, 1}, {0x10, 2}},
                                  {{0x10, 2}, {0x0b, 1}},
                              }));
    EXPECT_TRUE(cfg.next_edges.empty());
    EXPECT_EQ(get_id(0x10, stack(1, {{0, {0x05}}}), sys), 1u);
    EXPECT_EQ(get_id(0x10, stack(1, {{0, {0x0b}}}), sys), 2u);
    EXPECT_EQ(cfg.reachable(), cfg.vertices);
}

TEST(cfg, branch)
{
    const auto sys = solve(decode_bytecode(branch_hex));
    const auto cfg = build_cfg(sys);
    EXPECT_EQ(cfg.vertices, (Vertices{{0x00, 1}, {0x05, 1}, {0x06, 1}}));
    EXPECT_EQ(cfg.jump_edges, (Edges{{{0x00, 1}, {0x06, 1}}}));
    EXPECT_EQ(cfg.next_edges, (Edges{{{0x00, 1}, {0x05, 1}}}));
}

TEST(cfg, fallthrough_edge_into_jumpdest)
{
    const auto sys = solve(decode_bytecode("60005b5000"));
    const auto cfg = build_cfg(sys);
    EXPECT_EQ(cfg.next_edges, (Edges{{{0x00, 1}, {0x02, 1}}}));
}

TEST(cfg, dot_export)
{
    {
        const auto sys = solve(decode_bytecode("00"));
        const auto dot = export_dot(build_cfg(sys), sys);
        EXPECT_EQ(dot.rfind("digraph cfg {", 0), 0u);
        EXPECT_EQ(count(dot, "[label="), 1u);
        EXPECT_EQ(count(dot, "->"), 0u);
    }
    {
        const auto sys = solve(decode_bytecode(linear_hex));
        const auto dot = export_dot(build_cfg(sys), sys);
        EXPECT_EQ(count(dot, "[label="), 2u);
        EXPECT_EQ(count(dot, " -> "), 1u);
        EXPECT_NE(dot.find("B_0_1 -> B_3_1;"), std::string::npos);
        EXPECT_NE(dot.find("JUMPDEST"), std::string::npos);
    }
    {
        const auto sys = solve(decode_bytecode(branch_hex));
        const auto dot = export_dot(build_cfg(sys), sys);
        EXPECT_EQ(count(dot, "[label="), 3u);
        EXPECT_EQ(count(dot, " -> "), 2u);
        EXPECT_EQ(count(dot, "style=dashed"), 1u);
        EXPECT_NE(dot.find("B_0_1 -> B_5_1 [style=dashed];"), std::string::npos);
    }
}

TEST(cfg, json_export_round_trip)
{
    for (const char* hex : {"00", linear_hex, branch_hex, shared_fn_hex})
    {
        const auto sys = solve(decode_bytecode(hex));
        const auto cfg = build_cfg(sys);
        const auto text = export_json(cfg, sys);
        EXPECT_EQ(text, export_json(build_cfg(solve(decode_bytecode(hex))), sys));
        EXPECT_EQ(parse_cfg_json(text), cfg) << hex;

        const auto doc = nlohmann::json::parse(text);
        EXPECT_EQ(doc.at("format_version"), 1);
        EXPECT_EQ(doc.at("vertices").size(), cfg.vertices.size());
    }
    const auto sys = solve(decode_bytecode(shared_fn_hex));
    const auto doc = nlohmann::json::parse(export_json(build_cfg(sys), sys));
    EXPECT_EQ(doc.at("vertices").size(), 5u);
    EXPECT_EQ(doc.at("program").at("jumpdests"), nlohmann::json::parse("[5, 11, 16]"));
    const auto& v = doc.at("vertices");
    // Replica 2 of block 0x10 was entered with 0x0b on the stack.
    bool found = false;
    for (const auto& vertex : v)
        if (vertex.at("block") == 16 && vertex.at("id") == 2)
        {
            found = true;
            EXPECT_EQ(vertex.at("entry_stack").at("n"), 1);
            EXPECT_EQ(vertex.at("entry_stack").at("sigma").at("0"), nlohmann::json::parse("[11]"));
        }
    EXPECT_TRUE(found);
}

TEST(cfg, structural_properties_on_generated_programs)
{
    oracle::GeneratorShape shape;
    for (std::uint64_t seed = 0; seed < 150; ++seed)
    {
        const auto g = oracle::generate_program(seed, shape);
        const auto sys = solve(g.program);
        const auto cfg = build_cfg(sys);

        for (const auto& [start, block] : sys.blocks.blocks)
        {
            const auto n = sys.at(start).size();
            std::size_t replicas = 0;
            for (const auto& v : cfg.vertices)
                replicas += v.block_start == start;
            EXPECT_EQ(replicas, n);
            for (unsigned id = 1; id <= n; ++id)
                EXPECT_EQ(get_id(start, get_stack(start, id, sys), sys), id);
        }
        for (const auto& [from, to] : cfg.jump_edges)
        {
            EXPECT_TRUE(cfg.vertices.contains(from));
            EXPECT_TRUE(cfg.vertices.contains(to));
            EXPECT_TRUE(g.program.is_jumpdest(to.block_start));
        }
        for (const auto& [from, to] : cfg.next_edges)
        {
            EXPECT_TRUE(cfg.vertices.contains(from));
            EXPECT_TRUE(cfg.vertices.contains(to));
            EXPECT_EQ(to.block_start, sys.blocks.block_at(from.block_start).next_pc());
        }
        EXPECT_EQ(cfg.reachable(), cfg.vertices) << "seed " << seed;
    }
}
