// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "equations.hpp"

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jumpgraph
{
/// Replica B_{i:id} of block i specialised to one entry stack state.
struct ReplicaId
{
    Pc block_start = 0;
    unsigned id = 0;  ///< 1-based

    std::string to_string() const;  ///< "B_0x10:2"
    friend auto operator<=>(const ReplicaId&, const ReplicaId&) = default;
};

using Edge = std::pair<ReplicaId, ReplicaId>;

struct Cfg
{
    std::set<ReplicaId> vertices;
    std::set<Edge> jump_edges;
    std::set<Edge> next_edges;
    ReplicaId entry{0, 1};

    std::set<ReplicaId> successors(const ReplicaId& v) const;
    /// Vertices reachable from entry.
    std::set<ReplicaId> reachable() const;

    friend bool operator==(const Cfg&, const Cfg&) = default;
};

/// Entry contexts of block i in numbering order (id k is element k-1).
std::vector<StackState> entry_contexts(const EquationSystem& sys, Pc block_start);

unsigned get_id(Pc block_start, const StackState& s, const EquationSystem& sys);
StackState get_stack(Pc block_start, unsigned id, const EquationSystem& sys);

/// All heights reached at pc under the entry context of replica id.
std::set<std::uint32_t> get_sizes(Pc pc, unsigned id, const EquationSystem& sys);
/// The unique height at pc under replica id. Throws LookupError when the
/// context does not reach pc or when several heights coexist.
std::uint32_t get_size(Pc pc, unsigned id, const EquationSystem& sys);

Cfg build_cfg(const EquationSystem& sys);

std::string export_dot(const Cfg& cfg, const EquationSystem& sys);
std::string export_json(const Cfg& cfg, const EquationSystem& sys);
/// Rebuilds the graph part of an export_json document.
Cfg parse_cfg_json(std::string_view json_text);
}  // namespace jumpgraph
