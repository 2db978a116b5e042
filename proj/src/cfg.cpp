// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/cfg.hpp>
#include <jumpgraph/transfer.hpp>

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <sstream>

namespace jumpgraph
{
std::string ReplicaId::to_string() const
{
    return "B_" + hex_pc(block_start) + ":" + std::to_string(id);
}

std::set<ReplicaId> Cfg::successors(const ReplicaId& v) const
{
    std::set<ReplicaId> out;
    for (const auto* edges : {&jump_edges, &next_edges})
        for (auto it = edges->lower_bound({v, ReplicaId{0, 0}});
             it != edges->end() && it->first == v; ++it)
            out.insert(it->second);
    return out;
}

std::set<ReplicaId> Cfg::reachable() const
{
    std::set<ReplicaId> seen;
    if (!vertices.contains(entry))
        return seen;
    std::deque<ReplicaId> todo{entry};
    seen.insert(entry);
    while (!todo.empty())
    {
        const auto v = todo.front();
        todo.pop_front();
        for (const auto& w : successors(v))
            if (seen.insert(w).second)
                todo.push_back(w);
    }
    return seen;
}

std::vector<StackState> entry_contexts(const EquationSystem& sys, Pc block_start)
{
    std::vector<StackState> keys;
    for (const auto& [key, image] : sys.at(block_start).map())
        keys.push_back(key);
    std::sort(keys.begin(), keys.end(), ContextOrder{});
    return keys;
}

unsigned get_id(Pc block_start, const StackState& s, const EquationSystem& sys)
{
    const auto keys = entry_contexts(sys, block_start);
    const auto it = std::find(keys.begin(), keys.end(), s);
    if (it == keys.end())
        throw LookupError(s.to_string() + " is not an entry context of block " +
                              hex_pc(block_start),
            block_start);
    return static_cast<unsigned>(it - keys.begin()) + 1;
}

StackState get_stack(Pc block_start, unsigned id, const EquationSystem& sys)
{
    const auto keys = entry_contexts(sys, block_start);
    if (id == 0 || id > keys.size())
        throw LookupError("block " + hex_pc(block_start) + " has no replica " + std::to_string(id),
            block_start);
    return keys[id - 1];
}

std::set<std::uint32_t> get_sizes(Pc pc, unsigned id, const EquationSystem& sys)
{
    const Block& block = sys.blocks.block_at(pc);
    const StackState context = get_stack(block.start_pc, id, sys);
    const auto states = img(sys.at(pc), context);
    if (states.empty())
        throw LookupError("context " + context.to_string() + " does not reach pc " + hex_pc(pc),
            pc);
    std::set<std::uint32_t> heights;
    for (const auto& s : states)
        heights.insert(s.height());
    return heights;
}

std::uint32_t get_size(Pc pc, unsigned id, const EquationSystem& sys)
{
    const auto heights = get_sizes(pc, id, sys);
    if (heights.size() != 1)
        throw LookupError("ambiguous stack height at " + hex_pc(pc) + " for replica " +
                              std::to_string(id) + " (" + std::to_string(heights.size()) +
                              " heights)",
            pc);
    return *heights.begin();
}

namespace
{
unsigned target_id(const EquationSystem& sys, Pc from, Pc target, const StackState& s)
{
    try
    {
        return get_id(target, s, sys);
    }
    catch (const LookupError&)
    {
        throw SoundnessViolation("edge from " + hex_pc(from) + " reaches context " +
                                     s.to_string() + " missing from X_" + hex_pc(target),
            from);
    }
}
}  // namespace

Cfg build_cfg(const EquationSystem& sys)
{
    Cfg cfg;
    const Program& p = sys.program;

    for (const auto& [start, block] : sys.blocks.blocks)
    {
        const auto keys = entry_contexts(sys, start);
        for (unsigned id = 1; id <= keys.size(); ++id)
            cfg.vertices.insert({start, id});
    }

    for (const auto& [start, block] : sys.blocks.blocks)
    {
        const Instruction& last = block.last();
        const Pc j = last.pc;
        const bool is_jump = last.kind() == OpKind::Jump || last.kind() == OpKind::JumpI;
        const bool has_next = last.kind() != OpKind::Jump && last.kind() != OpKind::End &&
                              p.at(block.next_pc()) != nullptr;
        if (!is_jump && !has_next)
            continue;

        const auto keys = entry_contexts(sys, start);
        for (unsigned id = 1; id <= keys.size(); ++id)
        {
            const ReplicaId from{start, id};
            for (const auto& s : img(sys.at(j), keys[id - 1]))
            {
                const StackState after = lambda(p, last, s);
                if (is_jump)
                {
                    const DestSet* top = s.top();
                    if (top == nullptr)
                        throw UnresolvedJump("jump at " + hex_pc(j) + " has untracked target", j);
                    for (const Pc d : *top)
                        cfg.jump_edges.insert({from, {d, target_id(sys, j, d, after)}});
                }
                if (has_next)
                {
                    const Pc d = block.next_pc();
                    cfg.next_edges.insert({from, {d, target_id(sys, j, d, after)}});
                }
            }
        }
    }
    return cfg;
}

namespace
{
std::string dot_name(const ReplicaId& r)
{
    std::string hex = hex_pc(r.block_start).substr(2);
    return "B_" + hex + "_" + std::to_string(r.id);
}

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (const char c : s)
    {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

nlohmann::json replica_json(const ReplicaId& r)
{
    return {{"block", r.block_start}, {"id", r.id}};
}

ReplicaId replica_from_json(const nlohmann::json& j)
{
    return {j.at("block").get<Pc>(), j.at("id").get<unsigned>()};
}

nlohmann::json stack_json(const StackState& s)
{
    nlohmann::json sigma = nlohmann::json::object();
    for (const auto& [pos, dests] : s.sigma())
        sigma[std::to_string(pos)] = std::vector<Pc>(dests.begin(), dests.end());
    return {{"n", s.height()}, {"sigma", sigma}};
}
}  // namespace

std::string export_dot(const Cfg& cfg, const EquationSystem& sys)
{
    std::ostringstream out;
    out << "digraph cfg {\n";
    for (const auto& v : cfg.vertices)
    {
        const Block& b = sys.blocks.block_at(v.block_start);
        std::string label = v.to_string() + " [" + hex_pc(b.start_pc) + ".." + hex_pc(b.end_pc) +
                            "]\\l";
        for (const auto& instr : b.body)
            label += hex_pc(instr.pc) + ": " + instr.to_string() + "\\l";
        out << "  " << dot_name(v) << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (const auto& [from, to] : cfg.jump_edges)
        out << "  " << dot_name(from) << " -> " << dot_name(to) << ";\n";
    for (const auto& [from, to] : cfg.next_edges)
        out << "  " << dot_name(from) << " -> " << dot_name(to) << " [style=dashed];\n";
    out << "}\n";
    return out.str();
}

std::string export_json(const Cfg& cfg, const EquationSystem& sys)
{
    using nlohmann::json;
    const Program& p = sys.program;

    json blocks = json::array();
    for (const auto& [start, b] : sys.blocks.blocks)
    {
        json instrs = json::array();
        for (const auto& instr : b.body)
        {
            json ji = {{"pc", instr.pc}, {"op", std::string(instr.spec->mnemonic)}};
            if (instr.immediate)
                ji["immediate"] = instr.immediate->to_hex(instr.spec->immediate_len);
            instrs.push_back(std::move(ji));
        }
        blocks.push_back({{"start", b.start_pc}, {"end", b.end_pc},
            {"terminator", std::string(to_string(b.terminator))}, {"instructions", instrs}});
    }

    json vertices = json::array();
    for (const auto& v : cfg.vertices)
    {
        json jv = replica_json(v);
        jv["entry_stack"] = stack_json(get_stack(v.block_start, v.id, sys));
        vertices.push_back(std::move(jv));
    }

    json edges = json::array();
    for (const auto& [kind, set] :
        {std::pair{"jump", &cfg.jump_edges}, std::pair{"next", &cfg.next_edges}})
        for (const auto& [from, to] : *set)
            edges.push_back({{"kind", kind}, {"from", replica_json(from)}, {"to", replica_json(to)}});

    json doc = {
        {"format_version", 1},
        {"program",
            {{"code_length", p.code_len},
                {"jumpdests", std::vector<Pc>(p.jumpdests.begin(), p.jumpdests.end())},
                {"unreached", std::vector<Pc>(sys.blocks.unreached.begin(),
                                  sys.blocks.unreached.end())}}},
        {"blocks", blocks},
        {"entry", replica_json(cfg.entry)},
        {"vertices", vertices},
        {"edges", edges},
    };
    return doc.dump(2) + "\n";
}

Cfg parse_cfg_json(std::string_view json_text)
{
    const auto doc = nlohmann::json::parse(json_text);
    if (doc.at("format_version").get<int>() != 1)
        throw LookupError("unsupported format_version " + doc.at("format_version").dump());
    Cfg cfg;
    cfg.entry = replica_from_json(doc.at("entry"));
    for (const auto& v : doc.at("vertices"))
        cfg.vertices.insert(replica_from_json(v));
    for (const auto& e : doc.at("edges"))
    {
        const Edge edge{replica_from_json(e.at("from")), replica_from_json(e.at("to"))};
        const auto kind = e.at("kind").get<std::string>();
        if (kind == "jump")
            cfg.jump_edges.insert(edge);
        else if (kind == "next")
            cfg.next_edges.insert(edge);
        else
            throw LookupError("unknown edge kind '" + kind + "'");
    }
    return cfg;
}
}  // namespace jumpgraph
