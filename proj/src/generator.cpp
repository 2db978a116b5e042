// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/generator.hpp>

#include <random>

namespace jumpgraph::oracle
{
GeneratorShape GeneratorShape::minimal()
{
    GeneratorShape s;
    s.max_blocks = 8;
    s.functions = 1;
    s.call_sites = 2;
    s.max_call_depth = 1;
    s.max_stack_use = 2;
    s.branches = false;
    s.loops = false;
    s.early_exits = false;
    s.random_calls = false;
    return s;
}

namespace
{
/// Byte emitter with forward-referenced JUMPDEST labels (always PUSH2).
class Assembler
{
public:
    using Label = std::size_t;

    Label new_label()
    {
        defs_.push_back(std::nullopt);
        return defs_.size() - 1;
    }

    void bind(Label l)
    {
        defs_[l] = code_.size();
        op(0x5b);
    }

    void op(std::uint8_t b) { code_.push_back(b); }

    void push1(std::uint8_t v)
    {
        op(0x60);
        op(v);
    }

    void push_label(Label l)
    {
        op(0x61);
        fixups_.emplace_back(code_.size(), l);
        op(0);
        op(0);
    }

    std::vector<std::uint8_t> finish()
    {
        for (const auto& [at, l] : fixups_)
        {
            const Pc target = *defs_[l];
            code_[at] = static_cast<std::uint8_t>(target >> 8);
            code_[at + 1] = static_cast<std::uint8_t>(target);
        }
        return code_;
    }

    std::optional<Pc> position(Label l) const { return defs_[l]; }
    std::size_t label_count() const { return defs_.size(); }

private:
    std::vector<std::uint8_t> code_;
    std::vector<std::optional<Pc>> defs_;
    std::vector<std::pair<std::size_t, Label>> fixups_;
};

constexpr std::uint8_t op_pop = 0x50;
constexpr std::uint8_t op_jump = 0x56;
constexpr std::uint8_t op_jumpi = 0x57;
constexpr std::uint8_t op_stop = 0x00;

std::uint8_t dup(unsigned x) { return static_cast<std::uint8_t>(0x7f + x); }
std::uint8_t swap(unsigned x) { return static_cast<std::uint8_t>(0x8f + x); }

class Generator
{
public:
    Generator(std::uint64_t seed, const GeneratorShape& shape)
      : rng_(seed), shape_(shape), blocks_left_(shape.max_blocks)
    {}

    GeneratedProgram run()
    {
        const unsigned nfun = shape_.functions;
        for (unsigned f = 0; f < nfun; ++f)
            functions_.push_back(asm_.new_label());
        call_counts_.assign(nfun, 0);
        blocks_left_ = blocks_left_ > nfun + 1 ? blocks_left_ - nfun - 1 : 0;

        // main: random body, then enough extra call sites, then halt.
        sequence(0, no_function, 0);
        for (unsigned f = 0; f < nfun; ++f)
            while (call_counts_[f] < shape_.call_sites)
                call(f, 0);
        asm_.op(op_stop);
        if (chance(2))
            for (unsigned k = 0, n = 1 + pick(3); k < n; ++k)
                asm_.op(0xfe);

        for (unsigned f = 0; f < nfun; ++f)
        {
            asm_.bind(functions_[f]);
            // Return address is the only item this body may rely on.
            sequence(1, f, 1);
            asm_.op(op_jump);
        }

        GeneratedProgram g;
        g.code = asm_.finish();
        g.program = decode(g.code);
        for (const auto l : functions_)
            g.function_entries.push_back(*asm_.position(l));
        return g;
    }

private:
    static constexpr unsigned no_function = ~0u;

    unsigned pick(unsigned n) { return n == 0 ? 0 : static_cast<unsigned>(rng_() % n); }
    bool chance(unsigned one_in) { return pick(one_in) == 0; }

    bool take_blocks(unsigned n)
    {
        if (blocks_left_ < n)
            return false;
        blocks_left_ -= n;
        return true;
    }

    /// A stack-neutral run of segments. `height` is the number of items
    /// known to be on the stack (relative to the enclosing body).
    void sequence(unsigned height, unsigned fn, unsigned nesting)
    {
        const unsigned n = 1 + pick(4);
        for (unsigned k = 0; k < n; ++k)
            segment(height, fn, nesting);
    }

    void segment(unsigned height, unsigned fn, unsigned nesting)
    {
        switch (pick(8))
        {
        case 0:
        case 1:
            if (auto callee = pick_callee(fn); callee && take_blocks(1))
                return call(*callee, height);
            break;
        case 2:
            if (shape_.branches && nesting < 3 && take_blocks(3))
                return diamond(height, fn, nesting);
            break;
        case 3:
            if (shape_.loops && nesting < 3 && take_blocks(2))
                return loop(height, fn, nesting);
            break;
        case 4:
            if (shape_.early_exits && take_blocks(2))
                return guard(height);
            break;
        default:
            break;
        }
        filler(height, nesting);
    }

    std::optional<unsigned> pick_callee(unsigned fn)
    {
        const unsigned nfun = shape_.functions;
        if (nfun == 0 || !shape_.random_calls)
            return std::nullopt;
        if (fn == no_function)
            return pick(nfun);
        if (fn + 1 >= nfun || fn + 1 >= shape_.max_call_depth)
            return std::nullopt;
        return fn + 1 + pick(nfun - fn - 1);
    }

    void call(unsigned f, unsigned /*height*/)
    {
        const auto ret = asm_.new_label();
        asm_.push_label(ret);
        asm_.push_label(functions_[f]);
        asm_.op(op_jump);
        asm_.bind(ret);
        ++call_counts_[f];
    }

    void diamond(unsigned height, unsigned fn, unsigned nesting)
    {
        const auto other = asm_.new_label();
        const auto join = asm_.new_label();
        asm_.push1(static_cast<std::uint8_t>(pick(2)));
        asm_.push_label(other);
        asm_.op(op_jumpi);
        sequence(height, fn, nesting + 1);
        asm_.push_label(join);
        asm_.op(op_jump);
        asm_.bind(other);
        sequence(height, fn, nesting + 1);
        asm_.bind(join);  // fallthrough from the second arm
    }

    void loop(unsigned height, unsigned fn, unsigned nesting)
    {
        const auto head = asm_.new_label();
        asm_.bind(head);
        sequence(height, fn, nesting + 1);
        asm_.push1(static_cast<std::uint8_t>(pick(256)));
        asm_.push_label(head);
        asm_.op(op_jumpi);
    }

    void guard(unsigned height)
    {
        (void)height;
        const auto cont = asm_.new_label();
        asm_.push1(1);
        asm_.push_label(cont);
        asm_.op(op_jumpi);
        switch (pick(4))
        {
        case 0:
            asm_.op(op_stop);
            break;
        case 1:
            asm_.op(0xfe);  // INVALID
            break;
        default:
            asm_.push1(0);
            asm_.push1(0);
            asm_.op(pick(2) == 0 ? 0xf3 : 0xfd);  // RETURN / REVERT
            break;
        }
        asm_.bind(cont);
    }

    void filler(unsigned height, unsigned nesting)
    {
        switch (pick(9))
        {
        case 0:
            asm_.push1(static_cast<std::uint8_t>(pick(256)));
            asm_.op(op_pop);
            break;
        case 1:
        {
            static constexpr std::uint8_t binops[] = {0x01, 0x02, 0x03, 0x06, 0x10, 0x11, 0x14,
                0x16, 0x17, 0x1b};
            asm_.push1(static_cast<std::uint8_t>(pick(256)));
            asm_.push1(static_cast<std::uint8_t>(pick(256)));
            asm_.op(binops[pick(std::size(binops))]);
            asm_.op(op_pop);
            break;
        }
        case 2:
            asm_.op(0x36);  // CALLDATASIZE
            asm_.op(op_pop);
            break;
        case 3:
            asm_.push1(static_cast<std::uint8_t>(32 * pick(4)));
            asm_.op(0x51);  // MLOAD
            asm_.op(0x15);  // ISZERO
            asm_.op(op_pop);
            break;
        case 4:
            // Data push of a JUMPDEST address; tracked but never jumped to.
            if (asm_.label_count() > 0)
            {
                asm_.push_label(pick(static_cast<unsigned>(asm_.label_count())));
                asm_.op(op_pop);
                break;
            }
            asm_.push1(0x20);
            asm_.push1(0x00);
            asm_.op(0x52);  // MSTORE
            break;
        case 5:
            if (pick(2) == 0)
            {
                asm_.op(0x7f);  // PUSH32 with a wide immediate
                for (int k = 0; k < 32; ++k)
                    asm_.op(static_cast<std::uint8_t>(pick(256)));
            }
            else
            {
                asm_.op(0x5f);  // PUSH0
            }
            asm_.op(op_pop);
            break;
        case 6:
            if (height > 0)
            {
                asm_.op(dup(1 + pick(height)));
                asm_.op(op_pop);
                break;
            }
            asm_.op(0x58);  // PC
            asm_.op(op_pop);
            break;
        case 7:
            if (height > 0)
            {
                // Move the top item down one slot and back again.
                asm_.push1(static_cast<std::uint8_t>(pick(256)));
                asm_.op(swap(1));
                if (nesting < 4)
                    filler(height + 1, nesting + 1);
                asm_.op(swap(1));
                asm_.op(op_pop);
                break;
            }
            [[fallthrough]];
        default:
            scratch(height);
            break;
        }
    }

    /// Push a few scratch items (some of them addresses), shuffle them with
    /// DUP/SWAP confined to the scratch region, then drop them.
    void scratch(unsigned height)
    {
        const unsigned m = 1 + pick(std::max(1u, shape_.max_stack_use));
        unsigned extra = 0;
        for (unsigned k = 0; k < m; ++k, ++extra)
        {
            if (asm_.label_count() > 0 && chance(2))
                asm_.push_label(pick(static_cast<unsigned>(asm_.label_count())));
            else
                asm_.push1(static_cast<std::uint8_t>(pick(256)));
        }
        for (unsigned k = 0, ops = pick(3); k < ops; ++k)
        {
            if (chance(2) && extra >= 2 && extra <= 17)
                asm_.op(swap(1 + pick(std::min(extra - 1, 16u))));
            else if (extra < 16 + 1)
            {
                asm_.op(dup(1 + pick(std::min(extra, 16u))));
                ++extra;
            }
        }
        for (; extra > 0; --extra)
            asm_.op(op_pop);
        (void)height;
    }

    std::mt19937_64 rng_;
    GeneratorShape shape_;
    unsigned blocks_left_;
    Assembler asm_;
    std::vector<Assembler::Label> functions_;
    std::vector<unsigned> call_counts_;
};
}  // namespace

GeneratedProgram generate_program(std::uint64_t seed, const GeneratorShape& shape)
{
    return Generator{seed, shape}.run();
}
}  // namespace jumpgraph::oracle
