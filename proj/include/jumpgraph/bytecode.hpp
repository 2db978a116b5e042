// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "error.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jumpgraph
{
/// Opcode classes that matter for block partitioning and the analysis.
enum class OpKind : std::uint8_t
{
    Plain,     ///< Generic instruction, handled by its stack arity only.
    Push,      ///< PUSH0..PUSH32.
    Dup,       ///< DUP1..DUP16.
    Swap,      ///< SWAP1..SWAP16.
    Jump,      ///< JUMP.
    JumpI,     ///< JUMPI.
    JumpDest,  ///< JUMPDEST.
    End,       ///< Halting: STOP, RETURN, REVERT, INVALID, SELFDESTRUCT, unknown bytes.
};

/// Static description of one opcode.
struct OpSpec
{
    std::string_view mnemonic;
    std::uint8_t byte_value = 0;
    std::uint16_t delta = 0;  ///< items consumed
    std::uint16_t alpha = 0;  ///< items produced
    std::uint8_t immediate_len = 0;
    OpKind kind = OpKind::Plain;

    /// x in PUSHx / DUPx / SWAPx, 0 otherwise.
    unsigned index() const noexcept;
};

/// Lookup in the 256-entry opcode table. Undefined bytes map to an INVALID-class spec.
const OpSpec& op_spec(std::uint8_t byte) noexcept;

/// Lookup by mnemonic ("PUSH1", "JUMPDEST", ...). Returns nullptr for unknown names.
const OpSpec* op_spec(std::string_view mnemonic) noexcept;

inline constexpr std::size_t max_stack_height = 1024;

/// A 256-bit big-endian immediate, stored right-aligned.
struct Word
{
    std::array<std::uint8_t, 32> bytes{};

    /// The value as a program counter, or nullopt when it does not fit in 64 bits.
    std::optional<Pc> as_pc() const noexcept;
    static Word from_u64(std::uint64_t v) noexcept;
    std::string to_hex(std::size_t width_bytes) const;

    friend bool operator==(const Word&, const Word&) = default;
};

struct Instruction
{
    Pc pc = 0;
    const OpSpec* spec = nullptr;
    std::optional<Word> immediate;

    OpKind kind() const noexcept { return spec->kind; }
    std::string to_string() const;
};

/// 1 + immediate length.
std::size_t instruction_size(const Instruction& instr) noexcept;

/// The value a push instruction places on the stack (PUSH0 pushes zero).
std::optional<Pc> pushed_pc(const Instruction& instr) noexcept;

struct Program
{
    std::vector<Instruction> instructions;
    std::size_t code_len = 0;
    std::set<Pc> jumpdests;
    std::vector<std::string> diagnostics;

    /// Index of the instruction at pc, or nullopt if pc is not an instruction boundary.
    std::optional<std::size_t> index_of(Pc pc) const noexcept;
    const Instruction* at(Pc pc) const noexcept;
    bool is_jumpdest(Pc pc) const noexcept { return jumpdests.contains(pc); }
};

/// Parse hex text ("0x" prefix and whitespace allowed) into raw bytes.
std::vector<std::uint8_t> parse_hex(std::string_view hex_text);

Program decode(std::span<const std::uint8_t> code);

/// Decode hex text into a program. Throws DecodeError on malformed hex.
Program decode_bytecode(std::string_view hex_text);

/// Set of JUMPDEST program counters.
std::set<Pc> jump_destinations(const Program& p);

/// Re-serialize a decoded program: opcode bytes followed by immediates.
/// A truncated trailing PUSH is emitted at its decoded (padded) width cut back to code_len.
std::vector<std::uint8_t> encode(const Program& p);

std::string to_hex(std::span<const std::uint8_t> bytes);
}  // namespace jumpgraph
