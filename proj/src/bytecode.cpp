// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/bytecode.hpp>

#include <algorithm>
#include <cstdio>

namespace jumpgraph
{
std::string hex_pc(Pc pc)
{
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(pc));
    return buf;
}

namespace
{
struct Table
{
    std::array<OpSpec, 256> specs{};
    // Backing storage for generated names (PUSH1, DUP3, ...).
    std::array<std::string, 256> names{};

    void set(std::uint8_t b, std::string_view name, unsigned delta, unsigned alpha,
        OpKind kind = OpKind::Plain, unsigned imm = 0)
    {
        specs[b] = OpSpec{name, b, static_cast<std::uint16_t>(delta),
            static_cast<std::uint16_t>(alpha), static_cast<std::uint8_t>(imm), kind};
    }

    void set_generated(std::uint8_t b, std::string name, unsigned delta, unsigned alpha,
        OpKind kind, unsigned imm = 0)
    {
        names[b] = std::move(name);
        set(b, names[b], delta, alpha, kind, imm);
    }

    Table()
    {
        for (unsigned b = 0; b < 256; ++b)
            set(static_cast<std::uint8_t>(b), "INVALID", 0, 0, OpKind::End);

        set(0x00, "STOP", 0, 0, OpKind::End);
        set(0x01, "ADD", 2, 1);
        set(0x02, "MUL", 2, 1);
        set(0x03, "SUB", 2, 1);
        set(0x04, "DIV", 2, 1);
        set(0x05, "SDIV", 2, 1);
        set(0x06, "MOD", 2, 1);
        set(0x07, "SMOD", 2, 1);
        set(0x08, "ADDMOD", 3, 1);
        set(0x09, "MULMOD", 3, 1);
        set(0x0a, "EXP", 2, 1);
        set(0x0b, "SIGNEXTEND", 2, 1);

        set(0x10, "LT", 2, 1);
        set(0x11, "GT", 2, 1);
        set(0x12, "SLT", 2, 1);
        set(0x13, "SGT", 2, 1);
        set(0x14, "EQ", 2, 1);
        set(0x15, "ISZERO", 1, 1);
        set(0x16, "AND", 2, 1);
        set(0x17, "OR", 2, 1);
        set(0x18, "XOR", 2, 1);
        set(0x19, "NOT", 1, 1);
        set(0x1a, "BYTE", 2, 1);
        set(0x1b, "SHL", 2, 1);
        set(0x1c, "SHR", 2, 1);
        set(0x1d, "SAR", 2, 1);

        set(0x20, "KECCAK256", 2, 1);

        set(0x30, "ADDRESS", 0, 1);
        set(0x31, "BALANCE", 1, 1);
        set(0x32, "ORIGIN", 0, 1);
        set(0x33, "CALLER", 0, 1);
        set(0x34, "CALLVALUE", 0, 1);
        set(0x35, "CALLDATALOAD", 1, 1);
        set(0x36, "CALLDATASIZE", 0, 1);
        set(0x37, "CALLDATACOPY", 3, 0);
        set(0x38, "CODESIZE", 0, 1);
        set(0x39, "CODECOPY", 3, 0);
        set(0x3a, "GASPRICE", 0, 1);
        set(0x3b, "EXTCODESIZE", 1, 1);
        set(0x3c, "EXTCODECOPY", 4, 0);
        set(0x3d, "RETURNDATASIZE", 0, 1);
        set(0x3e, "RETURNDATACOPY", 3, 0);
        set(0x3f, "EXTCODEHASH", 1, 1);

        set(0x40, "BLOCKHASH", 1, 1);
        set(0x41, "COINBASE", 0, 1);
        set(0x42, "TIMESTAMP", 0, 1);
        set(0x43, "NUMBER", 0, 1);
        set(0x44, "PREVRANDAO", 0, 1);
        set(0x45, "GASLIMIT", 0, 1);
        set(0x46, "CHAINID", 0, 1);
        set(0x47, "SELFBALANCE", 0, 1);
        set(0x48, "BASEFEE", 0, 1);
        set(0x49, "BLOBHASH", 1, 1);
        set(0x4a, "BLOBBASEFEE", 0, 1);

        set(0x50, "POP", 1, 0);
        set(0x51, "MLOAD", 1, 1);
        set(0x52, "MSTORE", 2, 0);
        set(0x53, "MSTORE8", 2, 0);
        set(0x54, "SLOAD", 1, 1);
        set(0x55, "SSTORE", 2, 0);
        set(0x56, "JUMP", 1, 0, OpKind::Jump);
        set(0x57, "JUMPI", 2, 0, OpKind::JumpI);
        set(0x58, "PC", 0, 1);
        set(0x59, "MSIZE", 0, 1);
        set(0x5a, "GAS", 0, 1);
        set(0x5b, "JUMPDEST", 0, 0, OpKind::JumpDest);
        set(0x5c, "TLOAD", 1, 1);
        set(0x5d, "TSTORE", 2, 0);
        set(0x5e, "MCOPY", 3, 0);
        set(0x5f, "PUSH0", 0, 1, OpKind::Push);

        for (unsigned x = 1; x <= 32; ++x)
            set_generated(static_cast<std::uint8_t>(0x5f + x), "PUSH" + std::to_string(x), 0, 1,
                OpKind::Push, x);
        for (unsigned x = 1; x <= 16; ++x)
        {
            set_generated(static_cast<std::uint8_t>(0x7f + x), "DUP" + std::to_string(x), x,
                x + 1, OpKind::Dup);
            set_generated(static_cast<std::uint8_t>(0x8f + x), "SWAP" + std::to_string(x), x + 1,
                x + 1, OpKind::Swap);
        }
        for (unsigned k = 0; k <= 4; ++k)
            set_generated(
                static_cast<std::uint8_t>(0xa0 + k), "LOG" + std::to_string(k), 2 + k, 0,
                OpKind::Plain);

        set(0xf0, "CREATE", 3, 1);
        set(0xf1, "CALL", 7, 1);
        set(0xf2, "CALLCODE", 7, 1);
        set(0xf3, "RETURN", 2, 0, OpKind::End);
        set(0xf4, "DELEGATECALL", 6, 1);
        set(0xf5, "CREATE2", 4, 1);
        set(0xfa, "STATICCALL", 6, 1);
        set(0xfd, "REVERT", 2, 0, OpKind::End);
        set(0xfe, "INVALID", 0, 0, OpKind::End);
        set(0xff, "SELFDESTRUCT", 1, 0, OpKind::End);
    }
};

const Table& table()
{
    static const Table t;
    return t;
}

int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

bool is_space(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
}  // namespace

unsigned OpSpec::index() const noexcept
{
    switch (kind)
    {
    case OpKind::Push:
        return immediate_len;
    case OpKind::Dup:
        return byte_value - 0x7f;
    case OpKind::Swap:
        return byte_value - 0x8f;
    default:
        return 0;
    }
}

const OpSpec& op_spec(std::uint8_t byte) noexcept
{
    return table().specs[byte];
}

const OpSpec* op_spec(std::string_view mnemonic) noexcept
{
    // INVALID maps to 0xfe, the designated invalid opcode.
    if (mnemonic == "INVALID")
        return &table().specs[0xfe];
    for (const auto& s : table().specs)
        if (s.mnemonic == mnemonic)
            return &s;
    return nullptr;
}

std::optional<Pc> Word::as_pc() const noexcept
{
    for (std::size_t i = 0; i < 24; ++i)
        if (bytes[i] != 0)
            return std::nullopt;
    Pc v = 0;
    for (std::size_t i = 24; i < 32; ++i)
        v = (v << 8) | bytes[i];
    return v;
}

Word Word::from_u64(std::uint64_t v) noexcept
{
    Word w;
    for (std::size_t i = 0; i < 8; ++i)
        w.bytes[31 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    return w;
}

std::string Word::to_hex(std::size_t width_bytes) const
{
    return "0x" + jumpgraph::to_hex(std::span{bytes}.subspan(32 - width_bytes));
}

std::string Instruction::to_string() const
{
    std::string s{spec->mnemonic};
    if (immediate)
        s += " " + immediate->to_hex(spec->immediate_len);
    return s;
}

std::size_t instruction_size(const Instruction& instr) noexcept
{
    return 1 + instr.spec->immediate_len;
}

std::optional<Pc> pushed_pc(const Instruction& instr) noexcept
{
    if (instr.kind() != OpKind::Push)
        return std::nullopt;
    if (!instr.immediate)
        return Pc{0};
    return instr.immediate->as_pc();
}

std::optional<std::size_t> Program::index_of(Pc pc) const noexcept
{
    const auto it = std::lower_bound(instructions.begin(), instructions.end(), pc,
        [](const Instruction& i, Pc v) { return i.pc < v; });
    if (it == instructions.end() || it->pc != pc)
        return std::nullopt;
    return static_cast<std::size_t>(it - instructions.begin());
}

const Instruction* Program::at(Pc pc) const noexcept
{
    const auto idx = index_of(pc);
    return idx ? &instructions[*idx] : nullptr;
}

std::vector<std::uint8_t> parse_hex(std::string_view hex_text)
{
    std::string digits;
    std::vector<std::size_t> offsets;
    std::size_t start = 0;
    while (start < hex_text.size() && is_space(hex_text[start]))
        ++start;
    if (hex_text.substr(start, 2) == "0x" || hex_text.substr(start, 2) == "0X")
        start += 2;
    for (std::size_t i = start; i < hex_text.size(); ++i)
    {
        const char c = hex_text[i];
        if (is_space(c))
            continue;
        if (hex_value(c) < 0)
            throw DecodeError("non-hex character '" + std::string(1, c) + "' at offset " +
                                  std::to_string(i),
                i);
        digits.push_back(c);
        offsets.push_back(i);
    }
    if (digits.size() % 2 != 0)
        throw DecodeError("odd number of hex digits; dangling digit at offset " +
                              std::to_string(offsets.back()),
            offsets.back());

    std::vector<std::uint8_t> bytes(digits.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = static_cast<std::uint8_t>(hex_value(digits[2 * i]) * 16 +
                                             hex_value(digits[2 * i + 1]));
    return bytes;
}

Program decode(std::span<const std::uint8_t> code)
{
    Program p;
    p.code_len = code.size();
    for (std::size_t pc = 0; pc < code.size();)
    {
        Instruction instr;
        instr.pc = pc;
        instr.spec = &op_spec(code[pc]);
        const std::size_t imm = instr.spec->immediate_len;
        if (imm > 0)
        {
            Word w;
            const std::size_t avail = std::min(imm, code.size() - pc - 1);
            // Missing trailing bytes read as zero, as EVM code reads past the end.
            for (std::size_t k = 0; k < avail; ++k)
                w.bytes[32 - imm + k] = code[pc + 1 + k];
            if (avail < imm)
                p.diagnostics.push_back(std::string(instr.spec->mnemonic) + " at " + hex_pc(pc) +
                                        " truncated: " + std::to_string(imm - avail) +
                                        " immediate byte(s) zero-padded");
            instr.immediate = w;
        }
        if (instr.kind() == OpKind::JumpDest)
            p.jumpdests.insert(pc);
        p.instructions.push_back(instr);
        pc += 1 + imm;
    }
    return p;
}

Program decode_bytecode(std::string_view hex_text)
{
    const auto bytes = parse_hex(hex_text);
    return decode(bytes);
}

std::set<Pc> jump_destinations(const Program& p)
{
    return p.jumpdests;
}

std::vector<std::uint8_t> encode(const Program& p)
{
    std::vector<std::uint8_t> out;
    out.reserve(p.code_len);
    for (const auto& instr : p.instructions)
    {
        out.push_back(instr.spec->byte_value);
        if (instr.immediate)
        {
            const auto n = instr.spec->immediate_len;
            for (std::size_t k = 0; k < n; ++k)
                out.push_back(instr.immediate->bytes[32 - n + k]);
        }
    }
    out.resize(std::min(out.size(), p.code_len));
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (const auto b : bytes)
    {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}
}  // namespace jumpgraph
