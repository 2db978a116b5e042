// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace jumpgraph
{
/// Program counter: byte offset into the code.
using Pc = std::uint64_t;

std::string hex_pc(Pc pc);

/// Base of every error raised by the analysis pipeline.
class Error : public std::runtime_error
{
public:
    Error(std::string kind, std::string message, std::optional<Pc> pc = std::nullopt)
      : std::runtime_error(std::move(message)), kind_(std::move(kind)), pc_(pc)
    {}

    const std::string& kind() const noexcept { return kind_; }
    std::optional<Pc> pc() const noexcept { return pc_; }

private:
    std::string kind_;
    std::optional<Pc> pc_;
};

/// Malformed hex input. pc() holds the offending character offset.
class DecodeError : public Error
{
public:
    DecodeError(std::string message, std::size_t offset)
      : Error("DecodeError", std::move(message), offset)
    {}
};

/// Stack underflow or overflow while applying an instruction.
class ArityError : public Error
{
public:
    ArityError(std::string message, Pc pc) : Error("ArityError", std::move(message), pc) {}
};

/// A jump whose target is not a tracked constant on the stack.
class UnresolvedJump : public Error
{
public:
    UnresolvedJump(std::string message, Pc pc) : Error("UnresolvedJump", std::move(message), pc)
    {}
};

/// A tracked destination that is not a JUMPDEST.
class InvalidTarget : public Error
{
public:
    InvalidTarget(std::string message, Pc pc, Pc target)
      : Error("InvalidTarget", std::move(message), pc), target_(target)
    {}
    Pc target() const noexcept { return target_; }

private:
    Pc target_;
};

/// Lookup of a block, replica or context that does not exist.
class LookupError : public Error
{
public:
    explicit LookupError(std::string message, std::optional<Pc> pc = std::nullopt)
      : Error("LookupError", std::move(message), pc)
    {}
};

/// The solved system and the graph disagree; signals a bug in construction.
class SoundnessViolation : public Error
{
public:
    SoundnessViolation(std::string message, Pc pc)
      : Error("SoundnessViolation", std::move(message), pc)
    {}
};
}  // namespace jumpgraph
