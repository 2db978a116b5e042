// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "error.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace jumpgraph
{
/// Set of jump destinations held in one stack slot.
using DestSet = std::set<Pc>;

/// Stack state <n, sigma>: height n and a partial map from stack positions
/// (0 is the bottom, n-1 the top) to the non-empty sets of jump destinations
/// known to be stored there.
class StackState
{
public:
    using Sigma = std::map<std::uint32_t, DestSet>;

    StackState() = default;
    explicit StackState(std::uint32_t height, Sigma sigma = {});

    std::uint32_t height() const noexcept { return n_; }
    const Sigma& sigma() const noexcept { return sigma_; }

    /// Destinations at position pos, or nullptr when untracked.
    const DestSet* at(std::uint32_t pos) const noexcept;
    const DestSet* top() const noexcept { return n_ == 0 ? nullptr : at(n_ - 1); }

    /// Copy with position pos mapped to dests (removed when dests is empty).
    StackState with(std::uint32_t pos, DestSet dests) const;

    std::string to_string() const;

    friend auto operator<=>(const StackState&, const StackState&) = default;
    friend bool operator==(const StackState&, const StackState&) = default;

private:
    std::uint32_t n_ = 0;
    Sigma sigma_;
};

/// Convenience: StackState(n, {{pos, {d...}}, ...}).
StackState stack(std::uint32_t n, std::initializer_list<std::pair<const std::uint32_t, DestSet>> sigma = {});

/// Ordering used to number the entry contexts of a block: taller stacks first,
/// then sigma lexicographically.
struct ContextOrder
{
    bool operator()(const StackState& a, const StackState& b) const noexcept;
};

/// Abstract state pi: entry stack state -> set of current stack states.
class AbstractState
{
public:
    using Map = std::map<StackState, std::set<StackState>>;

    AbstractState() = default;
    explicit AbstractState(Map m);

    const Map& map() const noexcept { return map_; }
    bool empty() const noexcept { return map_.empty(); }
    std::size_t size() const noexcept { return map_.size(); }

    /// Adds every element of states under key; returns true when something was new.
    bool insert(const StackState& key, const std::set<StackState>& states);
    bool insert(const StackState& key, const StackState& state);
    /// Removes a key; returns true when it was present.
    bool erase(const StackState& key);
    /// Joins other into *this; returns true when *this grew.
    bool absorb(const AbstractState& other);

    /// Top is only a marker; the solver never builds it.
    bool is_top() const noexcept { return top_; }
    static AbstractState top();

    std::string to_string() const;

    friend bool operator==(const AbstractState&, const AbstractState&) = default;

private:
    Map map_;
    bool top_ = false;
};

AbstractState bottom();

/// pi(s) if s is in dom(pi), the empty set otherwise.
std::set<StackState> img(const AbstractState& pi, const StackState& s);

AbstractState join(const AbstractState& p1, const AbstractState& p2);

/// Domain inclusion plus pointwise image inclusion.
bool leq(const AbstractState& p1, const AbstractState& p2);

/// Single-context map {s -> {s}}.
AbstractState idmap(const StackState& s);
}  // namespace jumpgraph
