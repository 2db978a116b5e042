// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <jumpgraph/domain.hpp>

#include <random>

namespace jumpgraph::test
{
// PUSH1 03; JUMP; JUMPDEST; STOP
inline constexpr const char* linear_hex = "6003565b00";
// PUSH1 01; PUSH1 06; JUMPI; STOP; JUMPDEST; STOP
inline constexpr const char* branch_hex = "6001600657005b00";
// main: call 0x10 returning to 0x05, call 0x10 returning to 0x0b, STOP;
// INVALID filler; shared block 0x10: JUMPDEST; JUMP
inline constexpr const char* shared_fn_hex = "60056010565b600b6010565b00fefefe5b56";

/// Random small abstract states over a tiny universe so that keys collide often.
class SmallStateGen
{
public:
    explicit SmallStateGen(std::uint64_t seed) : rng_(seed) {}

    StackState stack_state()
    {
        const auto n = static_cast<std::uint32_t>(rng_() % 3);
        StackState::Sigma sigma;
        for (std::uint32_t pos = 0; pos < n; ++pos)
            if (rng_() % 2 == 0)
                sigma[pos] = {static_cast<Pc>(rng_() % 2 == 0 ? 0x10 : 0x20)};
        return StackState{n, sigma};
    }

    AbstractState abstract_state()
    {
        AbstractState pi;
        const auto keys = rng_() % 3;
        for (unsigned k = 0; k < keys; ++k)
        {
            const auto key = stack_state();
            const auto members = 1 + rng_() % 2;
            for (unsigned m = 0; m < members; ++m)
                pi.insert(key, stack_state());
        }
        return pi;
    }

private:
    std::mt19937_64 rng_;
};
}  // namespace jumpgraph::test
