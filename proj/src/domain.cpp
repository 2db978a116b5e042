// jumpgraph: stack-sensitive control-flow graphs for EVM bytecode
// Copyright 2026 The jumpgraph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <jumpgraph/bytecode.hpp>
#include <jumpgraph/domain.hpp>

#include <algorithm>

namespace jumpgraph
{
StackState::StackState(std::uint32_t height, Sigma sigma) : n_(height), sigma_(std::move(sigma))
{
    if (n_ > max_stack_height)
        throw ArityError("stack height " + std::to_string(n_) + " exceeds 1024", 0);
    for (auto it = sigma_.begin(); it != sigma_.end();)
    {
        if (it->first >= n_)
            throw std::invalid_argument("stack position s" + std::to_string(it->first) +
                                        " outside a stack of height " + std::to_string(n_));
        if (it->second.empty())
            it = sigma_.erase(it);
        else
            ++it;
    }
}

const DestSet* StackState::at(std::uint32_t pos) const noexcept
{
    const auto it = sigma_.find(pos);
    return it == sigma_.end() ? nullptr : &it->second;
}

StackState StackState::with(std::uint32_t pos, DestSet dests) const
{
    StackState r = *this;
    if (dests.empty())
        r.sigma_.erase(pos);
    else
        r.sigma_[pos] = std::move(dests);
    return r;
}

std::string StackState::to_string() const
{
    std::string s = "<" + std::to_string(n_) + ",{";
    bool first_pos = true;
    for (const auto& [pos, dests] : sigma_)
    {
        if (!first_pos)
            s += ",";
        first_pos = false;
        s += "s" + std::to_string(pos) + "->";
        if (dests.size() == 1)
            s += hex_pc(*dests.begin());
        else
        {
            s += "{";
            bool first = true;
            for (const auto d : dests)
            {
                if (!first)
                    s += ",";
                first = false;
                s += hex_pc(d);
            }
            s += "}";
        }
    }
    return s + "}>";
}

StackState stack(std::uint32_t n, std::initializer_list<std::pair<const std::uint32_t, DestSet>> sigma)
{
    return StackState{n, StackState::Sigma(sigma)};
}

bool ContextOrder::operator()(const StackState& a, const StackState& b) const noexcept
{
    if (a.height() != b.height())
        return a.height() > b.height();
    return a.sigma() < b.sigma();
}

AbstractState::AbstractState(Map m) : map_(std::move(m))
{
    for (auto it = map_.begin(); it != map_.end();)
        it = it->second.empty() ? map_.erase(it) : std::next(it);
}

bool AbstractState::insert(const StackState& key, const std::set<StackState>& states)
{
    if (states.empty())
        return false;
    auto& image = map_[key];
    const auto before = image.size();
    image.insert(states.begin(), states.end());
    return image.size() != before;
}

bool AbstractState::insert(const StackState& key, const StackState& state)
{
    return map_[key].insert(state).second;
}

bool AbstractState::erase(const StackState& key)
{
    return map_.erase(key) > 0;
}

bool AbstractState::absorb(const AbstractState& other)
{
    if (top_)
        return false;
    if (other.top_)
    {
        *this = top();
        return true;
    }
    bool grew = false;
    for (const auto& [key, image] : other.map_)
        grew |= insert(key, image);
    return grew;
}

AbstractState AbstractState::top()
{
    AbstractState t;
    t.top_ = true;
    return t;
}

std::string AbstractState::to_string() const
{
    if (top_)
        return "TOP";
    std::string s = "{";
    bool first_key = true;
    for (const auto& [key, image] : map_)
    {
        if (!first_key)
            s += ", ";
        first_key = false;
        s += key.to_string() + " -> {";
        bool first = true;
        for (const auto& st : image)
        {
            if (!first)
                s += ", ";
            first = false;
            s += st.to_string();
        }
        s += "}";
    }
    return s + "}";
}

AbstractState bottom()
{
    return {};
}

std::set<StackState> img(const AbstractState& pi, const StackState& s)
{
    const auto it = pi.map().find(s);
    return it == pi.map().end() ? std::set<StackState>{} : it->second;
}

AbstractState join(const AbstractState& p1, const AbstractState& p2)
{
    AbstractState r = p1;
    r.absorb(p2);
    return r;
}

bool leq(const AbstractState& p1, const AbstractState& p2)
{
    if (p2.is_top())
        return true;
    if (p1.is_top())
        return false;
    const auto& m2 = p2.map();
    for (const auto& [key, image] : p1.map())
    {
        const auto it = m2.find(key);
        if (it == m2.end())
            return false;
        if (!std::includes(it->second.begin(), it->second.end(), image.begin(), image.end()))
            return false;
    }
    return true;
}

AbstractState idmap(const StackState& s)
{
    AbstractState r;
    r.insert(s, s);
    return r;
}
}  // namespace jumpgraph
