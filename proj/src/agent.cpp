#include "sscc/agent.hpp"

#include "sscc/command.hpp"

#include <algorithm>
#include <stdexcept>

namespace sscc {

std::string AgentId::str() const {
    std::string s;
    for (unsigned n : path) {
        s += std::to_string(n);
        s += '.';
    }
    s += "root";
    return s;
}

AgentId AgentId::parse(const std::string& text) {
    AgentId a;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text.compare(pos, 4, "root") == 0 && pos + 4 == text.size())
            return a;
        std::size_t dot = text.find('.', pos);
        if (dot == std::string::npos || dot == pos)
            break;
        std::string part = text.substr(pos, dot - pos);
        if (part.find_first_not_of("0123456789") != std::string::npos)
            break;
        a.path.push_back(static_cast<unsigned>(std::stoul(part)));
        pos = dot + 1;
    }
    throw std::invalid_argument("malformed agent id: " + text);
}

std::size_t size_aid(const AgentId& a) { return a.path.size() + 1; }

bool is_prefix(const AgentId& a, const AgentId& b) {
    if (a.path.size() > b.path.size())
        return false;
    return std::equal(a.path.rbegin(), a.path.rend(), b.path.rbegin());
}

bool is_son(const AgentId& a, const AgentId& b) {
    return a.path.size() == b.path.size() + 1 && is_prefix(b, a);
}

void normalize_objects(std::vector<AgentObject>& agents,
                       std::vector<ProcessObject>& processes) {
    std::vector<AgentObject> merged;
    for (auto& a : agents) {
        AgentObject* existing = find_agent(merged, a.id);
        if (!existing) {
            merged.push_back(std::move(a));
            continue;
        }
        existing->store = conjoin(existing->store, a.store);
        existing->children.insert(a.children.begin(), a.children.end());
    }
    std::sort(merged.begin(), merged.end(),
              [](const AgentObject& x, const AgentObject& y) {
                  return AgentIdLess{}(x.id, y.id);
              });
    agents = std::move(merged);

    processes.erase(std::remove_if(processes.begin(), processes.end(),
                                   [](const ProcessObject& p) {
                                       return p.command->kind == CKind::Nil;
                                   }),
                    processes.end());
}

AgentObject* find_agent(std::vector<AgentObject>& agents, const AgentId& id) {
    for (auto& a : agents)
        if (a.id == id)
            return &a;
    return nullptr;
}

const AgentObject* find_agent(const std::vector<AgentObject>& agents,
                              const AgentId& id) {
    for (const auto& a : agents)
        if (a.id == id)
            return &a;
    return nullptr;
}

AgentObject& ensure_agent(std::vector<AgentObject>& agents, const AgentId& id) {
    if (AgentObject* a = find_agent(agents, id))
        return *a;
    agents.push_back(AgentObject{id, f_true(), {}});
    return agents.back();
}

} // namespace sscc
