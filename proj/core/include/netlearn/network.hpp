#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace netlearn {

// Agent ids are 1-based everywhere in the public interface.
using AgentId = int;

// Directed arc (j, i): agent j can send information to agent i directly.
using Arc = std::pair<AgentId, AgentId>;

// Finite directed communication network G_n.  Self-arcs are rejected (an
// agent always holds her own signal), duplicate arcs collapse to one, and
// antiparallel pairs (i,j)/(j,i) are allowed.
class DirectedNetwork {
public:
    DirectedNetwork() = default;
    DirectedNetwork(int n, const std::vector<Arc>& arcs);

    int size() const { return n_; }
    std::size_t arc_count() const { return arc_count_; }

    // Agents j with an arc (j, i); sorted ascending.
    const std::vector<AgentId>& in_neighbors(AgentId i) const;
    // Agents k with an arc (i, k); sorted ascending.
    const std::vector<AgentId>& out_neighbors(AgentId i) const;

    bool has_arc(AgentId from, AgentId to) const;

    // All arcs, sorted lexicographically.
    std::vector<Arc> arcs() const;

    bool operator==(const DirectedNetwork& other) const;

private:
    void check_agent(AgentId i) const;

    int n_ = 0;
    std::size_t arc_count_ = 0;
    std::vector<std::vector<AgentId>> in_;
    std::vector<std::vector<AgentId>> out_;
};

// Shortest directed-path distance from every agent j to i, indexed by j-1;
// -1 where no path exists.  dist[i-1] == 0.
std::vector<int> distances_to(const DirectedNetwork& net, AgentId i);

// B_{i,l}: agents whose shortest path to i has length at most l, sorted
// ascending.  Always contains i itself.
std::vector<AgentId> ball(const DirectedNetwork& net, AgentId i, int radius);

// (L_i)_max: maximum shortest-path distance to i over agents that reach i;
// 0 when nothing reaches i.  This is also the last exit round worth
// considering for agent i.
int max_path_length(const DirectedNetwork& net, AgentId i);

// max_path_length for every agent, indexed by id-1.
std::vector<int> max_path_lengths(const DirectedNetwork& net);

enum class SocietyKind {
    isolated,
    complete,
    binomial_root_to_leaf,
    binomial_leaf_to_root,
    custom,
};

std::string_view to_string(SocietyKind kind);
SocietyKind society_kind_from_string(std::string_view name);

// A sequence of growing networks.  Population strictly increases along the
// sequence and existing links are kept as the network grows: under identity
// agent labeling every arc of a member is an arc of all later members.
class Society {
public:
    Society(SocietyKind kind, std::vector<DirectedNetwork> networks);

    SocietyKind kind() const { return kind_; }
    std::size_t size() const { return networks_.size(); }
    const std::vector<DirectedNetwork>& networks() const { return networks_; }
    const DirectedNetwork& at(std::size_t index) const { return networks_.at(index); }
    const DirectedNetwork& largest() const { return networks_.back(); }

private:
    SocietyKind kind_;
    std::vector<DirectedNetwork> networks_;
};

// Generators for the canonical example societies.  sizes must be strictly
// increasing; binomial kinds require sizes of the form 2^m - 1 (perfect
// binary trees in heap numbering: children of p are 2p and 2p+1).
Society make_society(SocietyKind kind, const std::vector<int>& sizes);

}  // namespace netlearn
