#include "netlearn/network.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "netlearn/errors.hpp"

namespace netlearn {

DirectedNetwork::DirectedNetwork(int n, const std::vector<Arc>& arcs) : n_(n) {
    if (n <= 0) {
        throw InputError("network size must be positive, got " + std::to_string(n));
    }
    in_.assign(static_cast<std::size_t>(n) + 1, {});
    out_.assign(static_cast<std::size_t>(n) + 1, {});
    for (const auto& [from, to] : arcs) {
        if (from < 1 || from > n || to < 1 || to > n) {
            throw InputError("arc (" + std::to_string(from) + "," + std::to_string(to) +
                             ") has endpoint outside 1.." + std::to_string(n));
        }
        if (from == to) {
            throw InputError("self-arc (" + std::to_string(from) + "," + std::to_string(to) +
                             ") rejected: an agent always holds her own signal");
        }
        in_[static_cast<std::size_t>(to)].push_back(from);
    }
    for (AgentId i = 1; i <= n; ++i) {
        auto& v = in_[static_cast<std::size_t>(i)];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());  // duplicates collapse
        arc_count_ += v.size();
        for (AgentId j : v) {
            out_[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    for (auto& v : out_) {
        std::sort(v.begin(), v.end());
    }
}

void DirectedNetwork::check_agent(AgentId i) const {
    if (i < 1 || i > n_) {
        throw InputError("unknown agent id " + std::to_string(i) + " (network has " +
                         std::to_string(n_) + " agents)");
    }
}

const std::vector<AgentId>& DirectedNetwork::in_neighbors(AgentId i) const {
    check_agent(i);
    return in_[static_cast<std::size_t>(i)];
}

const std::vector<AgentId>& DirectedNetwork::out_neighbors(AgentId i) const {
    check_agent(i);
    return out_[static_cast<std::size_t>(i)];
}

bool DirectedNetwork::has_arc(AgentId from, AgentId to) const {
    check_agent(from);
    check_agent(to);
    const auto& v = in_[static_cast<std::size_t>(to)];
    return std::binary_search(v.begin(), v.end(), from);
}

std::vector<Arc> DirectedNetwork::arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count_);
    for (AgentId j = 1; j <= n_; ++j) {
        for (AgentId i : out_[static_cast<std::size_t>(j)]) {
            result.emplace_back(j, i);
        }
    }
    return result;
}

bool DirectedNetwork::operator==(const DirectedNetwork& other) const {
    return n_ == other.n_ && in_ == other.in_;
}

std::vector<int> distances_to(const DirectedNetwork& net, AgentId i) {
    if (i < 1 || i > net.size()) {
        throw InputError("unknown agent id " + std::to_string(i));
    }
    std::vector<int> dist(static_cast<std::size_t>(net.size()), -1);
    dist[static_cast<std::size_t>(i - 1)] = 0;
    std::deque<AgentId> frontier{i};
    while (!frontier.empty()) {
        const AgentId v = frontier.front();
        frontier.pop_front();
        const int d = dist[static_cast<std::size_t>(v - 1)];
        for (AgentId j : net.in_neighbors(v)) {
            if (dist[static_cast<std::size_t>(j - 1)] < 0) {
                dist[static_cast<std::size_t>(j - 1)] = d + 1;
                frontier.push_back(j);
            }
        }
    }
    return dist;
}

std::vector<AgentId> ball(const DirectedNetwork& net, AgentId i, int radius) {
    if (radius < 0) {
        throw InputError("ball radius must be nonnegative, got " + std::to_string(radius));
    }
    const auto dist = distances_to(net, i);
    std::vector<AgentId> members;
    for (AgentId j = 1; j <= net.size(); ++j) {
        const int d = dist[static_cast<std::size_t>(j - 1)];
        if (d >= 0 && d <= radius) {
            members.push_back(j);
        }
    }
    return members;
}

int max_path_length(const DirectedNetwork& net, AgentId i) {
    const auto dist = distances_to(net, i);
    int longest = 0;
    for (int d : dist) {
        longest = std::max(longest, d);
    }
    return longest;
}

std::vector<int> max_path_lengths(const DirectedNetwork& net) {
    std::vector<int> result(static_cast<std::size_t>(net.size()));
    for (AgentId i = 1; i <= net.size(); ++i) {
        result[static_cast<std::size_t>(i - 1)] = max_path_length(net, i);
    }
    return result;
}

std::string_view to_string(SocietyKind kind) {
    switch (kind) {
        case SocietyKind::isolated: return "isolated";
        case SocietyKind::complete: return "complete";
        case SocietyKind::binomial_root_to_leaf: return "binomial_root_to_leaf";
        case SocietyKind::binomial_leaf_to_root: return "binomial_leaf_to_root";
        case SocietyKind::custom: return "custom";
    }
    return "custom";
}

SocietyKind society_kind_from_string(std::string_view name) {
    if (name == "isolated") return SocietyKind::isolated;
    if (name == "complete") return SocietyKind::complete;
    if (name == "binomial_root_to_leaf") return SocietyKind::binomial_root_to_leaf;
    if (name == "binomial_leaf_to_root") return SocietyKind::binomial_leaf_to_root;
    if (name == "custom") return SocietyKind::custom;
    throw InputError("unknown society kind '" + std::string(name) + "'");
}

Society::Society(SocietyKind kind, std::vector<DirectedNetwork> networks)
    : kind_(kind), networks_(std::move(networks)) {
    if (networks_.empty()) {
        throw InputError("a society needs at least one network");
    }
    for (std::size_t t = 1; t < networks_.size(); ++t) {
        const auto& small = networks_[t - 1];
        const auto& big = networks_[t];
        if (big.size() <= small.size()) {
            throw InputError("society population must strictly increase: member " +
                             std::to_string(t) + " has n=" + std::to_string(big.size()) +
                             " after n=" + std::to_string(small.size()));
        }
        // Link persistence: existing links are kept when a network grows.
        for (const auto& [from, to] : small.arcs()) {
            if (!big.has_arc(from, to)) {
                throw InputError("society drops arc (" + std::to_string(from) + "," +
                                 std::to_string(to) + ") when growing from n=" +
                                 std::to_string(small.size()) + " to n=" +
                                 std::to_string(big.size()));
            }
        }
    }
}

namespace {

bool binomial_layer_count(int size, int* layers) {
    // sizes 2^m - 1 for m >= 1
    int m = 0;
    long long total = 0;
    long long width = 1;
    while (total < size) {
        total += width;
        width *= 2;
        ++m;
    }
    *layers = m;
    return total == size;
}

DirectedNetwork generate(SocietyKind kind, int n) {
    std::vector<Arc> arcs;
    switch (kind) {
        case SocietyKind::isolated:
            break;
        case SocietyKind::complete:
            for (AgentId a = 1; a <= n; ++a) {
                for (AgentId b = 1; b <= n; ++b) {
                    if (a != b) arcs.emplace_back(a, b);
                }
            }
            break;
        case SocietyKind::binomial_root_to_leaf:
        case SocietyKind::binomial_leaf_to_root:
            for (AgentId parent = 1; 2 * parent + 1 <= n; ++parent) {
                for (AgentId child : {2 * parent, 2 * parent + 1}) {
                    if (kind == SocietyKind::binomial_root_to_leaf) {
                        arcs.emplace_back(parent, child);
                    } else {
                        arcs.emplace_back(child, parent);
                    }
                }
            }
            break;
        case SocietyKind::custom:
            throw InputError("make_society cannot generate 'custom' networks");
    }
    return DirectedNetwork(n, arcs);
}

}  // namespace

Society make_society(SocietyKind kind, const std::vector<int>& sizes) {
    if (sizes.empty()) {
        throw InputError("make_society needs at least one size");
    }
    for (std::size_t t = 1; t < sizes.size(); ++t) {
        if (sizes[t] <= sizes[t - 1]) {
            throw InputError("society sizes must be strictly increasing");
        }
    }
    if (kind == SocietyKind::binomial_root_to_leaf || kind == SocietyKind::binomial_leaf_to_root) {
        for (int n : sizes) {
            int layers = 0;
            if (n < 1 || !binomial_layer_count(n, &layers)) {
                throw InputError("binomial societies need sizes of the form 2^m - 1, got " +
                                 std::to_string(n));
            }
        }
    }
    std::vector<DirectedNetwork> nets;
    nets.reserve(sizes.size());
    for (int n : sizes) {
        nets.push_back(generate(kind, n));
    }
    return Society(kind, std::move(nets));
}

}  // namespace netlearn
