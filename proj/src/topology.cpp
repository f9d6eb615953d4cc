#include "latc/topology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace latc::topo {

const std::vector<PeerInstance>& LatencyMatrix::instances_of(const std::string& peer) const {
    auto it = instances_.find(peer);
    if (it == instances_.end()) throw UnknownPeer(peer);
    return it->second;
}

Nat LatencyMatrix::weight(const std::string& from, const std::string& to) const {
    if (!declared(from)) throw UnknownPeer(from);
    if (!declared(to)) throw UnknownPeer(to);
    auto it = weights_.find({from, to});
    if (it != weights_.end()) return it->second;
    if (from == to) return 0;
    // validate() guarantees this is unreachable for loaded matrices
    throw TopologyError(0, "no weight declared for " + from + " -> " + to);
}

void LatencyMatrix::add_peer(int line, const std::string& name) {
    if (declared(name)) throw TopologyError(line, "duplicate peer '" + name + "'");
    order_.push_back(name);
    instances_[name] = {};
}

void LatencyMatrix::add_instance(int line, const std::string& id, const std::string& peer) {
    if (!declared(peer))
        throw TopologyError(line, "instance '" + id + "' names undeclared peer '" + peer + "'");
    if (instanceLines_.count(id))
        throw TopologyError(line, "duplicate instance id '" + id + "'");
    instanceLines_[id] = line;
    instances_[peer].push_back(PeerInstance{id, peer});
}

void LatencyMatrix::set_weight(int line, const std::string& from, const std::string& to, Nat w) {
    if (!declared(from))
        throw TopologyError(line, "weight names undeclared peer '" + from + "'");
    if (!declared(to)) throw TopologyError(line, "weight names undeclared peer '" + to + "'");
    auto key = std::make_pair(from, to);
    if (weights_.count(key))
        throw TopologyError(line, "duplicate weight for " + from + " -> " + to);
    weights_[key] = std::move(w);
}

void LatencyMatrix::validate() const {
    for (const std::string& p : order_) {
        if (instances_.at(p).empty())
            throw TopologyError(0, "peer '" + p + "' has no instances");
        for (const std::string& q : order_) {
            if (p != q && !weights_.count({p, q}))
                throw TopologyError(0, "no weight declared for " + p + " -> " + q);
        }
    }
}

LatencyMatrix load_topology(std::string_view text) {
    LatencyMatrix m;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto cut = line.find("--"); cut != std::string::npos) line.resize(cut);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "peer") {
            std::string name;
            if (!(ls >> name)) throw TopologyError(lineNo, "expected: peer <Name>");
            m.add_peer(lineNo, name);
        } else if (head == "instance") {
            std::string id, colon, peer;
            if (!(ls >> id >> colon >> peer) || colon != ":")
                throw TopologyError(lineNo, "expected: instance <id> : <Name>");
            m.add_instance(lineNo, id, peer);
        } else if (head == "lat") {
            std::string from, to, num;
            if (!(ls >> from >> to >> num))
                throw TopologyError(lineNo, "expected: lat <From> <To> <nat>");
            if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) {
                    return std::isdigit(c);
                }))
                throw TopologyError(lineNo, "weight must be a natural number, got '" + num + "'");
            m.set_weight(lineNo, from, to, Nat(num));
        } else {
            throw TopologyError(lineNo, "unknown directive '" + head + "'");
        }
        std::string trailing;
        if (ls >> trailing)
            throw TopologyError(lineNo, "trailing input '" + trailing + "'");
    }
    m.validate();
    return m;
}

}  // namespace latc::topo
