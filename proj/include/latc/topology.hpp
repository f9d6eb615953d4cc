#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "latc/arith.hpp"

// Peer types, their runtime instances, and the directed message-weight
// function between peer types.
namespace latc::topo {

using arith::Nat;

struct PeerInstance {
    std::string id;
    std::string peerType;
    bool operator==(const PeerInstance&) const = default;
};

struct TopologyError : std::runtime_error {
    int line;
    TopologyError(int line, const std::string& msg)
        : std::runtime_error("topology:" + std::to_string(line) + ": " + msg), line(line) {}
};

struct UnknownPeer : TopologyError {
    explicit UnknownPeer(const std::string& name)
        : TopologyError(0, "unknown peer type '" + name + "'") {}
};

class LatencyMatrix {
  public:
    bool declared(const std::string& peer) const { return instances_.count(peer) != 0; }
    const std::vector<std::string>& peers() const { return order_; }
    const std::vector<PeerInstance>& instances_of(const std::string& peer) const;
    // directed weight; the diagonal defaults to 0 unless configured
    Nat weight(const std::string& from, const std::string& to) const;

    void add_peer(int line, const std::string& name);
    void add_instance(int line, const std::string& id, const std::string& peer);
    void set_weight(int line, const std::string& from, const std::string& to, Nat w);
    // totality and nonempty-instance checks; throws TopologyError
    void validate() const;

  private:
    std::vector<std::string> order_;
    std::map<std::string, std::vector<PeerInstance>> instances_;
    std::map<std::pair<std::string, std::string>, Nat> weights_;
    std::map<std::string, int> instanceLines_;
};

// Parses the line-based format: `peer <Name>`, `instance <id> : <Name>`,
// `lat <From> <To> <nat>`; `--` comments. Names must be declared before use.
LatencyMatrix load_topology(std::string_view text);

inline Nat weight(const LatencyMatrix& m, const std::string& from, const std::string& to) {
    return m.weight(from, to);
}

}  // namespace latc::topo
