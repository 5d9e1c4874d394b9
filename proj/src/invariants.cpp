#include <set>

#include "nbcg/world.hpp"

namespace nbcg {

std::vector<std::string> check_invariants(const World& world, bool at_rest) {
  std::vector<std::string> bad;
  std::set<NodeId> seen;
  for (const auto& [cid, c] : world.clusters) {
    if (c.id != cid) bad.push_back("cluster key " + cid + " holds cluster " + c.id);
    for (const auto& n : c.nodes) {
      if (!seen.insert(n.id).second) bad.push_back("node " + n.id + " appears twice");
      if (n.host != cid) bad.push_back("node " + n.id + " in " + cid + " has wrong host");
      if (n.state == NodeState::InTransit) bad.push_back("node " + n.id + " InTransit inside " + cid);
      if (at_rest && n.state != NodeState::Active)
        bad.push_back("node " + n.id + " is " + std::string(to_string(n.state)) + " at rest");
      if (world.clusters.count(n.origin) == 0) bad.push_back("node " + n.id + " has unknown origin " + n.origin);
      if (!(n.capacity.cpu > 0 && n.capacity.memory > 0)) bad.push_back("node " + n.id + " has empty capacity");
      const Resources load = c.node_load(n.id);
      if (!load.fits_within(n.capacity)) bad.push_back("node " + n.id + " is over capacity");
    }
    for (const auto& p : c.pods) {
      if (!p.demand.non_negative()) bad.push_back("pod " + p.id + " has negative demand");
      if ((p.state == PodState::Running) != p.node.has_value())
        bad.push_back("pod " + p.id + " state/assignment mismatch");
      if (p.node) {
        const Node* n = c.find_node(*p.node);
        if (n == nullptr)
          bad.push_back("pod " + p.id + " assigned to missing node " + *p.node);
        else if (n->state != NodeState::Active && n->state != NodeState::Draining)
          bad.push_back("pod " + p.id + " runs on " + std::string(to_string(n->state)) + " node");
      }
    }
    if (c.group) {
      auto g = world.groups.find(*c.group);
      if (g == world.groups.end() || !g->second.has_member(cid))
        bad.push_back("cluster " + cid + " points at group " + *c.group + " which does not list it");
    }
  }
  std::set<ClusterId> grouped;
  for (const auto& [gid, g] : world.groups) {
    for (const auto& m : g.members) {
      if (!grouped.insert(m).second) bad.push_back("cluster " + m + " is in more than one group");
      auto c = world.clusters.find(m);
      if (c == world.clusters.end() || c->second.group != gid)
        bad.push_back("group " + gid + " lists " + m + " which does not point back");
    }
  }
  return bad;
}

}  // namespace nbcg
