#include "ecmin/treewidth.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace ecmin {

namespace {

bool bag_contains(const std::vector<NodeId>& bag, NodeId v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

}  // namespace

void check_decomposition(const TreeDecomposition& td, const Circuit& circuit) {
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) throw NotATree("decomposition has no bags");
  for (const auto& bag : td.bags) {
    for (size_t i = 0; i < bag.size(); ++i) {
      if (bag[i] < 0 || bag[i] >= circuit.num_nodes()) {
        throw CoverageViolation("bag contains out-of-range vertex " +
                                std::to_string(bag[i]));
      }
      if (i > 0 && bag[i - 1] >= bag[i]) {
        throw Error("bags must be sorted and duplicate-free");
      }
    }
  }
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) {
    throw NotATree("tree needs exactly bags-1 edges");
  }
  std::vector<std::vector<int>> adj(nb);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb) {
      throw NotATree("tree edge endpoint out of range");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<uint8_t> seen(nb, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int s : adj[t]) {
      if (!seen[s]) {
        seen[s] = 1;
        ++reached;
        q.push(s);
      }
    }
  }
  if (reached != nb) throw NotATree("bag graph is disconnected");

  std::vector<std::vector<int>> bags_of(circuit.num_nodes());
  for (int t = 0; t < nb; ++t) {
    for (NodeId v : td.bags[t]) bags_of[v].push_back(t);
  }
  for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
    if (bags_of[v].empty()) {
      throw CoverageViolation("vertex " + circuit.name(v) + " is in no bag");
    }
  }
  for (auto [u, v] : circuit.edges()) {
    bool covered = false;
    for (int t : bags_of[u]) {
      if (bag_contains(td.bags[t], v)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      throw CoverageViolation("edge " + circuit.name(u) + " -> " +
                              circuit.name(v) + " is in no bag");
    }
  }
  // A subgraph of a tree is a forest; it is connected iff nodes = edges + 1.
  for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
    int induced_edges = 0;
    for (auto [a, b] : td.tree_edges) {
      if (bag_contains(td.bags[a], v) && bag_contains(td.bags[b], v)) {
        ++induced_edges;
      }
    }
    if (static_cast<int>(bags_of[v].size()) != induced_edges + 1) {
      throw ConnectivityViolation("bags containing " + circuit.name(v) +
                                  " are not connected");
    }
  }
}

TreeDecomposition single_bag_decomposition(const Circuit& circuit) {
  TreeDecomposition td;
  std::vector<NodeId> bag(circuit.num_nodes());
  std::iota(bag.begin(), bag.end(), 0);
  td.bags.push_back(std::move(bag));
  return td;
}

TreeDecomposition heuristic_decomposition(const Circuit& circuit) {
  const int n = circuit.num_nodes();
  std::vector<std::set<NodeId>> adj(n);
  for (auto [u, v] : circuit.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<uint8_t> alive(n, 1);
  std::vector<int> elim_pos(n, -1);
  TreeDecomposition td;
  td.bags.reserve(n);

  for (int step = 0; step < n; ++step) {
    // Min-fill: eliminate the vertex whose neighborhood needs the fewest
    // missing edges to become a clique; ties to the smallest id.
    NodeId best = -1;
    int64_t best_fill = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      int64_t fill = 0;
      for (auto it = adj[v].begin(); it != adj[v].end(); ++it) {
        auto jt = it;
        for (++jt; jt != adj[v].end(); ++jt) {
          if (!adj[*it].count(*jt)) ++fill;
        }
      }
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    std::vector<NodeId> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    elim_pos[best] = step;
    for (NodeId a : adj[best]) {
      for (NodeId b : adj[best]) {
        if (a < b && !adj[a].count(b)) {
          adj[a].insert(b);
          adj[b].insert(a);
        }
      }
    }
    for (NodeId a : adj[best]) adj[a].erase(best);
    adj[best].clear();
    alive[best] = 0;
  }

  std::vector<NodeId> by_pos(n);
  for (NodeId v = 0; v < n; ++v) by_pos[elim_pos[v]] = v;
  for (int step = 0; step + 1 < n; ++step) {
    // Attach to the bag of the first-eliminated remaining bag member; an
    // isolated vertex hooks onto the next bag to keep the tree connected.
    NodeId v = by_pos[step];
    int parent = step + 1;
    int best_pos = n;
    for (NodeId u : td.bags[step]) {
      if (u != v && elim_pos[u] < best_pos) best_pos = elim_pos[u];
    }
    if (best_pos < n) parent = best_pos;
    td.tree_edges.emplace_back(step, parent);
  }
  check_decomposition(td, circuit);
  return td;
}

namespace {

struct NiceBuilder {
  const Circuit& circuit;
  std::vector<NiceNode> nodes;

  int add(NiceNode node) {
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
  }

  // Leaf {output} followed by introductions of the rest of the bag.
  int leaf_chain(const std::vector<NodeId>& target) {
    int cur = add({NiceKind::Leaf, {circuit.output}, -1, -1, -1, -1, -1});
    std::vector<NodeId> bag = {circuit.output};
    for (NodeId v : target) {
      if (v == circuit.output) continue;
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      cur = add({NiceKind::IntroduceVertex, bag, cur, -1, v, -1, -1});
    }
    return cur;
  }

  // Forgets then introduces to morph the bag under `cur` into `target`.
  int transition(int cur, const std::vector<NodeId>& target) {
    std::vector<NodeId> bag = nodes[cur].bag;
    std::vector<NodeId> to_forget, to_introduce;
    std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(),
                        std::back_inserter(to_forget));
    std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(),
                        std::back_inserter(to_introduce));
    for (NodeId v : to_forget) {
      bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
      cur = add({NiceKind::Forget, bag, cur, -1, v, -1, -1});
    }
    for (NodeId v : to_introduce) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      cur = add({NiceKind::IntroduceVertex, bag, cur, -1, v, -1, -1});
    }
    return cur;
  }
};

}  // namespace

NiceDecomposition make_extended_nice(const TreeDecomposition& td,
                                     const Circuit& circuit) {
  check_decomposition(td, circuit);
  const int nb = static_cast<int>(td.bags.size());
  const NodeId out = circuit.output;

  // Extended bags: the output joins every bag.
  std::vector<std::vector<NodeId>> ext(nb);
  for (int t = 0; t < nb; ++t) {
    ext[t] = td.bags[t];
    if (!bag_contains(ext[t], out)) {
      ext[t].insert(std::lower_bound(ext[t].begin(), ext[t].end(), out), out);
    }
  }

  // Root the bag tree at 0 and order children before parents.
  std::vector<std::vector<int>> adj(nb);
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<int> order, parent(nb, -1);
  std::vector<std::vector<int>> children(nb);
  {
    std::vector<int> stack = {0};
    std::vector<uint8_t> seen(nb, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      order.push_back(t);
      for (int s : adj[t]) {
        if (!seen[s]) {
          seen[s] = 1;
          parent[s] = t;
          children[t].push_back(s);
          stack.push_back(s);
        }
      }
    }
  }

  NiceBuilder builder{circuit, {}};
  std::vector<int> top(nb, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    if (children[t].empty()) {
      top[t] = builder.leaf_chain(ext[t]);
      continue;
    }
    std::vector<int> arms;
    for (int c : children[t]) {
      arms.push_back(builder.transition(top[c], ext[t]));
    }
    int acc = arms[0];
    for (size_t i = 1; i < arms.size(); ++i) {
      acc = builder.add(
          {NiceKind::Join, ext[t], acc, arms[i], -1, -1, -1});
    }
    top[t] = acc;
  }
  int root = builder.transition(top[0], {out});

  // Locate the unique forget node of every vertex.
  std::vector<int> forget_at(circuit.num_nodes(), -1);
  for (int i = 0; i < static_cast<int>(builder.nodes.size()); ++i) {
    const NiceNode& node = builder.nodes[i];
    if (node.kind != NiceKind::Forget) continue;
    if (forget_at[node.vertex] != -1) {
      throw DecompositionMismatch("vertex forgotten twice: " +
                                  circuit.name(node.vertex));
    }
    forget_at[node.vertex] = i;
  }
  for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
    if (v != out && forget_at[v] == -1) {
      throw DecompositionMismatch("vertex never forgotten: " +
                                  circuit.name(v));
    }
  }

  // Ancestor test via an iterative DFS numbering of the nice tree.
  const int nn = static_cast<int>(builder.nodes.size());
  std::vector<int> tin(nn, -1), tout(nn, -1);
  {
    int clock = 0;
    std::vector<std::pair<int, int>> stack = {{root, 0}};
    while (!stack.empty()) {
      auto& [node, phase] = stack.back();
      if (phase == 0) {
        tin[node] = clock++;
        phase = 1;
        if (builder.nodes[node].child1 >= 0) {
          stack.push_back({builder.nodes[node].child1, 0});
        }
      } else if (phase == 1) {
        phase = 2;
        if (builder.nodes[node].child2 >= 0) {
          stack.push_back({builder.nodes[node].child2, 0});
        }
      } else {
        tout[node] = clock++;
        stack.pop_back();
      }
    }
  }
  auto is_ancestor = [&](int a, int b) {  // a ancestor of (or equal to) b
    return tin[a] <= tin[b] && tout[b] <= tout[a];
  };

  // Assign every directed circuit edge to the deeper of its endpoints'
  // forget nodes; both endpoints live in the bag right below it.
  std::map<int, std::vector<std::pair<NodeId, NodeId>>> edges_below;
  for (auto [u, v] : circuit.edges()) {
    int fu = u == out ? -1 : forget_at[u];
    int fv = v == out ? -1 : forget_at[v];
    int site;
    if (fu == -1) {
      site = fv;
    } else if (fv == -1) {
      site = fu;
    } else if (is_ancestor(fu, fv)) {
      site = fv;
    } else if (is_ancestor(fv, fu)) {
      site = fu;
    } else {
      throw DecompositionMismatch("forget nodes of edge " + circuit.name(u) +
                                  " -> " + circuit.name(v) +
                                  " are unrelated");
    }
    edges_below[site].push_back({u, v});
  }

  for (auto& [site, edge_list] : edges_below) {
    std::sort(edge_list.begin(), edge_list.end());
    NiceNode& forget_node = builder.nodes[site];
    int below = forget_node.child1;
    const std::vector<NodeId>& bag = builder.nodes[below].bag;
    // Chain bottom-up so the ascending-sorted edges read bottom to top.
    for (auto it = edge_list.rbegin(); it != edge_list.rend(); ++it) {
      auto [u, v] = *it;
      if (!bag_contains(bag, u) || !bag_contains(bag, v)) {
        throw DecompositionMismatch("edge endpoints missing from bag at its "
                                    "introduction site");
      }
      below = builder.add(
          {NiceKind::IntroduceEdge, bag, below, -1, -1, u, v});
    }
    builder.nodes[site].child1 = below;
  }

  NiceDecomposition nice;
  nice.nodes = std::move(builder.nodes);
  nice.root = root;
  audit_nice(nice, circuit);
  return nice;
}

std::vector<int> nice_postorder(const NiceDecomposition& nice) {
  std::vector<int> order;
  order.reserve(nice.nodes.size());
  std::vector<std::pair<int, int>> stack = {{nice.root, 0}};
  while (!stack.empty()) {
    auto& [node, phase] = stack.back();
    const NiceNode& nn = nice.nodes[node];
    if (phase == 0) {
      phase = 1;
      if (nn.child1 >= 0) stack.push_back({nn.child1, 0});
    } else if (phase == 1) {
      phase = 2;
      if (nn.child2 >= 0) stack.push_back({nn.child2, 0});
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

void audit_nice(const NiceDecomposition& nice, const Circuit& circuit) {
  const NodeId out = circuit.output;
  const int nn = static_cast<int>(nice.nodes.size());
  if (nice.root < 0 || nice.root >= nn) {
    throw DecompositionMismatch("bad root index");
  }
  std::vector<int> in_deg(nn, 0);
  for (const NiceNode& node : nice.nodes) {
    for (int c : {node.child1, node.child2}) {
      if (c >= 0) {
        if (c >= nn) throw DecompositionMismatch("bad child index");
        ++in_deg[c];
      }
    }
  }
  std::vector<int> order = nice_postorder(nice);
  if (static_cast<int>(order.size()) != nn) {
    throw DecompositionMismatch("nodes unreachable from the root");
  }
  for (int i = 0; i < nn; ++i) {
    if (in_deg[i] != (i == nice.root ? 0 : 1)) {
      throw DecompositionMismatch("node with in-degree != 1");
    }
  }

  std::vector<int> forgotten(circuit.num_nodes(), 0);
  std::map<std::pair<NodeId, NodeId>, int> introduced;
  for (const NiceNode& node : nice.nodes) {
    if (node.bag.empty() || !bag_contains(node.bag, out)) {
      throw DecompositionMismatch("bag without the output gate");
    }
    for (size_t i = 0; i < node.bag.size(); ++i) {
      if (node.bag[i] < 0 || node.bag[i] >= circuit.num_nodes() ||
          (i > 0 && node.bag[i - 1] >= node.bag[i])) {
        throw DecompositionMismatch("malformed bag");
      }
    }
    const std::vector<NodeId>* child_bag =
        node.child1 >= 0 ? &nice.nodes[node.child1].bag : nullptr;
    switch (node.kind) {
      case NiceKind::Leaf:
        if (node.child1 >= 0 || node.bag != std::vector<NodeId>{out}) {
          throw DecompositionMismatch("leaf must have bag {output}");
        }
        break;
      case NiceKind::IntroduceVertex: {
        if (!child_bag || node.child2 >= 0 || node.vertex == out) {
          throw DecompositionMismatch("malformed introduce-vertex node");
        }
        std::vector<NodeId> expect = *child_bag;
        if (bag_contains(expect, node.vertex)) {
          throw DecompositionMismatch("introduced vertex already present");
        }
        expect.insert(
            std::lower_bound(expect.begin(), expect.end(), node.vertex),
            node.vertex);
        if (node.bag != expect) {
          throw DecompositionMismatch("introduce-vertex bag mismatch");
        }
        break;
      }
      case NiceKind::Forget: {
        if (!child_bag || node.child2 >= 0 || node.vertex == out) {
          throw DecompositionMismatch("malformed forget node");
        }
        std::vector<NodeId> expect = *child_bag;
        auto it = std::lower_bound(expect.begin(), expect.end(), node.vertex);
        if (it == expect.end() || *it != node.vertex) {
          throw DecompositionMismatch("forgotten vertex not in child bag");
        }
        expect.erase(it);
        if (node.bag != expect) {
          throw DecompositionMismatch("forget bag mismatch");
        }
        ++forgotten[node.vertex];
        break;
      }
      case NiceKind::IntroduceEdge: {
        if (!child_bag || node.child2 >= 0) {
          throw DecompositionMismatch("malformed introduce-edge node");
        }
        if (node.bag != *child_bag) {
          throw DecompositionMismatch("introduce-edge bag mismatch");
        }
        if (!bag_contains(node.bag, node.edge_tail) ||
            !bag_contains(node.bag, node.edge_head)) {
          throw DecompositionMismatch("introduced edge not inside the bag");
        }
        ++introduced[{node.edge_tail, node.edge_head}];
        break;
      }
      case NiceKind::Join: {
        if (!child_bag || node.child2 < 0) {
          throw DecompositionMismatch("malformed join node");
        }
        if (node.bag != *child_bag ||
            node.bag != nice.nodes[node.child2].bag) {
          throw DecompositionMismatch("join bags differ");
        }
        break;
      }
    }
  }
  if (nice.nodes[nice.root].bag != std::vector<NodeId>{out}) {
    throw DecompositionMismatch("root bag must be {output}");
  }
  for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
    int expect = v == out ? 0 : 1;
    if (forgotten[v] != expect) {
      throw DecompositionMismatch("vertex " + circuit.name(v) +
                                  " forgotten " +
                                  std::to_string(forgotten[v]) + " times");
    }
  }
  auto edges = circuit.edges();
  std::set<std::pair<NodeId, NodeId>> edge_set(edges.begin(), edges.end());
  if (edge_set.size() != edges.size()) {
    throw DecompositionMismatch("duplicate circuit edges");
  }
  for (const auto& e : edges) {
    auto it = introduced.find(e);
    if (it == introduced.end() || it->second != 1) {
      throw DecompositionMismatch("edge not introduced exactly once");
    }
  }
  if (introduced.size() != edge_set.size()) {
    throw DecompositionMismatch("alien edge introduced");
  }
}

}  // namespace ecmin
