#include "qcause/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcause {

namespace {

std::uint64_t hash_node(const FormulaNode &n) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(n.kind));
  mix(n.var);
  for (NodeId c : n.children) {
    mix(c);
  }
  return h;
}

bool same_node(const FormulaNode &a, const FormulaNode &b) {
  return a.kind == b.kind && a.var == b.var && a.children == b.children;
}

std::int64_t min_var_of(const std::vector<FormulaNode> &nodes, const std::vector<NodeId> &kids) {
  std::int64_t best = -1;
  for (NodeId k : kids) {
    std::int64_t m = nodes[k].min_var;
    if (m >= 0 && (best < 0 || m < best)) {
      best = m;
    }
  }
  return best;
}

} // namespace

FormulaStore::FormulaStore() {
  nodes_.push_back(FormulaNode{NodeKind::False, 0, {}, -1});
  nodes_.push_back(FormulaNode{NodeKind::True, 0, {}, -1});
}

NodeId FormulaStore::intern(FormulaNode node) {
  std::uint64_t h = hash_node(node);
  std::vector<NodeId> &bucket = index_[h];
  for (NodeId id : bucket) {
    if (same_node(nodes_[id], node)) {
      return id;
    }
  }
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  bucket.push_back(id);
  return id;
}

NodeId FormulaStore::variable(VarId v) {
  return intern(FormulaNode{NodeKind::Var, v, {}, static_cast<std::int64_t>(v)});
}

NodeId FormulaStore::negation(NodeId child) {
  if (child == kFalse) {
    return kTrue;
  }
  if (child == kTrue) {
    return kFalse;
  }
  if (nodes_[child].kind == NodeKind::Not) {
    return nodes_[child].children[0];
  }
  return intern(FormulaNode{NodeKind::Not, 0, {child}, nodes_[child].min_var});
}

NodeId FormulaStore::conjunction(std::vector<NodeId> children) {
  std::vector<NodeId> kids;
  for (NodeId c : children) {
    if (c == kFalse) {
      return kFalse;
    }
    if (c == kTrue) {
      continue;
    }
    if (nodes_[c].kind == NodeKind::And) {
      kids.insert(kids.end(), nodes_[c].children.begin(), nodes_[c].children.end());
    } else {
      kids.push_back(c);
    }
  }
  if (kids.empty()) {
    return kTrue;
  }
  if (kids.size() == 1) {
    return kids[0];
  }
  std::int64_t mv = min_var_of(nodes_, kids);
  return intern(FormulaNode{NodeKind::And, 0, std::move(kids), mv});
}

NodeId FormulaStore::disjunction(std::vector<NodeId> children) {
  std::vector<NodeId> kids;
  for (NodeId c : children) {
    if (c == kTrue) {
      return kTrue;
    }
    if (c == kFalse) {
      continue;
    }
    if (nodes_[c].kind == NodeKind::Or) {
      kids.insert(kids.end(), nodes_[c].children.begin(), nodes_[c].children.end());
    } else {
      kids.push_back(c);
    }
  }
  if (kids.empty()) {
    return kFalse;
  }
  if (kids.size() == 1) {
    return kids[0];
  }
  std::int64_t mv = min_var_of(nodes_, kids);
  return intern(FormulaNode{NodeKind::Or, 0, std::move(kids), mv});
}

std::vector<VarId> FormulaStore::variables(NodeId id) const {
  std::set<VarId> seen;
  std::vector<NodeId> stack{id};
  std::set<NodeId> visited;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (!visited.insert(cur).second) {
      continue;
    }
    const FormulaNode &n = nodes_[cur];
    if (n.kind == NodeKind::Var) {
      seen.insert(n.var);
    }
    stack.insert(stack.end(), n.children.begin(), n.children.end());
  }
  return {seen.begin(), seen.end()};
}

bool FormulaStore::evaluate(NodeId id, const std::function<bool(VarId)> &value) const {
  std::unordered_map<NodeId, bool> memo;
  std::function<bool(NodeId)> rec = [&](NodeId cur) -> bool {
    if (cur == kFalse) {
      return false;
    }
    if (cur == kTrue) {
      return true;
    }
    auto it = memo.find(cur);
    if (it != memo.end()) {
      return it->second;
    }
    const FormulaNode &n = nodes_[cur];
    bool out = false;
    switch (n.kind) {
    case NodeKind::Var:
      out = value(n.var);
      break;
    case NodeKind::Not:
      out = !rec(n.children[0]);
      break;
    case NodeKind::And:
      out = true;
      for (NodeId c : n.children) {
        if (!rec(c)) {
          out = false;
          break;
        }
      }
      break;
    case NodeKind::Or:
      out = false;
      for (NodeId c : n.children) {
        if (rec(c)) {
          out = true;
          break;
        }
      }
      break;
    default:
      break;
    }
    memo.emplace(cur, out);
    return out;
  };
  return rec(id);
}

NodeId FormulaStore::nnf_rec(NodeId id, bool negate,
                             std::map<std::pair<NodeId, bool>, NodeId> &memo) {
  auto key = std::make_pair(id, negate);
  auto it = memo.find(key);
  if (it != memo.end()) {
    return it->second;
  }
  const FormulaNode n = nodes_[id]; // copy: the store may grow below
  NodeId out;
  switch (n.kind) {
  case NodeKind::False:
    out = negate ? kTrue : kFalse;
    break;
  case NodeKind::True:
    out = negate ? kFalse : kTrue;
    break;
  case NodeKind::Var:
    out = negate ? negation(id) : id;
    break;
  case NodeKind::Not:
    out = nnf_rec(n.children[0], !negate, memo);
    break;
  case NodeKind::And:
  case NodeKind::Or: {
    std::vector<NodeId> kids;
    kids.reserve(n.children.size());
    for (NodeId c : n.children) {
      kids.push_back(nnf_rec(c, negate, memo));
    }
    bool make_and = (n.kind == NodeKind::And) != negate;
    out = make_and ? conjunction(std::move(kids)) : disjunction(std::move(kids));
    break;
  }
  default:
    throw std::logic_error("nnf: unknown node kind");
  }
  memo.emplace(key, out);
  return out;
}

NodeId FormulaStore::to_nnf(NodeId id) {
  std::map<std::pair<NodeId, bool>, NodeId> memo;
  return nnf_rec(id, false, memo);
}

NodeId FormulaStore::restrict_vars(NodeId id, const std::map<VarId, bool> &fixed) {
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId cur) -> NodeId {
    if (is_constant(cur)) {
      return cur;
    }
    auto it = memo.find(cur);
    if (it != memo.end()) {
      return it->second;
    }
    const FormulaNode n = nodes_[cur];
    NodeId out = cur;
    switch (n.kind) {
    case NodeKind::Var: {
      auto f = fixed.find(n.var);
      out = f == fixed.end() ? cur : constant(f->second);
      break;
    }
    case NodeKind::Not:
      out = negation(rec(n.children[0]));
      break;
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<NodeId> kids;
      kids.reserve(n.children.size());
      for (NodeId c : n.children) {
        kids.push_back(rec(c));
      }
      out = n.kind == NodeKind::And ? conjunction(std::move(kids))
                                    : disjunction(std::move(kids));
      break;
    }
    default:
      break;
    }
    memo.emplace(cur, out);
    return out;
  };
  return rec(id);
}

std::string FormulaStore::to_text(NodeId id, const std::function<std::string(VarId)> &name) const {
  std::function<std::string(NodeId, bool)> rec = [&](NodeId cur, bool nested) -> std::string {
    const FormulaNode &n = nodes_[cur];
    switch (n.kind) {
    case NodeKind::False:
      return "false";
    case NodeKind::True:
      return "true";
    case NodeKind::Var:
      return name(n.var);
    case NodeKind::Not: {
      const FormulaNode &c = nodes_[n.children[0]];
      if (c.kind == NodeKind::Var) {
        return "!" + name(c.var);
      }
      return "!(" + rec(n.children[0], false) + ")";
    }
    case NodeKind::And:
    case NodeKind::Or: {
      const char *sep = n.kind == NodeKind::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) {
          out += sep;
        }
        out += rec(n.children[i], true);
      }
      return nested ? "(" + out + ")" : out;
    }
    default:
      return "?";
    }
  };
  return rec(id, false);
}

std::string FormulaStore::to_dot(NodeId id, const std::function<std::string(VarId)> &name) const {
  std::ostringstream out;
  out << "digraph formula {\n";
  std::set<NodeId> visited;
  std::function<void(NodeId)> rec = [&](NodeId cur) {
    if (!visited.insert(cur).second) {
      return;
    }
    const FormulaNode &n = nodes_[cur];
    std::string label;
    switch (n.kind) {
    case NodeKind::False:
      label = "false";
      break;
    case NodeKind::True:
      label = "true";
      break;
    case NodeKind::Var:
      label = name(n.var);
      break;
    case NodeKind::Not:
      label = "!";
      break;
    case NodeKind::And:
      label = "&";
      break;
    case NodeKind::Or:
      label = "|";
      break;
    }
    out << "  n" << cur << " [label=\"" << label << "\"];\n";
    for (NodeId c : n.children) {
      rec(c);
      out << "  n" << cur << " -> n" << c << ";\n";
    }
  };
  rec(id);
  out << "}\n";
  return out.str();
}

} // namespace qcause
