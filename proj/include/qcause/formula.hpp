#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcause {

using VarId = std::uint32_t;
using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { False, True, Var, Not, And, Or };

struct FormulaNode {
  NodeKind kind;
  VarId var = 0;                 // Var nodes only
  std::vector<NodeId> children;  // Not: 1 child; And/Or: >= 2 after folding
  std::int64_t min_var = -1;     // smallest variable id in the subtree, -1 if none
};

// Hash-consed propositional formulas over tuple variables. Structurally equal
// formulas (modulo the constant folding and same-kind flattening done by the
// constructors) share one node id. The store is the only mutable structure;
// confine it to one thread during construction.
class FormulaStore {
public:
  static constexpr NodeId kFalse = 0;
  static constexpr NodeId kTrue = 1;

  FormulaStore();

  NodeId constant(bool value) const { return value ? kTrue : kFalse; }
  NodeId variable(VarId v);
  // not(not(x)) collapses; negated constants fold.
  NodeId negation(NodeId child);
  // Folds constants, flattens nested same-kind children, collapses
  // empty -> true and singleton -> child.
  NodeId conjunction(std::vector<NodeId> children);
  NodeId disjunction(std::vector<NodeId> children);

  const FormulaNode &node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  bool is_constant(NodeId id) const { return id == kFalse || id == kTrue; }

  // Sorted, deduplicated variable ids occurring under `id`.
  std::vector<VarId> variables(NodeId id) const;

  bool evaluate(NodeId id, const std::function<bool(VarId)> &value) const;

  // Pushes negations down to variables.
  NodeId to_nnf(NodeId id);

  // Substitutes constants for the given variables and folds.
  NodeId restrict_vars(NodeId id, const std::map<VarId, bool> &fixed);

  std::string to_text(NodeId id, const std::function<std::string(VarId)> &name) const;
  std::string to_dot(NodeId id, const std::function<std::string(VarId)> &name) const;

private:
  NodeId intern(FormulaNode node);
  NodeId nnf_rec(NodeId id, bool negate, std::map<std::pair<NodeId, bool>, NodeId> &memo);

  std::vector<FormulaNode> nodes_;
  std::unordered_map<std::uint64_t, std::vector<NodeId>> index_; // hash -> candidate ids
};

} // namespace qcause
