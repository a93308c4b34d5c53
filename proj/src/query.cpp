#include "qcause/query.hpp"

#include "qcause/errors.hpp"

#include <algorithm>

namespace qcause {

FoPtr fo_atom(std::string relation, std::vector<Term> args) {
  auto n = std::make_shared<FoNode>();
  n->kind = FoNode::Kind::Atom;
  n->relation = std::move(relation);
  n->args = std::move(args);
  return n;
}

FoPtr fo_equals(Term lhs, Term rhs) {
  auto n = std::make_shared<FoNode>();
  n->kind = FoNode::Kind::Equals;
  n->args = {std::move(lhs), std::move(rhs)};
  return n;
}

FoPtr fo_not(FoPtr child) {
  auto n = std::make_shared<FoNode>();
  n->kind = FoNode::Kind::Not;
  n->children = {std::move(child)};
  return n;
}

static FoPtr fo_binary(FoNode::Kind kind, FoPtr lhs, FoPtr rhs) {
  auto n = std::make_shared<FoNode>();
  n->kind = kind;
  n->children = {std::move(lhs), std::move(rhs)};
  return n;
}

FoPtr fo_and(FoPtr lhs, FoPtr rhs) { return fo_binary(FoNode::Kind::And, std::move(lhs), std::move(rhs)); }
FoPtr fo_or(FoPtr lhs, FoPtr rhs) { return fo_binary(FoNode::Kind::Or, std::move(lhs), std::move(rhs)); }

FoPtr fo_exists(std::string var, FoPtr child) {
  auto n = std::make_shared<FoNode>();
  n->kind = FoNode::Kind::Exists;
  n->var = std::move(var);
  n->children = {std::move(child)};
  return n;
}

bool Atom::ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term &t) { return t.is_var; });
}

std::string Atom::text() const {
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += args[i].text;
  }
  return out + ")";
}

namespace {

using Env = std::map<std::string, std::string>;

std::string resolve(const Term &t, const Env &env) {
  if (!t.is_var) {
    return t.text;
  }
  auto it = env.find(t.text);
  if (it == env.end()) {
    throw InvalidQueryError("unbound variable '" + t.text + "' during evaluation");
  }
  return it->second;
}

bool eval_fo(const FoNode &n, const Schema &schema, const Instance &inst, Env &env) {
  switch (n.kind) {
  case FoNode::Kind::Atom: {
    Tuple t;
    t.predicate = n.relation;
    for (const Term &a : n.args) {
      t.args.push_back(resolve(a, env));
    }
    return inst.contains(t);
  }
  case FoNode::Kind::Equals:
    return resolve(n.args[0], env) == resolve(n.args[1], env);
  case FoNode::Kind::Not:
    return !eval_fo(*n.children[0], schema, inst, env);
  case FoNode::Kind::And:
    return eval_fo(*n.children[0], schema, inst, env) &&
           eval_fo(*n.children[1], schema, inst, env);
  case FoNode::Kind::Or:
    return eval_fo(*n.children[0], schema, inst, env) ||
           eval_fo(*n.children[1], schema, inst, env);
  case FoNode::Kind::Exists: {
    auto saved = env.find(n.var) != env.end() ? std::optional<std::string>(env[n.var])
                                              : std::nullopt;
    for (const std::string &c : schema.universe) {
      env[n.var] = c;
      if (eval_fo(*n.children[0], schema, inst, env)) {
        if (saved) {
          env[n.var] = *saved;
        } else {
          env.erase(n.var);
        }
        return true;
      }
    }
    if (saved) {
      env[n.var] = *saved;
    } else {
      env.erase(n.var);
    }
    return false;
  }
  }
  return false;
}

// Matches body atoms left to right against the current fact set, extending
// the environment; calls `found` for every complete substitution.
void match_body(const std::vector<Atom> &body, std::size_t idx, const std::set<Tuple> &facts,
                Env &env, const std::function<void(const Env &)> &found) {
  if (idx == body.size()) {
    found(env);
    return;
  }
  const Atom &atom = body[idx];
  for (const Tuple &fact : facts) {
    if (fact.predicate != atom.predicate || fact.args.size() != atom.args.size()) {
      continue;
    }
    std::vector<std::string> bound;
    bool ok = true;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      const Term &t = atom.args[i];
      if (!t.is_var) {
        if (t.text != fact.args[i]) {
          ok = false;
          break;
        }
        continue;
      }
      auto it = env.find(t.text);
      if (it != env.end()) {
        if (it->second != fact.args[i]) {
          ok = false;
          break;
        }
      } else {
        env[t.text] = fact.args[i];
        bound.push_back(t.text);
      }
    }
    if (ok) {
      match_body(body, idx + 1, facts, env, found);
    }
    for (const std::string &v : bound) {
      env.erase(v);
    }
  }
}

Tuple instantiate_head(const Atom &head, const Env &env) {
  Tuple t;
  t.predicate = head.predicate;
  for (const Term &a : head.args) {
    t.args.push_back(resolve(a, env));
  }
  return t;
}

} // namespace

FixpointResult datalog_fixpoint(const DatalogProgram &prog, const Schema &schema,
                                const Instance &inst) {
  (void)schema;
  FixpointResult result;
  result.facts = inst.all_tuples();
  bool changed = true;
  while (changed) {
    changed = false;
    ++result.iterations;
    for (const Rule &rule : prog.rules) {
      std::vector<Tuple> derived;
      Env env;
      match_body(rule.body, 0, result.facts, env,
                 [&](const Env &complete) { derived.push_back(instantiate_head(rule.head, complete)); });
      for (const Tuple &t : derived) {
        if (result.facts.insert(t).second) {
          changed = true;
        }
      }
    }
  }
  return result;
}

bool evaluate_boolean(const QueryAst &q, const Schema &schema, const Instance &inst) {
  if (const AggregateQuery *agg = q.aggregate()) {
    (void)agg;
    throw InvalidQueryError("aggregate query passed to the Boolean evaluator");
  }
  if (const FoQuery *fo = q.fo()) {
    if (!fo->free_vars.empty()) {
      throw InvalidQueryError("query has free variables; bind them first");
    }
    Env env;
    return eval_fo(*fo->root, schema, inst, env);
  }
  const DatalogProgram &prog = *q.datalog();
  FixpointResult fp = datalog_fixpoint(prog, schema, inst);
  Tuple goal;
  goal.predicate = prog.goal.predicate;
  for (const Term &t : prog.goal.args) {
    goal.args.push_back(t.text);
  }
  return fp.facts.count(goal) > 0;
}

Rational evaluate_aggregate(const AggregateQuery &q, const Schema &schema, const Instance &inst,
                            std::optional<std::size_t> fixed_count) {
  const Relation *rel = schema.find_relation(q.relation);
  if (rel == nullptr) {
    throw InvalidQueryError("unknown relation '" + q.relation + "' in aggregate");
  }
  auto col = std::find(rel->attributes.begin(), rel->attributes.end(), q.column);
  if (col == rel->attributes.end()) {
    throw InvalidQueryError("relation '" + q.relation + "' has no column '" + q.column + "'");
  }
  std::size_t col_idx = static_cast<std::size_t>(col - rel->attributes.begin());

  std::vector<Tuple> rows = inst.relation_rows(q.relation);
  Rational sum = 0;
  for (const Tuple &row : rows) {
    std::optional<Rational> v = parse_rational(row.args[col_idx]);
    if (!v) {
      throw InvalidQueryError("non-numeric value '" + row.args[col_idx] + "' in " + row.text());
    }
    sum += *v;
  }

  switch (q.kind) {
  case AggKind::Sum:
    return sum;
  case AggKind::SumThreshold: {
    bool holds = q.comparator == Comparator::Greater ? sum > q.threshold : sum >= q.threshold;
    return holds ? 1 : 0;
  }
  case AggKind::Avg: {
    if (q.avg_mode == AvgMode::PerWorld) {
      if (rows.empty()) {
        return 0;
      }
      return sum / Rational(rows.size());
    }
    std::size_t denom = fixed_count.value_or(rows.size());
    if (denom == 0) {
      throw InvalidQueryError("fixed-denominator AVG over an empty relation");
    }
    return sum / Rational(denom);
  }
  }
  return 0;
}

namespace {

FoPtr substitute_free(const FoPtr &node, const Binding &binding,
                      std::set<std::string> &shadowed) {
  const FoNode &n = *node;
  switch (n.kind) {
  case FoNode::Kind::Atom:
  case FoNode::Kind::Equals: {
    std::vector<Term> args;
    for (const Term &t : n.args) {
      if (t.is_var && shadowed.count(t.text) == 0) {
        auto it = binding.find(t.text);
        if (it != binding.end()) {
          args.push_back(Term::constant(it->second));
          continue;
        }
      }
      args.push_back(t);
    }
    if (n.kind == FoNode::Kind::Atom) {
      return fo_atom(n.relation, std::move(args));
    }
    return fo_equals(args[0], args[1]);
  }
  case FoNode::Kind::Not:
    return fo_not(substitute_free(n.children[0], binding, shadowed));
  case FoNode::Kind::And:
    return fo_and(substitute_free(n.children[0], binding, shadowed),
                  substitute_free(n.children[1], binding, shadowed));
  case FoNode::Kind::Or:
    return fo_or(substitute_free(n.children[0], binding, shadowed),
                 substitute_free(n.children[1], binding, shadowed));
  case FoNode::Kind::Exists: {
    bool was_shadowed = shadowed.count(n.var) > 0;
    shadowed.insert(n.var);
    FoPtr child = substitute_free(n.children[0], binding, shadowed);
    if (!was_shadowed) {
      shadowed.erase(n.var);
    }
    return fo_exists(n.var, std::move(child));
  }
  }
  return node;
}

} // namespace

QueryAst bind_open_query(const QueryAst &q, const Binding &binding) {
  const FoQuery *fo = q.fo();
  if (fo == nullptr) {
    if (!binding.empty()) {
      throw InvalidQueryError("bindings apply only to open FO queries");
    }
    return q;
  }
  std::set<std::string> declared(fo->free_vars.begin(), fo->free_vars.end());
  std::set<std::string> given;
  for (const auto &[var, value] : binding) {
    given.insert(var);
  }
  if (declared != given) {
    for (const std::string &v : declared) {
      if (given.count(v) == 0) {
        throw InvalidQueryError("missing binding for free variable '" + v + "'");
      }
    }
    for (const std::string &v : given) {
      if (declared.count(v) == 0) {
        throw InvalidQueryError("binding for '" + v + "' does not match a free variable");
      }
    }
  }
  std::set<std::string> shadowed;
  QueryAst out;
  out.monotone = q.monotone;
  FoQuery bound;
  bound.root = substitute_free(fo->root, binding, shadowed);
  out.value = std::move(bound);
  return out;
}

} // namespace qcause
