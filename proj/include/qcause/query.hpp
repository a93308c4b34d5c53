#pragma once

#include "qcause/rational.hpp"
#include "qcause/relational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qcause {

struct Term {
  bool is_var = false;
  std::string text;

  static Term var(std::string name) { return {true, std::move(name)}; }
  static Term constant(std::string value) { return {false, std::move(value)}; }
  friend bool operator==(const Term &a, const Term &b) = default;
};

struct FoNode;
using FoPtr = std::shared_ptr<const FoNode>;

struct FoNode {
  enum class Kind { Atom, Equals, Not, And, Or, Exists };
  Kind kind;
  std::string relation;        // Atom
  std::vector<Term> args;      // Atom: arguments; Equals: exactly two terms
  std::string var;             // Exists
  std::vector<FoPtr> children; // Not/Exists: 1, And/Or: 2
};

FoPtr fo_atom(std::string relation, std::vector<Term> args);
FoPtr fo_equals(Term lhs, Term rhs);
FoPtr fo_not(FoPtr child);
FoPtr fo_and(FoPtr lhs, FoPtr rhs);
FoPtr fo_or(FoPtr lhs, FoPtr rhs);
FoPtr fo_exists(std::string var, FoPtr child);

struct FoQuery {
  FoPtr root;
  std::vector<std::string> free_vars; // declared by BIND; empty for sentences
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool ground() const;
  std::string text() const;
};

struct Rule {
  Atom head;
  std::vector<Atom> body;
};

// Positive program with a distinguished nullary `goal` head rule.
struct DatalogProgram {
  std::vector<Rule> rules;
  Atom goal; // single body atom of the goal rule when there is one, else `goal`
};

enum class AggKind { Sum, SumThreshold, Avg };
enum class Comparator { Greater, GreaterEqual };
enum class AvgMode { PerWorld, FixedDenominator };

struct AggregateQuery {
  std::string relation;
  std::string column;
  AggKind kind = AggKind::Sum;
  Comparator comparator = Comparator::GreaterEqual; // SumThreshold only
  Rational threshold = 0;                           // SumThreshold only
  AvgMode avg_mode = AvgMode::PerWorld;             // Avg only
};

struct QueryAst {
  std::variant<FoQuery, DatalogProgram, AggregateQuery> value;
  bool monotone = false;

  const FoQuery *fo() const { return std::get_if<FoQuery>(&value); }
  const DatalogProgram *datalog() const { return std::get_if<DatalogProgram>(&value); }
  const AggregateQuery *aggregate() const { return std::get_if<AggregateQuery>(&value); }
  bool is_boolean() const { return aggregate() == nullptr; }
};

// Map from free variables to constants.
using Binding = std::map<std::string, std::string>;

// Substitutes the binding for the query's free variables; result is Boolean.
QueryAst bind_open_query(const QueryAst &q, const Binding &binding);

// D |= Q with existential quantifiers ranging over the schema universe
// (matching the lineage expansion); Datalog goals use minimal-model semantics.
bool evaluate_boolean(const QueryAst &q, const Schema &schema, const Instance &inst);

// Aggregate value on the instance; SumThreshold yields 1 or 0. For
// fixed-denominator AVG the divisor is `fixed_count` when given, otherwise the
// relation's cardinality in `inst`.
Rational evaluate_aggregate(const AggregateQuery &q, const Schema &schema, const Instance &inst,
                            std::optional<std::size_t> fixed_count = std::nullopt);

// Bottom-up fixpoint, exposed for the iteration-bound property test.
struct FixpointResult {
  std::set<Tuple> facts;
  std::size_t iterations = 0;
};
FixpointResult datalog_fixpoint(const DatalogProgram &prog, const Schema &schema,
                                const Instance &inst);

} // namespace qcause
