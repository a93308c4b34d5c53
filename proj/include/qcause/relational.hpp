#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qcause {

struct Relation {
  std::string name;
  std::vector<std::string> attributes;

  std::size_t arity() const { return attributes.size(); }
};

// Schema S = (U, P): relation signatures plus a finite universe of constants.
// When the declaration omits a UNIVERSE line the universe is filled with the
// active domain of the loaded instance (declaration order is preserved when
// explicit; the adom default is sorted).
struct Schema {
  std::vector<Relation> relations;
  std::vector<std::string> universe;
  bool universe_declared = false;

  const Relation *find_relation(const std::string &name) const;
  bool in_universe(const std::string &constant) const;
};

struct Tuple {
  std::string predicate;
  std::vector<std::string> args;

  std::string text() const; // "R(a,b)"

  friend bool operator==(const Tuple &a, const Tuple &b) = default;
  friend auto operator<=>(const Tuple &a, const Tuple &b) = default;
};

// A finite instance partitioned into endogenous (candidate causes) and
// exogenous (fixed background) tuples. Immutable after construction.
struct Instance {
  std::set<Tuple> endogenous;
  std::set<Tuple> exogenous;

  bool contains(const Tuple &t) const;
  bool is_exogenous(const Tuple &t) const;
  std::size_t size() const { return endogenous.size() + exogenous.size(); }
  std::set<Tuple> all_tuples() const;
  std::vector<Tuple> relation_rows(const std::string &relation) const; // sorted
};

struct LoadedDatabase {
  Schema schema;
  Instance instance;
};

// Parses a schema declaration: one `R(attr, ...)` line per relation and an
// optional `UNIVERSE a, b, c` line. Blank lines and `#` comments are skipped.
Schema parse_schema(const std::string &schema_text);

// `R(a,b)` lines naming the exogenous tuples.
std::vector<Tuple> parse_tuple_list(const std::string &text);

// Loads `<data_dir>/<relation>.csv` for every declared relation (header row
// must repeat the attribute names) and applies the partition. Tuples not
// listed in the partition are endogenous. Fills a defaulted universe from the
// active domain.
LoadedDatabase load_instance(const std::string &schema_text, const std::string &data_dir,
                             const std::optional<std::string> &partition_text = std::nullopt);

// In-memory variant used by tests and by world materialization.
Instance make_instance(const Schema &schema, const std::vector<Tuple> &tuples,
                       const std::vector<Tuple> &exogenous = {});

std::set<std::string> active_domain(const Instance &inst);

// Applies a truth assignment over tuple-presence variables: tuples named in
// `vars` are present iff assigned 1, all other tuples keep their D-state.
// Partition labels are preserved; inserted tuples are endogenous.
Instance materialize_world(const Instance &inst, const std::map<Tuple, bool> &sigma,
                           const std::set<Tuple> &vars);

} // namespace qcause
