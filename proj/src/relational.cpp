#include "qcause/relational.hpp"

#include "qcause/errors.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qcause {

namespace {

std::string trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// `R(a, b)` -> Tuple{R, {a, b}}. Used for partition files.
Tuple parse_tuple_text(const std::string &line, int lineno) {
  std::size_t open = line.find('(');
  std::size_t close = line.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      trim(line.substr(close + 1)) != "") {
    throw ParseError("malformed tuple '" + line + "'", lineno, 1);
  }
  Tuple t;
  t.predicate = trim(line.substr(0, open));
  if (t.predicate.empty()) {
    throw ParseError("missing predicate name in '" + line + "'", lineno, 1);
  }
  std::string inner = line.substr(open + 1, close - open - 1);
  for (const std::string &piece : split(inner, ',')) {
    std::string arg = trim(piece);
    if (arg.empty()) {
      throw ParseError("empty argument in '" + line + "'", lineno, 1);
    }
    t.args.push_back(arg);
  }
  return t;
}

} // namespace

const Relation *Schema::find_relation(const std::string &name) const {
  for (const Relation &r : relations) {
    if (r.name == name) {
      return &r;
    }
  }
  return nullptr;
}

bool Schema::in_universe(const std::string &constant) const {
  return std::find(universe.begin(), universe.end(), constant) != universe.end();
}

std::string Tuple::text() const {
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += args[i];
  }
  return out + ")";
}

bool Instance::contains(const Tuple &t) const {
  return endogenous.count(t) > 0 || exogenous.count(t) > 0;
}

bool Instance::is_exogenous(const Tuple &t) const { return exogenous.count(t) > 0; }

std::set<Tuple> Instance::all_tuples() const {
  std::set<Tuple> out = endogenous;
  out.insert(exogenous.begin(), exogenous.end());
  return out;
}

std::vector<Tuple> Instance::relation_rows(const std::string &relation) const {
  std::vector<Tuple> out;
  for (const Tuple &t : endogenous) {
    if (t.predicate == relation) {
      out.push_back(t);
    }
  }
  for (const Tuple &t : exogenous) {
    if (t.predicate == relation) {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Schema parse_schema(const std::string &schema_text) {
  Schema schema;
  std::istringstream in(schema_text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (line.rfind("UNIVERSE", 0) == 0) {
      if (schema.universe_declared) {
        throw ParseError("duplicate UNIVERSE line", lineno, 1);
      }
      schema.universe_declared = true;
      for (const std::string &piece : split(line.substr(8), ',')) {
        std::string c = trim(piece);
        if (c.empty()) {
          throw ParseError("empty constant in UNIVERSE line", lineno, 1);
        }
        if (!schema.in_universe(c)) {
          schema.universe.push_back(c);
        }
      }
      if (schema.universe.empty()) {
        throw ParseError("UNIVERSE line declares no constants", lineno, 1);
      }
      continue;
    }
    Tuple decl = parse_tuple_text(line, lineno);
    if (schema.find_relation(decl.predicate) != nullptr) {
      throw ParseError("duplicate relation declaration '" + decl.predicate + "'", lineno, 1);
    }
    if (decl.args.empty()) {
      throw ParseError("relation '" + decl.predicate + "' needs arity >= 1", lineno, 1);
    }
    Relation rel;
    rel.name = decl.predicate;
    rel.attributes = decl.args;
    std::set<std::string> seen(rel.attributes.begin(), rel.attributes.end());
    if (seen.size() != rel.attributes.size()) {
      throw ParseError("duplicate attribute in relation '" + rel.name + "'", lineno, 1);
    }
    schema.relations.push_back(rel);
  }
  if (schema.relations.empty()) {
    throw ParseError("schema declares no relations", lineno, 1);
  }
  return schema;
}

std::vector<Tuple> parse_tuple_list(const std::string &text) {
  std::vector<Tuple> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    out.push_back(parse_tuple_text(line, lineno));
  }
  return out;
}

namespace {

std::vector<Tuple> read_relation_csv(const Relation &rel, const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw LoadError("data file not found: " + path);
  }
  std::vector<Tuple> rows;
  std::string raw;
  int lineno = 0;
  bool header_checked = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') {
      raw.pop_back();
    }
    if (trim(raw).empty()) {
      continue;
    }
    std::vector<std::string> fields = split(raw, ',');
    for (std::string &f : fields) {
      f = trim(f);
    }
    if (!header_checked) {
      header_checked = true;
      if (fields.size() != rel.arity()) {
        throw LoadError(path + ":" + std::to_string(lineno) + ": header has " +
                        std::to_string(fields.size()) + " columns, relation '" + rel.name +
                        "' has arity " + std::to_string(rel.arity()));
      }
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] != rel.attributes[i]) {
          throw LoadError(path + ":" + std::to_string(lineno) + ": header column '" + fields[i] +
                          "' does not match declared attribute '" + rel.attributes[i] + "'");
        }
      }
      continue;
    }
    if (fields.size() != rel.arity()) {
      throw LoadError(path + ":" + std::to_string(lineno) + ": row has " +
                      std::to_string(fields.size()) + " values, expected " +
                      std::to_string(rel.arity()));
    }
    Tuple t;
    t.predicate = rel.name;
    t.args = fields;
    rows.push_back(t);
  }
  return rows;
}

} // namespace

LoadedDatabase load_instance(const std::string &schema_text, const std::string &data_dir,
                             const std::optional<std::string> &partition_text) {
  LoadedDatabase db;
  db.schema = parse_schema(schema_text);

  std::vector<Tuple> tuples;
  for (const Relation &rel : db.schema.relations) {
    std::filesystem::path path = std::filesystem::path(data_dir) / (rel.name + ".csv");
    for (Tuple &t : read_relation_csv(rel, path.string())) {
      if (db.schema.universe_declared) {
        for (const std::string &arg : t.args) {
          if (!db.schema.in_universe(arg)) {
            throw LoadError("constant '" + arg + "' in " + t.text() +
                            " is outside the declared universe");
          }
        }
      }
      tuples.push_back(std::move(t));
    }
  }

  std::vector<Tuple> exogenous;
  if (partition_text.has_value()) {
    exogenous = parse_tuple_list(*partition_text);
  }

  db.instance = make_instance(db.schema, tuples, exogenous);

  if (!db.schema.universe_declared) {
    for (const std::string &c : active_domain(db.instance)) {
      db.schema.universe.push_back(c); // active_domain is sorted
    }
  }
  return db;
}

Instance make_instance(const Schema &schema, const std::vector<Tuple> &tuples,
                       const std::vector<Tuple> &exogenous) {
  Instance inst;
  for (const Tuple &t : tuples) {
    const Relation *rel = schema.find_relation(t.predicate);
    if (rel == nullptr) {
      throw LoadError("tuple " + t.text() + " uses undeclared relation '" + t.predicate + "'");
    }
    if (rel->arity() != t.args.size()) {
      throw LoadError("tuple " + t.text() + " has arity " + std::to_string(t.args.size()) +
                      ", relation '" + rel->name + "' expects " + std::to_string(rel->arity()));
    }
    inst.endogenous.insert(t);
  }
  for (const Tuple &t : exogenous) {
    if (inst.endogenous.count(t) == 0) {
      throw LoadError("partition lists " + t.text() + " which is not a loaded tuple");
    }
    inst.endogenous.erase(t);
    inst.exogenous.insert(t);
  }
  return inst;
}

std::set<std::string> active_domain(const Instance &inst) {
  std::set<std::string> out;
  for (const Tuple &t : inst.all_tuples()) {
    out.insert(t.args.begin(), t.args.end());
  }
  return out;
}

Instance materialize_world(const Instance &inst, const std::map<Tuple, bool> &sigma,
                           const std::set<Tuple> &vars) {
  Instance out;
  for (const Tuple &t : vars) {
    auto it = sigma.find(t);
    if (it == sigma.end()) {
      throw InvalidQueryError("assignment missing variable for tuple " + t.text());
    }
    if (it->second) {
      if (inst.exogenous.count(t) > 0) {
        out.exogenous.insert(t);
      } else {
        out.endogenous.insert(t);
      }
    }
  }
  for (const Tuple &t : inst.endogenous) {
    if (vars.count(t) == 0) {
      out.endogenous.insert(t);
    }
  }
  for (const Tuple &t : inst.exogenous) {
    if (vars.count(t) == 0) {
      out.exogenous.insert(t);
    }
  }
  return out;
}

} // namespace qcause
