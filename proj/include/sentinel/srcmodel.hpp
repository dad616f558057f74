#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sentinel/corpus.hpp"
#include "sentinel/lexer.hpp"

namespace sentinel {

// Token/declaration level model of the case sources. This is deliberately not
// a real frontend: the corpus programs are small and single-construct, and
// the compile oracle has the final word on anything this model gets wrong.

struct MethodDecl {
  std::string name;
  int arity = 0;
};

struct TypeOutline {
  std::string name;
  std::string extends;  // direct superclass name, empty when none
  std::vector<MethodDecl> methods;
  std::vector<std::string> fields;

  bool has_method(const std::string& name) const;
  bool has_field(const std::string& name) const;
};

// Top-level (and nested) type declarations with their member names.
// Java-shaped; used by the Type II mechanics rules.
std::vector<TypeOutline> java_outline(const std::vector<SourceUnit>& units);

const TypeOutline* find_type(const std::vector<TypeOutline>& types, const std::string& name);

// User-declared identifiers, bucketed the way the metamorphic scopes need
// them. Collected with token patterns across all units of a case.
struct DeclaredNames {
  std::set<std::string> classes;
  std::set<std::string> methods;
  std::set<std::string> variables;
  std::set<std::string> packages;
};

DeclaredNames collect_declarations(Language lang, const std::vector<SourceUnit>& units);

// Every identifier token occurring in the units (for collision checks).
std::set<std::string> all_identifiers(Language lang, const std::vector<SourceUnit>& units);

// Splits a Java unit holding several top-level type declarations into one
// unit per type, named <Type>.java. Units already carrying a .java path and
// at most one type are returned unchanged. Non-splittable content falls back
// to Unit<i>.java.
std::vector<SourceUnit> split_java_units(const std::vector<SourceUnit>& units);

}  // namespace sentinel
