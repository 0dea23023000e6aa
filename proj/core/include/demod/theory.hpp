#pragma once

#include <map>
#include <string>

#include "demod/rewrite.hpp"
#include "demod/syntax.hpp"

namespace demod {

// A theory modulo: a signature, a rewrite system defining the congruence,
// named axioms, and the classical switch for the excluded-middle leaf.
struct Theory {
  std::string name;
  Signature signature;
  RewriteSystem rules;
  std::map<std::string, Proposition> axioms;  // name -> closed proposition
  bool classical = false;

  // Signature consistency plus well-formedness of axioms and rules.
  void validate() const;
};

}  // namespace demod
