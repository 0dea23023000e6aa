#include "demod/theory.hpp"

namespace demod {

void Theory::validate() const {
  signature.validate();
  for (const auto& [axname, prop] : axioms) check_prop_wf(signature, prop);
  for (const RewriteRule& r : rules.rules) {
    r.validate();
    if (r.kind == RuleKind::TermRule) {
      check_term_wf(signature, r.term_lhs, /*allow_meta=*/true);
      check_term_wf(signature, r.term_rhs, /*allow_meta=*/true);
    } else {
      check_prop_wf(signature, r.prop_lhs, /*allow_meta=*/true);
      check_prop_wf(signature, r.prop_rhs, /*allow_meta=*/true);
    }
  }
}

}  // namespace demod
