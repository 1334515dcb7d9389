#ifndef CERTIPLAN_COST_LEMMAS_H
#define CERTIPLAN_COST_LEMMAS_H

#include "certiplan/encoding.h"
#include "certiplan/script_builder.h"

namespace certiplan {

// Clipped-threshold facts over the cost machinery. All emitters record the
// thresholds they touch into `decls`, dedupe through the builder's cache and
// return a reference to the derived implication.

// (mmge_l and delta_m) -> mmgep_{l+m}.
SymRef emit_cost_step(ScriptBuilder &b, VarCatalog &cat, LazyCostDecls &decls,
                      long long l, long long m);

// mmge_{j+k} -> mmge_j for k >= 0 (primed variant over mmgep).
SymRef emit_cost_monotone(ScriptBuilder &b, VarCatalog &cat, LazyCostDecls &decls,
                          long long j, long long k, bool primed);

// mmge_from -> mmge_to for arbitrary names with clip(from) >= clip(to).
SymRef emit_cost_ge_implication(ScriptBuilder &b, VarCatalog &cat, LazyCostDecls &decls,
                                long long from, long long to, bool primed);

PBConstraint cost_step_claim(VarCatalog &cat, long long l, long long m);
PBConstraint cost_monotone_claim(VarCatalog &cat, long long from, long long to, bool primed);

// Standalone forms: generate the derivation together with the declarations
// and scope it needs, for direct checking.
struct GeneratedCostLemma {
    VarPool pool;
    LazyCostDecls decls;
    ProofScript script;
    PBConstraint claim;
    ConstraintDB scope;
};

GeneratedCostLemma gen_cost_monotone(long long j, long long k, long long bound, bool primed = false);
GeneratedCostLemma gen_cost_step(long long l, long long m, long long bound);

} // namespace certiplan

#endif
