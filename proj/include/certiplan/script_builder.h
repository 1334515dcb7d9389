#ifndef CERTIPLAN_SCRIPT_BUILDER_H
#define CERTIPLAN_SCRIPT_BUILDER_H

#include "certiplan/encoding.h"
#include "certiplan/pb.h"

#include <functional>
#include <map>
#include <memory>
#include <optional>

namespace certiplan {

// Reference to a constraint visible inside a proof under construction:
// either a scope constraint (resolved against the lemma's layout once the
// declarations are frozen) or the result of an earlier emitted step.
struct SymRef {
    enum class Kind { Scope, Slot };
    Kind kind = Kind::Slot;
    ConstraintRef scope_ref{};
    int slot = -1;

    static SymRef of_scope(ConstraintRef r) { return SymRef{Kind::Scope, r, -1}; }
    static SymRef of_slot(int s) { return SymRef{Kind::Slot, {}, s}; }
};

struct SymStep {
    ProofStep::Kind kind = ProofStep::Kind::Axiom;
    Lit lit;
    SymRef a, b;
    long long c1 = 0, c2 = 0;
    PBConstraint claimed;
    std::vector<SymStep> sub;
    bool sub_contradiction = true;
    SymRef sub_end;
    int result_slot = -1;
    int neg_slot = -1; // Red: slot of the temporary negated claim
};

// Builds derivations whose ids are assigned only when the scope is known.
// Nested builders (Red subproofs) share the slot counter with their root.
class ScriptBuilder {
public:
    ScriptBuilder() : slots_(std::make_shared<int>(0)) {}

    SymRef scope(ConstraintRef r) { return SymRef::of_scope(r); }
    SymRef axiom(Lit l);
    SymRef lin(SymRef a, long long ca, SymRef b, long long cb);
    SymRef div(SymRef a, long long c);
    SymRef sat(SymRef a);
    SymRef rup(PBConstraint claimed);
    // The callback receives the subproof builder and a reference to the
    // negated claim; it returns the ending reference (a contradiction or a
    // re-derivation of the claim).
    SymRef red(PBConstraint claimed, bool ends_contradiction,
               const std::function<SymRef(ScriptBuilder &, SymRef)> &build);

    // Re-emits a script made of pure Rup steps; returns the last claim's ref.
    SymRef splice_rups(const ProofScript &script);

    // Cache of already derived facts, keyed by the claimed constraint.
    std::optional<SymRef> find_derived(const PBConstraint &claim) const;
    void remember(const PBConstraint &claim, SymRef ref);

    size_t line_count() const; // steps incl. subproof lines
    size_t step_count() const { return steps_.size(); } // top-level steps only
    bool empty() const { return steps_.empty(); }

    ProofScript resolve(const ScopeLayout &layout, SymRef goal) const;

private:
    explicit ScriptBuilder(std::shared_ptr<int> slots) : slots_(std::move(slots)) {}

    int new_slot() { return (*slots_)++; }

    std::shared_ptr<int> slots_;
    std::vector<SymStep> steps_;
    std::map<std::string, SymRef> derived_;
};

std::string constraint_key(const PBConstraint &c);

} // namespace certiplan

#endif
