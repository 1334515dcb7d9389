#include "certiplan/script_builder.h"

#include <sstream>

namespace certiplan {

std::string constraint_key(const PBConstraint &c) {
    std::ostringstream out;
    for (const Term &t : c.terms())
        out << t.var << (t.positive ? '+' : '-') << t.coef << ',';
    out << '|' << c.degree();
    return out.str();
}

SymRef ScriptBuilder::axiom(Lit l) {
    SymStep s;
    s.kind = ProofStep::Kind::Axiom;
    s.lit = l;
    s.result_slot = new_slot();
    steps_.push_back(std::move(s));
    return SymRef::of_slot(steps_.back().result_slot);
}

SymRef ScriptBuilder::lin(SymRef a, long long ca, SymRef b, long long cb) {
    SymStep s;
    s.kind = ProofStep::Kind::Lin;
    s.a = a;
    s.b = b;
    s.c1 = ca;
    s.c2 = cb;
    s.result_slot = new_slot();
    steps_.push_back(std::move(s));
    return SymRef::of_slot(steps_.back().result_slot);
}

SymRef ScriptBuilder::div(SymRef a, long long c) {
    SymStep s;
    s.kind = ProofStep::Kind::Div;
    s.a = a;
    s.c1 = c;
    s.result_slot = new_slot();
    steps_.push_back(std::move(s));
    return SymRef::of_slot(steps_.back().result_slot);
}

SymRef ScriptBuilder::sat(SymRef a) {
    SymStep s;
    s.kind = ProofStep::Kind::Sat;
    s.a = a;
    s.result_slot = new_slot();
    steps_.push_back(std::move(s));
    return SymRef::of_slot(steps_.back().result_slot);
}

SymRef ScriptBuilder::rup(PBConstraint claimed) {
    SymStep s;
    s.kind = ProofStep::Kind::Rup;
    s.claimed = std::move(claimed);
    s.result_slot = new_slot();
    steps_.push_back(std::move(s));
    return SymRef::of_slot(steps_.back().result_slot);
}

SymRef ScriptBuilder::red(PBConstraint claimed, bool ends_contradiction,
                          const std::function<SymRef(ScriptBuilder &, SymRef)> &build) {
    SymStep s;
    s.kind = ProofStep::Kind::Red;
    s.claimed = std::move(claimed);
    s.neg_slot = new_slot();
    ScriptBuilder sub(slots_);
    s.sub_end = build(sub, SymRef::of_slot(s.neg_slot));
    s.sub = std::move(sub.steps_);
    s.sub_contradiction = ends_contradiction;
    s.result_slot = new_slot();
    steps_.push_back(std::move(s));
    return SymRef::of_slot(steps_.back().result_slot);
}

SymRef ScriptBuilder::splice_rups(const ProofScript &script) {
    SymRef last;
    for (const ProofStep &st : script.steps) {
        if (st.kind != ProofStep::Kind::Rup)
            throw std::runtime_error("splice_rups: script contains a non-rup step");
        last = rup(st.claimed);
    }
    return last;
}

std::optional<SymRef> ScriptBuilder::find_derived(const PBConstraint &claim) const {
    auto it = derived_.find(constraint_key(claim));
    if (it == derived_.end())
        return std::nullopt;
    return it->second;
}

void ScriptBuilder::remember(const PBConstraint &claim, SymRef ref) {
    derived_.emplace(constraint_key(claim), ref);
}

namespace {

size_t count_lines(const std::vector<SymStep> &steps) {
    size_t n = 0;
    for (const SymStep &s : steps) {
        ++n;
        if (s.kind == ProofStep::Kind::Red)
            n += count_lines(s.sub) + 2; // ending marker and end line
    }
    return n;
}

struct Resolver {
    const ScopeLayout &layout;
    std::vector<int> slot_ids;

    int id_of(const SymRef &r) const {
        if (r.kind == SymRef::Kind::Scope)
            return layout.id_of(r.scope_ref);
        int id = slot_ids.at(static_cast<size_t>(r.slot));
        if (id <= 0)
            throw std::runtime_error("reference to unresolved derivation slot");
        return id;
    }

    void run(const std::vector<SymStep> &steps, int &next_id, std::vector<ProofStep> &out) {
        for (const SymStep &s : steps) {
            switch (s.kind) {
            case ProofStep::Kind::Axiom:
                out.push_back(ProofStep::axiom(s.lit));
                slot_ids[static_cast<size_t>(s.result_slot)] = next_id++;
                break;
            case ProofStep::Kind::Lin:
                out.push_back(ProofStep::lin(id_of(s.a), s.c1, id_of(s.b), s.c2));
                slot_ids[static_cast<size_t>(s.result_slot)] = next_id++;
                break;
            case ProofStep::Kind::Div:
                out.push_back(ProofStep::div(id_of(s.a), s.c1));
                slot_ids[static_cast<size_t>(s.result_slot)] = next_id++;
                break;
            case ProofStep::Kind::Sat:
                out.push_back(ProofStep::sat(id_of(s.a)));
                slot_ids[static_cast<size_t>(s.result_slot)] = next_id++;
                break;
            case ProofStep::Kind::Rup:
                out.push_back(ProofStep::rup(s.claimed));
                slot_ids[static_cast<size_t>(s.result_slot)] = next_id++;
                break;
            case ProofStep::Kind::Red: {
                // The negation takes the next id; sub-derivations extend the
                // count temporarily and are discarded when the subproof ends,
                // after which the claim takes the negation's id.
                int saved = next_id;
                slot_ids[static_cast<size_t>(s.neg_slot)] = saved;
                int sub_next = saved + 1;
                std::vector<ProofStep> sub_out;
                run(s.sub, sub_next, sub_out);
                int end_id = id_of(s.sub_end);
                out.push_back(ProofStep::red(s.claimed, std::move(sub_out),
                                             s.sub_contradiction, end_id));
                slot_ids[static_cast<size_t>(s.result_slot)] = saved;
                next_id = saved + 1;
                break;
            }
            }
        }
    }
};

} // namespace

size_t ScriptBuilder::line_count() const { return count_lines(steps_); }

ProofScript ScriptBuilder::resolve(const ScopeLayout &layout, SymRef goal) const {
    Resolver r{layout, std::vector<int>(static_cast<size_t>(*slots_), 0)};
    ProofScript script;
    int next_id = layout.db.size() + 1;
    r.run(steps_, next_id, script.steps);
    script.goal_id = r.id_of(goal);
    return script;
}

} // namespace certiplan
