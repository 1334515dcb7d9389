#ifndef CERTIPLAN_ENCODING_H
#define CERTIPLAN_ENCODING_H

#include "certiplan/catalog.h"
#include "certiplan/pb.h"
#include "certiplan/task.h"

#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace certiplan {

// Thresholds actually referenced by a certificate; everything else is
// introduced lazily. ge is bounded to 0..B, mm values may be any integer.
struct LazyCostDecls {
    std::set<long long> ge;
    std::set<long long> delta;
    std::set<long long> mm;

    bool operator==(const LazyCostDecls &o) const = default;
};

class EncodingError : public std::runtime_error {
public:
    explicit EncodingError(const std::string &what) : std::runtime_error(what) {}
};

enum class ReifFamily : int {
    Init,      // xrI, the initial-state indicator
    Goal,      // xrG
    DeltaPair, // xdelta_k as conjunction of the two directions
    DeltaGe,   // primed cost minus cost >= k
    DeltaLe,   // primed cost minus cost <= k
    Ge,        // xge_k
    Gep,       // xgep_k
    Eq,        // frame triple per state variable
    Geq,
    Leq,
    Act,   // xa_<action>, forward-only
    Trans, // xrT
    MmGe,  // clipped placeholder resolutions
    MmGep,
    Circuit,       // certificate circuit reifications, by position
    CircuitPrimed, // their mechanical primed copies
};

struct ReifKey {
    ReifFamily family;
    long long param = 0;

    auto operator<=>(const ReifKey &) const = default;
};

struct ConstraintRef {
    ReifKey key;
    bool forward = true; // the r => C constraint; false is r <= C

    auto operator<=>(const ConstraintRef &) const = default;
};

// Partition membership bits.
enum : unsigned {
    PART_INIT = 1u,
    PART_GOAL = 2u,
    PART_TRANS = 4u,
    PART_GE = 8u,
};

struct TaggedReif {
    ReifKey key;
    Reification reif;
    unsigned partitions;
};

struct TaskEncoding {
    std::vector<TaggedReif> reifs; // canonical emission order
    VarId r_init, r_goal, r_trans;

    std::vector<Reification> partition(unsigned mask) const;
};

// Canonical reification sequence for the task under the given bound and
// declarations. Validates that every action cost has a declared delta and
// that the bound itself is a declared ge threshold.
TaskEncoding build_encoding(const Task &t, VarCatalog &cat, const LazyCostDecls &decls);

// Resolutions tying each declared placeholder to its clipped real threshold,
// one unprimed and one primed reification per value, ascending.
std::vector<TaggedReif> resolve_placeholders(VarCatalog &cat, const LazyCostDecls &decls);

// Primed copy of a constraint or reification; circuit heads get a fresh twin.
PBConstraint prime_constraint(VarCatalog &cat, const PBConstraint &c);
Reification prime_reification(VarCatalog &cat, const Reification &r);

enum class LemmaKind { Init, Goal, Ind };

// Scoped database for one certificate lemma: the encoding partitions in
// canonical order, then the placeholder resolutions, then the circuit
// expansions (forward before backward), and for the inductivity lemma the
// primed circuit expansions after the unprimed ones. Derivation ids continue
// after the last scope id.
struct ScopeLayout {
    ConstraintDB db;
    std::map<std::tuple<int, long long, bool>, int> ids;

    int id_of(const ConstraintRef &r) const;
    bool has(const ConstraintRef &r) const;
    void add(const ReifKey &key, const Reification &reif);
};

ScopeLayout build_lemma_scope(const Task &t, VarCatalog &cat, const LazyCostDecls &decls,
                              const std::vector<Reification> &circuit, LemmaKind kind);

// Recomputes the expanded constraint behind a cost-machinery reference
// (Ge/Gep, Delta*, MmGe/MmGep) without building a scope; used by generators
// that need the operand values for linear combinations.
PBConstraint encoding_ref_constraint(VarCatalog &cat, const ConstraintRef &ref);

} // namespace certiplan

#endif
