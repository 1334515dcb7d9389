#ifndef CERTIPLAN_PB_H
#define CERTIPLAN_PB_H

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace certiplan {

using VarId = int32_t;

// Interns variable names. Ids are dense, starting at 0. The intern order is
// also the canonical term order used when rendering constraints as text.
class VarPool {
public:
    VarId intern(std::string_view name);
    const std::string &name(VarId v) const { return names_.at(static_cast<size_t>(v)); }
    bool contains(std::string_view name) const { return index_.count(std::string(name)) > 0; }
    VarId lookup(std::string_view name) const;
    size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> index_;
};

struct Lit {
    VarId var = -1;
    bool positive = true;

    Lit() = default;
    Lit(VarId v, bool pos) : var(v), positive(pos) {}
    Lit negated() const { return Lit(var, !positive); }
    bool operator==(const Lit &o) const = default;
};

inline Lit pos(VarId v) { return Lit(v, true); }
inline Lit neg(VarId v) { return Lit(v, false); }

// Input term for normalization; coefficient may be any integer.
struct RawTerm {
    long long coef;
    Lit lit;
};

// One term of a stored constraint: coef >= 1, at most one term per variable.
struct Term {
    VarId var;
    long long coef;
    bool positive;

    Lit lit() const { return Lit(var, positive); }
    bool operator==(const Term &o) const = default;
};

// A pseudo-Boolean inequality sum(coef_i * lit_i) >= degree with coef_i >= 1,
// degree >= 0, and terms sorted by variable id. A degree of 0 is allowed with
// terms present (literal axioms), though normalize() drops such terms.
class PBConstraint {
public:
    PBConstraint() = default;
    static PBConstraint axiom(Lit l) {
        PBConstraint c;
        c.terms_.push_back(Term{l.var, 1, l.positive});
        return c;
    }
    // Trusted constructor: terms must be sorted by var, coefs >= 1, degree >= 0.
    static PBConstraint make(std::vector<Term> terms, long long degree);

    const std::vector<Term> &terms() const { return terms_; }
    long long degree() const { return degree_; }
    long long coef_sum() const;
    bool empty_sum() const { return terms_.empty(); }
    // Unsatisfiable in the canonical "empty sum, positive degree" shape.
    bool is_contradiction() const { return terms_.empty() && degree_ >= 1; }
    const Term *find(VarId v) const;

    bool operator==(const PBConstraint &o) const = default;

private:
    std::vector<Term> terms_;
    long long degree_ = 0;
};

// Normalized form: negative coefficients flipped, duplicate variables merged
// (x and ~x cancel against the degree). A non-positive degree clamps to the
// empty trivially-true constraint; a degree above the coefficient sum
// collapses to the canonical empty contradiction ">= 1".
PBConstraint normalize(const std::vector<RawTerm> &raw, long long degree);

// Re-applies the normalize() canonicalization to an already stored constraint.
PBConstraint renormalize(const PBConstraint &c);
bool equal_normalized(const PBConstraint &a, const PBConstraint &b);

// Negation: sum(a_i l_i) <= A - 1, normalized.
PBConstraint negate(const PBConstraint &c);

// Raised by cutting-plane arithmetic on invalid inputs (negative multiplier,
// zero divisor, overflow).
class CpError : public std::runtime_error {
public:
    explicit CpError(const std::string &what) : std::runtime_error(what) {}
};

PBConstraint lin_combine(const PBConstraint &a, long long ca,
                         const PBConstraint &b, long long cb);
PBConstraint divide_ceil(const PBConstraint &c, long long divisor);
PBConstraint saturate(const PBConstraint &c);

enum class ReifDir { Iff, Implies, ImpliedBy };

// A fresh variable tied to a constraint: r <=> C, r => C or r <= C.
struct Reification {
    VarId var;
    ReifDir dir;
    PBConstraint body;
};

// r => C as a constraint: A*~r + sum(a_i l_i) >= A.
PBConstraint reif_forward(VarId r, const PBConstraint &body);
// r <= C as a constraint: (M-A+1)*r + sum(a_i ~l_i) >= M-A+1.
PBConstraint reif_backward(VarId r, const PBConstraint &body);
// Iff yields [forward, backward]; Implies/ImpliedBy yield one constraint.
std::vector<PBConstraint> expand_reification(const Reification &r);

// Append-only constraint store with dense ids starting at 1.
class ConstraintDB {
public:
    int add(PBConstraint c) {
        cons_.push_back(std::move(c));
        return static_cast<int>(cons_.size());
    }
    const PBConstraint &at(int id) const { return cons_.at(static_cast<size_t>(id - 1)); }
    int size() const { return static_cast<int>(cons_.size()); }
    const std::vector<PBConstraint> &all() const { return cons_; }

private:
    std::vector<PBConstraint> cons_;
};

// Derivation steps. Ids refer to the scoped database (enumerated first)
// followed by previously derived constraints. Inside a Red subproof the
// negated claim takes the next id, sub-derivations follow, and all of them
// are discarded when the subproof closes; the claim then takes the id the
// negation had.
struct ProofStep {
    enum class Kind { Axiom, Lin, Div, Sat, Rup, Red };

    Kind kind = Kind::Axiom;
    Lit lit;                      // Axiom
    int id1 = 0, id2 = 0;         // Lin (both), Div/Sat (id1)
    long long c1 = 0, c2 = 0;     // Lin multipliers, Div divisor (c1)
    PBConstraint claimed;         // Rup, Red
    std::vector<ProofStep> sub;   // Red
    bool sub_contradiction = true; // Red ending kind
    int sub_end_id = 0;           // Red ending reference

    static ProofStep axiom(Lit l);
    static ProofStep lin(int id1, long long c1, int id2, long long c2);
    static ProofStep div(int id, long long c);
    static ProofStep sat(int id);
    static ProofStep rup(PBConstraint claimed);
    static ProofStep red(PBConstraint claimed, std::vector<ProofStep> sub,
                         bool contradiction, int end_id);
};

struct ProofScript {
    std::vector<ProofStep> steps;
    int goal_id = 0;
};

// Text form used by certificate files: "2 xv_p 3 ~xv_q >= 2"; an empty sum is
// rendered as ">= <deg>".
std::string constraint_to_text(const PBConstraint &c, const VarPool &pool);
// Parses and normalizes. Throws std::runtime_error on malformed input.
PBConstraint constraint_from_text(std::string_view text, VarPool &pool);

} // namespace certiplan

#endif
