#ifndef CERTIPLAN_VERIFIER_H
#define CERTIPLAN_VERIFIER_H

#include "certiplan/certificate.h"
#include "certiplan/task.h"

namespace certiplan {

struct VerdictReport {
    bool accepted = false;
    std::string diagnostic;
    long long bound = 0;

    static VerdictReport reject(std::string why, long long b = 0) {
        return VerdictReport{false, std::move(why), b};
    }
};

// Checks a lower-bound certificate against the task: rebuilds the encoding
// and the placeholder resolutions from the declarations (never trusting the
// certificate for them), validates the circuit, builds its primed copy and
// checks the three proofs against their scoped databases and fixed goals.
VerdictReport verify_lower_bound(const Task &t, long long bound, const Certificate &cert,
                                 VarPool &pool);

// Validates the plan first, then requires the certificate to prove exactly
// the plan's cost as a lower bound.
VerdictReport verify_optimality(const Task &t, const Plan &p, const Certificate &cert,
                                VarPool &pool);

} // namespace certiplan

#endif
