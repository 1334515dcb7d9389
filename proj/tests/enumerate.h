#ifndef CERTIPLAN_TESTS_ENUMERATE_H
#define CERTIPLAN_TESTS_ENUMERATE_H

#include "certiplan/pb.h"
#include "certiplan/pb_check.h"

#include <cstdint>
#include <functional>
#include <vector>

namespace certiplan::testing {

// Enumerates all assignments of `vars` satisfying every constraint; each
// model is a bitmask aligned with the var order.
inline std::vector<uint32_t> models_of(const std::vector<PBConstraint> &cons,
                                       const std::vector<VarId> &vars) {
    std::vector<uint32_t> models;
    for (uint32_t bits = 0; bits < (1u << vars.size()); ++bits) {
        auto value = [&](VarId v) {
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == v)
                    return ((bits >> i) & 1u) != 0;
            throw std::runtime_error("models_of: variable outside the enumerated set");
        };
        bool ok = true;
        for (const PBConstraint &c : cons)
            if (!satisfies(c, value)) {
                ok = false;
                break;
            }
        if (ok)
            models.push_back(bits);
    }
    return models;
}

} // namespace certiplan::testing

#endif
