#ifndef CERTIPLAN_CERTIFICATE_H
#define CERTIPLAN_CERTIFICATE_H

#include "certiplan/encoding.h"
#include "certiplan/pb.h"

#include <string>
#include <string_view>

namespace certiplan {

class CertParseError : public std::runtime_error {
public:
    CertParseError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// One file carries the circuit and all three lemma proofs. Ids inside each
// proof block count the scoped database first, then derived constraints.
struct Certificate {
    int version = 1;
    long long bound = 0;
    LazyCostDecls decls;
    std::vector<Reification> circuit; // head <=> body, in sequence order
    VarId output = -1;
    ProofScript init_proof, goal_proof, ind_proof;
};

std::string serialize(const Certificate &cert, const VarPool &pool);
Certificate parse_certificate(std::string_view text, VarPool &pool);

Certificate load_certificate(const std::string &path, VarPool &pool);
void write_file(const std::string &path, const std::string &content);

} // namespace certiplan

#endif
