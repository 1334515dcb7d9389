#include "certiplan/certificate.h"

#include <fstream>
#include <set>
#include <sstream>

namespace certiplan {

namespace {

void render_steps(std::ostringstream &out, const std::vector<ProofStep> &steps,
                  const VarPool &pool, int indent) {
    std::string pad(static_cast<size_t>(indent), ' ');
    for (const ProofStep &st : steps) {
        switch (st.kind) {
        case ProofStep::Kind::Axiom:
            out << pad << "a " << (st.lit.positive ? "" : "~") << pool.name(st.lit.var) << '\n';
            break;
        case ProofStep::Kind::Lin:
            out << pad << "lin " << st.c1 << ' ' << st.id1 << ' ' << st.c2 << ' ' << st.id2 << '\n';
            break;
        case ProofStep::Kind::Div:
            out << pad << "div " << st.id1 << ' ' << st.c1 << '\n';
            break;
        case ProofStep::Kind::Sat:
            out << pad << "sat " << st.id1 << '\n';
            break;
        case ProofStep::Kind::Rup:
            out << pad << "rup " << constraint_to_text(st.claimed, pool) << '\n';
            break;
        case ProofStep::Kind::Red:
            out << pad << "red " << constraint_to_text(st.claimed, pool) << '\n';
            render_steps(out, st.sub, pool, indent + 2);
            out << pad << "  " << (st.sub_contradiction ? "contradiction " : "derived ")
                << st.sub_end_id << '\n';
            out << pad << "end\n";
            break;
        }
    }
}

std::string mm_text(long long l) {
    return l < 0 ? "m" + std::to_string(-l) : std::to_string(l);
}

} // namespace

std::string serialize(const Certificate &cert, const VarPool &pool) {
    std::ostringstream out;
    out << "pbcert " << cert.version << '\n';
    out << "bound " << cert.bound << '\n';
    out << "declare ge";
    for (long long k : cert.decls.ge)
        out << ' ' << k;
    out << '\n';
    out << "declare delta";
    for (long long k : cert.decls.delta)
        out << ' ' << k;
    out << '\n';
    out << "declare mmge";
    for (long long l : cert.decls.mm)
        out << ' ' << mm_text(l);
    out << '\n';
    out << "circuit\n";
    for (const Reification &r : cert.circuit)
        out << "reif " << pool.name(r.var) << " : " << constraint_to_text(r.body, pool) << '\n';
    out << "output " << pool.name(cert.output) << '\n';
    const char *names[3] = {"init", "goal", "ind"};
    const ProofScript *scripts[3] = {&cert.init_proof, &cert.goal_proof, &cert.ind_proof};
    for (int i = 0; i < 3; ++i) {
        out << "proof " << names[i] << '\n';
        render_steps(out, scripts[i]->steps, pool, 0);
        out << "qed " << scripts[i]->goal_id << '\n';
    }
    return out.str();
}

namespace {

struct Line {
    int no;
    std::vector<std::string> tokens;
    std::string rest_after; // untokenized tail, for constraints
};

class CertParser {
public:
    CertParser(std::string_view text, VarPool &pool) : pool_(pool) {
        int no = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t end = text.find('\n', pos);
            std::string_view raw = text.substr(
                pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
            ++no;
            size_t hash = raw.find('#');
            if (hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            std::istringstream in{std::string(raw)};
            Line l{no, {}, std::string(raw)};
            std::string tok;
            while (in >> tok)
                l.tokens.push_back(tok);
            if (!l.tokens.empty())
                lines_.push_back(std::move(l));
            if (end == std::string_view::npos)
                break;
            pos = end + 1;
        }
    }

    Certificate parse() {
        Certificate cert;
        expect_keyword("pbcert");
        cert.version = static_cast<int>(parse_int(cur().tokens.at(1), cur().no));
        if (cert.version != 1)
            throw CertParseError(cur().no, "unsupported certificate version");
        advance();
        expect_keyword("bound");
        require_arity(2);
        cert.bound = parse_int(cur().tokens.at(1), cur().no);
        if (cert.bound < 0)
            throw CertParseError(cur().no, "negative bound");
        advance();
        cert.decls.ge = parse_declare("ge", false);
        cert.decls.delta = parse_declare("delta", false);
        cert.decls.mm = parse_declare("mmge", true);

        expect_keyword("circuit");
        require_arity(1);
        advance();
        std::set<std::string> heads;
        while (!done() && cur().tokens.at(0) == "reif") {
            int no = cur().no;
            if (cur().tokens.size() < 3 || cur().tokens.at(2) != ":")
                throw CertParseError(no, "expected 'reif <var> : <constraint>'");
            const std::string &head = cur().tokens.at(1);
            if (head.empty() || head[0] != 'x')
                throw CertParseError(no, "malformed head variable '" + head + "'");
            if (!heads.insert(head).second)
                throw CertParseError(no, "circuit head reused: " + head);
            size_t colon = cur().rest_after.find(':');
            std::string body_text = cur().rest_after.substr(colon + 1);
            PBConstraint body;
            try {
                body = constraint_from_text(body_text, pool_);
            } catch (const std::exception &e) {
                throw CertParseError(no, e.what());
            }
            cert.circuit.push_back(Reification{pool_.intern(head), ReifDir::Iff, std::move(body)});
            advance();
        }
        expect_keyword("output");
        require_arity(2);
        if (!heads.count(cur().tokens.at(1)))
            throw CertParseError(cur().no, "output variable is not a circuit head");
        cert.output = pool_.intern(cur().tokens.at(1));
        advance();

        const char *names[3] = {"init", "goal", "ind"};
        ProofScript *scripts[3] = {&cert.init_proof, &cert.goal_proof, &cert.ind_proof};
        for (int i = 0; i < 3; ++i) {
            expect_keyword("proof");
            require_arity(2);
            if (cur().tokens.at(1) != names[i])
                throw CertParseError(cur().no, std::string("expected 'proof ") + names[i] + "'");
            advance();
            *scripts[i] = parse_script();
        }
        if (!done())
            throw CertParseError(cur().no, "trailing content after final proof");
        return cert;
    }

private:
    VarPool &pool_;
    std::vector<Line> lines_;
    size_t at_ = 0;

    bool done() const { return at_ >= lines_.size(); }
    const Line &cur() const {
        if (done())
            throw CertParseError(lines_.empty() ? 1 : lines_.back().no + 1, "unexpected end of file");
        return lines_[at_];
    }
    void advance() { ++at_; }

    void expect_keyword(const std::string &kw) {
        if (cur().tokens.at(0) != kw)
            throw CertParseError(cur().no, "expected '" + kw + "', got '" + cur().tokens.at(0) + "'");
    }
    void require_arity(size_t n) {
        if (cur().tokens.size() != n)
            throw CertParseError(cur().no, "wrong number of tokens on '" + cur().tokens.at(0) + "' line");
    }

    long long parse_int(const std::string &tok, int no) {
        try {
            size_t pos = 0;
            long long v = std::stoll(tok, &pos);
            if (pos != tok.size())
                throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception &) {
            throw CertParseError(no, "expected integer, got '" + tok + "'");
        }
    }

    long long parse_mm(const std::string &tok, int no) {
        if (!tok.empty() && tok[0] == 'm')
            return -parse_int(tok.substr(1), no);
        return parse_int(tok, no);
    }

    std::set<long long> parse_declare(const std::string &what, bool mm) {
        expect_keyword("declare");
        if (cur().tokens.size() < 2 || cur().tokens.at(1) != what)
            throw CertParseError(cur().no, "expected 'declare " + what + "'");
        std::set<long long> out;
        long long prev = 0;
        bool first = true;
        for (size_t i = 2; i < cur().tokens.size(); ++i) {
            long long v = mm ? parse_mm(cur().tokens.at(i), cur().no)
                             : parse_int(cur().tokens.at(i), cur().no);
            if (!first && v <= prev)
                throw CertParseError(cur().no, "'declare " + what + "' values must be ascending");
            out.insert(v);
            prev = v;
            first = false;
        }
        advance();
        return out;
    }

    PBConstraint parse_constraint_tail(size_t skip_tokens) {
        // Reassemble the raw line minus the leading keyword(s).
        std::istringstream in(cur().rest_after);
        std::string tok;
        for (size_t i = 0; i < skip_tokens; ++i)
            in >> tok;
        std::string rest;
        std::getline(in, rest);
        try {
            return constraint_from_text(rest, pool_);
        } catch (const std::exception &e) {
            throw CertParseError(cur().no, e.what());
        }
    }

    int parse_id(const std::string &tok) {
        long long v = parse_int(tok, cur().no);
        if (v < 1 || v > INT32_MAX)
            throw CertParseError(cur().no, "invalid constraint id " + tok);
        return static_cast<int>(v);
    }

    // Parses steps until one of `terminators` is reached (not consumed).
    std::vector<ProofStep> parse_steps(const std::set<std::string> &terminators) {
        std::vector<ProofStep> steps;
        while (true) {
            const std::string &kw = cur().tokens.at(0);
            if (terminators.count(kw))
                return steps;
            if (kw == "a") {
                require_arity(2);
                std::string lit_tok = cur().tokens.at(1);
                bool positive = true;
                if (!lit_tok.empty() && lit_tok[0] == '~') {
                    positive = false;
                    lit_tok = lit_tok.substr(1);
                }
                if (lit_tok.empty() || lit_tok[0] != 'x')
                    throw CertParseError(cur().no, "malformed literal '" + cur().tokens.at(1) + "'");
                steps.push_back(ProofStep::axiom(Lit(pool_.intern(lit_tok), positive)));
                advance();
            } else if (kw == "lin") {
                require_arity(5);
                long long c1 = parse_int(cur().tokens.at(1), cur().no);
                int id1 = parse_id(cur().tokens.at(2));
                long long c2 = parse_int(cur().tokens.at(3), cur().no);
                int id2 = parse_id(cur().tokens.at(4));
                steps.push_back(ProofStep::lin(id1, c1, id2, c2));
                advance();
            } else if (kw == "div") {
                require_arity(3);
                int id = parse_id(cur().tokens.at(1));
                long long c = parse_int(cur().tokens.at(2), cur().no);
                steps.push_back(ProofStep::div(id, c));
                advance();
            } else if (kw == "sat") {
                require_arity(2);
                steps.push_back(ProofStep::sat(parse_id(cur().tokens.at(1))));
                advance();
            } else if (kw == "rup") {
                PBConstraint claimed = parse_constraint_tail(1);
                steps.push_back(ProofStep::rup(std::move(claimed)));
                advance();
            } else if (kw == "red") {
                PBConstraint claimed = parse_constraint_tail(1);
                advance();
                std::vector<ProofStep> sub = parse_steps({"contradiction", "derived"});
                bool contradiction = cur().tokens.at(0) == "contradiction";
                require_arity(2);
                int end_id = parse_id(cur().tokens.at(1));
                advance();
                expect_keyword("end");
                require_arity(1);
                advance();
                steps.push_back(
                    ProofStep::red(std::move(claimed), std::move(sub), contradiction, end_id));
            } else {
                throw CertParseError(cur().no, "unknown step mnemonic '" + kw + "'");
            }
        }
    }

    ProofScript parse_script() {
        ProofScript script;
        script.steps = parse_steps({"qed"});
        expect_keyword("qed");
        require_arity(2);
        script.goal_id = parse_id(cur().tokens.at(1));
        advance();
        return script;
    }
};

} // namespace

Certificate parse_certificate(std::string_view text, VarPool &pool) {
    return CertParser(text, pool).parse();
}

Certificate load_certificate(const std::string &path, VarPool &pool) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open certificate file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str(), pool);
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace certiplan
