#include "certiplan/mutate.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace certiplan {

namespace {

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::string join_lines(const std::vector<std::string> &lines) {
    std::ostringstream out;
    for (const std::string &l : lines)
        out << l << '\n';
    return out.str();
}

std::vector<std::string> tokens_of(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t)
        toks.push_back(t);
    return toks;
}

std::string join_tokens(const std::vector<std::string> &toks) {
    std::ostringstream out;
    for (size_t i = 0; i < toks.size(); ++i) {
        if (i)
            out << ' ';
        out << toks[i];
    }
    return out.str();
}

bool is_integer(const std::string &t) {
    if (t.empty())
        return false;
    size_t i = t[0] == '-' ? 1 : 0;
    if (i >= t.size())
        return false;
    for (; i < t.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(t[i])))
            return false;
    return true;
}

size_t pick(std::mt19937_64 &rng, size_t n) { return static_cast<size_t>(rng() % n); }

} // namespace

std::string mutate_certificate_text(const std::string &text, std::mt19937_64 &rng) {
    std::vector<std::string> lines = split_lines(text);
    if (lines.empty())
        return text;

    auto line_indices_with = [&](const std::string &kw) {
        std::vector<size_t> out;
        for (size_t i = 0; i < lines.size(); ++i) {
            auto toks = tokens_of(lines[i]);
            if (!toks.empty() && toks[0] == kw)
                out.push_back(i);
        }
        return out;
    };

    for (int attempt = 0; attempt < 8; ++attempt) {
        switch (rng() % 8) {
        case 0: { // bound bump
            auto idx = line_indices_with("bound");
            if (idx.empty())
                break;
            auto toks = tokens_of(lines[idx[0]]);
            toks[1] = std::to_string(std::stoll(toks[1]) + 1);
            lines[idx[0]] = join_tokens(toks);
            return join_lines(lines);
        }
        case 1: { // coefficient or degree flip in a circuit reification
            auto idx = line_indices_with("reif");
            if (idx.empty())
                break;
            size_t li = idx[pick(rng, idx.size())];
            auto toks = tokens_of(lines[li]);
            std::vector<size_t> ints;
            for (size_t i = 3; i < toks.size(); ++i)
                if (is_integer(toks[i]))
                    ints.push_back(i);
            if (ints.empty())
                break;
            size_t ti = ints[pick(rng, ints.size())];
            long long v = std::stoll(toks[ti]);
            toks[ti] = std::to_string(rng() % 2 ? v + 1 : std::max<long long>(0, v - 1));
            lines[li] = join_tokens(toks);
            return join_lines(lines);
        }
        case 2: { // delete a proof step or reification line
            std::vector<size_t> candidates;
            for (const char *kw : {"rup", "red", "lin", "a", "sat", "div", "reif"})
                for (size_t i : line_indices_with(kw))
                    candidates.push_back(i);
            if (candidates.empty())
                break;
            lines.erase(lines.begin() + static_cast<long>(candidates[pick(rng, candidates.size())]));
            return join_lines(lines);
        }
        case 3: { // rewire: swap a circuit body variable for another head
            auto reifs = line_indices_with("reif");
            if (reifs.size() < 2)
                break;
            std::vector<std::string> heads;
            for (size_t i : reifs)
                heads.push_back(tokens_of(lines[i])[1]);
            size_t li = reifs[pick(rng, reifs.size())];
            auto toks = tokens_of(lines[li]);
            std::vector<size_t> vars;
            for (size_t i = 3; i < toks.size(); ++i)
                if (!is_integer(toks[i]) && toks[i] != ">=")
                    vars.push_back(i);
            if (vars.empty())
                break;
            size_t vi = vars[pick(rng, vars.size())];
            toks[vi] = heads[pick(rng, heads.size())];
            lines[li] = join_tokens(toks);
            return join_lines(lines);
        }
        case 4: { // polarity flip in a rup claim or reification body
            std::vector<size_t> candidates;
            for (const char *kw : {"rup", "reif", "red"})
                for (size_t i : line_indices_with(kw))
                    candidates.push_back(i);
            if (candidates.empty())
                break;
            size_t li = candidates[pick(rng, candidates.size())];
            auto toks = tokens_of(lines[li]);
            std::vector<size_t> vars;
            for (size_t i = 1; i < toks.size(); ++i)
                if (!is_integer(toks[i]) && toks[i] != ">=" && toks[i] != ":" &&
                    (toks[i][0] == 'x' || toks[i][0] == '~'))
                    vars.push_back(i);
            if (vars.empty())
                break;
            size_t vi = vars[pick(rng, vars.size())];
            if (toks[vi][0] == '~')
                toks[vi] = toks[vi].substr(1);
            else
                toks[vi] = "~" + toks[vi];
            lines[li] = join_tokens(toks);
            return join_lines(lines);
        }
        case 5: { // retarget a qed or subproof ending
            std::vector<size_t> candidates;
            for (const char *kw : {"qed", "contradiction", "derived"})
                for (size_t i : line_indices_with(kw))
                    candidates.push_back(i);
            if (candidates.empty())
                break;
            size_t li = candidates[pick(rng, candidates.size())];
            auto toks = tokens_of(lines[li]);
            long long v = std::stoll(toks[1]);
            toks[1] = std::to_string(std::max<long long>(1, v + (rng() % 2 ? 1 : -1)));
            lines[li] = join_tokens(toks);
            return join_lines(lines);
        }
        case 6: { // drop a declared threshold
            auto idx = line_indices_with("declare");
            if (idx.empty())
                break;
            size_t li = idx[pick(rng, idx.size())];
            auto toks = tokens_of(lines[li]);
            if (toks.size() <= 2)
                break;
            toks.erase(toks.begin() + 2 + static_cast<long>(pick(rng, toks.size() - 2)));
            lines[li] = join_tokens(toks);
            return join_lines(lines);
        }
        case 7: { // tweak a number in a derivation step
            std::vector<size_t> candidates;
            for (const char *kw : {"lin", "div", "sat", "rup", "red"})
                for (size_t i : line_indices_with(kw))
                    candidates.push_back(i);
            if (candidates.empty())
                break;
            size_t li = candidates[pick(rng, candidates.size())];
            auto toks = tokens_of(lines[li]);
            std::vector<size_t> ints;
            for (size_t i = 1; i < toks.size(); ++i)
                if (is_integer(toks[i]))
                    ints.push_back(i);
            if (ints.empty())
                break;
            size_t ti = ints[pick(rng, ints.size())];
            long long v = std::stoll(toks[ti]);
            toks[ti] = std::to_string(std::max<long long>(0, v + (rng() % 2 ? 1 : -1)));
            lines[li] = join_tokens(toks);
            return join_lines(lines);
        }
        }
    }
    // fall back to the always-available bound bump
    auto idx = line_indices_with("bound");
    if (!idx.empty()) {
        auto toks = tokens_of(lines[idx[0]]);
        toks[1] = std::to_string(std::stoll(toks[1]) + 1);
        lines[idx[0]] = join_tokens(toks);
    }
    return join_lines(lines);
}

} // namespace certiplan
