#include "gibbslab/block_code.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gibbslab/errors.hpp"

namespace gibbslab {

namespace {

void collect_preorder(const Pattern& p, std::vector<int>& out) {
    out.push_back(p.label);
    for (const Pattern& c : p.children) collect_preorder(c, out);
}

} // namespace

void canonicalize(Pattern& pattern) {
    for (Pattern& c : pattern.children) canonicalize(c);
    std::sort(pattern.children.begin(), pattern.children.end(),
              [](const Pattern& a, const Pattern& b) {
                  return pattern_key(a) < pattern_key(b);
              });
}

std::vector<int> pattern_key(const Pattern& pattern) {
    std::vector<int> out;
    collect_preorder(pattern, out);
    return out;
}

namespace {

// All canonical subtrees of given depth whose root has `fanout` children.
std::vector<Pattern> enumerate_subtrees(int alphabet, int fanout, int depth) {
    std::vector<Pattern> out;
    if (depth == 0) {
        for (int a = 0; a < alphabet; ++a) out.push_back(Pattern{a, {}});
        return out;
    }
    const std::vector<Pattern> below = enumerate_subtrees(alphabet, fanout, depth - 1);
    // Multisets of `fanout` children, taken as nondecreasing index tuples.
    std::vector<int> pick(fanout, 0);
    const int m = static_cast<int>(below.size());
    while (true) {
        for (int a = 0; a < alphabet; ++a) {
            Pattern p{a, {}};
            for (int i : pick) p.children.push_back(below[i]);
            canonicalize(p);
            out.push_back(std::move(p));
        }
        int k = fanout - 1;
        while (k >= 0 && pick[k] == m - 1) --k;
        if (k < 0) break;
        const int next = pick[k] + 1;
        for (int i = k; i < fanout; ++i) pick[i] = next;
    }
    return out;
}

} // namespace

std::vector<Pattern> enumerate_ball_patterns(int alphabet, int degree, int radius) {
    if (alphabet < 1 || degree < 1)
        throw std::invalid_argument("alphabet and degree must be positive");
    if (radius == 0) {
        std::vector<Pattern> out;
        for (int a = 0; a < alphabet; ++a) out.push_back(Pattern{a, {}});
        return out;
    }
    const std::vector<Pattern> below =
        enumerate_subtrees(alphabet, degree - 1, radius - 1);
    std::vector<Pattern> out;
    std::vector<int> pick(degree, 0);
    const int m = static_cast<int>(below.size());
    while (true) {
        for (int a = 0; a < alphabet; ++a) {
            Pattern p{a, {}};
            for (int i : pick) p.children.push_back(below[i]);
            canonicalize(p);
            out.push_back(std::move(p));
        }
        int k = degree - 1;
        while (k >= 0 && pick[k] == m - 1) --k;
        if (k < 0) break;
        const int next = pick[k] + 1;
        for (int i = k; i < degree; ++i) pick[i] = next;
    }
    return out;
}

int BlockCode::apply(Pattern pattern) const {
    canonicalize(pattern);
    const auto it = rule.find(pattern_key(pattern));
    if (it == rule.end())
        throw std::invalid_argument("pattern not covered by the rule table");
    return it->second;
}

void BlockCode::validate() const {
    for (const Pattern& p : enumerate_ball_patterns(in_alphabet, degree, radius)) {
        const auto it = rule.find(pattern_key(p));
        if (it == rule.end())
            throw InvariantViolationError("rule table misses a canonical pattern");
        if (it->second < 0 || it->second >= out_alphabet)
            throw InvariantViolationError("rule output outside the alphabet");
    }
    if (default_symbol < 0 || default_symbol >= out_alphabet)
        throw InvariantViolationError("default symbol outside the alphabet");
}

BlockCode code_from_rule(int in_alphabet, int out_alphabet, int degree, int radius,
                         const std::function<int(const Pattern&)>& rule,
                         int default_symbol) {
    BlockCode code;
    code.in_alphabet = in_alphabet;
    code.out_alphabet = out_alphabet;
    code.degree = degree;
    code.radius = radius;
    code.default_symbol = default_symbol;
    for (const Pattern& p : enumerate_ball_patterns(in_alphabet, degree, radius))
        code.rule[pattern_key(p)] = rule(p);
    code.validate();
    return code;
}

BlockCode identity_code(int alphabet, int degree) {
    return code_from_rule(alphabet, alphabet, degree, 0,
                          [](const Pattern& p) { return p.label; });
}

BlockCode constant_code(int in_alphabet, int out_alphabet, int degree, int symbol) {
    return code_from_rule(in_alphabet, out_alphabet, degree, 0,
                          [symbol](const Pattern&) { return symbol; }, symbol);
}

BlockCode majority_code(int alphabet, int degree) {
    return code_from_rule(alphabet, alphabet, degree, 1, [alphabet](const Pattern& p) {
        std::vector<int> count(alphabet, 0);
        for (const Pattern& c : p.children) ++count[c.label];
        int best = 0;
        for (int a = 1; a < alphabet; ++a)
            if (count[a] > count[best]) best = a;
        return best;
    });
}

BlockCode builtin_code(const std::string& name, int alphabet, int degree) {
    if (name == "identity") return identity_code(alphabet, degree);
    if (name == "constant") return constant_code(alphabet, alphabet, degree, 0);
    if (name == "majority") return majority_code(alphabet, degree);
    return load_code(name);
}

void save_code(const BlockCode& code, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write code file: " + path);
    out << "in " << code.in_alphabet << "\nout " << code.out_alphabet << "\nd "
        << code.degree << "\nr " << code.radius << "\ndefault "
        << code.default_symbol << "\n";
    for (const auto& [key, symbol] : code.rule) {
        for (std::size_t i = 0; i < key.size(); ++i)
            out << (i ? " " : "") << key[i];
        out << " -> " << symbol << "\n";
    }
}

BlockCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open code file: " + path);
    BlockCode code;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "in") ls >> code.in_alphabet;
        else if (tok == "out") ls >> code.out_alphabet;
        else if (tok == "d") ls >> code.degree;
        else if (tok == "r") ls >> code.radius;
        else if (tok == "default") ls >> code.default_symbol;
        else {
            std::vector<int> key{std::stoi(tok)};
            std::string piece;
            int out_symbol = -1;
            while (ls >> piece) {
                if (piece == "->") {
                    ls >> out_symbol;
                    break;
                }
                key.push_back(std::stoi(piece));
            }
            if (out_symbol < 0)
                throw std::runtime_error("bad rule line in " + path);
            code.rule[std::move(key)] = out_symbol;
        }
    }
    code.validate();
    return code;
}

namespace {

Pattern grow_path_tree(const Graph& g, const std::vector<int>& coloring, int at,
                       int from, int depth) {
    Pattern p{coloring[at], {}};
    if (depth == 0) return p;
    for (const Arc& a : g.adj[at]) {
        if (a.to == from) continue;
        p.children.push_back(grow_path_tree(g, coloring, a.to, at, depth - 1));
    }
    return p;
}

} // namespace

Pattern path_tree_pattern(const Graph& g, const std::vector<int>& coloring,
                          int root, int radius) {
    return grow_path_tree(g, coloring, root, -1, radius);
}

std::vector<int> apply_block_code(const NFoldCovering& cov,
                                  const std::vector<int>& coloring,
                                  const BlockCode& code,
                                  const NicenessAudit& audit) {
    if (static_cast<int>(coloring.size()) != cov.cover.n)
        throw std::invalid_argument("coloring does not cover the graph");
    if (code.radius >= 1) {
        int d = 0;
        if (!cov.base.is_regular(&d) || d != code.degree)
            throw std::invalid_argument("positive-radius codes need a base graph "
                                        "regular of the code degree");
        if (audit.radius != code.radius)
            throw std::invalid_argument("audit radius does not match the code");
    }

    std::vector<int> out(cov.cover.n, code.default_symbol);
    for (int u = 0; u < cov.cover.n; ++u) {
        if (code.radius == 0) {
            out[u] = code.apply(Pattern{coloring[u], {}});
        } else if (audit.vertex_nice[u]) {
            out[u] = code.apply(path_tree_pattern(cov.cover, coloring, u, code.radius));
        }
    }
    return out;
}

std::vector<int> apply_block_code(const NFoldCovering& cov,
                                  const std::vector<int>& coloring,
                                  const BlockCode& code) {
    if (code.radius == 0) {
        NicenessAudit trivial;
        return apply_block_code(cov, coloring, code, trivial);
    }
    return apply_block_code(cov, coloring, code, niceness_audit(cov, code.radius));
}

namespace {

Pattern shape_pattern(const std::vector<std::vector<int>>& children,
                      const std::vector<int>& parent, const std::vector<int>& w,
                      int at, int from, int depth) {
    Pattern p{w[at], {}};
    if (depth == 0) return p;
    for (int c : children[at])
        if (c != from)
            p.children.push_back(shape_pattern(children, parent, w, c, at, depth - 1));
    if (parent[at] >= 0 && parent[at] != from)
        p.children.push_back(
            shape_pattern(children, parent, w, parent[at], at, depth - 1));
    return p;
}

} // namespace

std::pair<DistTable, DistTable> factor_marginals_exact(const TreeChain& chain,
                                                       const BlockCode& code,
                                                       std::size_t cap) {
    if (code.in_alphabet != chain.alphabet || code.degree != chain.degree)
        throw std::invalid_argument("code does not match the chain");

    DistTable mu_v({0}, code.out_alphabet);
    {
        const TreeShape shape = radius_ball_shape(chain.degree, code.radius);
        const DistTable ball = ball_measure(chain, shape, cap);
        const auto children = shape.children();
        std::vector<int> w(shape.size());
        for (std::size_t idx = 0; idx < ball.size(); ++idx) {
            ball.decode(idx, w);
            const int b = code.apply(
                shape_pattern(children, shape.parent, w, 0, -1, code.radius));
            mu_v.p[b] += ball.p[idx];
        }
    }

    DistTable mu_e({0, 1}, code.out_alphabet);
    {
        const TreeShape shape = edge_union_shape(chain.degree, code.radius);
        const DistTable ball = ball_measure(chain, shape, cap);
        const auto children = shape.children();
        const auto q = static_cast<std::size_t>(code.out_alphabet);
        std::vector<int> w(shape.size());
        for (std::size_t idx = 0; idx < ball.size(); ++idx) {
            ball.decode(idx, w);
            const int bu = code.apply(
                shape_pattern(children, shape.parent, w, 0, -1, code.radius));
            const int bv = code.apply(
                shape_pattern(children, shape.parent, w, 1, -1, code.radius));
            mu_e.p[static_cast<std::size_t>(bu) * q + bv] += ball.p[idx];
        }
    }
    return {mu_v, mu_e};
}

} // namespace gibbslab
