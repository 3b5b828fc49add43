#include "gibbslab/potential.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "gibbslab/errors.hpp"

namespace gibbslab {

double Potential::pair_term(const Graph& g, int edge, int endpoint,
                            int symbol_here, int symbol_other) const {
    const auto q = static_cast<std::size_t>(alphabet);
    const int first = g.edges[edge].first;
    if (endpoint == first)
        return coupling[edge][static_cast<std::size_t>(symbol_here) * q + symbol_other];
    return coupling[edge][static_cast<std::size_t>(symbol_other) * q + symbol_here];
}

double Potential::energy(const Graph& g, const std::vector<int>& coloring) const {
    double e = 0.0;
    for (int v = 0; v < g.n; ++v) e += field[v][coloring[v]];
    const auto q = static_cast<std::size_t>(alphabet);
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto [u, v] = g.edges[i];
        e += coupling[i][static_cast<std::size_t>(coloring[u]) * q + coloring[v]];
    }
    return e;
}

void Potential::check_compatible(const Graph& g) const {
    if (static_cast<int>(field.size()) != g.n ||
        static_cast<int>(coupling.size()) != g.edge_count())
        throw std::invalid_argument("potential tables do not match the graph");
    for (const auto& f : field) {
        if (static_cast<int>(f.size()) != alphabet)
            throw std::invalid_argument("field table has wrong alphabet size");
        for (double x : f)
            if (!std::isfinite(x))
                throw InvariantViolationError("non-finite field entry");
    }
    for (const auto& c : coupling) {
        if (static_cast<int>(c.size()) != alphabet * alphabet)
            throw std::invalid_argument("pair table has wrong alphabet size");
        for (double x : c)
            if (!std::isfinite(x))
                throw InvariantViolationError("non-finite coupling entry");
    }
}

namespace {

std::vector<std::string> default_symbols(int q) {
    std::vector<std::string> names(q);
    for (int a = 0; a < q; ++a) names[a] = std::to_string(a);
    return names;
}

} // namespace

Potential ising_potential(const Graph& g, double beta, double field) {
    Potential p;
    p.alphabet = 2;
    p.symbols = default_symbols(2);
    const double spin[2] = {+1.0, -1.0};
    p.field.assign(g.n, {-field * spin[0], -field * spin[1]});
    std::vector<double> pair(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) pair[a * 2 + b] = -beta * spin[a] * spin[b];
    p.coupling.assign(g.edge_count(), pair);
    return p;
}

Potential potts_potential(const Graph& g, int q, double beta) {
    if (q < 2) throw std::invalid_argument("potts needs q >= 2");
    Potential p;
    p.alphabet = q;
    p.symbols = default_symbols(q);
    p.field.assign(g.n, std::vector<double>(q, 0.0));
    std::vector<double> pair(static_cast<std::size_t>(q) * q, 0.0);
    for (int a = 0; a < q; ++a) pair[static_cast<std::size_t>(a) * q + a] = -beta;
    p.coupling.assign(g.edge_count(), pair);
    return p;
}

Potential transfer_potential(const Potential& p, const NFoldCovering& c) {
    p.check_compatible(c.base);
    Potential out;
    out.alphabet = p.alphabet;
    out.symbols = p.symbols;
    out.field.resize(c.cover.n);
    for (int u = 0; u < c.cover.n; ++u)
        out.field[u] = p.field[c.base_of_vertex(u)];
    out.coupling.resize(c.cover.edge_count());
    for (int e = 0; e < c.cover.edge_count(); ++e)
        out.coupling[e] = p.coupling[c.base_of_edge(e)];
    return out;
}

Potential load_potential(const Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open potential file: " + path);

    Potential p;
    std::string line, section;
    std::vector<std::tuple<int, std::string, double>> fields;
    std::vector<std::tuple<int, int, std::string, std::string, double>> pairs;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "[alphabet]" || tok == "[fields]" || tok == "[pairs]") {
            section = tok;
            if (section == "[alphabet]") {
                std::string sym;
                while (ls >> sym) p.symbols.push_back(sym);
            }
            continue;
        }
        if (section == "[alphabet]") {
            p.symbols.push_back(tok);
            std::string sym;
            while (ls >> sym) p.symbols.push_back(sym);
        } else if (section == "[fields]") {
            const int v = std::stoi(tok);
            std::string sym;
            double val;
            if (!(ls >> sym >> val))
                throw std::runtime_error("bad [fields] line in " + path);
            fields.emplace_back(v, sym, val);
        } else if (section == "[pairs]") {
            const int u = std::stoi(tok);
            int v;
            std::string sa, sb;
            double val;
            if (!(ls >> v >> sa >> sb >> val))
                throw std::runtime_error("bad [pairs] line in " + path);
            pairs.emplace_back(u, v, sa, sb, val);
        } else {
            throw std::runtime_error("line outside any section in " + path);
        }
    }

    p.alphabet = static_cast<int>(p.symbols.size());
    if (p.alphabet < 2)
        throw std::runtime_error("potential alphabet needs at least two symbols");
    const auto symbol_index = [&](const std::string& s) {
        for (int a = 0; a < p.alphabet; ++a)
            if (p.symbols[a] == s) return a;
        throw std::runtime_error("unknown symbol '" + s + "' in " + path);
    };

    p.field.assign(g.n, std::vector<double>(p.alphabet, 0.0));
    p.coupling.assign(g.edge_count(),
                      std::vector<double>(static_cast<std::size_t>(p.alphabet) * p.alphabet, 0.0));
    for (const auto& [v, sym, val] : fields) {
        if (v < 0 || v >= g.n) throw std::runtime_error("field vertex out of range");
        p.field[v][symbol_index(sym)] = val;
    }
    for (const auto& [u, v, sa, sb, val] : pairs) {
        const int e = g.edge_between(u, v);
        if (e < 0)
            throw std::runtime_error("pair entry on a non-edge " + std::to_string(u) +
                                     "-" + std::to_string(v));
        int a = symbol_index(sa), b = symbol_index(sb);
        if (u > v) std::swap(a, b); // store against the canonical orientation
        p.coupling[e][static_cast<std::size_t>(a) * p.alphabet + b] = val;
    }
    p.check_compatible(g);
    return p;
}

void save_potential(const Potential& p, const Graph& g, const std::string& path) {
    p.check_compatible(g);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write potential file: " + path);
    out << std::setprecision(17);
    out << "[alphabet]";
    for (const auto& s : p.symbols) out << " " << s;
    out << "\n[fields]\n";
    for (int v = 0; v < g.n; ++v)
        for (int a = 0; a < p.alphabet; ++a)
            if (p.field[v][a] != 0.0)
                out << v << " " << p.symbols[a] << " " << p.field[v][a] << "\n";
    out << "[pairs]\n";
    for (int e = 0; e < g.edge_count(); ++e)
        for (int a = 0; a < p.alphabet; ++a)
            for (int b = 0; b < p.alphabet; ++b) {
                const double val = p.coupling[e][static_cast<std::size_t>(a) * p.alphabet + b];
                if (val != 0.0)
                    out << g.edges[e].first << " " << g.edges[e].second << " "
                        << p.symbols[a] << " " << p.symbols[b] << " " << val << "\n";
            }
}

} // namespace gibbslab
