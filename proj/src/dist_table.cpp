#include "gibbslab/dist_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gibbslab/errors.hpp"

namespace gibbslab {

DistTable::DistTable(std::vector<int> domain_labels, int alphabet_size)
    : domain(std::move(domain_labels)), alphabet(alphabet_size) {
    if (alphabet < 1)
        throw std::invalid_argument("alphabet size must be >= 1");
    p.assign(table_size(alphabet, domain.size(), kDefaultEnumerationCap), 0.0);
}

std::size_t DistTable::table_size(int alphabet_size, std::size_t n_components,
                                  std::size_t cap) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n_components; ++k) {
        if (total > cap / static_cast<std::size_t>(alphabet_size))
            throw CapExceededError("state space exceeds enumeration cap of " +
                                   std::to_string(cap));
        total *= static_cast<std::size_t>(alphabet_size);
    }
    return total;
}

std::size_t DistTable::index_of(const std::vector<int>& symbols) const {
    std::size_t idx = 0;
    for (int s : symbols)
        idx = idx * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(s);
    return idx;
}

void DistTable::decode(std::size_t index, std::vector<int>& symbols) const {
    symbols.resize(domain.size());
    for (std::size_t k = domain.size(); k-- > 0;) {
        symbols[k] = static_cast<int>(index % static_cast<std::size_t>(alphabet));
        index /= static_cast<std::size_t>(alphabet);
    }
}

void DistTable::validate(double tol) const {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0))
            throw InvariantViolationError("negative probability entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol)
        throw InvariantViolationError("probabilities sum to " + std::to_string(sum));
}

void DistTable::normalize() {
    double sum = 0.0;
    for (double x : p) sum += x;
    if (sum <= 0.0)
        throw InvariantViolationError("cannot normalize a zero table");
    for (double& x : p) x /= sum;
}

DistTable DistTable::marginal_positions(const std::vector<int>& positions) const {
    std::vector<int> labels;
    labels.reserve(positions.size());
    for (int pos : positions) {
        if (pos < 0 || pos >= static_cast<int>(domain.size()))
            throw std::invalid_argument("marginal position out of range");
        labels.push_back(domain[pos]);
    }
    DistTable out(labels, alphabet);
    std::vector<int> symbols;
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        decode(idx, symbols);
        std::size_t sub = 0;
        for (int pos : positions)
            sub = sub * static_cast<std::size_t>(alphabet) +
                  static_cast<std::size_t>(symbols[pos]);
        out.p[sub] += p[idx];
    }
    return out;
}

DistTable DistTable::marginal(const std::vector<int>& labels) const {
    std::vector<int> positions;
    positions.reserve(labels.size());
    for (int label : labels) {
        const auto it = std::find(domain.begin(), domain.end(), label);
        if (it == domain.end())
            throw std::invalid_argument("label " + std::to_string(label) +
                                        " not in table domain");
        positions.push_back(static_cast<int>(it - domain.begin()));
    }
    return marginal_positions(positions);
}

DistTable DistTable::transposed() const {
    if (domain.size() != 2)
        throw DomainMismatchError("transpose needs a two-component table");
    DistTable out({domain[1], domain[0]}, alphabet);
    const auto q = static_cast<std::size_t>(alphabet);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            out.p[b * q + a] = p[a * q + b];
    return out;
}

DistTable DistTable::with_domain(std::vector<int> new_labels) const {
    if (new_labels.size() != domain.size())
        throw std::invalid_argument("relabeling must preserve arity");
    DistTable out = *this;
    out.domain = std::move(new_labels);
    return out;
}

DistTable DistTable::product(const DistTable& a, const DistTable& b) {
    if (a.alphabet != b.alphabet)
        throw DomainMismatchError("product factors use different alphabets");
    std::vector<int> labels = a.domain;
    labels.insert(labels.end(), b.domain.begin(), b.domain.end());
    DistTable out(labels, a.alphabet);
    for (std::size_t i = 0; i < a.p.size(); ++i)
        for (std::size_t j = 0; j < b.p.size(); ++j)
            out.p[i * b.p.size() + j] = a.p[i] * b.p[j];
    return out;
}

DistTable DistTable::uniform(std::vector<int> domain_labels, int alphabet_size) {
    DistTable out(std::move(domain_labels), alphabet_size);
    const double w = 1.0 / static_cast<double>(out.p.size());
    std::fill(out.p.begin(), out.p.end(), w);
    return out;
}

DistTable DistTable::point_mass(std::vector<int> domain_labels, int alphabet_size,
                                const std::vector<int>& symbols) {
    DistTable out(std::move(domain_labels), alphabet_size);
    out.p[out.index_of(symbols)] = 1.0;
    return out;
}

} // namespace gibbslab
