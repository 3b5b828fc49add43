#ifndef GIBBSLAB_DIST_TABLE_HPP
#define GIBBSLAB_DIST_TABLE_HPP

#include <cstddef>
#include <vector>

namespace gibbslab {

// Exact probability table over colorings of a named finite vertex set.
// Entries are stored row-major with domain[0] as the most significant digit,
// so p[idx] with idx = sum_k symbol[k] * q^(m-1-k).
struct DistTable {
    std::vector<int> domain; // ordered vertex labels
    int alphabet = 0;
    std::vector<double> p;

    DistTable() = default;
    DistTable(std::vector<int> domain_labels, int alphabet_size);

    std::size_t size() const { return p.size(); }

    std::size_t index_of(const std::vector<int>& symbols) const;
    void decode(std::size_t index, std::vector<int>& symbols) const;

    double& at(const std::vector<int>& symbols) { return p[index_of(symbols)]; }
    double at(const std::vector<int>& symbols) const { return p[index_of(symbols)]; }

    // Nonnegative entries summing to 1 within tol.
    void validate(double tol = 1e-12) const;
    void normalize();

    // Marginal onto a subset of component positions (order preserved).
    DistTable marginal_positions(const std::vector<int>& positions) const;
    // Marginal onto a subset of domain labels.
    DistTable marginal(const std::vector<int>& labels) const;

    // Swaps the two components of a pair table.
    DistTable transposed() const;

    DistTable with_domain(std::vector<int> new_labels) const;

    static DistTable product(const DistTable& a, const DistTable& b);
    static DistTable uniform(std::vector<int> domain_labels, int alphabet_size);
    static DistTable point_mass(std::vector<int> domain_labels, int alphabet_size,
                                const std::vector<int>& symbols);

    // q^m with an overflow/cap guard; throws CapExceededError beyond cap.
    static std::size_t table_size(int alphabet_size, std::size_t n_components,
                                  std::size_t cap);
};

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 24;

} // namespace gibbslab

#endif // GIBBSLAB_DIST_TABLE_HPP
