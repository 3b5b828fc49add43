#ifndef GIBBSLAB_BLOCK_CODE_HPP
#define GIBBSLAB_BLOCK_CODE_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gibbslab/cover.hpp"
#include "gibbslab/dist_table.hpp"
#include "gibbslab/tree_chain.hpp"

namespace gibbslab {

// Labeled rooted tree pattern. Canonical form sorts the children of every
// node by their serialized label sequence, which quotients out the subtree
// permutations — the finite-radius form of automorphism invariance.
struct Pattern {
    int label = 0;
    std::vector<Pattern> children;
};

void canonicalize(Pattern& pattern);
// Pre-order label sequence of the canonical form. Patterns over a fixed
// ball shape are uniquely identified by it.
std::vector<int> pattern_key(const Pattern& pattern);

// Every canonical labeled r-ball of the d-regular tree over `alphabet`.
std::vector<Pattern> enumerate_ball_patterns(int alphabet, int degree, int radius);

// Radius-r local rule from labeled tree-ball patterns to an output symbol.
// The rule table is complete over all canonical patterns; sites whose
// neighborhood does not look like the tree get `default_symbol`.
struct BlockCode {
    int in_alphabet = 0;
    int out_alphabet = 0;
    int degree = 0;
    int radius = 0;
    int default_symbol = 0;
    std::map<std::vector<int>, int> rule;

    int apply(Pattern pattern) const;
    void validate() const; // completeness of the rule table
};

// Builds the full rule table by enumerating canonical patterns and
// evaluating `rule` on each.
BlockCode code_from_rule(int in_alphabet, int out_alphabet, int degree, int radius,
                         const std::function<int(const Pattern&)>& rule,
                         int default_symbol = 0);

BlockCode identity_code(int alphabet, int degree);
BlockCode constant_code(int in_alphabet, int out_alphabet, int degree, int symbol);
// Most frequent symbol among the d neighbor labels; ties resolve to the
// smallest tied symbol.
BlockCode majority_code(int alphabet, int degree);

BlockCode builtin_code(const std::string& name, int alphabet, int degree);

// One "pattern... -> symbol" line per canonical pattern.
void save_code(const BlockCode& code, const std::string& path);
BlockCode load_code(const std::string& path);

// Depth-r non-backtracking path tree below a vertex, labeled by a coloring.
Pattern path_tree_pattern(const Graph& g, const std::vector<int>& coloring,
                          int root, int radius);

// Translates an input coloring of a covering through the code: r-nice
// vertices read their tree-shaped r-ball, the rest emit the default symbol.
// The audit must have been taken at the code radius (any audit works for
// radius 0 codes).
std::vector<int> apply_block_code(const NFoldCovering& cov,
                                  const std::vector<int>& coloring,
                                  const BlockCode& code,
                                  const NicenessAudit& audit);
std::vector<int> apply_block_code(const NFoldCovering& cov,
                                  const std::vector<int>& coloring,
                                  const BlockCode& code);

// Exact output-law of the code under the tree chain: the law of the symbol
// at a vertex, and of the pair across an edge, obtained by pushing the exact
// ball measure of the (union) shape through the rule.
std::pair<DistTable, DistTable> factor_marginals_exact(
    const TreeChain& chain, const BlockCode& code,
    std::size_t cap = kDefaultEnumerationCap);

} // namespace gibbslab

#endif // GIBBSLAB_BLOCK_CODE_HPP
