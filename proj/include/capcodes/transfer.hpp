#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "capcodes/patterns.hpp"

namespace capcodes::transfer {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// 0/1 transfer matrices are kept in 64-bit integers so that entry sums of
// long products stay exact.
using BinMatrix = DenseMatrix<std::int64_t>;

// An edge of the binary de Bruijn graph on (m-1)-bit states, identified with
// the m-bit word source.bit; its target state drops the first source bit.
struct DeBruijnEdge {
  BinWord source;  // length m-1 (length 0 allowed when m = 1)
  int bit = 0;     // appended symbol, 0 or 1
};

// The m-bit word formed by the edge's source followed by its new bit.
BinWord edge_word(const DeBruijnEdge& e);

// Target state of the edge: source with its first bit dropped, new bit
// appended.
BinWord edge_target(const DeBruijnEdge& e);

// Two de Bruijn edges of a common length m are compatible when the
// difference of their edge words avoids d and its negation.  d must not be
// extended and must not contain an all-zero pattern (otherwise an edge would
// be incompatible with itself).
bool edges_compatible(const BinWord& e1, const BinWord& e2, const PatternSet& d);

// The family of 0/1 transfer matrices for a pattern set: one matrix per
// maximal set of pairwise compatible de Bruijn edges, acting on the
// 2^(m-1) window states.  Entry (x, y) of a matrix is 1 exactly when the
// edge x->y belongs to the matrix's edge set.
struct TransferFamily {
  int m = 1;       // window length (max pattern length of the source set)
  int states = 1;  // 2^(m-1)
  std::vector<BinMatrix> matrices;
  std::vector<std::vector<BinWord>> edge_sets;  // edge words per matrix, sorted

  int size() const noexcept { return static_cast<int>(matrices.size()); }
};

// Builds the transfer family by enumerating all maximal cliques of the
// compatibility graph on the 2^m de Bruijn edges.  Requires a non-extended
// set without all-zero patterns and m <= m_cap.  Maximum code sizes for such
// a set satisfy: delta_{m-1+n} = the largest entry sum over all products of
// n matrices from the family (checked against the exhaustive oracle by
// validate_family and the test suite).
TransferFamily build_sigma(const PatternSet& d, int m_cap = 6);

// delta_{m-1+n}: the maximum entry sum over all products of n matrices from
// the family.  Products are enumerated breadth-first; partial products that
// are entrywise dominated by another product of the same length are pruned,
// which never lowers the maximum because all matrices are nonnegative.
// Throws budget_exhausted when the frontier would exceed product_budget
// matrices at any length.
std::int64_t product_norm_delta(const TransferFamily& fam, int n,
                                std::uint64_t product_budget = 1u << 22);

// As product_norm_delta, but returns the whole sweep n = 1..n_max in one
// pass over the product tree.
std::vector<std::int64_t> product_norm_delta_sweep(
    const TransferFamily& fam, int n_max,
    std::uint64_t product_budget = 1u << 22);

// Cross-checks the family against the exhaustive oracle: true when
// product_norm_delta(fam, n) equals the brute-force maximum code size at
// word length m-1+n for every n = 1..n_max.
bool validate_family(const TransferFamily& fam, const PatternSet& d, int n_max,
                     std::uint64_t node_budget = 100'000'000);

// Sum of all entries; the matrix norm used throughout delta computations.
std::int64_t entry_sum(const BinMatrix& a);

}  // namespace capcodes::transfer
