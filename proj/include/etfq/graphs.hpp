#pragma once

#include "etfq/matgf.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace etfq {

/// Simple undirected graph with bit-packed adjacency rows.
class Graph {
public:
    explicit Graph(std::size_t n);

    std::size_t order() const { return n_; }
    void add_edge(std::size_t i, std::size_t j);
    bool adjacent(std::size_t i, std::size_t j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1;
    }
    std::size_t degree(std::size_t i) const;
    std::size_t common_neighbors(std::size_t i, std::size_t j) const;

    std::size_t words() const { return words_; }
    const std::uint64_t* row(std::size_t i) const { return &bits_[i * words_]; }

    /// Line 1: vertex count; then one `i j` line per edge, 0-based.
    static Graph read_edge_list(std::istream& in);
    void write_edge_list(std::ostream& out) const;

private:
    std::size_t n_, words_;
    std::vector<std::uint64_t> bits_;
};

IntMat adjacency_matrix(const Graph& g);

/// Seidel adjacency matrix: -1 adjacent, +1 distinct non-adjacent, 0 diagonal.
IntMat seidel_matrix(const Graph& g);

struct SrgParams {
    long long v, k, lambda, mu;
    bool operator==(const SrgParams&) const = default;
};

struct SrgSpectrum {
    bool integral;  // false only in the conference case f = g with irrational r, s
    long long r, s;         // valid when integral
    long long disc;         // (lambda-mu)^2 + 4(k-mu)
    long long f, g;         // multiplicities of r and s
    long long theta_k;      // Seidel eigenvalues: v-2k-1, -2r-1, -2s-1
    long long theta_r, theta_s;  // valid when integral
};

/// Eigenvalue data of hypothetical SRG parameters. Throws on infeasible
/// parameters (non-integral r,s with f != g, or non-integral multiplicities).
SrgSpectrum srg_spectrum(const SrgParams& params);

SrgParams complement_params(const SrgParams& params);

/// Parameters of g if it is a nontrivial strongly regular graph.
std::optional<SrgParams> check_srg(const Graph& g);

/// Parameters (v,k,lambda,mu) mod p, canonical in [0,p) (v reduced too), if
/// all valencies and common-neighbor counts are constant modulo p.
std::optional<SrgParams> check_modular_srg(const Graph& g, std::uint64_t p);

Graph triangular(std::size_t m);
Graph triangular_complement(std::size_t m);
Graph paley(std::uint64_t q);  // q = p or p^2, q = 1 mod 4
Graph lattice(std::size_t m);  // rook's graph on an m x m grid

/// Family spec: `triangular:M`, `triangular_complement:M`, `paley:Q`,
/// `lattice:M`, or `edges:PATH`.
Graph generate(const std::string& family_spec);

/// Registry lookup used by the parameter scan: a generated graph with the
/// given parameters, when one of the built-in families matches.
std::optional<Graph> registry_graph(const SrgParams& params);

}  // namespace etfq
