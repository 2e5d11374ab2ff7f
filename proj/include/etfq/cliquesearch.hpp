#pragma once

#include "etfq/frames.hpp"
#include "etfq/graphs.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace etfq {

/// One of the two orthogonal geometries on F_p^d, represented by its
/// canonical diagonal Gram matrix diag(1,...,1) or diag(1,...,1,nu).
struct GeometryCtx {
    FieldCtx field;
    std::size_t d;
    int s;  // 0 square-type discriminant, 1 nonsquare
    std::vector<felem> gram;

    static GeometryCtx make(std::uint64_t p, std::size_t d, int s);
    felem inner(const std::vector<felem>& x, const std::vector<felem>& y) const;
};

using FVec = std::vector<felem>;

/// Compatibility graph on V = { psi : <psi,psi> = a, <psi,psi1> = 1,
/// <psi,psi2>^2 = 1 }, vertices in lexicographic coordinate order, distinct
/// vertices adjacent when <phi,psi>^2 = 1.
struct CompatGraph {
    GeometryCtx geom;
    felem a;
    FVec psi1, psi2;
    std::vector<FVec> verts;
    Graph graph;
};

/// Lexicographically least pair of linearly independent vectors with
/// <psi1,psi1> = <psi2,psi2> = a and <psi1,psi2> = 1. Throws when none exists.
std::pair<FVec, FVec> seed_pair(const GeometryCtx& geom, felem a);

CompatGraph build_compat_graph(const GeometryCtx& geom, felem a,
                               std::optional<std::pair<FVec, FVec>> seeds = std::nullopt);

struct MaxCliqueResult {
    std::size_t size;
    std::vector<std::size_t> members;
};

/// Exact clique number with a witness; branch and bound with greedy-coloring
/// bounds on bitset adjacency rows.
MaxCliqueResult max_clique(const Graph& g);

/// All inclusion-maximal cliques with lo <= size <= hi, each as an ascending
/// vertex list; output is in deterministic order for any worker count.
std::vector<std::vector<std::size_t>> maximal_cliques_in_range(const Graph& g,
                                                               std::size_t lo,
                                                               std::size_t hi,
                                                               int workers = 1);

/// Search record for one (p, s, a) case.
struct SearchBlock {
    std::uint64_t p;
    int s;
    felem a;
    std::size_t v_size = 0;
    std::size_t omega = 0;
    std::size_t cliques_examined = 0;
    std::map<std::size_t, std::size_t> rank_multiset;  // rank of {psi1,psi2} u M
    bool refuted = false;
    bool seedless = false;  // no valid seed pair exists in the geometry
    FVec psi1, psi2;
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> cliques;  // (members, rank)
};

struct NonexistenceCertificate {
    std::size_t d, n;
    std::vector<std::uint64_t> primes;
    std::vector<SearchBlock> blocks;
    bool nonexistent;
};

struct ExistenceWitness {
    std::uint64_t p;
    int s;
    felem a;
    std::size_t d, n;
    std::vector<FVec> vectors;  // n vectors spanning F_p^d
    MatGF gram;
};

struct PipelineResult {
    std::optional<NonexistenceCertificate> certificate;
    std::optional<ExistenceWitness> witness;
};

/// For every candidate prime (or the supplied set), both geometries, and
/// every admissible norm a: builds the compatibility graph, refutes via
/// omega < n-2 or via the ranks of all maximal cliques of size in [n-2,
/// omega]; a full-rank clique instead yields an explicit n-vector witness.
PipelineResult nonexistence_pipeline(std::size_t d, std::size_t n,
                                     std::optional<std::vector<std::uint64_t>> primes,
                                     bool real_exists = false, int workers = 1);

nlohmann::ordered_json certificate_json(const NonexistenceCertificate& cert);
nlohmann::ordered_json witness_json(const ExistenceWitness& w);
NonexistenceCertificate certificate_from_json(const nlohmann::ordered_json& j);

}  // namespace etfq
