#include "etfq/cliquesearch.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <thread>

namespace etfq {

GeometryCtx GeometryCtx::make(std::uint64_t p, std::size_t d, int s) {
    if (d == 0) throw std::invalid_argument("geometry dimension must be positive");
    if (s != 0 && s != 1) throw std::invalid_argument("discriminant flag must be 0 or 1");
    GeometryCtx g{FieldCtx::make(p, 1), d, s, std::vector<felem>(d, 1)};
    if (s == 1) g.gram[d - 1] = g.field.nonresidue();
    return g;
}

felem GeometryCtx::inner(const std::vector<felem>& x, const std::vector<felem>& y) const {
    const std::uint64_t p = field.p();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < d; ++i) acc += gram[i] * x[i] % p * y[i] % p;
    return acc % p;
}

namespace {

// odometer over F_p^d in lexicographic coordinate order
bool next_vector(FVec& v, std::uint64_t p) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (++v[i] < p) return true;
        v[i] = 0;
    }
    return false;
}

std::vector<FVec> vectors_of_norm(const GeometryCtx& geom, felem a) {
    std::vector<FVec> out;
    FVec v(geom.d, 0);
    do {
        if (geom.inner(v, v) == a) out.push_back(v);
    } while (next_vector(v, geom.field.p()));
    return out;
}

}  // namespace

std::pair<FVec, FVec> seed_pair(const GeometryCtx& geom, felem a) {
    // Lexicographically least pair of distinct vectors with the prescribed
    // inner products. Distinctness forces linear independence except when
    // a = -1, where psi2 = -psi1 qualifies; the search stays sound for that
    // pair (the vertex set only grows when the second constraint collapses).
    std::vector<FVec> sphere = vectors_of_norm(geom, a);
    for (const FVec& psi1 : sphere) {
        bool zero = std::all_of(psi1.begin(), psi1.end(), [](felem x) { return x == 0; });
        if (zero) continue;
        for (const FVec& psi2 : sphere) {
            if (psi2 == psi1) continue;
            if (geom.inner(psi1, psi2) != 1) continue;
            return {psi1, psi2};
        }
    }
    throw std::domain_error("no seed pair exists in this geometry");
}

CompatGraph build_compat_graph(const GeometryCtx& geom, felem a,
                               std::optional<std::pair<FVec, FVec>> seeds) {
    auto [psi1, psi2] = seeds ? *seeds : seed_pair(geom, a);
    if (psi1 == psi2 || geom.inner(psi1, psi1) != a || geom.inner(psi2, psi2) != a ||
        geom.inner(psi1, psi2) != 1)
        throw std::invalid_argument("invalid seed pair");
    const FieldCtx& f = geom.field;
    std::vector<FVec> verts;
    FVec v(geom.d, 0);
    do {
        if (geom.inner(v, v) != a) continue;
        if (geom.inner(v, psi1) != 1) continue;
        felem ip2 = geom.inner(v, psi2);
        if (f.mul(ip2, ip2) != 1) continue;
        verts.push_back(v);
    } while (next_vector(v, f.p()));
    Graph g(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            felem ip = geom.inner(verts[i], verts[j]);
            if (f.mul(ip, ip) == 1) g.add_edge(i, j);
        }
    return CompatGraph{geom, a, std::move(psi1), std::move(psi2), std::move(verts),
                       std::move(g)};
}

namespace {

// word-parallel candidate sets over the graph's packed adjacency rows
struct Bits {
    std::vector<std::uint64_t> w;

    static Bits full(std::size_t n, std::size_t words) {
        Bits b;
        b.w.assign(words, 0);
        for (std::size_t i = 0; i < n; ++i) b.w[i >> 6] |= 1ull << (i & 63);
        return b;
    }
    bool empty() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void remove(std::size_t i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    void add(std::size_t i) { w[i >> 6] |= 1ull << (i & 63); }
    void intersect_row(const std::uint64_t* row) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= row[i];
    }
    std::size_t lowest() const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) return (i << 6) + std::countr_zero(w[i]);
        return ~std::size_t{0};
    }
};

struct MaxCliqueSolver {
    const Graph& g;
    std::vector<std::size_t> r, best;

    explicit MaxCliqueSolver(const Graph& graph) : g(graph) {}

    void expand(Bits p) {
        if (p.empty()) {
            if (r.size() > best.size()) best = r;
            return;
        }
        // greedy coloring in index order gives the branching order and bound
        std::vector<std::size_t> order, color;
        Bits q = p;
        std::size_t c = 0;
        while (!q.empty()) {
            ++c;
            Bits cls = q;
            while (!cls.empty()) {
                std::size_t v = cls.lowest();
                order.push_back(v);
                color.push_back(c);
                q.remove(v);
                cls.remove(v);
                for (std::size_t i = 0; i < cls.w.size(); ++i)
                    cls.w[i] &= ~g.row(v)[i];
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (r.size() + color[i] <= best.size()) return;
            std::size_t v = order[i];
            Bits p2 = p;
            p2.intersect_row(g.row(v));
            r.push_back(v);
            expand(p2);
            r.pop_back();
            p.remove(v);
        }
    }
};

struct RangeCliqueCollector {
    const Graph& g;
    std::size_t lo, hi;
    std::vector<std::vector<std::size_t>> found;

    RangeCliqueCollector(const Graph& graph, std::size_t l, std::size_t h)
        : g(graph), lo(l), hi(h) {}

    void bk(std::vector<std::size_t>& r, Bits p, Bits x) {
        if (p.empty() && x.empty()) {
            if (r.size() >= lo && r.size() <= hi) found.push_back(r);
            return;
        }
        if (r.size() + p.count() < lo) return;
        if (r.size() >= hi && !p.empty()) return;  // extensions leave the range
        // pivot: max |P n N(u)| over P u X, ties to the lowest index
        std::size_t pivot = ~std::size_t{0}, pivot_deg = 0;
        for (std::size_t i = 0; i < p.w.size(); ++i) {
            std::uint64_t m = p.w[i] | x.w[i];
            while (m) {
                std::size_t u = (i << 6) + std::countr_zero(m);
                m &= m - 1;
                Bits t = p;
                t.intersect_row(g.row(u));
                std::size_t deg = t.count();
                if (pivot == ~std::size_t{0} || deg > pivot_deg) {
                    pivot = u;
                    pivot_deg = deg;
                }
            }
        }
        for (std::size_t i = 0; i < p.w.size(); ++i) {
            std::uint64_t m = p.w[i] & ~g.row(pivot)[i];
            while (m) {
                std::size_t v = (i << 6) + std::countr_zero(m);
                m &= m - 1;
                if (!p.test(v)) continue;  // removed in an earlier iteration
                Bits p2 = p, x2 = x;
                p2.intersect_row(g.row(v));
                x2.intersect_row(g.row(v));
                r.push_back(v);
                bk(r, std::move(p2), std::move(x2));
                r.pop_back();
                p.remove(v);
                x.add(v);
            }
        }
    }
};

std::size_t rank_with_seeds(const GeometryCtx& geom, const FVec& psi1, const FVec& psi2,
                            const std::vector<FVec>& verts,
                            const std::vector<std::size_t>& members) {
    MatGF m(geom.field, members.size() + 2, geom.d);
    for (std::size_t j = 0; j < geom.d; ++j) {
        m.set(0, j, psi1[j]);
        m.set(1, j, psi2[j]);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < geom.d; ++j) m.set(i + 2, j, verts[members[i]][j]);
    return rank(m);
}

}  // namespace

MaxCliqueResult max_clique(const Graph& g) {
    MaxCliqueSolver solver(g);
    solver.expand(Bits::full(g.order(), g.words()));
    std::sort(solver.best.begin(), solver.best.end());
    return MaxCliqueResult{solver.best.size(), solver.best};
}

std::vector<std::vector<std::size_t>> maximal_cliques_in_range(const Graph& g,
                                                               std::size_t lo,
                                                               std::size_t hi,
                                                               int workers) {
    if (lo > hi) throw std::invalid_argument("empty size range");
    const std::size_t n = g.order();
    // per-root results: root v owns the maximal cliques whose least vertex is v
    std::vector<std::vector<std::vector<std::size_t>>> per_root(n);
    auto run_root = [&](std::size_t v) {
        Bits p, x;
        p.w.assign(g.words(), 0);
        x.w.assign(g.words(), 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v || !g.adjacent(u, v)) continue;
            if (u > v)
                p.add(u);
            else
                x.add(u);
        }
        RangeCliqueCollector coll(g, lo, hi);
        std::vector<std::size_t> r{v};
        coll.bk(r, std::move(p), std::move(x));
        per_root[v] = std::move(coll.found);
    };
    if (workers <= 1 || n < 2) {
        for (std::size_t v = 0; v < n; ++v) run_root(v);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t v = next.fetch_add(1);
                if (v >= n) return;
                run_root(v);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& rootsets : per_root)
        for (auto& c : rootsets) out.push_back(std::move(c));
    return out;
}

PipelineResult nonexistence_pipeline(std::size_t d, std::size_t n,
                                     std::optional<std::vector<std::uint64_t>> primes,
                                     bool real_exists, int workers) {
    if (n <= d || d < 2) throw std::invalid_argument("requires n > d >= 2");
    std::vector<std::uint64_t> ps;
    if (primes) {
        ps = *primes;
        std::sort(ps.begin(), ps.end());
    } else {
        CandidatePrimes cand = candidate_primes(d, n, real_exists);
        if (cand.unbounded)
            throw std::invalid_argument(
                "candidate primes are unbounded when a real ETF exists; pass an explicit set");
        ps = cand.primes;
    }

    NonexistenceCertificate cert{d, n, ps, {}, true};
    for (std::uint64_t p : ps) {
        for (int s = 0; s <= 1; ++s) {
            for (felem a : admissible_norms(p, d, n)) {
                SearchBlock blk;
                blk.p = p;
                blk.s = s;
                blk.a = a;
                GeometryCtx geom = GeometryCtx::make(p, d, s);
                std::pair<FVec, FVec> seeds;
                try {
                    seeds = seed_pair(geom, a);
                } catch (const std::domain_error&) {
                    blk.seedless = true;
                    blk.refuted = true;
                    cert.blocks.push_back(std::move(blk));
                    continue;
                }
                CompatGraph cg = build_compat_graph(geom, a, seeds);
                blk.psi1 = cg.psi1;
                blk.psi2 = cg.psi2;
                blk.v_size = cg.verts.size();
                blk.omega = max_clique(cg.graph).size;
                if (blk.omega < n - 2) {
                    blk.refuted = true;
                    cert.blocks.push_back(std::move(blk));
                    continue;
                }
                auto cliques = maximal_cliques_in_range(cg.graph, n - 2, blk.omega, workers);
                blk.cliques_examined = cliques.size();
                std::optional<std::vector<std::size_t>> witness_clique;
                for (const auto& m : cliques) {
                    std::size_t r = rank_with_seeds(geom, cg.psi1, cg.psi2, cg.verts, m);
                    blk.rank_multiset[r] += 1;
                    blk.cliques.emplace_back(m, r);
                    if (r == d && !witness_clique) witness_clique = m;
                }
                if (witness_clique) {
                    // assemble n vectors spanning the geometry: the seeds, a
                    // rank-completing subset of the clique, then fill in order
                    std::vector<std::size_t> chosen;
                    std::size_t cur =
                        rank_with_seeds(geom, cg.psi1, cg.psi2, cg.verts, {});
                    for (std::size_t idx : *witness_clique) {
                        if (chosen.size() == n - 2) break;
                        auto trial = chosen;
                        trial.push_back(idx);
                        std::size_t r2 =
                            rank_with_seeds(geom, cg.psi1, cg.psi2, cg.verts, trial);
                        if (r2 > cur) {
                            chosen = std::move(trial);
                            cur = r2;
                        }
                    }
                    for (std::size_t idx : *witness_clique) {
                        if (chosen.size() == n - 2) break;
                        if (std::find(chosen.begin(), chosen.end(), idx) == chosen.end())
                            chosen.push_back(idx);
                    }
                    std::sort(chosen.begin(), chosen.end());
                    std::vector<FVec> wvecs{cg.psi1, cg.psi2};
                    for (std::size_t idx : chosen) wvecs.push_back(cg.verts[idx]);
                    MatGF gram(geom.field, n, n);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            gram.set(i, j, geom.inner(wvecs[i], wvecs[j]));
                    return PipelineResult{
                        std::nullopt,
                        ExistenceWitness{p, s, a, d, n, std::move(wvecs), std::move(gram)}};
                }
                blk.refuted = true;
                cert.blocks.push_back(std::move(blk));
            }
        }
    }
    return PipelineResult{std::move(cert), std::nullopt};
}

nlohmann::ordered_json certificate_json(const NonexistenceCertificate& cert) {
    nlohmann::ordered_json j;
    j["kind"] = "nonexistence-certificate";
    j["d"] = cert.d;
    j["n"] = cert.n;
    j["primes"] = cert.primes;
    j["verdict"] = cert.nonexistent ? "nonexistent" : "undecided";
    j["blocks"] = nlohmann::ordered_json::array();
    for (const SearchBlock& b : cert.blocks) {
        nlohmann::ordered_json jb;
        jb["p"] = b.p;
        jb["s"] = b.s;
        jb["a"] = b.a;
        jb["V_size"] = b.v_size;
        jb["omega"] = b.omega;
        jb["cliques_examined"] = b.cliques_examined;
        nlohmann::ordered_json rm = nlohmann::ordered_json::object();
        for (const auto& [r, count] : b.rank_multiset) rm[std::to_string(r)] = count;
        jb["rank_multiset"] = std::move(rm);
        jb["refuted"] = b.refuted;
        if (b.seedless) jb["seedless"] = true;
        jb["psi1"] = b.psi1;
        jb["psi2"] = b.psi2;
        nlohmann::ordered_json jc = nlohmann::ordered_json::array();
        for (const auto& [members, r] : b.cliques)
            jc.push_back({{"members", members}, {"rank", r}});
        jb["cliques"] = std::move(jc);
        j["blocks"].push_back(std::move(jb));
    }
    return j;
}

nlohmann::ordered_json witness_json(const ExistenceWitness& w) {
    nlohmann::ordered_json j;
    j["kind"] = "existence-witness";
    j["d"] = w.d;
    j["n"] = w.n;
    j["p"] = w.p;
    j["s"] = w.s;
    j["a"] = w.a;
    j["vectors"] = w.vectors;
    return j;
}

NonexistenceCertificate certificate_from_json(const nlohmann::ordered_json& j) {
    NonexistenceCertificate cert{};
    cert.d = j.at("d").get<std::size_t>();
    cert.n = j.at("n").get<std::size_t>();
    cert.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    cert.nonexistent = j.at("verdict").get<std::string>() == "nonexistent";
    for (const auto& jb : j.at("blocks")) {
        SearchBlock b;
        b.p = jb.at("p").get<std::uint64_t>();
        b.s = jb.at("s").get<int>();
        b.a = jb.at("a").get<felem>();
        b.v_size = jb.at("V_size").get<std::size_t>();
        b.omega = jb.at("omega").get<std::size_t>();
        b.cliques_examined = jb.at("cliques_examined").get<std::size_t>();
        for (const auto& [key, val] : jb.at("rank_multiset").items())
            b.rank_multiset[std::stoull(key)] = val.get<std::size_t>();
        b.refuted = jb.at("refuted").get<bool>();
        if (jb.contains("seedless")) b.seedless = jb.at("seedless").get<bool>();
        if (jb.contains("psi1")) b.psi1 = jb.at("psi1").get<FVec>();
        if (jb.contains("psi2")) b.psi2 = jb.at("psi2").get<FVec>();
        if (jb.contains("cliques"))
            for (const auto& jc : jb.at("cliques"))
                b.cliques.emplace_back(jc.at("members").get<std::vector<std::size_t>>(),
                                       jc.at("rank").get<std::size_t>());
        cert.blocks.push_back(std::move(b));
    }
    return cert;
}

}  // namespace etfq
