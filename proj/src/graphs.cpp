#include "etfq/graphs.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace etfq {

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

void Graph::add_edge(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("loops are not allowed");
    if (i >= n_ || j >= n_) throw std::invalid_argument("vertex out of range");
    bits_[i * words_ + (j >> 6)] |= 1ull << (j & 63);
    bits_[j * words_ + (i >> 6)] |= 1ull << (i & 63);
}

std::size_t Graph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row(i)[w]);
    return d;
}

std::size_t Graph::common_neighbors(std::size_t i, std::size_t j) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w)
        c += std::popcount(row(i)[w] & row(j)[w]);
    return c;
}

Graph Graph::read_edge_list(std::istream& in) {
    std::size_t n;
    if (!(in >> n)) throw std::invalid_argument("bad edge list header");
    Graph g(n);
    std::size_t i, j;
    while (in >> i >> j) g.add_edge(i, j);
    return g;
}

void Graph::write_edge_list(std::ostream& out) const {
    out << n_ << '\n';
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (adjacent(i, j)) out << i << ' ' << j << '\n';
}

IntMat adjacency_matrix(const Graph& g) {
    IntMat a(g.order(), g.order());
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j)
            if (g.adjacent(i, j)) a.set(i, j, 1);
    return a;
}

IntMat seidel_matrix(const Graph& g) {
    IntMat s(g.order(), g.order());
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) {
            if (i == j) continue;
            s.set(i, j, g.adjacent(i, j) ? -1 : 1);
        }
    return s;
}

namespace {

std::optional<long long> exact_isqrt(long long x) {
    if (x < 0) return std::nullopt;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    if (r * r != x) return std::nullopt;
    return r;
}

}  // namespace

SrgSpectrum srg_spectrum(const SrgParams& p) {
    const long long v = p.v, k = p.k, lam = p.lambda, mu = p.mu;
    SrgSpectrum s{};
    s.disc = (lam - mu) * (lam - mu) + 4 * (k - mu);
    if (s.disc < 0) throw std::invalid_argument("negative eigenvalue discriminant");
    s.theta_k = v - 2 * k - 1;
    auto root = exact_isqrt(s.disc);
    // 2k + (v-1)(lambda-mu) != 0 forces f != g, hence integral eigenvalues
    long long fg_num = 2 * k + (v - 1) * (lam - mu);
    if (!root) {
        if (fg_num != 0)
            throw std::invalid_argument("infeasible parameters: irrational eigenvalues with f != g");
        if ((v - 1) % 2 != 0)
            throw std::invalid_argument("infeasible parameters: odd v in the conference case");
        s.integral = false;
        s.f = s.g = (v - 1) / 2;
        return s;
    }
    s.integral = true;
    s.r = (lam - mu + *root) / 2;
    s.s = (lam - mu - *root) / 2;
    s.theta_r = -2 * s.r - 1;
    s.theta_s = -2 * s.s - 1;
    if (*root == 0) {
        if (fg_num != 0)
            throw std::invalid_argument("infeasible parameters: r = s with f != g");
        s.f = s.g = (v - 1) / 2;
        return s;
    }
    // f = (s - k - v*s)/(r - s), g = (r - k - v*r)/(s - r)
    long long rs = s.r - s.s;
    long long fnum = s.s - k - v * s.s;
    long long gnum = -(s.r - k - v * s.r);
    if (fnum % rs != 0 || gnum % rs != 0)
        throw std::invalid_argument("infeasible parameters: non-integral multiplicities");
    s.f = fnum / rs;
    s.g = gnum / rs;
    if (s.f < 0 || s.g < 0 || s.f + s.g + 1 != v)
        throw std::invalid_argument("infeasible parameters: bad multiplicities");
    return s;
}

SrgParams complement_params(const SrgParams& p) {
    return SrgParams{p.v, p.v - p.k - 1, p.v - 2 * p.k + p.mu - 2,
                     p.v - 2 * p.k + p.lambda};
}

std::optional<SrgParams> check_srg(const Graph& g) {
    const std::size_t n = g.order();
    if (n < 2) return std::nullopt;
    std::size_t k = g.degree(0);
    for (std::size_t i = 1; i < n; ++i)
        if (g.degree(i) != k) return std::nullopt;
    if (k == 0 || k == n - 1) return std::nullopt;  // edgeless or complete
    long long lam = -1, mu = -1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long long c = static_cast<long long>(g.common_neighbors(i, j));
            long long& slot = g.adjacent(i, j) ? lam : mu;
            if (slot == -1)
                slot = c;
            else if (slot != c)
                return std::nullopt;
        }
    return SrgParams{static_cast<long long>(n), static_cast<long long>(k), lam, mu};
}

std::optional<SrgParams> check_modular_srg(const Graph& g, std::uint64_t p) {
    const std::size_t n = g.order();
    if (n == 0) return std::nullopt;
    const long long pp = static_cast<long long>(p);
    long long k = static_cast<long long>(g.degree(0) % p);
    for (std::size_t i = 1; i < n; ++i)
        if (static_cast<long long>(g.degree(i) % p) != k) return std::nullopt;
    long long lam = -1, mu = -1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long long c = static_cast<long long>(g.common_neighbors(i, j) % p);
            long long& slot = g.adjacent(i, j) ? lam : mu;
            if (slot == -1)
                slot = c;
            else if (slot != c)
                return std::nullopt;
        }
    // vacuous counts: the Seidel identities pin lambda = -1 for an edgeless
    // graph and mu = v - 1 for a complete one
    if (lam == -1) lam = pp - 1;
    if (mu == -1) mu = ((static_cast<long long>(n) - 1) % pp + pp) % pp;
    return SrgParams{static_cast<long long>(n % p), k, lam, mu};
}

Graph triangular(std::size_t m) {
    if (m < 2) throw std::invalid_argument("triangular graph needs m >= 2");
    std::vector<std::pair<std::size_t, std::size_t>> sets;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) sets.emplace_back(i, j);
    Graph g(sets.size());
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b) {
            std::size_t common = (sets[a].first == sets[b].first) +
                                 (sets[a].first == sets[b].second) +
                                 (sets[a].second == sets[b].first) +
                                 (sets[a].second == sets[b].second);
            if (common == 1) g.add_edge(a, b);
        }
    return g;
}

Graph triangular_complement(std::size_t m) {
    if (m < 2) throw std::invalid_argument("triangular graph needs m >= 2");
    std::vector<std::pair<std::size_t, std::size_t>> sets;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) sets.emplace_back(i, j);
    Graph g(sets.size());
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b) {
            bool disjoint = sets[a].first != sets[b].first &&
                            sets[a].first != sets[b].second &&
                            sets[a].second != sets[b].first &&
                            sets[a].second != sets[b].second;
            if (disjoint) g.add_edge(a, b);
        }
    return g;
}

Graph paley(std::uint64_t q) {
    if (q % 4 != 1) throw std::invalid_argument("paley graph needs q = 1 mod 4");
    FieldCtx f = [&] {
        if (is_prime(q)) return FieldCtx::make(q, 1);
        std::uint64_t p = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(q)));
        while (p * p < q) ++p;
        if (p * p != q || !is_prime(p))
            throw std::invalid_argument("paley graph needs a prime or prime-square order");
        return FieldCtx::make(p, 2);
    }();
    Graph g(q);
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = a + 1; b < q; ++b)
            if (f.is_square(f.sub(a, b))) g.add_edge(a, b);
    return g;
}

Graph lattice(std::size_t m) {
    if (m < 2) throw std::invalid_argument("lattice graph needs m >= 2");
    Graph g(m * m);
    for (std::size_t a = 0; a < m * m; ++a)
        for (std::size_t b = a + 1; b < m * m; ++b)
            if (a / m == b / m || a % m == b % m) g.add_edge(a, b);
    return g;
}

Graph generate(const std::string& family_spec) {
    auto colon = family_spec.find(':');
    std::string name = family_spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : family_spec.substr(colon + 1);
    auto num = [&]() -> std::uint64_t {
        try {
            return std::stoull(arg);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad family argument '" + arg + "'");
        }
    };
    if (name == "triangular") return triangular(num());
    if (name == "triangular_complement") return triangular_complement(num());
    if (name == "paley") return paley(num());
    if (name == "lattice") return lattice(num());
    if (name == "edges") {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot open edge list '" + arg + "'");
        return Graph::read_edge_list(in);
    }
    throw std::invalid_argument("unknown graph family '" + name + "'");
}

std::optional<Graph> registry_graph(const SrgParams& p) {
    // triangular-type orders: v = m(m-1)/2
    if (auto root = exact_isqrt(8 * p.v + 1)) {
        std::size_t m = static_cast<std::size_t>((*root + 1) / 2);
        if (static_cast<long long>(m) * (static_cast<long long>(m) - 1) / 2 == p.v && m >= 4) {
            long long mm = static_cast<long long>(m);
            if (p.k == 2 * (mm - 2) && p.lambda == mm - 2 && p.mu == 4)
                return triangular(m);
            if (p.k == (mm - 2) * (mm - 3) / 2 &&
                p.lambda == (mm - 4) * (mm - 5) / 2 &&
                p.mu == (mm - 3) * (mm - 4) / 2)
                return triangular_complement(m);
        }
    }
    if (p.v % 4 == 1 && p.k == (p.v - 1) / 2 && p.lambda == (p.v - 5) / 4 &&
        p.mu == (p.v - 1) / 4) {
        std::uint64_t q = static_cast<std::uint64_t>(p.v);
        bool ok = is_prime(q);
        if (!ok) {
            if (auto root = exact_isqrt(p.v)) ok = is_prime(static_cast<std::uint64_t>(*root));
        }
        if (ok) return paley(q);
    }
    if (auto root = exact_isqrt(p.v)) {
        long long m = *root;
        if (m >= 2 && p.k == 2 * (m - 1) && p.lambda == m - 2 && p.mu == 2)
            return lattice(static_cast<std::size_t>(m));
    }
    return std::nullopt;
}

}  // namespace etfq
