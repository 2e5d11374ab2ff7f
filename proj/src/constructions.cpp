#include "etfq/constructions.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace etfq {

namespace {

long long mod_ll(long long x, std::uint64_t p) {
    long long m = static_cast<long long>(p);
    long long r = x % m;
    return r < 0 ? r + m : r;
}

bool divides(std::uint64_t p, long long x) { return mod_ll(x, p) == 0; }

void require_odd_prime(std::uint64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("characteristic must be an odd prime");
}

SrgSpectrum integral_spectrum(const SrgParams& params) {
    SrgSpectrum spec = srg_spectrum(params);
    if (!spec.integral || spec.f == spec.g)
        throw std::invalid_argument("construction needs integral eigenvalues with f != g");
    return spec;
}

// row sums of a square matrix; nullopt when they disagree
std::optional<felem> constant_row_sum(const MatGF& g) {
    const FieldCtx& f = g.field();
    felem theta = 0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        felem s = 0;
        for (std::size_t j = 0; j < g.cols(); ++j) s = f.add(s, g.at(i, j));
        if (i == 0)
            theta = s;
        else if (s != theta)
            return std::nullopt;
    }
    return theta;
}

MatGF seidel_plus_diag(const Graph& g, const FieldCtx& f, felem a) {
    const std::size_t v = g.order();
    MatGF m(f, v, v);
    felem minus_one = f.neg(1);
    for (std::size_t i = 0; i < v; ++i) {
        m.set(i, i, a);
        for (std::size_t j = i + 1; j < v; ++j) {
            felem e = g.adjacent(i, j) ? minus_one : 1;
            m.set(i, j, e);
            m.set(j, i, e);
        }
    }
    return m;
}

MatGF bordered_gram(const Graph& g, const FieldCtx& f, felem a) {
    const std::size_t v = g.order();
    MatGF m(f, v + 1, v + 1);
    m.set(0, 0, a);
    for (std::size_t j = 0; j < v; ++j) {
        m.set(0, j + 1, 1);
        m.set(j + 1, 0, 1);
    }
    felem minus_one = f.neg(1);
    for (std::size_t i = 0; i < v; ++i) {
        m.set(i + 1, i + 1, a);
        for (std::size_t j = i + 1; j < v; ++j) {
            felem e = g.adjacent(i, j) ? minus_one : 1;
            m.set(i + 1, j + 1, e);
            m.set(j + 1, i + 1, e);
        }
    }
    return m;
}

void apply_gerzon_flags(ConstructionPrediction& pred) {
    std::size_t cap = pred.d * (pred.d + 1) / 2;
    if (pred.d_status == DStatus::bound) {
        if (pred.n == cap) {
            // the bound cannot be strict without violating the Gerzon bound
            pred.d_status = DStatus::exact;
            pred.gerzon_forced = true;
            pred.gerzon_equality = true;
        } else if (pred.n > cap) {
            pred.gerzon_violation = true;
        }
    } else {
        if (pred.n == cap) pred.gerzon_equality = true;
        if (pred.n > cap) pred.gerzon_violation = true;
    }
}

}  // namespace

std::string to_string(DStatus s) {
    switch (s) {
        case DStatus::exact: return "exact";
        case DStatus::bound: return "bound";
        case DStatus::from_graph: return "graph";
    }
    return "?";
}

std::vector<EtfCertificate> bordered_etfs(const Graph& g, std::uint64_t p) {
    require_odd_prime(p);
    auto params = check_modular_srg(g, p);
    if (!params) return {};
    const long long v = static_cast<long long>(g.order());
    const long long k = params->k, lam = params->lambda, mu = params->mu;
    if (!divides(p, k - 2 * mu)) return {};
    if (!divides(p, v - (3 * k - 2 * lam - 1))) return {};
    FieldCtx fp = FieldCtx::make(p, 1);
    felem disc = fp.from_int((lam - mu) * (lam - mu) + 4 * (k - mu));
    FieldCtx f = fp.is_square(disc) ? fp : FieldCtx::make(p, 2);
    felem delta = (*f.sqrt(disc))[0];
    std::vector<EtfCertificate> out;
    for (int eps : {+1, -1}) {
        felem ed = eps > 0 ? delta : f.neg(delta);
        felem a = f.add(f.from_int(lam - mu + 1), ed);
        felem c = f.add(ed, ed);
        MatGF gram = bordered_gram(g, f, a);
        auto cert = verify_etf(gram, eps > 0 ? "bordered[+]" : "bordered[-]");
        if (!cert || cert->params.a != a || cert->params.b != 1 || cert->params.c != c)
            throw std::logic_error("bordered construction failed to verify");
        out.push_back(*cert);
        if (delta == 0) break;
    }
    return out;
}

ConstructionPrediction bordered_prediction(const SrgParams& params, std::uint64_t p) {
    require_odd_prime(p);
    SrgSpectrum spec = integral_spectrum(params);
    const long long v = params.v, k = params.k, lam = params.lambda, mu = params.mu;
    if (!divides(p, k - 2 * mu) || !divides(p, v - 3 * k + 2 * lam + 1))
        throw std::invalid_argument("bordered construction hypotheses fail at this prime");
    FieldCtx f = FieldCtx::make(p, 1);
    ConstructionPrediction pred{};
    pred.src = params;
    pred.p = p;
    pred.mode = ConstructionPrediction::Mode::bordered;
    pred.n = static_cast<std::size_t>(v) + 1;
    pred.a = f.from_int(2 * spec.r + 1);
    pred.c = f.from_int(2 * (spec.r - spec.s));
    pred.a_alt = f.from_int(2 * spec.s + 1);
    pred.c_alt = f.from_int(2 * (spec.s - spec.r));
    if (!divides(p, spec.r - spec.s)) {
        pred.d = static_cast<std::size_t>(spec.g) + 1;
        pred.d_status = DStatus::exact;
    } else {
        pred.d = static_cast<std::size_t>(std::min(spec.f, spec.g)) + 1;
        pred.d_status = DStatus::bound;
    }
    apply_gerzon_flags(pred);
    return pred;
}

EtfCertificate bordered_certificate(const Graph& g, std::uint64_t p) {
    require_odd_prime(p);
    auto params = check_srg(g);
    if (!params) throw std::invalid_argument("graph is not a nontrivial SRG");
    SrgSpectrum spec = integral_spectrum(*params);
    if (!divides(p, params->k - 2 * params->mu) ||
        !divides(p, params->v - 3 * params->k + 2 * params->lambda + 1))
        throw std::invalid_argument("bordered construction hypotheses fail at this prime");
    FieldCtx f = FieldCtx::make(p, 1);
    felem a = f.from_int(2 * spec.r + 1);
    auto cert = verify_etf(bordered_gram(g, f, a), "bordered");
    if (!cert || cert->params.a != a ||
        cert->params.c != f.from_int(2 * (spec.r - spec.s)))
        throw std::logic_error("bordered construction failed to verify");
    return *cert;
}

namespace {

void centroidal_d_cases(const SrgSpectrum& spec, const SrgParams& params,
                        std::uint64_t p, ConstructionPrediction& pred) {
    const long long w = params.v - 2 * params.k + 2 * spec.r;
    if (!divides(p, spec.r - spec.s)) {
        pred.d = static_cast<std::size_t>(divides(p, w) ? spec.g : spec.g + 1);
        pred.d_status = DStatus::exact;
        return;
    }
    long long bound = std::min(spec.f, spec.g) + 1;
    // when p^{m+1} | v - 2k + 2r for p^m the largest power dividing v,
    // the Gram is a scalar multiple of a rank-g idempotent's reduction
    long long pm = 1;
    while (params.v % (pm * static_cast<long long>(p)) == 0)
        pm *= static_cast<long long>(p);
    if (w % (pm * static_cast<long long>(p)) == 0) bound = std::min(bound, spec.g);
    pred.d = static_cast<std::size_t>(bound);
    pred.d_status = DStatus::bound;
}

}  // namespace

ConstructionPrediction centroidal_prediction(const SrgParams& params, std::uint64_t p) {
    require_odd_prime(p);
    SrgSpectrum spec = integral_spectrum(params);
    const long long v = params.v, k = params.k, lam = params.lambda, mu = params.mu;
    if (!divides(p, v - 4 * k + 2 * lam + 2 * mu))
        throw std::invalid_argument("centroidal construction hypotheses fail at this prime");
    FieldCtx f = FieldCtx::make(p, 1);
    ConstructionPrediction pred{};
    pred.src = params;
    pred.p = p;
    pred.mode = ConstructionPrediction::Mode::centroidal;
    pred.n = static_cast<std::size_t>(v);
    pred.a = f.from_int(2 * spec.r + 1);
    pred.c = f.from_int(2 * (spec.r - spec.s));
    pred.a_alt = f.from_int(2 * spec.s + 1);
    pred.c_alt = f.from_int(2 * (spec.s - spec.r));
    centroidal_d_cases(spec, params, p, pred);
    apply_gerzon_flags(pred);
    return pred;
}

EtfCertificate centroidal_certificate(const Graph& g, std::uint64_t p) {
    require_odd_prime(p);
    auto params = check_srg(g);
    if (!params) throw std::invalid_argument("graph is not a nontrivial SRG");
    SrgSpectrum spec = integral_spectrum(*params);
    if (!divides(p, params->v - 4 * params->k + 2 * params->lambda + 2 * params->mu))
        throw std::invalid_argument("centroidal construction hypotheses fail at this prime");
    FieldCtx f = FieldCtx::make(p, 1);
    felem a = f.from_int(2 * spec.r + 1);
    MatGF gram = seidel_plus_diag(g, f, a);
    if (!constant_row_sum(gram))
        throw std::logic_error("centroidal Gram lost its all-ones eigenvector");
    auto cert = verify_etf(gram, "centroidal");
    if (!cert || cert->params.a != a ||
        cert->params.c != f.from_int(2 * (spec.r - spec.s)))
        throw std::logic_error("centroidal construction failed to verify");
    return *cert;
}

EtfCertificate triangular_gerzon(std::size_t d, std::uint64_t p) {
    require_odd_prime(p);
    if (d < 2) throw std::invalid_argument("dimension must exceed 1");
    if (mod_ll(static_cast<long long>(d) - 7, p) != 0)
        throw std::invalid_argument("requires p | d - 7");
    Graph g = triangular_complement(d + 1);
    EtfCertificate cert = centroidal_certificate(g, p);
    cert.provenance = "triangular-gerzon";
    if (cert.params.d != d || cert.params.n != d * (d + 1) / 2)
        throw std::logic_error("triangular family rank mismatch");
    return cert;
}

EtfCertificate steiner_modular(std::size_t m, std::uint64_t p) {
    require_odd_prime(p);
    if (m < 4) throw std::invalid_argument("needs m >= 4");
    if (mod_ll(static_cast<long long>(m) - 4, p) != 0)
        throw std::invalid_argument("requires m = 4 mod p");
    FieldCtx f = FieldCtx::make(p, 1);
    const std::size_t blocks = m * (m - 1) / 2;
    const std::size_t n = m * m;

    // H = [[1, 1^T], [1, 2I - J]], a +/-1 matrix with H H^T = 4I mod p
    auto hadamard = [&](std::size_t i, std::size_t u) -> felem {
        if (i == 0 || u == 0) return 1;
        return i == u ? 1 : f.neg(1);
    };
    auto block_index = [&](std::size_t i, std::size_t j) {  // i < j
        return i * m - i * (i + 1) / 2 + (j - i - 1);
    };

    // each point's blocks take the m-1 Hadamard rows other than the first
    MatGF phi(f, blocks, n);
    for (std::size_t pt = 0; pt < m; ++pt) {
        std::size_t row_idx = 1;
        for (std::size_t other = 0; other < m; ++other) {
            if (other == pt) continue;
            std::size_t b = pt < other ? block_index(pt, other) : block_index(other, pt);
            for (std::size_t u = 0; u < m; ++u)
                phi.set(b, pt * m + u, hadamard(row_idx, u));
            ++row_idx;
        }
    }

    MatGF gram = phi.transpose() * phi;
    auto cert = verify_etf(gram, "steiner");
    if (!cert || cert->params.a != f.from_int(3) || cert->params.b != 1 ||
        cert->params.c != f.from_int(8) || cert->params.d != blocks ||
        cert->params.n != n)
        throw std::logic_error("Steiner construction failed to verify");
    auto theta = constant_row_sum(gram);
    if (!theta || *theta != 0)
        throw std::logic_error("Steiner construction lost centroidal symmetry");
    return *cert;
}

std::vector<ScanRow> scan(const std::vector<SrgParams>& rows, std::uint64_t pmax,
                          std::optional<std::size_t> dmax) {
    std::vector<ScanRow> out;
    for (const SrgParams& row : rows) {
        if (row.v < 2 || row.k <= 0 || row.k >= row.v - 1 ||
            row.k * (row.k - row.lambda - 1) != row.mu * (row.v - row.k - 1))
            throw std::invalid_argument("malformed SRG parameter row");
        SrgSpectrum spec = srg_spectrum(row);
        if (!spec.integral || spec.f == spec.g) continue;
        for (std::uint64_t p = 3; p <= pmax; p += 2) {
            if (!is_prime(p)) continue;
            const long long v = row.v, k = row.k, lam = row.lambda, mu = row.mu;
            bool bordered_ok =
                divides(p, k - 2 * mu) && divides(p, v - 3 * k + 2 * lam + 1);
            bool centroidal_ok = divides(p, v - 4 * k + 2 * lam + 2 * mu);
            for (int mode = 0; mode < 2; ++mode) {
                if (mode == 0 && !bordered_ok) continue;
                if (mode == 1 && !centroidal_ok) continue;
                ConstructionPrediction pred = mode == 0
                                                  ? bordered_prediction(row, p)
                                                  : centroidal_prediction(row, p);
                if (pred.d_status == DStatus::bound) {
                    if (auto g = registry_graph(row)) {
                        EtfCertificate cert = mode == 0 ? bordered_certificate(*g, p)
                                                        : centroidal_certificate(*g, p);
                        pred.d = cert.params.d;
                        pred.d_status = DStatus::from_graph;
                        pred.gerzon_forced = false;
                        pred.gerzon_equality = pred.n == pred.d * (pred.d + 1) / 2;
                        pred.gerzon_violation = pred.n > pred.d * (pred.d + 1) / 2;
                    }
                }
                ScanRow sr;
                sr.src = row;
                sr.p = p;
                sr.d = pred.d;
                sr.d_status = pred.d_status;
                sr.n = pred.n;
                sr.a = pred.a;
                sr.c = pred.c;
                sr.theorem = mode == 0 ? "bordered" : "centroidal";
                if (pred.gerzon_equality) sr.flags.push_back("gerzon-equality");
                if (pred.gerzon_forced) sr.flags.push_back("gerzon-forced");
                if (pred.gerzon_violation) sr.flags.push_back("gerzon-violation");
                if (!dmax || sr.d <= *dmax) out.push_back(std::move(sr));
            }
        }
    }
    return out;
}

std::vector<SrgParams> read_scan_input(std::istream& in) {
    std::vector<SrgParams> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty scan input");
    auto split = [](const std::string& l) {
        std::vector<std::string> parts;
        std::stringstream ss(l);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        return parts;
    };
    auto header = split(line);
    if (header.size() < 4 || header[0] != "v" || header[1] != "k" ||
        header[2] != "lambda" || header[3] != "mu")
        throw std::invalid_argument("scan input must start with v,k,lambda,mu");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto parts = split(line);
        if (parts.size() < 4) throw std::invalid_argument("short scan input row");
        rows.push_back(SrgParams{std::stoll(parts[0]), std::stoll(parts[1]),
                                 std::stoll(parts[2]), std::stoll(parts[3])});
    }
    return rows;
}

void write_scan_rows(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << "v,k,lambda,mu,p,d,d_status,n,a,c,theorem,flags\n";
    for (const ScanRow& r : rows) {
        out << r.src.v << ',' << r.src.k << ',' << r.src.lambda << ',' << r.src.mu
            << ',' << r.p << ',' << r.d << ',' << to_string(r.d_status) << ','
            << r.n << ',' << r.a << ',' << r.c << ',' << r.theorem << ',';
        for (std::size_t i = 0; i < r.flags.size(); ++i) {
            if (i) out << ';';
            out << r.flags[i];
        }
        out << '\n';
    }
}

std::vector<ScanRow> read_scan_rows(std::istream& in) {
    std::vector<ScanRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        if (parts.size() < 11) throw std::invalid_argument("short scan row");
        ScanRow r;
        r.src = SrgParams{std::stoll(parts[0]), std::stoll(parts[1]),
                          std::stoll(parts[2]), std::stoll(parts[3])};
        r.p = std::stoull(parts[4]);
        r.d = std::stoull(parts[5]);
        r.d_status = parts[6] == "exact"   ? DStatus::exact
                     : parts[6] == "bound" ? DStatus::bound
                                           : DStatus::from_graph;
        r.n = std::stoull(parts[7]);
        r.a = std::stoull(parts[8]);
        r.c = std::stoull(parts[9]);
        r.theorem = parts[10];
        if (parts.size() > 11 && !parts[11].empty()) {
            std::stringstream fs(parts[11]);
            while (std::getline(fs, item, ';')) r.flags.push_back(item);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace etfq
