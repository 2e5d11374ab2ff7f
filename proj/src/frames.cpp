#include "etfq/frames.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace etfq {

namespace {

const char* disc_name(DiscriminantClass d) {
    return d == DiscriminantClass::square ? "square" : "nonsquare";
}

std::optional<long long> exact_isqrt_ll(long long x) {
    if (x < 0) return std::nullopt;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    if (r * r != x) return std::nullopt;
    return r;
}

}  // namespace

std::optional<EtfCertificate> verify_etf(const MatGF& g, const std::string& provenance) {
    if (g.rows() != g.cols()) throw std::invalid_argument("Gram matrix must be square");
    const FieldCtx& f = g.field();
    const std::size_t n = g.rows();
    if (n == 0 || g.is_zero()) return std::nullopt;
    if (!g.is_symmetric()) return std::nullopt;

    felem a = g.at(0, 0);
    for (std::size_t i = 1; i < n; ++i)
        if (g.at(i, i) != a) return std::nullopt;
    felem b = 0;
    bool b_set = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            felem sq = f.mul(g.at(i, j), g.at(i, j));
            if (!b_set) {
                b = sq;
                b_set = true;
            } else if (sq != b) {
                return std::nullopt;
            }
        }

    MatGF g2 = g * g;
    felem c = 0;
    if (!g2.is_zero()) {
        bool c_set = false;
        for (std::size_t i = 0; i < n && !c_set; ++i)
            for (std::size_t j = 0; j < n && !c_set; ++j)
                if (g2.at(i, j) != 0) {
                    if (g.at(i, j) == 0) return std::nullopt;
                    c = f.div(g2.at(i, j), g.at(i, j));
                    c_set = true;
                }
        if (g2 != g.scaled(c)) return std::nullopt;
    }

    std::size_t d = rank(g);
    EtfCertificate cert{FrameParams{f, a, b, c, d, n}, discriminant_class(g), g,
                        provenance};
    // trace and Welch relations hold for every ETF; a failure here is a bug
    if (f.mul(f.from_int(static_cast<long long>(n)), a) !=
        f.mul(f.from_int(static_cast<long long>(d)), c))
        throw std::logic_error("certificate violates na = dc");
    if (welch_residual(cert.params) != 0)
        throw std::logic_error("certificate violates the Welch relation");
    return cert;
}

felem welch_residual(const FrameParams& p) {
    const FieldCtx& f = p.field;
    felem lhs = f.mul(p.a, f.sub(p.c, p.a));
    felem rhs = f.mul(f.from_int(static_cast<long long>(p.n) - 1), p.b);
    return f.sub(lhs, rhs);
}

GerzonStatus gerzon_check(std::size_t d, std::size_t n) {
    std::size_t bound = d * (d + 1) / 2;
    if (n < bound) return GerzonStatus::within;
    if (n == bound) return GerzonStatus::at_bound;
    return GerzonStatus::violation;
}

EtfCertificate naimark(const EtfCertificate& cert) {
    const FieldCtx& f = cert.params.field;
    if (cert.params.c == 0)
        throw std::domain_error("0-tight frame has no Naimark complement");
    if (cert.params.d == cert.params.n)
        throw std::domain_error("full-rank frame complements to rank 0");
    MatGF comp = MatGF::identity(f, cert.params.n).scaled(cert.params.c) - cert.gram;
    auto out = verify_etf(comp, "naimark(" + cert.provenance + ")");
    if (!out || out->params.a != f.sub(cert.params.c, cert.params.a) ||
        out->params.b != cert.params.b || out->params.c != cert.params.c ||
        out->params.d != cert.params.n - cert.params.d)
        throw std::logic_error("Naimark complement failed to verify");
    return *out;
}

MatGF rescale(const MatGF& g, felem alpha) {
    if (alpha == 0) throw std::domain_error("rescaling by zero");
    return g.scaled(alpha);
}

EtfCertificate rescale(const EtfCertificate& cert, felem alpha) {
    auto out = verify_etf(rescale(cert.gram, alpha),
                          "rescale(" + cert.provenance + ")");
    if (!out) throw std::logic_error("rescaled Gram failed to verify");
    return *out;
}

MatGF normalize_switching(const MatGF& g) {
    auto cert = verify_etf(g);
    if (!cert || cert->params.b != 1 || cert->params.n < 2)
        throw std::invalid_argument("switching normalization needs a b = 1 ETF");
    const FieldCtx& f = g.field();
    const std::size_t n = g.rows();
    std::vector<felem> d(n, 1);
    for (std::size_t j = 1; j < n; ++j) {
        if (g.at(0, j) == 0)
            throw std::invalid_argument("zero off-diagonal entry in row 1");
        d[j] = g.at(0, j);  // +/-1, so its own inverse
    }
    MatGF out(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.set(i, j, f.mul(d[i], f.mul(g.at(i, j), d[j])));
    return out;
}

EtfCertificate project_real_signature(const IntMat& s, std::size_t real_d,
                                      std::uint64_t p, int degree,
                                      std::optional<felem> delta) {
    const std::size_t n = s.rows();
    if (s.cols() != n || n < 2) throw std::invalid_argument("signature matrix must be square");
    if (!s.is_symmetric()) throw std::invalid_argument("signature matrix must be symmetric");
    for (std::size_t i = 0; i < n; ++i) {
        if (s.at(i, i) != 0) throw std::invalid_argument("signature diagonal must vanish");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && s.at(i, j) * s.at(i, j) != 1)
                throw std::invalid_argument("signature entries must be +/-1 off the diagonal");
    }
    const long long d = static_cast<long long>(real_d);
    const long long nn = static_cast<long long>(n);
    if (d < 1 || d >= nn) throw std::invalid_argument("real dimension out of range");

    // S^2 = beta*S + (n-1)I pins the two real eigenvalues
    IntMat s2 = s * s;
    bigint beta_big = s2.at(0, 1) * s.at(0, 1);
    IntMat expect = s.scaled(beta_big) + IntMat::identity(n).scaled(nn - 1);
    if (!(s2 == expect))
        throw std::invalid_argument("signature matrix has no quadratic minimal polynomial");
    long long beta = static_cast<long long>(beta_big);

    // beta = (n-2d)/d * sqrt(d(n-1)/(n-d)); checks the claimed dimension
    if (beta * beta * d * (nn - d) != (nn - 2 * d) * (nn - 2 * d) * (nn - 1) ||
        (beta > 0) != (nn - 2 * d > 0) || (beta == 0) != (nn == 2 * d))
        throw std::invalid_argument("signature matrix does not match the claimed dimension");

    FieldCtx f = FieldCtx::make(p, degree);
    felem a, c;
    if (nn != 2 * d) {
        if ((d * (nn - 1)) % (nn - d) != 0)
            throw std::invalid_argument("non-integral frame norm for n != 2d");
        auto ahat = exact_isqrt_ll(d * (nn - 1) / (nn - d));
        if (!ahat) throw std::invalid_argument("non-integral frame norm for n != 2d");
        if ((nn * *ahat) % d != 0)
            throw std::invalid_argument("non-integral frame constant for n != 2d");
        a = f.from_int(*ahat);
        c = f.from_int(nn * *ahat / d);
        if (delta && *delta != a)
            throw std::invalid_argument("supplied delta conflicts with the integral norm");
    } else {
        felem target = f.from_int(nn - 1);
        if (delta) {
            if (f.mul(*delta, *delta) != target)
                throw std::invalid_argument("delta^2 != n-1");
        } else {
            auto roots = f.sqrt(target);
            if (!roots)
                throw std::domain_error("n-1 is not a square in the target field");
            delta = (*roots)[0];
        }
        a = *delta;
        c = f.add(a, a);
    }

    MatGF g = reduce_mod(s, f);
    for (std::size_t i = 0; i < n; ++i) g.set(i, i, a);
    auto cert = verify_etf(g, "project-real");
    if (!cert || cert->params.a != a || cert->params.b != 1 || cert->params.c != c)
        throw std::logic_error("projected signature failed to verify");
    if (cert->params.d > real_d || (c != 0 && cert->params.d != real_d))
        throw std::logic_error("projected rank out of range");
    return *cert;
}

DescentResult descend_base_field(const EtfCertificate& cert) {
    const FieldCtx& f = cert.params.field;
    if (cert.params.b != 1)
        throw std::invalid_argument("base-field descent needs a b = 1 certificate");
    auto theorem_forces_base = [&] {
        return cert.params.n != 2 * cert.params.d || cert.params.c == 0;
    };
    if (f.degree() == 1) return DescentResult{cert, 1};
    if (!f.in_base_field(cert.params.a) || !f.in_base_field(cert.params.c)) {
        if (theorem_forces_base())
            throw std::logic_error("parameters escape the prime field where descent is guaranteed");
        return DescentResult{cert, 2};
    }
    FieldCtx base = FieldCtx::make(f.p(), 1);
    const std::size_t n = cert.params.n;
    MatGF g(base, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            felem e = cert.gram.at(i, j);
            if (!f.in_base_field(e))
                throw std::logic_error("signature entry escapes the prime field");
            g.set(i, j, e);
        }
    auto out = verify_etf(g, "descend(" + cert.provenance + ")");
    if (!out || out->params.d != cert.params.d)
        throw std::logic_error("descended Gram failed to verify");
    return DescentResult{*out, 1};
}

IntegralityResult integrality_test(std::size_t d, std::size_t n, std::uint64_t p) {
    if (n == d || n == 2 * d)
        throw std::invalid_argument("integrality test needs n outside {d, 2d}");
    FieldCtx f = FieldCtx::make(p, 1);
    felem dd = f.from_int(static_cast<long long>(d));
    felem nn = f.from_int(static_cast<long long>(n));
    if (dd == 0 || nn == 1) return IntegralityResult::inapplicable;
    if (nn == dd) return IntegralityResult::fail;
    felem ratio = f.div(f.mul(dd, f.sub(nn, 1)), f.sub(nn, dd));
    return f.is_square(ratio) ? IntegralityResult::pass : IntegralityResult::fail;
}

std::vector<felem> admissible_norms(std::uint64_t p, std::size_t d, std::size_t n) {
    FieldCtx f = FieldCtx::make(p, 1);
    felem dd = f.from_int(static_cast<long long>(d));
    felem nn = f.from_int(static_cast<long long>(n));
    felem welch = f.sub(nn, 1);
    std::vector<felem> all;
    if (dd != 0) {
        // c = (n/d) a, so a^2 (n-d)/d = n-1
        felem coef = f.div(f.sub(nn, dd), dd);
        if (coef != 0) {
            felem target = f.div(welch, coef);
            if (auto roots = f.sqrt(target)) {
                all.push_back((*roots)[0]);
                if ((*roots)[1] != (*roots)[0]) all.push_back((*roots)[1]);
            }
        } else if (welch == 0) {
            for (felem a = 0; a < p; ++a) all.push_back(a);
        }
    } else if (nn != 0) {
        // na = dc forces a = 0; the Welch relation then needs n = 1
        if (welch == 0) all.push_back(0);
    } else {
        // both relations vacuous mod p; no norm can be excluded
        for (felem a = 0; a < p; ++a) all.push_back(a);
    }
    return all;
}

CandidatePrimes candidate_primes(std::size_t d, std::size_t n, bool real_exists) {
    if (real_exists) return CandidatePrimes{true, {}};
    CandidatePrimes out{false, {}};
    if (2 * n < 5 + 3) return out;
    for (std::uint64_t p = 3; p <= 2 * n - 5; p += 2) {
        if (!is_prime(p)) continue;
        if (n != d && n != 2 * d &&
            integrality_test(d, n, p) == IntegralityResult::fail)
            continue;
        if (admissible_norms(p, d, n).empty()) continue;
        out.primes.push_back(p);
    }
    return out;
}

std::pair<felem, felem> normalized_params(const FrameParams& p) {
    const FieldCtx& f = p.field;
    felem a = p.a, c = p.c;
    if (p.b != 0 && p.b != 1) {
        auto roots = f.sqrt(p.b);
        if (!roots) throw std::logic_error("b is a nonzero off-diagonal square");
        felem alpha = f.inv((*roots)[0]);
        a = f.mul(a, alpha);
        c = f.mul(c, alpha);
    }
    if (p.b == 0) return {a, c};
    felem na = f.neg(a), nc = f.neg(c);
    if (na < a || (na == a && nc < c)) return {na, nc};
    return {a, c};
}

void write_certificate(std::ostream& out, const EtfCertificate& cert,
                       const std::string& gram_ref) {
    const FieldCtx& f = cert.params.field;
    out << "p " << f.p() << '\n'
        << "l " << f.degree() << '\n'
        << "a " << f.str(cert.params.a) << '\n'
        << "b " << f.str(cert.params.b) << '\n'
        << "c " << f.str(cert.params.c) << '\n'
        << "d " << cert.params.d << '\n'
        << "n " << cert.params.n << '\n'
        << "discriminant " << disc_name(cert.discriminant) << '\n'
        << "provenance " << cert.provenance << '\n'
        << "gram " << gram_ref << '\n';
}

}  // namespace etfq
