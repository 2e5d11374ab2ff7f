#pragma once

#include "etfq/matgf.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace etfq {

struct FrameParams {
    FieldCtx field;
    felem a, b, c;
    std::size_t d, n;
};

/// Verified Gram matrix of an (a,b,c)-ETF: symmetric, constant diagonal a,
/// constant off-diagonal square b, G^2 = cG, rank d.
struct EtfCertificate {
    FrameParams params;
    DiscriminantClass discriminant;
    MatGF gram;
    std::string provenance;
};

/// Certificate if G is the Gram matrix of an ETF, nullopt otherwise.
/// Throws only on non-square input. When G^2 = 0 with G != 0 the frame
/// constant is reported as 0 (0-tight frames are first-class).
std::optional<EtfCertificate> verify_etf(const MatGF& g,
                                         const std::string& provenance = "verify");

/// a(c-a) - (n-1)b; zero for every ETF.
felem welch_residual(const FrameParams& params);

enum class GerzonStatus { within, at_bound, violation };
GerzonStatus gerzon_check(std::size_t d, std::size_t n);

/// Certificate for cI - G, a (c-a,b,c)-ETF of rank n-d. Throws when c = 0.
EtfCertificate naimark(const EtfCertificate& cert);

MatGF rescale(const MatGF& g, felem alpha);  // throws when alpha = 0
EtfCertificate rescale(const EtfCertificate& cert, felem alpha);

/// DGD for a +/-1 diagonal D making every off-diagonal entry of row 1 equal
/// +1. Requires a certificate with b = 1 and n >= 2.
MatGF normalize_switching(const MatGF& g);

/// Reduces the signature matrix of a real d x n ETF into F_{p^degree}.
/// S must be symmetric with zero diagonal, +/-1 off-diagonal entries and a
/// quadratic minimal polynomial matching the supplied real dimension d.
/// For n = 2d a delta with delta^2 = n-1 is required (found via sqrt when
/// not supplied).
EtfCertificate project_real_signature(const IntMat& s, std::size_t real_d,
                                      std::uint64_t p, int degree,
                                      std::optional<felem> delta = std::nullopt);

struct DescentResult {
    EtfCertificate cert;
    int j;  // 1 when the parameters lie in the prime field
};

/// Re-expresses an (a,1,c)-ETF over the smallest of F_p, F_{p^2} containing
/// its parameters; j = 1 is guaranteed when n != 2d or c = 0.
DescentResult descend_base_field(const EtfCertificate& cert);

enum class IntegralityResult { pass, fail, inapplicable };

/// Necessary condition for a d x n ETF in characteristic p: n != d mod p and
/// d(n-1)/(n-d) a square mod p, when d != 0 and n != 1 mod p. Requires
/// n not in {d, 2d}.
IntegralityResult integrality_test(std::size_t d, std::size_t n, std::uint64_t p);

struct CandidatePrimes {
    bool unbounded;
    std::vector<std::uint64_t> primes;
};

/// Odd primes p <= 2n-5 that survive the integrality test and admit a
/// solution of the trace and Welch relations; unbounded when a real d x n
/// ETF exists (no characteristic can then be excluded).
CandidatePrimes candidate_primes(std::size_t d, std::size_t n, bool real_exists);

/// Solutions a of { na = dc, a(c-a) = n-1 } over F_p, in ascending order.
/// When both n and d vanish mod p the relations are vacuous and every
/// a in F_p is returned.
std::vector<felem> admissible_norms(std::uint64_t p, std::size_t d, std::size_t n);

/// Table-reporting convention: parameters rescaled to b = 1, then the
/// lexicographically smaller of (a,c) and (-a,-c). Returns (a,c) unchanged
/// when b = 0.
std::pair<felem, felem> normalized_params(const FrameParams& params);

void write_certificate(std::ostream& out, const EtfCertificate& cert,
                       const std::string& gram_ref);

}  // namespace etfq
