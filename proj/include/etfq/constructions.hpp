#pragma once

#include "etfq/frames.hpp"
#include "etfq/graphs.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace etfq {

enum class DStatus { exact, bound, from_graph };
std::string to_string(DStatus s);

/// Parameter-mode output of the bordered / centroidal SRG constructions.
/// (a, c) is the representative with delta = r - s; (a_alt, c_alt) the other
/// sign choice. d is exact or an upper bound per d_status.
struct ConstructionPrediction {
    SrgParams src;
    std::uint64_t p;
    enum class Mode { bordered, centroidal } mode;
    std::size_t n;
    felem a, c;
    felem a_alt, c_alt;
    std::size_t d;
    DStatus d_status;
    bool gerzon_equality = false;
    bool gerzon_violation = false;
    bool gerzon_forced = false;  // bound promoted to equality by the Gerzon bound
};

/// Bordered construction on an arbitrary graph through the modular-SRG
/// conditions: k = 2mu, v = 3k - 2lambda - 1 (mod p) and a square root of
/// (lambda-mu)^2 + 4(k-mu) over F_p or F_{p^2}. Returns the certificates for
/// both sign choices (one when delta = 0), or empty when a condition fails.
std::vector<EtfCertificate> bordered_etfs(const Graph& g, std::uint64_t p);

/// Bordered construction from SRG parameters: a = 2r+1, c = 2r-2s mod p,
/// n = v+1, d = g+1 when r != s mod p, else bounded by min{f,g}+1.
ConstructionPrediction bordered_prediction(const SrgParams& params, std::uint64_t p);
EtfCertificate bordered_certificate(const Graph& g, std::uint64_t p);

/// Centroidal construction (Gram = Seidel + (2r+1)I, n = v) under
/// p | v - 4k + 2lambda + 2mu, with the four rank cases.
ConstructionPrediction centroidal_prediction(const SrgParams& params, std::uint64_t p);
EtfCertificate centroidal_certificate(const Graph& g, std::uint64_t p);

/// Gerzon-equality family from the complement of the triangular graph
/// T(d+1): n = d(d+1)/2 vectors of rank exactly d over F_p, p | d - 7.
EtfCertificate triangular_gerzon(std::size_t d, std::uint64_t p);

/// Steiner system of 2-subsets of [m] combined with the modular Hadamard
/// matrix [[1, 1^T], [1, 2I - J]]: a (3,1,8)-ETF (mod p) of m^2 vectors with
/// rank m(m-1)/2 and centroidal symmetry, for m = 4 mod p.
EtfCertificate steiner_modular(std::size_t m, std::uint64_t p);

struct ScanRow {
    SrgParams src;
    std::uint64_t p;
    std::size_t d;
    DStatus d_status;
    std::size_t n;
    felem a, c;
    std::string theorem;  // "bordered" or "centroidal"
    std::vector<std::string> flags;
};

/// Applies both constructions to every row for every odd prime p <= pmax
/// whose hypotheses hold. Emits the delta = r - s representative. Bound-mode
/// dimensions are computed from a registry graph when one matches, and
/// Gerzon-equality bounds are promoted to exact values. Rows whose predicted
/// dimension violates the Gerzon bound are flagged (SRG nonexistence
/// evidence). Output order: input order, then ascending p, bordered first.
std::vector<ScanRow> scan(const std::vector<SrgParams>& rows, std::uint64_t pmax,
                          std::optional<std::size_t> dmax = std::nullopt);

/// CSV header `v,k,lambda,mu[,status]`; the status column is ignored.
std::vector<SrgParams> read_scan_input(std::istream& in);
/// CSV header `v,k,lambda,mu,p,d,d_status,n,a,c,theorem,flags`.
void write_scan_rows(std::ostream& out, const std::vector<ScanRow>& rows);
std::vector<ScanRow> read_scan_rows(std::istream& in);

}  // namespace etfq
