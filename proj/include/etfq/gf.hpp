#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace etfq {

// Element code of a field element. F_p elements are their canonical
// representative in [0, p). F_{p^2} = F_p[t]/(t^2 - nu) elements x + y*t are
// encoded as x + p*y.
using felem = std::uint64_t;

/// Arithmetic context for F_p or F_{p^2}, p an odd prime.
///
/// Immutable after construction and freely copyable/shareable; every
/// operation is pure.
class FieldCtx {
public:
    /// Builds F_{p^degree}. Throws std::invalid_argument unless p is an odd
    /// prime and degree is 1 or 2. For degree 2 the modulus is t^2 - nu with
    /// nu the least quadratic non-residue of F_p.
    static FieldCtx make(std::uint64_t p, int degree);

    std::uint64_t p() const { return p_; }
    int degree() const { return l_; }
    std::uint64_t q() const { return l_ == 1 ? p_ : p_ * p_; }
    /// Least non-residue of the prime field (defines t^2 = nu when degree 2).
    std::uint64_t nu() const { return nu_; }

    felem zero() const { return 0; }
    felem one() const { return 1; }

    felem add(felem a, felem b) const {
        if (l_ == 1) {
            felem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return (a % p_ + b % p_) % p_ + p_ * ((a / p_ + b / p_) % p_);
    }
    felem neg(felem a) const {
        if (l_ == 1) return a == 0 ? 0 : p_ - a;
        std::uint64_t x = a % p_, y = a / p_;
        return (x == 0 ? 0 : p_ - x) + p_ * (y == 0 ? 0 : p_ - y);
    }
    felem sub(felem a, felem b) const { return add(a, neg(b)); }
    felem mul(felem a, felem b) const {
        if (l_ == 1) return a * b % p_;
        std::uint64_t x1 = a % p_, y1 = a / p_, x2 = b % p_, y2 = b / p_;
        std::uint64_t x = (x1 * x2 + nu_ * (y1 * y2 % p_)) % p_;
        std::uint64_t y = (x1 * y2 + y1 * x2) % p_;
        return x + p_ * y;
    }
    felem inv(felem a) const;  // throws on 0
    felem div(felem a, felem b) const { return mul(a, inv(b)); }
    felem pow(felem a, std::uint64_t e) const;

    /// Image of k under the unital ring homomorphism Z -> F_{p^l}.
    felem from_int(long long k) const;
    felem from_parts(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t x_part(felem a) const { return a % p_; }
    std::uint64_t y_part(felem a) const { return a / p_; }
    bool in_base_field(felem a) const { return a < p_; }

    bool is_square(felem a) const;
    /// Both square roots {r, -r} ordered by element code ({0, 0} for a = 0),
    /// or nullopt when a is not a square.
    std::optional<std::array<felem, 2>> sqrt(felem a) const;
    /// Least non-square element of this field (not of the prime subfield).
    felem nonresidue() const;

    std::string str(felem a) const;
    /// Parses the textual encoding: decimal for F_p, `x+y*t` (y = 0 may be
    /// abbreviated to `x`) for F_{p^2}. Throws std::invalid_argument.
    felem parse(std::string_view s) const;

    bool operator==(const FieldCtx& o) const {
        return p_ == o.p_ && l_ == o.l_;
    }
    bool operator!=(const FieldCtx& o) const { return !(*this == o); }

private:
    FieldCtx(std::uint64_t p, int l, std::uint64_t nu)
        : p_(p), l_(l), nu_(nu) {}

    std::uint64_t p_;
    int l_;
    std::uint64_t nu_;
};

bool is_prime(std::uint64_t n);

}  // namespace etfq
