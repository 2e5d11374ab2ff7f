#include "etfq/gf.hpp"

#include <stdexcept>

namespace etfq {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldCtx FieldCtx::make(std::uint64_t p, int degree) {
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("field degree must be 1 or 2");
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("field characteristic must be an odd prime");
    if (p > (1ull << 31))
        throw std::invalid_argument("characteristic too large");
    std::uint64_t nu = 0;
    for (std::uint64_t z = 2; z < p; ++z) {
        if (powmod(z, (p - 1) / 2, p) == p - 1) {
            nu = z;
            break;
        }
    }
    return FieldCtx(p, degree, nu);
}

felem FieldCtx::inv(felem a) const {
    if (a == 0) throw std::domain_error("division by zero field element");
    if (l_ == 1) return powmod(a, p_ - 2, p_);
    // (x + y*t)^-1 = (x - y*t) / (x^2 - nu*y^2)
    std::uint64_t x = a % p_, y = a / p_;
    std::uint64_t norm = ((x * x % p_) + p_ - nu_ * (y * y % p_) % p_) % p_;
    std::uint64_t ninv = powmod(norm, p_ - 2, p_);
    std::uint64_t rx = x * ninv % p_;
    std::uint64_t ry = (y == 0 ? 0 : p_ - y) * ninv % p_;
    return rx + p_ * ry;
}

felem FieldCtx::pow(felem a, std::uint64_t e) const {
    if (l_ == 1) return powmod(a, e, p_);
    felem r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

felem FieldCtx::from_int(long long k) const {
    long long m = static_cast<long long>(p_);
    long long r = k % m;
    if (r < 0) r += m;
    return static_cast<felem>(r);
}

felem FieldCtx::from_parts(std::uint64_t x, std::uint64_t y) const {
    if (x >= p_ || y >= p_) throw std::invalid_argument("coordinate out of range");
    if (l_ == 1 && y != 0) throw std::invalid_argument("no t coordinate in a prime field");
    return x + p_ * y;
}

bool FieldCtx::is_square(felem a) const {
    if (a == 0) return true;
    return pow(a, (q() - 1) / 2) == 1;
}

std::optional<std::array<felem, 2>> FieldCtx::sqrt(felem a) const {
    if (a == 0) return std::array<felem, 2>{0, 0};
    if (!is_square(a)) return std::nullopt;
    felem r;
    if (p_ <= 256) {
        // exhaustive search; q <= 65536
        r = 0;
        for (felem x = 1; x < q(); ++x) {
            if (mul(x, x) == a) {
                r = x;
                break;
            }
        }
    } else {
        // Tonelli-Shanks in the cyclic group of order q - 1
        std::uint64_t m = q() - 1;
        int s = 0;
        while ((m & 1) == 0) {
            m >>= 1;
            ++s;
        }
        felem z = nonresidue();
        felem c = pow(z, m);
        felem x = pow(a, (m + 1) / 2);
        felem t = pow(a, m);
        while (t != 1) {
            felem t2 = t;
            int i = 0;
            while (t2 != 1) {
                t2 = mul(t2, t2);
                ++i;
            }
            felem b = c;
            for (int j = 0; j < s - i - 1; ++j) b = mul(b, b);
            x = mul(x, b);
            c = mul(b, b);
            t = mul(t, c);
            s = i;
        }
        r = x;
    }
    felem r2 = neg(r);
    if (r2 < r) std::swap(r, r2);
    return std::array<felem, 2>{r, r2};
}

felem FieldCtx::nonresidue() const {
    if (l_ == 1) return nu_;
    // every element of the prime subfield is a square in F_{p^2}, so the
    // least non-square has a nonzero t coordinate
    for (felem a = p_; a < q(); ++a) {
        if (!is_square(a)) return a;
    }
    throw std::logic_error("no non-residue found");
}

std::string FieldCtx::str(felem a) const {
    std::uint64_t x = a % p_, y = a / p_;
    if (y == 0) return std::to_string(x);
    return std::to_string(x) + "+" + std::to_string(y) + "*t";
}

felem FieldCtx::parse(std::string_view s) const {
    auto fail = [&] {
        throw std::invalid_argument("bad field element '" + std::string(s) + "'");
    };
    auto read_num = [&](std::string_view v) -> std::uint64_t {
        if (v.empty()) fail();
        std::uint64_t n = 0;
        for (char ch : v) {
            if (ch < '0' || ch > '9') fail();
            n = n * 10 + static_cast<std::uint64_t>(ch - '0');
            if (n >= p_) fail();
        }
        return n;
    };
    auto plus = s.find('+');
    if (plus == std::string_view::npos) return from_parts(read_num(s), 0);
    if (l_ != 2) fail();
    std::string_view xs = s.substr(0, plus);
    std::string_view ys = s.substr(plus + 1);
    if (ys.size() < 2 || ys.substr(ys.size() - 2) != "*t") fail();
    return from_parts(read_num(xs), read_num(ys.substr(0, ys.size() - 2)));
}

}  // namespace etfq
