#include "etfq/matgf.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace etfq {

MatGF::MatGF(FieldCtx field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

MatGF MatGF::identity(FieldCtx field, std::size_t n) {
    MatGF m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

MatGF MatGF::all_ones(FieldCtx field, std::size_t rows, std::size_t cols) {
    MatGF m(field, rows, cols);
    for (auto& v : m.e_) v = 1;
    return m;
}

bool MatGF::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool MatGF::is_zero() const {
    for (felem v : e_)
        if (v != 0) return false;
    return true;
}

MatGF MatGF::transpose() const {
    MatGF t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

MatGF MatGF::scaled(felem alpha) const {
    MatGF m(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = field_.mul(e_[i], alpha);
    return m;
}

MatGF MatGF::operator*(const MatGF& o) const {
    if (cols_ != o.rows_ || field_ != o.field_)
        throw std::invalid_argument("matrix shape/field mismatch in product");
    MatGF r(field_, rows_, o.cols_);
    if (field_.degree() == 1) {
        // fast path: accumulate residues, reduce lazily
        const std::uint64_t p = field_.p();
        const std::uint64_t cap = ~0ull - (p - 1) * (p - 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = at(i, k);
                if (a == 0) continue;
                const felem* src = &o.e_[k * o.cols_];
                felem* dst = &r.e_[i * o.cols_];
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    std::uint64_t v = dst[j] + a * src[j];
                    if (dst[j] > cap) v = dst[j] % p + a * src[j];
                    dst[j] = v;
                }
            }
            felem* dst = &r.e_[i * o.cols_];
            for (std::size_t j = 0; j < o.cols_; ++j) dst[j] %= p;
        }
    } else {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                felem a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.set(i, j, field_.add(r.at(i, j), field_.mul(a, o.at(k, j))));
            }
    }
    return r;
}

MatGF MatGF::operator+(const MatGF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        throw std::invalid_argument("matrix shape/field mismatch in sum");
    MatGF r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
    return r;
}

MatGF MatGF::operator-(const MatGF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        throw std::invalid_argument("matrix shape/field mismatch in difference");
    MatGF r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
    return r;
}

bool MatGF::operator==(const MatGF& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

void MatGF::write(std::ostream& out) const {
    out << field_.p() << ' ' << field_.degree() << ' ' << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << field_.str(at(i, j));
        }
        out << '\n';
    }
}

MatGF MatGF::read(std::istream& in) {
    std::uint64_t p;
    int l;
    std::size_t rows, cols;
    if (!(in >> p >> l >> rows >> cols))
        throw std::invalid_argument("bad matrix header");
    if (p == 0) throw std::invalid_argument("integer matrix where a field matrix was expected");
    MatGF m(FieldCtx::make(p, l), rows, cols);
    std::string tok;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(in >> tok)) throw std::invalid_argument("truncated matrix file");
            m.set(i, j, m.field().parse(tok));
        }
    return m;
}

IntMat::IntMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, bigint(0)) {}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in product");
    IntMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const bigint& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.e_[i * o.cols_ + j] += a * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch in sum");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch in difference");
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMat IntMat::scaled(const bigint& alpha) const {
    IntMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * alpha;
    return r;
}

bool IntMat::operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool IntMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

void IntMat::write(std::ostream& out) const {
    out << "0 0 " << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << at(i, j);
        }
        out << '\n';
    }
}

IntMat IntMat::read(std::istream& in) {
    std::uint64_t p;
    int l;
    std::size_t rows, cols;
    if (!(in >> p >> l >> rows >> cols))
        throw std::invalid_argument("bad matrix header");
    if (p != 0 || l != 0)
        throw std::invalid_argument("field matrix where an integer matrix was expected");
    IntMat m(rows, cols);
    std::string tok;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(in >> tok)) throw std::invalid_argument("truncated matrix file");
            m.set(i, j, bigint(tok));
        }
    return m;
}

namespace {

// In-place row echelon over the field; returns pivot column indices.
std::vector<std::size_t> echelon(MatGF& a) {
    const FieldCtx& f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = col; j < a.cols(); ++j) {
                felem t = a.at(row, j);
                a.set(row, j, a.at(piv, j));
                a.set(piv, j, t);
            }
        felem inv = f.inv(a.at(row, col));
        for (std::size_t j = col; j < a.cols(); ++j)
            a.set(row, j, f.mul(a.at(row, j), inv));
        for (std::size_t i = row + 1; i < a.rows(); ++i) {
            felem m = a.at(i, col);
            if (m == 0) continue;
            for (std::size_t j = col; j < a.cols(); ++j)
                a.set(i, j, f.sub(a.at(i, j), f.mul(m, a.at(row, j))));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

felem determinant(MatGF a) {
    const FieldCtx& f = a.field();
    const std::size_t n = a.rows();
    felem det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) {
                felem t = a.at(col, j);
                a.set(col, j, a.at(piv, j));
                a.set(piv, j, t);
            }
            det = f.neg(det);
        }
        det = f.mul(det, a.at(col, col));
        felem inv = f.inv(a.at(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            felem m = f.mul(a.at(i, col), inv);
            if (m == 0) continue;
            for (std::size_t j = col; j < n; ++j)
                a.set(i, j, f.sub(a.at(i, j), f.mul(m, a.at(col, j))));
        }
    }
    return det;
}

}  // namespace

std::size_t rank(const MatGF& m) {
    MatGF a = m;
    return echelon(a).size();
}

MatGF reduce_mod(const IntMat& m, const FieldCtx& field) {
    MatGF r(field, m.rows(), m.cols());
    const bigint p(field.p());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            bigint v = m.at(i, j) % p;
            if (v < 0) v += p;
            r.set(i, j, static_cast<felem>(v));
        }
    return r;
}

std::size_t p_rank(const IntMat& m, std::uint64_t p) {
    return rank(reduce_mod(m, FieldCtx::make(p, 1)));
}

DiscriminantClass discriminant_class(const MatGF& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("matrix not symmetric");
    if (m.is_zero()) throw std::invalid_argument("zero matrix has no discriminant");
    MatGF a = m;
    std::vector<std::size_t> basis = echelon(a);
    MatGF sub(m.field(), basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            sub.set(i, j, m.at(basis[i], basis[j]));
    felem det = determinant(sub);
    if (det == 0) throw std::logic_error("basic submatrix is singular");
    return m.field().is_square(det) ? DiscriminantClass::square
                                    : DiscriminantClass::nonsquare;
}

GramFactorization gram_factor(const MatGF& g) {
    if (!g.is_symmetric()) throw std::invalid_argument("matrix not symmetric");
    if (g.is_zero()) throw std::invalid_argument("zero matrix has no factorization");
    const FieldCtx& f = g.field();
    const std::size_t n = g.rows();

    // Congruence diagonalization: maintain A = E G E^T together with
    // F = E^{-1}, so that G = F D F^T at the end.
    MatGF a = g;
    MatGF fm = MatGF::identity(f, n);
    auto add_row_col = [&](std::size_t dst, std::size_t src, felem m) {
        // A <- R A R^T for R = I + m e_dst e_src^T; F <- F R^{-1}
        for (std::size_t j = 0; j < n; ++j)
            a.set(dst, j, f.add(a.at(dst, j), f.mul(m, a.at(src, j))));
        for (std::size_t i = 0; i < n; ++i)
            a.set(i, dst, f.add(a.at(i, dst), f.mul(m, a.at(i, src))));
        for (std::size_t i = 0; i < n; ++i)
            fm.set(i, src, f.sub(fm.at(i, src), f.mul(m, fm.at(i, dst))));
    };
    auto swap_pair = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) {
            felem t = a.at(i, k);
            a.set(i, k, a.at(j, k));
            a.set(j, k, t);
        }
        for (std::size_t k = 0; k < n; ++k) {
            felem t = a.at(k, i);
            a.set(k, i, a.at(k, j));
            a.set(k, j, t);
        }
        for (std::size_t k = 0; k < n; ++k) {
            felem t = fm.at(k, i);
            fm.set(k, i, fm.at(k, j));
            fm.set(k, j, t);
        }
    };

    std::size_t r = 0;
    for (; r < n; ++r) {
        if (a.at(r, r) == 0) {
            std::size_t piv = r + 1;
            while (piv < n && a.at(piv, piv) == 0) ++piv;
            if (piv < n) {
                swap_pair(r, piv);
            } else {
                // all remaining diagonal entries vanish; pull in an
                // off-diagonal entry (char != 2 makes 2*A_ij nonzero)
                bool found = false;
                for (std::size_t i = r; i < n && !found; ++i)
                    for (std::size_t j = i + 1; j < n && !found; ++j)
                        if (a.at(i, j) != 0) {
                            add_row_col(i, j, 1);
                            if (i != r) swap_pair(r, i);
                            found = true;
                        }
                if (!found) break;  // remaining block is zero
            }
        }
        felem d = a.at(r, r);
        felem dinv = f.inv(d);
        for (std::size_t i = r + 1; i < n; ++i) {
            felem m = a.at(i, r);
            if (m != 0) add_row_col(i, r, f.neg(f.mul(m, dinv)));
        }
    }

    // G = sum_i d_i f_i f_i^T over the r nonzero pivots; split each pivot
    // into its square class and scale the corresponding vector.
    felem nu = f.nonresidue();
    MatGF x(f, r, n);
    std::vector<bool> is_nu(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        felem d = a.at(i, i);
        felem alpha;
        if (f.is_square(d)) {
            alpha = (*f.sqrt(d))[0];
        } else {
            is_nu[i] = true;
            alpha = (*f.sqrt(f.div(d, nu)))[0];
        }
        for (std::size_t j = 0; j < n; ++j) x.set(i, j, f.mul(alpha, fm.at(j, i)));
    }

    // Merge pairs of nu pivots into unit pivots: solve nu*x0^2 + nu*y0^2 = 1
    // and apply P^{-1} = nu * [[x0, y0], [-y0, x0]] to the two rows.
    std::vector<std::size_t> nus;
    for (std::size_t i = 0; i < r; ++i)
        if (is_nu[i]) nus.push_back(i);
    if (nus.size() >= 2) {
        felem x0 = 0, y0 = 0;
        bool found = false;
        felem target = f.inv(nu);  // x0^2 + y0^2 = 1/nu
        for (felem yy = 0; yy < f.q() && !found; ++yy) {
            felem rest = f.sub(target, f.mul(yy, yy));
            if (auto s = f.sqrt(rest)) {
                x0 = (*s)[0];
                y0 = yy;
                found = true;
            }
        }
        if (!found) throw std::logic_error("nu*x^2 + nu*y^2 = 1 has no solution");
        while (nus.size() >= 2) {
            std::size_t i = nus[nus.size() - 2], j = nus[nus.size() - 1];
            for (std::size_t k = 0; k < n; ++k) {
                felem xi = x.at(i, k), xj = x.at(j, k);
                x.set(i, k, f.mul(nu, f.add(f.mul(x0, xi), f.mul(y0, xj))));
                x.set(j, k, f.mul(nu, f.sub(f.mul(x0, xj), f.mul(y0, xi))));
            }
            is_nu[i] = is_nu[j] = false;
            nus.pop_back();
            nus.pop_back();
        }
    }
    if (nus.size() == 1 && nus[0] != r - 1) {
        std::size_t i = nus[0];
        for (std::size_t k = 0; k < n; ++k) {
            felem t = x.at(i, k);
            x.set(i, k, x.at(r - 1, k));
            x.set(r - 1, k, t);
        }
        is_nu[i] = false;
        is_nu[r - 1] = true;
    }

    MatGF geo(f, r, r);
    for (std::size_t i = 0; i < r; ++i) geo.set(i, i, is_nu[i] ? nu : 1);
    return GramFactorization{std::move(x), std::move(geo)};
}

}  // namespace etfq
