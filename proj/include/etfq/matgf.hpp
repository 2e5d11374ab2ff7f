#pragma once

#include "etfq/gf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace etfq {

using bigint = boost::multiprecision::cpp_int;

/// Dense matrix over a FieldCtx. Entries are element codes.
class MatGF {
public:
    MatGF(FieldCtx field, std::size_t rows, std::size_t cols);
    static MatGF identity(FieldCtx field, std::size_t n);
    static MatGF all_ones(FieldCtx field, std::size_t rows, std::size_t cols);

    const FieldCtx& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    felem at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, felem v) { e_[i * cols_ + j] = v; }

    bool is_symmetric() const;
    bool is_zero() const;
    MatGF transpose() const;
    MatGF scaled(felem alpha) const;
    MatGF operator*(const MatGF& o) const;
    MatGF operator+(const MatGF& o) const;
    MatGF operator-(const MatGF& o) const;
    bool operator==(const MatGF& o) const;
    bool operator!=(const MatGF& o) const { return !(*this == o); }

    /// Line 1: `p l rows cols`; then one line per row of elements in the
    /// field's textual encoding.
    void write(std::ostream& out) const;
    static MatGF read(std::istream& in);

private:
    FieldCtx field_;
    std::size_t rows_, cols_;
    std::vector<felem> e_;
};

/// Rectangular matrix with arbitrary-precision integer entries.
class IntMat {
public:
    IntMat(std::size_t rows, std::size_t cols);
    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const bigint& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, bigint v) { e_[i * cols_ + j] = std::move(v); }

    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat scaled(const bigint& alpha) const;
    bool operator==(const IntMat& o) const;
    bool is_symmetric() const;

    /// Same layout as MatGF files with header `0 0 rows cols`.
    void write(std::ostream& out) const;
    static IntMat read(std::istream& in);

private:
    std::size_t rows_, cols_;
    std::vector<bigint> e_;
};

/// Rank over the matrix's field, by exact Gaussian elimination.
std::size_t rank(const MatGF& m);

/// Entrywise reduction of an integer matrix into the given field.
MatGF reduce_mod(const IntMat& m, const FieldCtx& field);

/// Rank of the mod-p reduction of an integer matrix.
std::size_t p_rank(const IntMat& m, std::uint64_t p);

enum class DiscriminantClass { square, nonsquare };

/// Square class of the determinant of a basic submatrix, the principal
/// submatrix on a greedily chosen (lowest column indices first) basis of the
/// column space. Throws unless m is symmetric and nonzero.
DiscriminantClass discriminant_class(const MatGF& m);

struct GramFactorization {
    MatGF vectors;   // d x n
    MatGF geometry;  // d x d diagonal, diag(1,...,1) or diag(1,...,1,nu)
};

/// Writes a symmetric G of rank d as X^T * M * X with M one of the two
/// canonical diagonal geometry Gram matrices. Throws unless G is symmetric
/// with rank >= 1.
GramFactorization gram_factor(const MatGF& g);

}  // namespace etfq
