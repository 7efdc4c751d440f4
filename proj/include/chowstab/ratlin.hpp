#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chowstab/rational.hpp"

namespace chowstab {

using RatVector = std::vector<Rational>;

bool is_zero_vector(const RatVector& v);

/// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(1) {}
    RatMatrix(std::size_t rows, std::size_t cols);
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(std::size_t cols, const std::vector<RatVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    RatVector row(std::size_t r) const;
    void append_row(const RatVector& v);

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

struct RrefResult {
    RatMatrix mat;                    // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column per surviving row
};

/// Unique reduced row echelon form (Gauss-Jordan, exact).
RrefResult rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Canonical basis of the right kernel {x : m·x = 0}, as rows.
RatMatrix nullspace(const RatMatrix& m);

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatVector matvec(const RatMatrix& m, const RatVector& v);
bool is_invertible(const RatMatrix& m);

/// Exact inverse; throws PreconditionError on a singular input.
RatMatrix inverse(const RatMatrix& m);

/// Linear subspace of projective space, held as the unique RREF basis.
///
/// The canonical form makes equality of subspaces a plain comparison and
/// deduplication a hash lookup. The empty subspace has a zero-row basis and
/// projective dimension -1.
class LinSubspace {
public:
    /// Span of the given vectors (all of length `coord_count`).
    static LinSubspace span(std::size_t coord_count, const std::vector<RatVector>& vectors);
    static LinSubspace empty(std::size_t coord_count);
    /// Adopts an already canonical (RREF, full-rank) basis.
    static LinSubspace from_canonical(std::size_t coord_count, RatMatrix basis);

    std::size_t coord_count() const { return coord_count_; }  // n + 1
    std::size_t ambient_dim() const { return coord_count_ - 1; }
    std::size_t rank() const { return basis_.rows(); }
    int dim_proj() const { return static_cast<int>(basis_.rows()) - 1; }
    bool is_empty() const { return basis_.rows() == 0; }
    const RatMatrix& basis() const { return basis_; }

    /// Membership of a projective point; rejects the zero vector.
    bool contains(const RatVector& v) const;

    friend LinSubspace intersect(const LinSubspace& a, const LinSubspace& b);
    friend LinSubspace sum(const LinSubspace& a, const LinSubspace& b);

    /// Dual space of linear forms vanishing on this subspace.
    LinSubspace annihilator() const;

    /// Image under an invertible coordinate change (row vectors mapped by g).
    LinSubspace transformed(const RatMatrix& g) const;

    std::string key() const;

    friend bool operator==(const LinSubspace& a, const LinSubspace& b) {
        return a.coord_count_ == b.coord_count_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const LinSubspace& a, const LinSubspace& b) { return !(a == b); }

private:
    LinSubspace(std::size_t coord_count, RatMatrix basis)
        : coord_count_(coord_count), basis_(std::move(basis)) {}

    std::size_t coord_count_;
    RatMatrix basis_;
};

LinSubspace intersect(const LinSubspace& a, const LinSubspace& b);
LinSubspace sum(const LinSubspace& a, const LinSubspace& b);

}  // namespace chowstab
