#include "chowstab/ratlin.hpp"

#include <sstream>

namespace chowstab {

bool is_zero_vector(const RatVector& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (cols == 0) throw std::invalid_argument("matrix must have at least one column");
    e_.resize(rows * cols);
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 1) {
    if (cols_ == 0) throw std::invalid_argument("matrix must have at least one column");
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
        e_.insert(e_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(std::size_t cols, const std::vector<RatVector>& rows) {
    RatMatrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

RatVector RatMatrix::row(std::size_t r) const {
    return RatVector(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_);
}

void RatMatrix::append_row(const RatVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length does not match column count");
    e_.insert(e_.end(), v.begin(), v.end());
    ++rows_;
}

RrefResult rref(const RatMatrix& m) {
    RatMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a.at(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
        }
        const Rational inv = Rational(1) / a.at(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            const Rational f = a.at(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    RatMatrix out(0, a.cols());
    for (std::size_t i = 0; i < r; ++i) out.append_row(a.row(i));
    return {std::move(out), std::move(pivots)};
}

std::size_t rank(const RatMatrix& m) {
    return rref(m).pivots.size();
}

RatMatrix nullspace(const RatMatrix& m) {
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;

    RatMatrix basis(0, m.cols());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.mat.at(i, f);
        basis.append_row(v);
    }
    return rref(basis).mat;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch in multiply");
    RatMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    }
    return out;
}

RatVector matvec(const RatMatrix& m, const RatVector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix/vector size mismatch");
    RatVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m.at(i, j).is_zero() && !v[j].is_zero()) out[i] += m.at(i, j) * v[j];
        }
    }
    return out;
}

bool is_invertible(const RatMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    const RrefResult r = rref(aug);
    if (r.pivots.size() != n || r.pivots.back() != n - 1) {
        throw PreconditionError("matrix is singular");
    }
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
    }
    return inv;
}

LinSubspace LinSubspace::span(std::size_t coord_count, const std::vector<RatVector>& vectors) {
    if (coord_count == 0) throw std::invalid_argument("subspace needs at least one coordinate");
    for (const auto& v : vectors) {
        if (v.size() != coord_count) {
            throw std::invalid_argument("span: vector length does not match ambient dimension");
        }
    }
    return LinSubspace(coord_count, rref(RatMatrix::from_rows(coord_count, vectors)).mat);
}

LinSubspace LinSubspace::empty(std::size_t coord_count) {
    return span(coord_count, {});
}

LinSubspace LinSubspace::from_canonical(std::size_t coord_count, RatMatrix basis) {
    LinSubspace s(coord_count, std::move(basis));
    if (s.basis_.cols() != coord_count || rref(s.basis_).mat != s.basis_) {
        throw std::invalid_argument("basis is not in canonical reduced form");
    }
    return s;
}

bool LinSubspace::contains(const RatVector& v) const {
    if (v.size() != coord_count_) throw std::invalid_argument("membership: ambient mismatch");
    if (is_zero_vector(v)) throw std::invalid_argument("zero vector is not a projective point");
    // Reduce v by the canonical basis; membership iff the residue vanishes.
    RatVector res = v;
    std::size_t row = 0;
    for (std::size_t c = 0; c < coord_count_ && row < basis_.rows(); ++c) {
        if (basis_.at(row, c).is_zero()) continue;
        // c is the pivot column of `row` (leading 1 in RREF).
        if (!res[c].is_zero()) {
            const Rational f = res[c];
            for (std::size_t j = c; j < coord_count_; ++j) res[j] -= f * basis_.at(row, j);
        }
        ++row;
    }
    return is_zero_vector(res);
}

LinSubspace LinSubspace::annihilator() const {
    return LinSubspace(coord_count_, nullspace(basis_));
}

LinSubspace intersect(const LinSubspace& a, const LinSubspace& b) {
    if (a.coord_count_ != b.coord_count_) {
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    }
    const LinSubspace da = a.annihilator();
    const LinSubspace db = b.annihilator();
    RatMatrix stacked = da.basis();
    for (std::size_t i = 0; i < db.basis().rows(); ++i) stacked.append_row(db.basis().row(i));
    return LinSubspace(a.coord_count_, nullspace(rref(stacked).mat));
}

LinSubspace sum(const LinSubspace& a, const LinSubspace& b) {
    if (a.coord_count_ != b.coord_count_) {
        throw std::invalid_argument("sum: ambient dimension mismatch");
    }
    RatMatrix stacked = a.basis();
    for (std::size_t i = 0; i < b.basis().rows(); ++i) stacked.append_row(b.basis().row(i));
    return LinSubspace(a.coord_count_, rref(stacked).mat);
}

LinSubspace LinSubspace::transformed(const RatMatrix& g) const {
    if (g.rows() != coord_count_ || g.cols() != coord_count_) {
        throw std::invalid_argument("transform: matrix size mismatch");
    }
    std::vector<RatVector> rows;
    rows.reserve(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) rows.push_back(matvec(g, basis_.row(i)));
    return span(coord_count_, rows);
}

std::string LinSubspace::key() const {
    std::ostringstream os;
    os << coord_count_ << ':';
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        for (std::size_t j = 0; j < coord_count_; ++j) os << basis_.at(i, j) << ',';
        os << ';';
    }
    return os.str();
}

}  // namespace chowstab
