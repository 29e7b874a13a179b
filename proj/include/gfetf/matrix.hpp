#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gfetf/field.hpp"

namespace gfetf {

using FqVector = std::vector<Fq>;

/// Dense row-major matrix over one field.
class Matrix {
public:
    Matrix() = default;

    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Fq> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw Error(ErrorKind::DimMismatch, "entry count does not match shape");
        for (auto x : data_)
            if (!field_->contains(x)) throw Error(ErrorKind::CtxMismatch, "entry outside the field");
    }

    static Matrix identity(FieldPtr field, std::size_t n) {
        Matrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Field::one();
        return m;
    }

    static Matrix ones(FieldPtr field, std::size_t rows, std::size_t cols) {
        return Matrix(std::move(field), rows, cols, std::vector<Fq>(rows * cols, Field::one()));
    }

    static Matrix diagonal(FieldPtr field, std::span<const Fq> d) {
        Matrix m(std::move(field), d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static Matrix row_vector(FieldPtr field, std::span<const Fq> v) {
        return Matrix(std::move(field), 1, v.size(), std::vector<Fq>(v.begin(), v.end()));
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] const Field& field() const noexcept { return *field_; }
    [[nodiscard]] const FieldPtr& field_ptr() const noexcept { return field_; }
    [[nodiscard]] const std::vector<Fq>& entries() const noexcept { return data_; }

    Fq& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    Fq operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Fq> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<Fq> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }

    [[nodiscard]] FqVector column(std::size_t j) const {
        FqVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    [[nodiscard]] bool is_zero() const noexcept {
        for (auto x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
        return a.data_ == b.data_;
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fq> data_;
};

namespace detail {

inline void require_same_field(const Matrix& a, const Matrix& b) {
    if (!a.field().same_as(b.field())) throw Error(ErrorKind::CtxMismatch, "matrices over different fields");
}

}  // namespace detail

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimMismatch, "shape mismatch in sum");
    const Field& F = a.field();
    Matrix out(a.field_ptr(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = F.add(a(i, j), b(i, j));
    return out;
}

inline Matrix operator-(const Matrix& a) {
    const Field& F = a.field();
    Matrix out(a.field_ptr(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = F.neg(a(i, j));
    return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

inline Matrix scale(Fq c, const Matrix& a) {
    const Field& F = a.field();
    Matrix out(a.field_ptr(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = F.mul(c, a(i, j));
    return out;
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
    detail::require_same_field(x, y);
    if (x.cols() != y.rows())
        throw Error(ErrorKind::DimMismatch, "cannot multiply " + std::to_string(x.rows()) + "x" +
                                                std::to_string(x.cols()) + " by " + std::to_string(y.rows()) + "x" +
                                                std::to_string(y.cols()));
    const Field& F = x.field();
    Matrix out(x.field_ptr(), x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const Fq a = x(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) = F.add(out(i, j), F.mul(a, y(k, j)));
        }
    }
    return out;
}

inline Matrix operator*(const Matrix& x, const Matrix& y) { return mat_mul(x, y); }

inline FqVector mat_vec(const Matrix& x, std::span<const Fq> v) {
    if (x.cols() != v.size()) throw Error(ErrorKind::DimMismatch, "matrix-vector shape mismatch");
    const Field& F = x.field();
    FqVector out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out[i] = F.add(out[i], F.mul(x(i, j), v[j]));
    return out;
}

inline Matrix transpose(const Matrix& x) {
    Matrix out(x.field_ptr(), x.cols(), x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(j, i) = x(i, j);
    return out;
}

/// Entrywise sigma_l.
inline Matrix frobenius(const Matrix& x, std::uint32_t ell) {
    const Field& F = x.field();
    F.check_ell(ell);
    Matrix out(x.field_ptr(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = F.frobenius(x(i, j), ell);
    return out;
}

/// X^{dagger_l} = sigma_l(X)^t.
inline Matrix dagger(const Matrix& x, std::uint32_t ell) {
    const Field& F = x.field();
    F.check_ell(ell);
    Matrix out(x.field_ptr(), x.cols(), x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(j, i) = F.frobenius(x(i, j), ell);
    return out;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimMismatch, "hstack row mismatch");
    Matrix out(a.field_ptr(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    detail::require_same_field(a, b);
    if (a.cols() != b.cols()) throw Error(ErrorKind::DimMismatch, "vstack column mismatch");
    std::vector<Fq> entries = a.entries();
    entries.insert(entries.end(), b.entries().begin(), b.entries().end());
    return Matrix(a.field_ptr(), a.rows() + b.rows(), a.cols(), std::move(entries));
}

/// Columns of x in the given order.
inline Matrix permute_columns(const Matrix& x, std::span<const std::size_t> perm) {
    if (perm.size() != x.cols()) throw Error(ErrorKind::DimMismatch, "permutation length mismatch");
    Matrix out(x.field_ptr(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, perm[j]);
    return out;
}

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with first-nonzero pivoting.
inline RrefResult rref(const Matrix& x) {
    const Field& F = x.field();
    Matrix r = x;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
        std::size_t pivot = lead;
        while (pivot < r.rows() && r(pivot, col).is_zero()) ++pivot;
        if (pivot == r.rows()) continue;
        if (pivot != lead)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(pivot, j), r(lead, j));
        const Fq inv = F.inv(r(lead, col));
        for (std::size_t j = col; j < r.cols(); ++j) r(lead, j) = F.mul(r(lead, j), inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == lead) continue;
            const Fq factor = r(i, col);
            if (factor.is_zero()) continue;
            const Fq neg = F.neg(factor);
            for (std::size_t j = col; j < r.cols(); ++j) r(i, j) = F.add(r(i, j), F.mul(neg, r(lead, j)));
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(r), std::move(pivots)};
}

inline std::size_t rank(const Matrix& x) { return rref(x).pivots.size(); }

/// Basis (as rows) of the right kernel { v : X v = 0 }.
inline Matrix null_space(const Matrix& x) {
    const Field& F = x.field();
    const auto [r, pivots] = rref(x);
    std::vector<bool> is_pivot(x.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Fq> entries;
    std::size_t count = 0;
    for (std::size_t free = 0; free < x.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Fq> v(x.cols());
        v[free] = Field::one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(r(i, free));
        entries.insert(entries.end(), v.begin(), v.end());
        ++count;
    }
    return Matrix(x.field_ptr(), count, x.cols(), std::move(entries));
}

/// Nonzero rows of the RREF.
inline Matrix row_basis(const Matrix& x) {
    auto [r, pivots] = rref(x);
    std::vector<Fq> entries(r.entries().begin(), r.entries().begin() + static_cast<std::ptrdiff_t>(pivots.size() * r.cols()));
    return Matrix(x.field_ptr(), pivots.size(), x.cols(), std::move(entries));
}

inline bool same_row_space(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return false;
    const auto ra = rank(a);
    return ra == rank(b) && ra == rank(vstack(a, b));
}

/// Returns c when x = c I (x square), otherwise nullopt.
inline std::optional<Fq> scalar_value(const Matrix& x) {
    if (!x.is_square() || x.rows() == 0) return std::nullopt;
    const Fq c = x(0, 0);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (x(i, j) != (i == j ? c : Field::zero())) return std::nullopt;
    return c;
}

}  // namespace gfetf
