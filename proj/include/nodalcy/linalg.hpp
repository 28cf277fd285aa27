#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "prime_field.hpp"

namespace nodalcy {

// Dense row-major matrix over Q(zeta_N).
class FieldMatrix {
  public:
    FieldMatrix(std::size_t rows, std::size_t cols, unsigned field_order)
        : rows_(rows), cols_(cols), field_order_(field_order), data_(rows * cols, CyclotomicNumber::zero(field_order)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    unsigned field_order() const { return field_order_; }

    CyclotomicNumber& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const CyclotomicNumber& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<CyclotomicNumber> row(std::size_t r) const {
        return std::vector<CyclotomicNumber>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }

  private:
    std::size_t rows_, cols_;
    unsigned field_order_;
    std::vector<CyclotomicNumber> data_;
};

class Subspace;

// Incrementally maintained reduced row echelon basis: pivots are 1, pivot
// columns are cleared in every other row, rows sorted by pivot column.
// First-nonzero pivoting throughout, so the result is canonical for the
// row space regardless of insertion order.
class SubspaceBuilder {
  public:
    SubspaceBuilder(std::size_t ambient_dim, unsigned field_order)
        : ambient_(ambient_dim), order_(field_order) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<std::vector<CyclotomicNumber>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Reduces v against the current basis in place; the remainder is zero
    // exactly when v already lies in the span.
    void reduce(std::vector<CyclotomicNumber>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const CyclotomicNumber& c = v[pivots_[i]];
            if (c.is_zero()) continue;
            CyclotomicNumber factor = c;  // aliasing: v[pivot] is overwritten below
            const auto& row = rows_[i];
            for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
                if (!row[j].is_zero()) v[j].submul(factor, row[j]);
            }
        }
    }

    // Returns true when v enlarged the span.
    bool insert(std::vector<CyclotomicNumber> v) {
        if (v.size() != ambient_) fail(errc::dimension_mismatch, "vector length does not match ambient dimension");
        if (rows_.size() == ambient_) return false;  // span is already everything
        reduce(v);
        std::size_t pivot = ambient_;
        for (std::size_t j = 0; j < ambient_; ++j) {
            if (!v[j].is_zero()) {
                pivot = j;
                break;
            }
        }
        if (pivot == ambient_) return false;
        if (!v[pivot].is_one()) {
            auto inv = v[pivot].inverse();
            for (std::size_t j = pivot; j < ambient_; ++j) {
                if (!v[j].is_zero()) v[j] *= inv;
            }
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            CyclotomicNumber c = rows_[i][pivot];
            if (c.is_zero()) continue;
            for (std::size_t j = pivot; j < ambient_; ++j) {
                if (!v[j].is_zero()) rows_[i][j].submul(c, v[j]);
            }
        }
        auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), pivot);
        std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, pivot);
        rows_.insert(rows_.begin() + idx, std::move(v));
        return true;
    }

    bool contains(std::vector<CyclotomicNumber> v) const {
        if (v.size() != ambient_) fail(errc::dimension_mismatch, "vector length does not match ambient dimension");
        reduce(v);
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    Subspace build() &&;

    unsigned field_order() const { return order_; }

  private:
    std::size_t ambient_;
    unsigned order_;
    std::vector<std::vector<CyclotomicNumber>> rows_;
    std::vector<std::size_t> pivots_;
};

// An exact subspace of the coordinate space, held in unique reduced
// row-echelon form. Equality of subspaces is equality of representations.
class Subspace {
  public:
    Subspace(std::size_t ambient_dim, unsigned field_order, std::vector<std::vector<CyclotomicNumber>> rref_rows,
             std::vector<std::size_t> pivots)
        : ambient_(ambient_dim), order_(field_order), rows_(std::move(rref_rows)), pivots_(std::move(pivots)) {}

    static Subspace from_spanning_rows(std::size_t ambient_dim, unsigned field_order,
                                       const std::vector<std::vector<CyclotomicNumber>>& spanning) {
        SubspaceBuilder builder(ambient_dim, field_order);
        for (const auto& row : spanning) builder.insert(row);
        return std::move(builder).build();
    }

    static Subspace row_space(const FieldMatrix& matrix) {
        SubspaceBuilder builder(matrix.cols(), matrix.field_order());
        for (std::size_t r = 0; r < matrix.rows(); ++r) builder.insert(matrix.row(r));
        return std::move(builder).build();
    }

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    unsigned field_order() const { return order_; }
    const std::vector<std::vector<CyclotomicNumber>>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(std::vector<CyclotomicNumber> v) const {
        if (v.size() != ambient_) fail(errc::dimension_mismatch, "vector length does not match ambient dimension");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const CyclotomicNumber& c = v[pivots_[i]];
            if (c.is_zero()) continue;
            CyclotomicNumber factor = c;
            const auto& row = rows_[i];
            for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
                if (!row[j].is_zero()) v[j].submul(factor, row[j]);
            }
        }
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.order_ == b.order_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  private:
    std::size_t ambient_;
    unsigned order_;
    std::vector<std::vector<CyclotomicNumber>> rows_;
    std::vector<std::size_t> pivots_;
};

inline Subspace SubspaceBuilder::build() && {
    return Subspace(ambient_, order_, std::move(rows_), std::move(pivots_));
}

// Exact rank over Q(zeta_N) by row-reduced elimination with first-nonzero
// pivoting.
inline std::size_t rank_exact(const FieldMatrix& matrix) {
    SubspaceBuilder builder(matrix.cols(), matrix.field_order());
    for (std::size_t r = 0; r < matrix.rows(); ++r) builder.insert(matrix.row(r));
    return builder.dim();
}

// Nullspace basis (row vectors v with M v^T = 0), from the RREF of M.
inline std::vector<std::vector<CyclotomicNumber>> nullspace(const FieldMatrix& matrix) {
    Subspace rref = Subspace::row_space(matrix);
    const auto& pivots = rref.pivots();
    std::vector<bool> is_pivot(matrix.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<CyclotomicNumber>> out;
    for (std::size_t f = 0; f < matrix.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<CyclotomicNumber> v(matrix.cols(), CyclotomicNumber::zero(matrix.field_order()));
        v[f] = CyclotomicNumber::one(matrix.field_order());
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = -rref.basis()[i][f];
        }
        out.push_back(std::move(v));
    }
    return out;
}

// --- modular kernel -------------------------------------------------------

// Row-echelon rank accumulator over F_p.
class ModularEliminator {
  public:
    ModularEliminator(std::size_t ambient_dim, std::uint64_t p) : ambient_(ambient_dim), p_(p) {}

    std::size_t dim() const { return rows_.size(); }

    bool insert(std::vector<std::uint64_t> v) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::uint64_t c = v[pivots_[i]];
            if (c == 0) continue;
            const auto& row = rows_[i];
            std::uint64_t neg = p_ - c;
            for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
                if (row[j] != 0) v[j] = (v[j] + mulmod(neg, row[j], p_)) % p_;
            }
        }
        std::size_t pivot = ambient_;
        for (std::size_t j = 0; j < ambient_; ++j) {
            if (v[j] != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot == ambient_) return false;
        std::uint64_t inv = invmod(v[pivot], p_);
        for (std::size_t j = pivot; j < ambient_; ++j) {
            if (v[j] != 0) v[j] = mulmod(v[j], inv, p_);
        }
        auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), pivot);
        std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, pivot);
        rows_.insert(rows_.begin() + idx, std::move(v));
        return true;
    }

  private:
    std::size_t ambient_;
    std::uint64_t p_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

// Rank over F_p of a row stream; stops early once the rank cannot grow.
inline std::size_t modular_rank_streaming(std::size_t nrows, std::size_t ncols, std::uint64_t p,
                                          const std::function<void(std::size_t, std::vector<std::uint64_t>&)>& rowgen) {
    ModularEliminator elim(ncols, p);
    std::size_t cap = std::min(nrows, ncols);
    std::vector<std::uint64_t> row(ncols);
    for (std::size_t r = 0; r < nrows; ++r) {
        rowgen(r, row);
        elim.insert(row);
        if (elim.dim() == cap) break;
    }
    return elim.dim();
}

// Entry-wise reduction of an exact matrix followed by elimination mod p.
inline std::size_t rank_mod_p(const FieldMatrix& matrix, std::uint64_t p) {
    PrimeFieldElement zeta = find_root_of_unity(p, matrix.field_order());
    return modular_rank_streaming(matrix.rows(), matrix.cols(), p, [&](std::size_t r, std::vector<std::uint64_t>& row) {
        for (std::size_t c = 0; c < matrix.cols(); ++c) row[c] = reduce_mod_p(matrix.at(r, c), p, zeta).value;
    });
}

}  // namespace nodalcy
