#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "virmod/scalar.hpp"

namespace virmod {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dense exact matrix. Row-major.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, std::vector<Scalar>(cols, Scalar(0))) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_.at(r).at(c); }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_.at(r).at(c); }
    std::vector<Scalar>& row(std::size_t r) { return data_.at(r); }
    const std::vector<Scalar>& row(std::size_t r) const { return data_.at(r); }

    ExactMatrix operator*(const ExactMatrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
        ExactMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (data_[i][k] == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out(i, j) += data_[i][k] * o(k, j);
            }
        return out;
    }

    ExactMatrix operator-(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
        ExactMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = data_[i][j] - o(i, j);
        return out;
    }

    ExactMatrix scaled(const Scalar& c) const {
        ExactMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = data_[i][j] * c;
        return out;
    }

    bool is_zero() const {
        for (const auto& r : data_)
            for (const auto& x : r)
                if (x != 0) return false;
        return true;
    }

    bool operator==(const ExactMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<std::vector<Scalar>> data_;
};

struct RrefResult {
    ExactMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Exact reduced row echelon form. Pivot choice is deterministic:
// leftmost nonzero column, first row carrying a nonzero entry there.
inline RrefResult rref(ExactMatrix m) {
    RrefResult res;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
        std::size_t sel = pr;
        while (sel < m.rows() && m(sel, pc) == 0) ++sel;
        if (sel == m.rows()) continue;
        std::swap(m.row(sel), m.row(pr));
        Scalar inv = Scalar(1) / m(pr, pc);
        for (std::size_t j = pc; j < m.cols(); ++j) m(pr, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pr || m(i, pc) == 0) continue;
            Scalar f = m(i, pc);
            for (std::size_t j = pc; j < m.cols(); ++j) m(i, j) -= f * m(pr, j);
        }
        res.pivot_cols.push_back(pc);
        ++pr;
    }
    res.rank = pr;
    res.reduced = std::move(m);
    return res;
}

// True iff v lies in the exact linear span of `basis`; when true also
// returns the coordinate vector (one Scalar per basis element).
inline std::optional<std::vector<Scalar>> in_span(const std::vector<Scalar>& v,
                                                  const std::vector<std::vector<Scalar>>& basis) {
    const std::size_t dim = v.size();
    for (const auto& b : basis)
        if (b.size() != dim) throw DimensionMismatch("in_span: vector lengths differ");
    // Solve basis^T x = v via rref on the augmented system.
    ExactMatrix aug(dim, basis.size() + 1);
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) aug(i, j) = basis[j][i];
    for (std::size_t i = 0; i < dim; ++i) aug(i, basis.size()) = v[i];
    RrefResult r = rref(aug);
    // Inconsistent iff the last column is a pivot column.
    for (std::size_t p : r.pivot_cols)
        if (p == basis.size()) return std::nullopt;
    std::vector<Scalar> coords(basis.size(), Scalar(0));
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
        coords[r.pivot_cols[i]] = r.reduced(i, basis.size());
    return coords;
}

// Incrementally maintained row-reduced spanning set over a growing,
// sparsely indexed coordinate space. Keys index coordinates; columns are
// created on first use (absent coordinates are zero).
template <typename Key>
class SpanBasis {
public:
    using Vec = std::map<Key, Scalar>;

    std::size_t dimension() const { return rows_.size(); }

    // Reduces `v` against the basis; returns the remainder (empty iff v in span).
    Vec reduce(Vec v) const {
        normalize(v);
        for (const auto& row : rows_) {
            auto it = v.find(row.pivot);
            if (it == v.end()) continue;
            Scalar f = it->second;  // rows are monic at their pivot
            v.erase(it);
            for (const auto& [k, c] : row.entries) {
                auto vt = v.find(k);
                if (vt == v.end()) {
                    v.emplace(k, -f * c);
                } else {
                    vt->second -= f * c;
                    if (vt->second == 0) v.erase(vt);
                }
            }
        }
        return v;
    }

    bool contains(const Vec& v) const { return reduce(v).empty(); }

    // Returns true if v enlarged the span.
    bool insert(const Vec& v) {
        Vec rem = reduce(v);
        if (rem.empty()) return false;
        // Pivot on the largest key so iteration order stays deterministic.
        Key pivot = rem.rbegin()->first;
        Scalar lead = rem.rbegin()->second;
        Vec entries;
        for (auto& [k, c] : rem) {
            if (k == pivot) continue;
            entries.emplace(k, c / lead);
        }
        // Back-substitute into the existing rows to keep them fully reduced.
        for (auto& row : rows_) {
            auto it = row.entries.find(pivot);
            if (it == row.entries.end()) continue;
            Scalar f = it->second;
            row.entries.erase(it);
            for (const auto& [k, c] : entries) {
                auto rt = row.entries.find(k);
                if (rt == row.entries.end()) {
                    row.entries.emplace(k, f * -c);
                } else {
                    rt->second -= f * c;
                    if (rt->second == 0) row.entries.erase(rt);
                }
            }
        }
        rows_.push_back(Row{pivot, std::move(entries)});
        return true;
    }

    // Monic basis rows (pivot coefficient 1), for reporting.
    std::vector<Vec> basis() const {
        std::vector<Vec> out;
        for (const auto& row : rows_) {
            Vec v = row.entries;
            v.emplace(row.pivot, Scalar(1));
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    struct Row {
        Key pivot;           // coefficient 1 at pivot, stored implicitly
        Vec entries;         // the other coordinates
    };
    std::vector<Row> rows_;

    static void normalize(Vec& v) {
        for (auto it = v.begin(); it != v.end();)
            it = (it->second == 0) ? v.erase(it) : std::next(it);
    }
};

}  // namespace virmod
