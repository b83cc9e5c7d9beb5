#include "floer/f2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <stdexcept>

namespace floer::f2 {

F2Vector::F2Vector(std::vector<uint32_t> support) : support_(std::move(support)) {
    std::sort(support_.begin(), support_.end());
    if (std::adjacent_find(support_.begin(), support_.end()) != support_.end())
        throw std::invalid_argument("F2Vector: duplicate index");
}

F2Vector F2Vector::unit(uint32_t index) {
    F2Vector v;
    v.support_.push_back(index);
    return v;
}

bool F2Vector::test(uint32_t index) const {
    return std::binary_search(support_.begin(), support_.end(), index);
}

void F2Vector::flip(uint32_t index) {
    auto it = std::lower_bound(support_.begin(), support_.end(), index);
    if (it != support_.end() && *it == index)
        support_.erase(it);
    else
        support_.insert(it, index);
}

uint32_t F2Vector::max_index() const {
    assert(!support_.empty());
    return support_.back();
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
    std::vector<uint32_t> out;
    out.reserve(support_.size() + other.support_.size());
    std::set_symmetric_difference(support_.begin(), support_.end(),
                                  other.support_.begin(), other.support_.end(),
                                  std::back_inserter(out));
    support_ = std::move(out);
    return *this;
}

F2Matrix F2Matrix::from_rows(uint32_t cols, std::vector<F2Vector> rows) {
    F2Matrix m;
    m.rows = static_cast<uint32_t>(rows.size());
    m.cols = cols;
    m.entries = std::move(rows);
    if (!m.well_formed()) throw std::invalid_argument("F2Matrix: support index >= cols");
    return m;
}

F2Matrix F2Matrix::identity(uint32_t n) {
    std::vector<F2Vector> rows;
    rows.reserve(n);
    for (uint32_t i = 0; i < n; ++i) rows.push_back(F2Vector::unit(i));
    return from_rows(n, std::move(rows));
}

F2Matrix F2Matrix::transpose() const {
    std::vector<F2Vector> cols_as_rows(cols);
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c : entries[r].support()) cols_as_rows[c].flip(r);
    F2Matrix t;
    t.rows = cols;
    t.cols = rows;
    t.entries = std::move(cols_as_rows);
    return t;
}

bool F2Matrix::well_formed() const {
    if (entries.size() != rows) return false;
    for (const auto& row : entries)
        if (!row.empty() && row.max_index() >= cols) return false;
    return true;
}

namespace detail {

DenseRow::DenseRow(uint32_t cols, const F2Vector& v) : DenseRow(cols) {
    for (uint32_t i : v.support()) flip(i);
}

void DenseRow::operator^=(const DenseRow& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
}

bool DenseRow::any() const {
    for (uint64_t w : words_)
        if (w) return true;
    return false;
}

uint32_t DenseRow::lowest() const {
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<uint32_t>(i * 64 + std::countr_zero(words_[i]));
    return ~uint32_t{0};
}

uint32_t dense_rank(uint32_t cols, const std::vector<F2Vector>& rows) {
    std::map<uint32_t, DenseRow> pivots;  // pivot column -> reduced row
    for (const auto& r : rows) {
        DenseRow cur(cols, r);
        while (cur.any()) {
            uint32_t p = cur.lowest();
            auto it = pivots.find(p);
            if (it == pivots.end()) {
                pivots.emplace(p, std::move(cur));
                break;
            }
            cur ^= it->second;
        }
    }
    return static_cast<uint32_t>(pivots.size());
}

// density threshold: switch to dense bit blocks when the expected fill of
// the elimination exceeds ~1/16 of the matrix
bool prefer_dense(const F2Matrix& m) {
    if (m.cols == 0 || m.rows == 0) return false;
    size_t nnz = 0;
    for (const auto& r : m.entries) nnz += r.weight();
    return nnz * 16 >= static_cast<size_t>(m.rows) * m.cols;
}

uint32_t sparse_rank(const F2Matrix& m) {
    std::map<uint32_t, F2Vector> pivots;
    for (const auto& row : m.entries) {
        F2Vector cur = row;
        while (!cur.empty()) {
            uint32_t p = cur.support().front();
            auto it = pivots.find(p);
            if (it == pivots.end()) {
                pivots.emplace(p, std::move(cur));
                break;
            }
            cur += it->second;
        }
    }
    return static_cast<uint32_t>(pivots.size());
}

}  // namespace detail

uint32_t rank(const F2Matrix& m) {
    if (!m.well_formed()) throw std::invalid_argument("rank: malformed matrix");
    return detail::prefer_dense(m) ? detail::dense_rank(m.cols, m.entries)
                                   : detail::sparse_rank(m);
}

std::vector<F2Vector> kernel_basis(const F2Matrix& m) {
    if (!m.well_formed()) throw std::invalid_argument("kernel_basis: malformed matrix");
    // column-reduce: eliminate on the transpose so pivots live in column space
    std::map<uint32_t, F2Vector> pivots;        // pivot row-index -> column content
    std::map<uint32_t, F2Vector> combinations;  // pivot row-index -> combination of columns
    F2Matrix t = m.transpose();                 // t.entries[c] = column c of m
    std::vector<F2Vector> kernel;
    for (uint32_t c = 0; c < m.cols; ++c) {
        F2Vector cur = t.entries[c];
        F2Vector comb = F2Vector::unit(c);
        for (;;) {
            if (cur.empty()) {
                kernel.push_back(std::move(comb));
                break;
            }
            uint32_t p = cur.support().front();
            auto it = pivots.find(p);
            if (it == pivots.end()) {
                pivots.emplace(p, std::move(cur));
                combinations.emplace(p, std::move(comb));
                break;
            }
            cur += it->second;
            comb += combinations.at(p);
        }
    }
    return kernel;
}

uint32_t quotient_dim(uint32_t ambient_dim, const std::vector<F2Vector>& relations) {
    for (const auto& r : relations)
        if (!r.empty() && r.max_index() >= ambient_dim)
            throw std::invalid_argument("quotient_dim: relation outside ambient space");
    F2Matrix m;
    m.rows = static_cast<uint32_t>(relations.size());
    m.cols = ambient_dim;
    m.entries = relations;
    return ambient_dim - rank(m);
}

}  // namespace floer::f2
