#pragma once

#include <cstdint>
#include <vector>

namespace floer::f2 {

/// Vector over F2, stored as the strictly increasing list of basis indices
/// in its support. Addition is symmetric difference.
class F2Vector {
  public:
    F2Vector() = default;
    explicit F2Vector(std::vector<uint32_t> support);

    static F2Vector unit(uint32_t index);

    bool empty() const { return support_.size() == 0; }
    size_t weight() const { return support_.size(); }
    bool test(uint32_t index) const;
    void flip(uint32_t index);
    uint32_t max_index() const;  // requires non-empty

    F2Vector& operator+=(const F2Vector& other);
    friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a += b; }
    bool operator==(const F2Vector&) const = default;

    const std::vector<uint32_t>& support() const { return support_; }

  private:
    std::vector<uint32_t> support_;
};

struct F2Matrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<F2Vector> entries;  // one F2Vector per row

    static F2Matrix from_rows(uint32_t cols, std::vector<F2Vector> rows);
    static F2Matrix identity(uint32_t n);
    F2Matrix transpose() const;
    bool well_formed() const;
};

/// Rank over F2 by Gaussian elimination, deterministic (lowest column first).
uint32_t rank(const F2Matrix& m);

/// Basis of the null space {v : m v = 0}; size == cols - rank(m).
/// Deterministic: free columns in increasing order, each vector reduced
/// against the pivots.
std::vector<F2Vector> kernel_basis(const F2Matrix& m);

/// dim of F2^ambient / span(relations) == ambient - rank(relations).
uint32_t quotient_dim(uint32_t ambient_dim, const std::vector<F2Vector>& relations);

namespace detail {

/// Dense bit-block row used internally once a block of rows crosses the
/// density threshold; sparse relation sets from the cabled presentation
/// never get here, grid boundary blocks often do.
class DenseRow {
  public:
    explicit DenseRow(uint32_t cols) : words_((cols + 63) / 64, 0) {}
    DenseRow(uint32_t cols, const F2Vector& v);

    void flip(uint32_t i) { words_[i >> 6] ^= (uint64_t{1} << (i & 63)); }
    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void operator^=(const DenseRow& o);
    bool any() const;
    /// lowest set bit; only call when any()
    uint32_t lowest() const;

  private:
    std::vector<uint64_t> words_;
};

uint32_t dense_rank(uint32_t cols, const std::vector<F2Vector>& rows);

}  // namespace detail

}  // namespace floer::f2
