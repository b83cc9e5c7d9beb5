#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace floer::laurent {

/// Multivariable Laurent polynomial with integer coefficients and doubled
/// exponents, so x_i^{1/2} is representable exactly (exponent 1). Zero
/// coefficients are never stored.
class LaurentMV {
  public:
    LaurentMV() = default;
    explicit LaurentMV(uint32_t arity) : arity_(arity) {}

    static LaurentMV zero(uint32_t arity) { return LaurentMV(arity); }
    static LaurentMV constant(uint32_t arity, int64_t c);
    /// monomial c * x^(exps/2), exps doubled
    static LaurentMV monomial(uint32_t arity, std::vector<int> exps_doubled, int64_t c);
    /// x_i^{1/2} - x_i^{-1/2}
    static LaurentMV half_binomial(uint32_t arity, uint32_t var);

    uint32_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    int64_t coeff(const std::vector<int>& exps_doubled) const;
    const std::map<std::vector<int>, int64_t>& terms() const { return terms_; }

    LaurentMV& operator+=(const LaurentMV& o);
    LaurentMV& operator-=(const LaurentMV& o);
    LaurentMV operator-() const;
    friend LaurentMV operator+(LaurentMV a, const LaurentMV& b) { return a += b; }
    friend LaurentMV operator-(LaurentMV a, const LaurentMV& b) { return a -= b; }
    LaurentMV operator*(const LaurentMV& o) const;
    bool operator==(const LaurentMV&) const = default;

    bool equals_up_to_sign(const LaurentMV& o) const;

    /// Exact division by (x_var^{1/2} - x_var^{-1/2}); throws when not divisible.
    LaurentMV divide_half_binomial(uint32_t var) const;

    /// sum over terms of |coefficient|
    uint64_t abs_coeff_sum() const;

    /// "{"(2e1,2e2)": c, ...}" with sorted keys
    std::string to_json() const;

  private:
    void set(const std::vector<int>& e, int64_t c);

    uint32_t arity_ = 0;
    std::map<std::vector<int>, int64_t> terms_;
};

class NotDivisible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace floer::laurent
