#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace floer::graded {

/// Maslov plus multi-Alexander grading. Alexander entries are doubled
/// half-integers stored as plain ints (a slot value of 1 means A = 1/2),
/// so all grading arithmetic is exact.
struct MultiGrading {
    int maslov = 0;
    std::vector<int> alex;  // doubled; one slot per component / collapsed group

    MultiGrading() = default;
    MultiGrading(int m, std::vector<int> a) : maslov(m), alex(std::move(a)) {}

    MultiGrading operator+(const MultiGrading& o) const;
    bool operator==(const MultiGrading&) const = default;
    auto operator<=>(const MultiGrading&) const = default;

    /// canonical key "(M;2A1,2A2,...)"
    std::string key() const;
};

using DimTable = std::map<MultiGrading, uint32_t>;

class NotDivisible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional F2 module with labelled homogeneous basis.
/// Tests compare modules by graded dimension, not by basis.
class GradedModule {
  public:
    GradedModule() = default;
    explicit GradedModule(uint32_t alex_arity) : alex_arity_(alex_arity) {}

    static GradedModule from_dims(uint32_t alex_arity, const DimTable& dims,
                                  const std::string& label_prefix = "g");

    uint32_t alex_arity() const { return alex_arity_; }
    uint32_t dim() const { return static_cast<uint32_t>(basis_.size()); }

    void add_basis_element(std::string label, MultiGrading grading);
    const std::vector<std::pair<std::string, MultiGrading>>& basis() const { return basis_; }

    DimTable dims() const;
    uint32_t dim_at(const MultiGrading& g) const;

    /// graded dimension equality (the module-level isomorphism notion)
    bool same_dims(const GradedModule& other) const;

    /// canonical JSON text of the dim table: {"(M;2A1,...)": dim, ...}
    std::string dims_json() const;

  private:
    uint32_t alex_arity_ = 0;
    std::vector<std::pair<std::string, MultiGrading>> basis_;
};

enum class TensorArity {
    Concatenate,  // result slots = a slots followed by b slots
    Add,          // equal arity required, slots added componentwise
};

GradedModule tensor(const GradedModule& a, const GradedModule& b, TensorArity mode);

GradedModule shift(const GradedModule& a, int d_maslov, const std::vector<int>& d_alex_doubled);

/// Divide the graded Poincare polynomial of `a` by the two-term factor
/// {top, bot} raised to `multiplicity`, e.g. the extra-basepoint factor
/// <theta,xi>. Throws NotDivisible when the division does not come out
/// exact, which signals a wrong grid/marking input or a convention bug.
GradedModule factor_out(const GradedModule& a,
                        const std::pair<MultiGrading, MultiGrading>& v_bidegrees,
                        uint32_t multiplicity);

/// Sum Alexander slots within each group; groups must partition the slots.
GradedModule collapse_alexander(const GradedModule& a,
                                const std::vector<std::vector<uint32_t>>& groups);

}  // namespace floer::graded
