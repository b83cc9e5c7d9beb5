#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floer/obstruction.hpp"
#include "floer/unlinktqft.hpp"

namespace floer::lasagna {

class InhomogeneousInput : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class GradingDrift : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class NotComputable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class PieceKind { W, Z };

/// One component of Sigma minus the dividing arcs, stored as Euler and
/// incidence data only; embedded geometry never enters the formulas.
struct SurfacePiece {
    PieceKind kind = PieceKind::W;
    int euler = 0;
    // (boundary circle id, number of boundary segments of this piece there)
    std::vector<std::pair<std::string, uint32_t>> boundary;
};

struct DividingArc {
    std::string id;
    bool closed = false;  // closed dividing circles are accepted; chi glues with no correction
    std::string end_a, end_b;  // boundary circle ids when not closed
};

/// Boundary circle of the filling surface: a link component on the outer
/// boundary (side = -1) or on an input ball (side = ball index).
struct BoundaryCircle {
    std::string id;
    uint32_t link_component = 0;
    int side = -1;
    uint32_t w_count = 0;
    uint32_t z_count = 0;
};

struct DecoratedSurface {
    std::vector<SurfacePiece> pieces;
    std::vector<DividingArc> arcs;
    std::vector<BoundaryCircle> boundaries;

    int chi_w() const;
    int chi_z() const;
    /// chi(Sigma) from the gluing formula: sum of piece chi minus one per
    /// open dividing arc (closed dividing circles glue with chi 0)
    int chi_total() const;
};

/// An elementary cobordism annotation on the collar between the input balls
/// and the outer boundary; this is the computable shadow used by the B^4
/// evaluation.
struct CollarOp {
    enum class Kind { Birth, Death, Merge, Split, Braid, Twist, SPlus, SMinus, TPlus, TMinus };
    Kind kind;
    uint32_t component = 0;
    uint32_t other = 0;  // merge partner / split output / braid partner
    int twists = 0;
};

struct Input {
    uint32_t ball = 0;
    std::string link;  // free-form description ("unlink", ...)
    // exactly one of the two is set: a tensor for unlink inputs, or a bare
    // homogeneous (M, collapsed 2A) label
    std::optional<unlinktqft::TensorSum> tensor;
    std::optional<std::pair<int, int>> label;  // (maslov, doubled collapsed alexander)
};

struct LasagnaFilling {
    std::vector<Input> inputs;
    DecoratedSurface surface;
    std::vector<int> homology_class;  // algebraic cable count per handle
    std::vector<CollarOp> collar;     // empty = identity collar

    /// (maslov, doubled collapsed alexander) of an input
    std::pair<int, int> input_grading(const Input& in) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const LasagnaFilling& f);

/// M(F) = chi(Sigma_w) + sum_i M(v_i); throws InhomogeneousInput
int maslov(const LasagnaFilling& f);
/// doubled: 2A(F) = (chi_w - chi_z) + sum_i 2A(v_i)
int alexander_doubled(const LasagnaFilling& f);

/// Model filling for one 2-handle: k+ + k- cable disks, each cut by a
/// diametric arc into one w and one z half-disk, input v at the cable level.
LasagnaFilling model_filling(uint32_t k_plus, uint32_t k_minus,
                             const unlinktqft::TensorSum& v);

/// identity collar over a marked unlink on n components carrying tensor v
LasagnaFilling identity_filling(const std::vector<uint32_t>& components, uint32_t marked,
                                const unlinktqft::TensorSum& v);

struct AuditResult {
    int maslov_before, maslov_after;
    int alexander_before_doubled, alexander_after_doubled;
};

/// Absorb an equivalence move (given by its grading data) into a new input
/// and recompute; a drift is a hard failure, never silently accepted.
AuditResult equivalence_move_audit(const LasagnaFilling& f,
                                   const obstruction::CobordismGradingData& move);

/// Evaluate a filling of (B^4, unlink): fold the collar ops over the input
/// tensor. A closed-disk w or z piece forces the zero map. Throws
/// NotComputable outside the unlink model (handles, twists on non-unlink
/// inputs, missing tensors).
unlinktqft::TensorSum b4_evaluate(const LasagnaFilling& f);

/// Filling JSON round-trip; the schema is documented in the README and by
/// the shipped example files.
LasagnaFilling filling_from_json(const std::string& text);
std::string filling_to_json(const LasagnaFilling& f);
LasagnaFilling filling_from_file(const std::string& path);

}  // namespace floer::lasagna
