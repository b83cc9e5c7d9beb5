#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "floer/f2.hpp"
#include "floer/graded.hpp"
#include "floer/laurent.hpp"

namespace floer::grid {

class GridError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class NotAPermutation : public GridError {
  public:
    using GridError::GridError;
};
class MarkerCollision : public GridError {
  public:
    using GridError::GridError;
};
class MalformedFile : public GridError {
  public:
    using GridError::GridError;
};

/// Toroidal grid presentation of a link: one O and one X marker per row and
/// per column (markers never share a cell). Rows and columns are 0-based,
/// row i has its O marker in column o_perm[i]. The link is traced by joining
/// O to X horizontally in each row and X to O vertically in each column,
/// with vertical segments in front. O markers play the w basepoints and X
/// markers play the z basepoints, one basepoint pair per row of a component.
class GridDiagram {
  public:
    GridDiagram(std::vector<uint32_t> o_perm, std::vector<uint32_t> x_perm);

    uint32_t size() const { return n_; }
    uint32_t components() const { return ncomp_; }
    const std::vector<uint32_t>& o() const { return o_; }
    const std::vector<uint32_t>& x() const { return x_; }
    uint32_t component_of_row(uint32_t row) const { return comp_of_row_[row]; }
    /// number of marker pairs (rows) on a component
    uint32_t pairs_on(uint32_t comp) const { return pairs_[comp]; }

    /// signed crossing count between two distinct components
    int linking_number(uint32_t comp_a, uint32_t comp_b) const;

  private:
    uint32_t n_;
    std::vector<uint32_t> o_, x_;
    std::vector<uint32_t> comp_of_row_;
    std::vector<uint32_t> pairs_;
    uint32_t ncomp_;
};

/// One generator of the grid complex: the permutation column -> row.
struct GridState {
    std::vector<uint32_t> perm;
};

/// Grid file: line 1 "n <int>", line 2 "O <n 0-based columns>",
/// line 3 "X <...>", optional line 4 "components <n labels>". Strict.
GridDiagram parse_grid(std::istream& in);
GridDiagram parse_grid_file(const std::string& path);

int maslov_grading(const GridDiagram& g, const GridState& s);
/// per-component Alexander grading, doubled; symmetric normalization
/// (extra basepoint pairs contribute factors at A = +-1/2)
std::vector<int> alexander_grading(const GridDiagram& g, const GridState& s);

/// parity of empty rectangles (no O, no X, no other state point) from s to t
bool differential_coefficient(const GridDiagram& g, const GridState& s, const GridState& t);

struct GradedBlockMatrix {
    graded::MultiGrading source_grading;  // target = source with maslov - 1
    f2::F2Matrix matrix;                  // rows = sources, cols = targets
};

/// Full boundary operator, one block per (Maslov, Alexander) source grading.
/// Every nonzero entry drops Maslov by exactly 1 and preserves Alexander
/// (checked), and the composite squares to zero (checked).
std::vector<GradedBlockMatrix> tilde_differential(const GridDiagram& g);

/// Graded dimensions of the homology of the tilde complex over all n!
/// generators, in the symmetric Alexander normalization. `jobs` > 1 runs
/// independent Alexander blocks on a thread pool; output is deterministic.
graded::GradedModule homology(const GridDiagram& g, unsigned jobs = 1);

/// Divide out the extra-basepoint factor <theta,xi> per component until
/// `keep_extra[c]` extra pairs remain (default: none, i.e. one basepoint
/// pair per component). Throws graded::NotDivisible on convention errors.
graded::GradedModule extract_hfl(const GridDiagram& g, unsigned jobs = 1,
                                 const std::vector<uint32_t>& keep_extra = {});
graded::GradedModule extract_hfl(const graded::GradedModule& grid_homology,
                                 const GridDiagram& g,
                                 const std::vector<uint32_t>& keep_extra = {});

/// Graded Euler characteristic sum_s (-1)^M x^A of the chain complex,
/// as an exact Laurent polynomial in doubled exponents.
laurent::LaurentMV euler_characteristic(const GridDiagram& g);

/// +-Delta_L * prod_i (x_i^{1/2}-x_i^{-1/2})^{pairs_i - 1 + [components >= 2]},
/// the value euler_characteristic must reproduce for a diagram of a link
/// with multivariable Alexander polynomial Delta_L.
laurent::LaurentMV expected_euler(const GridDiagram& g, const laurent::LaurentMV& delta);

}  // namespace floer::grid
