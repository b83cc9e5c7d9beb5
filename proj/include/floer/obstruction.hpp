#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "floer/cabled.hpp"
#include "floer/graded.hpp"
#include "floer/laurent.hpp"

namespace floer::obstruction {

class NonIntegralShift : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class InvalidCertificate : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inputs to the cobordism grading-shift formulas: Euler characteristics of
/// the type-w and type-z subsurfaces, basepoint counts on the incoming and
/// outgoing ends, and the 4-manifold terms (trivial for everything in scope).
struct CobordismGradingData {
    int chi_w = 0;
    int chi_z = 0;
    uint32_t w1_count = 0;
    uint32_t w2_count = 0;
    int c1_sq = 0;
    int chi_W = 0;
    int sigma_W = 0;
};

/// Maslov shift of the induced map, in the convention where the top
/// generator of HF-hat(S^3) sits in grading 0:
///   dgr_w = (c1^2 - 2 chi(W) - 3 sigma(W))/4 + chi(Sigma_w) - (|w1|+|w2|)/2
///   dM    = dgr_w - (|w2| - |w1|)/2
/// Throws NonIntegralShift when the 4-manifold term is not a multiple of 4.
int maslov_shift(const CobordismGradingData& d);

/// doubled Alexander shift: chi(Sigma_w) - chi(Sigma_z) (i.e. the shift is
/// (chi_w - chi_z)/2)
int alexander_shift_doubled(const CobordismGradingData& d);

/// concatenation of cobordism data: chi's glue along the |w| basepoint arcs
/// of the middle link, counts chain through
CobordismGradingData concatenate(const CobordismGradingData& first,
                                 const CobordismGradingData& second);

/// Homology of a thin link from its multivariable Alexander polynomial:
/// dim |a_h| in multigrading h and Maslov |h| - 1, where
/// delta * prod_i (x_i^{1/2} - x_i^{-1/2}) = sum_h a_h x^h.
graded::GradedModule thin_link_homology(const laurent::LaurentMV& delta, uint32_t n_components);

/// The grading ledger behind F'_P(B) = 0: source B, quasi-stabilization T+,
/// then the band map; valid exactly when the target grading is empty.
struct VanishingCertificate {
    std::string map_description;
    graded::MultiGrading source;        // arity 2: (A1, A2 collapsed)
    int band_maslov_shift = 0;          // axiom: Maslov-index-0 triangles
    graded::MultiGrading target;
    uint32_t target_dim = 0;
    std::string module_provenance;
    bool valid() const { return target_dim == 0; }
    std::string to_json() const;
};

/// l2_module: the 16-dimensional homology collapsed to arity 2,
/// slots (A1; A2 = sum over the two cable copies).
VanishingCertificate pants_vanishing_certificate(const graded::GradedModule& l2_module,
                                                 const std::string& provenance);

struct VanishingReport {
    VanishingCertificate certificate;
    uint32_t max_truncation = 0;
    uint32_t injected_relations = 0;
    bool all_zero = false;
    std::map<std::pair<int, int>, uint32_t> dims;  // must be identically 0
    std::vector<std::string> trace;
    std::string to_json() const;
};

/// Vanishing pipeline: a valid certificate makes v ~ F'_P(B) (x) v = 0 for
/// every generator, so every cable level dies at every truncation.
VanishingReport theorem13_vanishing(const VanishingCertificate& cert, uint32_t max_truncation = 6);

}  // namespace floer::obstruction
