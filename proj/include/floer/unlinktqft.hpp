#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "floer/graded.hpp"

namespace floer::unlinktqft {

class TqftError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// V = <T, B> with M(T) = 0, M(B) = -1, A(T) = A(B) = 0
enum class VLetter : uint8_t { T, B };
/// extra-basepoint factor <theta, xi> with M(theta) = 0, M(xi) = -1,
/// A(theta) = +1/2, A(xi) = -1/2 on the component carrying the pair
enum class WLetter : uint8_t { Theta, Xi };

/// Basis element of HFL-hat of an unlink with a marked component:
/// a V letter on every non-marked component plus a stack of extra
/// <theta,xi> letters per component (one per extra basepoint pair).
/// The marked component is fixed for the lifetime of a computation.
struct ReducedTensor {
    std::vector<uint32_t> components;  // ordered ids, marked included
    uint32_t marked = 0;
    std::map<uint32_t, VLetter> word;               // exactly the non-marked components
    std::map<uint32_t, std::vector<WLetter>> extra;  // per-component pair stack

    void check() const;  // invariants: marked present, word covers non-marked

    auto operator<=>(const ReducedTensor&) const = default;
};

/// Marked unlink with no extra pairs and all-T word.
ReducedTensor top_generator(const std::vector<uint32_t>& components, uint32_t marked);

int maslov(const ReducedTensor& t);
/// doubled Alexander vector; slot_of_component maps component id -> slot
std::vector<int> alexander(const ReducedTensor& t, uint32_t arity,
                           const std::map<uint32_t, uint32_t>& slot_of_component);

/// F2 linear combination of basis tensors.
class TensorSum {
  public:
    TensorSum() = default;
    explicit TensorSum(ReducedTensor t) { toggle(std::move(t)); }

    void toggle(ReducedTensor t);  // F2 addition of a basis element
    TensorSum& operator+=(const TensorSum& o);
    friend TensorSum operator+(TensorSum a, const TensorSum& b) { return a += b; }
    bool operator==(const TensorSum&) const = default;

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::set<ReducedTensor>& terms() const { return terms_; }

  private:
    std::set<ReducedTensor> terms_;
};

enum class MarkedBraid { Identity, Zero };

struct TqftOptions {
    MarkedBraid marked_braid = MarkedBraid::Identity;
};

// Elementary cobordism maps, applied linearly. All are partial: they throw
// TqftError on structural misuse (bad ids, death of the marked component,
// destabilizing a component with no extra pair).

/// unit: insert a fresh non-marked component carrying T
TensorSum birth(const TensorSum& x, uint32_t new_component);
/// cap a non-marked component: B -> delete factor, T -> 0
TensorSum death(const TensorSum& x, uint32_t component);
/// join component b into a; reduced Frobenius multiplication on F2[X]/(X^2)
TensorSum merge(const TensorSum& x, uint32_t a, uint32_t b);
/// pair of pants with one input a and outputs (a, fresh):
/// non-marked a: T -> T(x)B + B(x)T, B -> B(x)B; marked a: insert B on fresh
TensorSum split(const TensorSum& x, uint32_t a, uint32_t fresh);
/// transposition of two parallel strands of the same sign; swaps the V
/// letters unless the marked component is involved, in which case the map
/// is trivial (identity by default, zero under the sensitivity switch)
TensorSum braid_action(const TensorSum& x, uint32_t strand_a, uint32_t strand_b,
                       const TqftOptions& opts = {});
/// full twists act trivially on unlink homology
TensorSum basepoint_move(const TensorSum& x, uint32_t component, int twists);

enum class QuasiStab { SPlus, SMinus, TPlus, TMinus };

/// quasi-(de)stabilization on the last extra pair of `component`:
/// S+(v) = v(x)theta, S-(v(x)theta) = 0, S-(v(x)xi) = v,
/// T+(v) = v(x)xi,    T-(v(x)theta) = v, T-(v(x)xi) = 0
TensorSum quasi_stab(const TensorSum& x, QuasiStab kind, uint32_t component);

/// All basis tensors on `components` with extra pair counts per component;
/// packaged as a GradedModule with one Alexander slot per component (slot
/// order = order of `components`).
graded::GradedModule tensor_space_module(const std::vector<uint32_t>& components, uint32_t marked,
                                         const std::map<uint32_t, uint32_t>& extra_pairs);

std::string to_string(const ReducedTensor& t);
std::string to_string(const TensorSum& s);

}  // namespace floer::unlinktqft
