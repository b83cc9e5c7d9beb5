#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floer/f2.hpp"
#include "floer/graded.hpp"
#include "floer/unlinktqft.hpp"

namespace floer::cabled {

class GradingViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Cable level of the 0-framed unknot: k_plus positive and k_minus negative
/// parallel copies. alpha = k_plus - k_minus is the relative homology class.
struct CableLevel {
    uint32_t k_plus = 0;
    uint32_t k_minus = 0;

    uint32_t total() const { return k_plus + k_minus; }
    int alpha() const { return static_cast<int>(k_plus) - static_cast<int>(k_minus); }
    auto operator<=>(const CableLevel&) const = default;
};

/// Strand ids: positive copy j has id 2j, negative copy j has id 2j+1.
/// The marked strand is fixed per alpha sector (the pants maps never touch
/// it): the first positive copy when alpha >= 0, else the first negative.
uint32_t strand_id(bool positive, uint32_t copy);
uint32_t marked_strand(const CableLevel& l);
std::vector<uint32_t> strands(const CableLevel& l);

/// V^{(x)(k-1)} with the Maslov grading shifted up by k = k_plus + k_minus
/// and a single all-zero Alexander slot.
graded::GradedModule level_module(const CableLevel& l);

enum class RelationKind { Braid, PantsB, PantsT, Basepoint, BridgeZero };

struct Relation {
    RelationKind kind;
    f2::F2Vector vector;  // over the concatenated level bases
    int alpha = 0;
    int maslov = 0;  // shifted grading of the (homogeneous) support
};

struct CabledOptions {
    bool bridge_zero_level = false;
    unlinktqft::MarkedBraid marked_braid = unlinktqft::MarkedBraid::Identity;
};

/// Truncated presentation of the cabled homology: all levels with
/// k_plus + k_minus <= N, their modules, and every relation whose source
/// and target levels both lie inside the truncation.
class CabledPresentation {
  public:
    struct LevelBlock {
        CableLevel level;
        uint32_t offset = 0;                              // first global basis index
        std::vector<unlinktqft::ReducedTensor> basis;     // empty for level (0,0)
        std::vector<int> maslov;                          // shifted grading per element
    };

    uint32_t truncation() const { return truncation_; }
    const CabledOptions& options() const { return options_; }
    const std::vector<LevelBlock>& levels() const { return levels_; }
    const std::vector<Relation>& relations() const { return relations_; }
    uint32_t ambient_dim() const { return ambient_dim_; }
    uint32_t relations_dropped_by_truncation() const { return dropped_; }
    uint32_t vacuous_relations() const { return vacuous_; }

    uint32_t index_of(const CableLevel& l, const unlinktqft::ReducedTensor& t) const;

    friend CabledPresentation enumerate_relations(uint32_t truncation, const CabledOptions& options);

  private:
    uint32_t truncation_ = 0;
    CabledOptions options_;
    std::vector<LevelBlock> levels_;
    std::vector<Relation> relations_;
    uint32_t ambient_dim_ = 0;
    uint32_t dropped_ = 0;
    uint32_t vacuous_ = 0;
};

CabledPresentation enumerate_relations(uint32_t truncation, const CabledOptions& options = {});

/// Quotient dimension per (alpha, shifted Maslov) block. Extra unit
/// relations (one per listed global index) support the vanishing
/// pipeline.
std::map<std::pair<int, int>, uint32_t> truncated_quotient(
    const CabledPresentation& p, const std::vector<uint32_t>& injected_zero_classes = {});

struct StabilizationReport {
    std::vector<uint32_t> truncations;
    // alpha -> maslov -> dim per truncation (0 when absent)
    std::map<int, std::map<int, std::vector<uint32_t>>> dims;
    // alpha -> maslov -> stable dim (last two truncations agree)
    std::map<int, std::map<int, uint32_t>> stable;
    // (alpha, maslov) whose dim sequence decreased at some step
    std::vector<std::pair<int, int>> non_monotonic;

    struct Profile {
        bool one_dimensional = false;   // every stable dim equals 1
        bool contiguous_step = false;   // stable support is an arithmetic M-range, step -1
        int anchor_maslov = 0;          // the truncation-independent end of the support
        std::string anchored_end;       // which end of the support is truncation-independent
        int top_stable = 0;             // top of the stable window
        int expected_anchor_maslov = 0;  // the top-anchored reference profile's anchor
        int anchor_offset = 0;           // anchor_maslov - expected_anchor_maslov, reported not masked
    };
    std::map<int, Profile> profiles;  // per alpha

    std::string to_json(std::optional<int> alpha_filter = std::nullopt) const;
};

StabilizationReport stabilization_report(const std::vector<uint32_t>& truncations,
                                         const CabledOptions& options = {});

}  // namespace floer::cabled
