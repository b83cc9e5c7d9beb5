#include "floer/cabled.hpp"

#include <algorithm>
#include <sstream>

namespace floer::cabled {

using unlinktqft::MarkedBraid;
using unlinktqft::ReducedTensor;
using unlinktqft::TensorSum;
using unlinktqft::VLetter;

uint32_t strand_id(bool positive, uint32_t copy) { return 2 * copy + (positive ? 0 : 1); }

uint32_t marked_strand(const CableLevel& l) {
    if (l.total() == 0) throw std::invalid_argument("marked_strand: empty level");
    // the marked copy must be the same strand at every level of an alpha
    // sector, or the pants maps would have to re-mark: positive copy #1 for
    // alpha >= 0 (it exists at every level there), negative copy #1 below
    return l.alpha() >= 0 && l.k_plus >= 1 ? strand_id(true, 0) : strand_id(false, 0);
}

std::vector<uint32_t> strands(const CableLevel& l) {
    std::vector<uint32_t> out;
    for (uint32_t j = 0; j < l.k_plus; ++j) out.push_back(strand_id(true, j));
    for (uint32_t j = 0; j < l.k_minus; ++j) out.push_back(strand_id(false, j));
    return out;
}

namespace {

std::vector<ReducedTensor> level_basis(const CableLevel& l) {
    if (l.total() == 0) return {};
    std::vector<uint32_t> comps = strands(l);
    std::sort(comps.begin(), comps.end());  // canonical component order
    uint32_t marked = marked_strand(l);
    std::vector<ReducedTensor> basis{unlinktqft::top_generator(comps, marked)};
    for (uint32_t c : comps) {
        if (c == marked) continue;
        std::vector<ReducedTensor> next;
        next.reserve(basis.size() * 2);
        for (auto t : basis) {
            t.word[c] = VLetter::T;
            next.push_back(t);
            t.word[c] = VLetter::B;
            next.push_back(std::move(t));
        }
        basis = std::move(next);
    }
    return basis;
}

}  // namespace

graded::GradedModule level_module(const CableLevel& l) {
    graded::GradedModule m(1);
    if (l.total() == 0) {
        m.add_basis_element("empty", graded::MultiGrading(0, {0}));
        return m;
    }
    int shift = static_cast<int>(l.total());
    for (const auto& t : level_basis(l))
        m.add_basis_element(unlinktqft::to_string(t),
                            graded::MultiGrading(unlinktqft::maslov(t) + shift, {0}));
    return m;
}

uint32_t CabledPresentation::index_of(const CableLevel& l, const ReducedTensor& t) const {
    for (const auto& blk : levels_) {
        if (blk.level != l) continue;
        for (uint32_t i = 0; i < blk.basis.size(); ++i)
            if (blk.basis[i] == t) return blk.offset + i;
        throw std::invalid_argument("index_of: tensor " + unlinktqft::to_string(t) +
                                    " not in basis of level (" + std::to_string(l.k_plus) + "," +
                                    std::to_string(l.k_minus) + ")");
    }
    throw std::invalid_argument("index_of: level outside truncation");
}

CabledPresentation enumerate_relations(uint32_t truncation, const CabledOptions& options) {
    if (truncation < 1) throw std::invalid_argument("enumerate_relations: truncation must be >= 1");
    CabledPresentation p;
    p.truncation_ = truncation;
    p.options_ = options;

    if (options.bridge_zero_level) {
        CabledPresentation::LevelBlock blk;
        blk.level = CableLevel{0, 0};
        blk.offset = 0;
        blk.maslov = {0};
        p.levels_.push_back(std::move(blk));
        p.ambient_dim_ = 1;
    }
    for (uint32_t k = 1; k <= truncation; ++k) {
        for (uint32_t kp = 0; kp <= k; ++kp) {
            CabledPresentation::LevelBlock blk;
            blk.level = CableLevel{kp, k - kp};
            blk.offset = p.ambient_dim_;
            blk.basis = level_basis(blk.level);
            blk.maslov.reserve(blk.basis.size());
            for (const auto& t : blk.basis)
                blk.maslov.push_back(unlinktqft::maslov(t) + static_cast<int>(k));
            p.ambient_dim_ += static_cast<uint32_t>(blk.basis.size());
            p.levels_.push_back(std::move(blk));
        }
    }

    unlinktqft::TqftOptions tqft{options.marked_braid};
    auto push_relation = [&](RelationKind kind, f2::F2Vector vec, int alpha) {
        if (vec.empty()) {
            ++p.vacuous_;
            return;
        }
        // every relation must be homogeneous in the shifted Maslov grading;
        // the degenerate zero-level bridge is the one documented exception
        std::optional<int> m;
        for (uint32_t idx : vec.support()) {
            for (const auto& blk : p.levels_) {
                if (idx < blk.offset || idx >= blk.offset + std::max<size_t>(blk.basis.size(), 1))
                    continue;
                int mm = blk.maslov[idx - blk.offset];
                if (!m)
                    m = mm;
                else if (*m != mm && kind != RelationKind::BridgeZero)
                    throw GradingViolation("relation mixes Maslov gradings");
                break;
            }
        }
        p.relations_.push_back(Relation{kind, std::move(vec), alpha, m.value_or(0)});
    };

    for (const auto& blk : p.levels_) {
        const CableLevel lv = blk.level;
        if (lv.total() == 0) continue;
        const uint32_t marked = marked_strand(lv);
        const int alpha = lv.alpha();
        const bool pants_in_range = lv.total() + 2 <= truncation;
        const CableLevel next{lv.k_plus + 1, lv.k_minus + 1};
        const uint32_t new_pos = strand_id(true, lv.k_plus);
        const uint32_t new_neg = strand_id(false, lv.k_minus);

        for (const auto& t : blk.basis) {
            TensorSum v{t};
            uint32_t self = p.index_of(lv, t);

            // braid relations: adjacent same-sign transpositions; the
            // marked strand acts trivially, so those relations are vacuous
            // under the identity reading and are emitted as v ~ 0 under the
            // zero reading (the sensitivity switch)
            auto braid_pair = [&](uint32_t a, uint32_t b) {
                TensorSum image = unlinktqft::braid_action(v, a, b, tqft);
                f2::F2Vector vec = f2::F2Vector::unit(self);
                for (const auto& u : image.terms()) vec.flip(p.index_of(lv, u));
                push_relation(RelationKind::Braid, std::move(vec), alpha);
            };
            for (uint32_t j = 0; j + 1 < lv.k_plus; ++j)
                braid_pair(strand_id(true, j), strand_id(true, j + 1));
            for (uint32_t j = 0; j + 1 < lv.k_minus; ++j)
                braid_pair(strand_id(false, j), strand_id(false, j + 1));

            // basepoint-moving relations are vacuous on unlink tensors
            push_relation(RelationKind::Basepoint,
                          [&] {
                              TensorSum image = unlinktqft::basepoint_move(v, marked, 1);
                              f2::F2Vector vec = f2::F2Vector::unit(self);
                              for (const auto& u : image.terms()) vec.flip(p.index_of(lv, u));
                              return vec;
                          }(),
                          alpha);

            if (!pants_in_range) {
                p.dropped_ += 2;
                continue;
            }

            // adjoin the split unknot U, decorate it, and split it into the
            // two new cable copies via the pair-of-pants
            const uint32_t u_id = 1000000;
            auto pants_image = [&](VLetter u_letter) {
                ReducedTensor with_u = t;
                with_u.components.push_back(u_id);
                with_u.word[u_id] = u_letter;
                TensorSum image = unlinktqft::split(TensorSum{with_u}, u_id, new_neg);
                // relabel the U strand as the new positive copy
                TensorSum relabeled;
                for (auto u : image.terms()) {
                    auto it = std::find(u.components.begin(), u.components.end(), u_id);
                    *it = new_pos;
                    auto node = u.word.extract(u_id);
                    node.key() = new_pos;
                    u.word.insert(std::move(node));
                    std::sort(u.components.begin(), u.components.end());
                    relabeled.toggle(std::move(u));
                }
                return relabeled;
            };

            // v ~ F_P(v (x) B)
            {
                TensorSum image = pants_image(VLetter::B);
                f2::F2Vector vec = f2::F2Vector::unit(self);
                for (const auto& u : image.terms()) vec.flip(p.index_of(next, u));
                push_relation(RelationKind::PantsB, std::move(vec), alpha);
            }
            // 0 ~ F_P(v (x) T)
            {
                TensorSum image = pants_image(VLetter::T);
                f2::F2Vector vec;
                for (const auto& u : image.terms()) vec.flip(p.index_of(next, u));
                push_relation(RelationKind::PantsT, std::move(vec), alpha);
            }
        }
    }

    if (options.bridge_zero_level && truncation >= 2) {
        // Degenerate pants at the empty level: HFL(U) is 1-dimensional, so
        // "v (x) B" has no meaning there. The documented bridge convention
        // identifies the empty-level class with the B-class of level (1,1).
        // The identification mixes M = 0 with M = 1 and is handled apart
        // from the homogeneous blocks.
        CableLevel l11{1, 1};
        ReducedTensor b_word = unlinktqft::top_generator(strands(l11), marked_strand(l11));
        b_word.word[strand_id(false, 0)] = VLetter::B;
        f2::F2Vector vec = f2::F2Vector::unit(0);
        vec.flip(p.index_of(l11, b_word));
        push_relation(RelationKind::BridgeZero, std::move(vec), 0);
    }

    return p;
}

std::map<std::pair<int, int>, uint32_t> truncated_quotient(
    const CabledPresentation& p, const std::vector<uint32_t>& injected_zero_classes) {
    // collect basis indices per (alpha, maslov)
    std::map<std::pair<int, int>, std::vector<uint32_t>> blocks;
    for (const auto& blk : p.levels()) {
        if (blk.level.total() == 0 && blk.basis.empty()) {
            blocks[{0, 0}].push_back(blk.offset);
            continue;
        }
        for (uint32_t i = 0; i < blk.basis.size(); ++i)
            blocks[{blk.level.alpha(), blk.maslov[i]}].push_back(blk.offset + i);
    }
    std::map<uint32_t, uint32_t> position;  // global index -> position in its block
    for (auto& [key, idxs] : blocks) {
        std::sort(idxs.begin(), idxs.end());
        for (uint32_t j = 0; j < idxs.size(); ++j) position[idxs[j]] = j;
    }

    std::map<std::pair<int, int>, std::vector<f2::F2Vector>> rels;
    uint32_t bridges = 0;
    for (const auto& r : p.relations()) {
        if (r.kind == RelationKind::BridgeZero) {
            ++bridges;
            continue;
        }
        f2::F2Vector local;
        for (uint32_t idx : r.vector.support()) local.flip(position.at(idx));
        rels[{r.alpha, r.maslov}].push_back(std::move(local));
    }
    for (uint32_t idx : injected_zero_classes) {
        // locate the block of idx
        for (const auto& blk : p.levels()) {
            bool zero_level = blk.level.total() == 0;
            uint32_t sz = zero_level ? 1 : static_cast<uint32_t>(blk.basis.size());
            if (idx < blk.offset || idx >= blk.offset + sz) continue;
            int a = zero_level ? 0 : blk.level.alpha();
            int m = blk.maslov[idx - blk.offset];
            rels[{a, m}].push_back(f2::F2Vector::unit(position.at(idx)));
            break;
        }
    }

    std::map<std::pair<int, int>, uint32_t> dims;
    for (const auto& [key, idxs] : blocks) {
        auto it = rels.find(key);
        static const std::vector<f2::F2Vector> kNone;
        dims[key] = f2::quotient_dim(static_cast<uint32_t>(idxs.size()),
                                     it == rels.end() ? kNone : it->second);
    }
    // the zero-level bridge identifies the (0,0)-level class (alpha 0, M 0)
    // with a class at M 1; its own coordinate appears in no other relation,
    // so the identification removes exactly the M = 0 class
    if (bridges > 0) {
        auto it = dims.find({0, 0});
        if (it != dims.end() && it->second > 0) it->second -= 1;
    }
    return dims;
}

StabilizationReport stabilization_report(const std::vector<uint32_t>& truncations,
                                         const CabledOptions& options) {
    if (truncations.empty()) throw std::invalid_argument("stabilization_report: empty N list");
    for (size_t i = 1; i < truncations.size(); ++i)
        if (truncations[i] <= truncations[i - 1])
            throw std::invalid_argument("stabilization_report: truncations must increase");

    StabilizationReport rep;
    rep.truncations = truncations;
    std::vector<std::map<std::pair<int, int>, uint32_t>> per_n;
    for (uint32_t n : truncations)
        per_n.push_back(truncated_quotient(enumerate_relations(n, options)));

    for (size_t i = 0; i < per_n.size(); ++i)
        for (const auto& [key, d] : per_n[i]) {
            auto& seq = rep.dims[key.first][key.second];
            seq.resize(truncations.size(), 0);
            seq[i] = d;
        }
    for (auto& [alpha, by_m] : rep.dims)
        for (auto& [m, seq] : by_m) {
            seq.resize(truncations.size(), 0);
            if (seq.size() >= 2 && seq[seq.size() - 1] == seq[seq.size() - 2])
                rep.stable[alpha][m] = seq.back();
            for (size_t i = 1; i < seq.size(); ++i)
                if (seq[i] < seq[i - 1]) {
                    rep.non_monotonic.push_back({alpha, m});
                    break;
                }
        }

    for (const auto& [alpha, by_m] : rep.stable) {
        StabilizationReport::Profile prof;
        std::vector<int> support;
        for (const auto& [m, d] : by_m)
            if (d > 0) support.push_back(m);
        if (support.empty()) {
            rep.profiles[alpha] = prof;
            continue;
        }
        std::sort(support.begin(), support.end());
        prof.one_dimensional = true;
        for (int m : support)
            if (by_m.at(m) != 1) prof.one_dimensional = false;
        prof.contiguous_step = support.back() - support.front() + 1 == (int)support.size();
        prof.anchor_maslov = support.front();
        prof.anchored_end = "bottom";
        prof.top_stable = support.back();
        prof.expected_anchor_maslov = 0;  // the top-anchored reference profile
        prof.anchor_offset = prof.anchor_maslov - prof.expected_anchor_maslov;
        rep.profiles[alpha] = prof;
    }
    return rep;
}

std::string StabilizationReport::to_json(std::optional<int> alpha_filter) const {
    std::ostringstream os;
    os << "{\"truncations\":[";
    for (size_t i = 0; i < truncations.size(); ++i) os << (i ? "," : "") << truncations[i];
    os << "],\"sectors\":[";
    bool first_a = true;
    for (const auto& [alpha, by_m] : dims) {
        if (alpha_filter && *alpha_filter != alpha) continue;
        if (!first_a) os << ',';
        first_a = false;
        os << "{\"alpha\":" << alpha << ",\"dims\":{";
        bool first_m = true;
        for (const auto& [m, seq] : by_m) {
            if (!first_m) os << ',';
            first_m = false;
            os << '"' << m << "\":[";
            for (size_t i = 0; i < seq.size(); ++i) os << (i ? "," : "") << seq[i];
            os << ']';
        }
        os << "},\"stable\":{";
        first_m = true;
        auto sit = stable.find(alpha);
        if (sit != stable.end())
            for (const auto& [m, d] : sit->second) {
                if (d == 0) continue;
                if (!first_m) os << ',';
                first_m = false;
                os << '"' << m << "\":" << d;
            }
        os << '}';
        auto pit = profiles.find(alpha);
        if (pit != profiles.end()) {
            const auto& p = pit->second;
            os << ",\"profile\":{\"one_dimensional\":" << (p.one_dimensional ? "true" : "false")
               << ",\"contiguous_step\":" << (p.contiguous_step ? "true" : "false")
               << ",\"anchored_end\":\"" << p.anchored_end << "\",\"anchor_maslov\":"
               << p.anchor_maslov << ",\"top_stable\":" << p.top_stable
               << ",\"expected_anchor_maslov\":" << p.expected_anchor_maslov
               << ",\"anchor_offset\":" << p.anchor_offset << '}';
        }
        os << '}';
    }
    os << "]}";
    return os.str();
}

}  // namespace floer::cabled
