// Acceptance suite: every criterion prints one PASS/FAIL line with its
// runtime; the binary exits nonzero when any criterion fails. Findings that
// are reported rather than asserted (the stable-profile anchor offset) are
// printed as FINDING lines.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "floer/cabled.hpp"
#include "floer/graded.hpp"
#include "floer/grid.hpp"
#include "floer/lasagna.hpp"
#include "floer/obstruction.hpp"
#include "floer/unlinktqft.hpp"

using floer::graded::GradedModule;
using floer::graded::MultiGrading;
using floer::laurent::LaurentMV;
using floer::unlinktqft::QuasiStab;
using floer::unlinktqft::ReducedTensor;
using floer::unlinktqft::TensorSum;
using floer::unlinktqft::VLetter;

namespace {

std::string g_data = FLOER_DATA_DIR;
std::vector<std::string> g_findings;

floer::grid::GridDiagram load(const std::string& name) {
    return floer::grid::parse_grid_file(g_data + "/grids/" + name);
}

unsigned env_seed() {
    if (const char* s = std::getenv("FLOER_LASAGNA_SEED")) return std::atoi(s);
    return 1;
}

uint64_t binom(uint32_t n, uint32_t k) {
    if (k > n) return 0;
    uint64_t r = 1;
    for (uint32_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::vector<TensorSum> unlink_basis(uint32_t n) {
    std::vector<ReducedTensor> basis;
    ReducedTensor seed;
    seed.components = {0};
    for (uint32_t c = 1; c < n; ++c) seed.components.push_back(c);
    seed.marked = 0;
    basis.push_back(seed);
    for (uint32_t c = 1; c < n; ++c) {
        std::vector<ReducedTensor> next;
        for (auto t : basis) {
            t.word[c] = VLetter::T;
            next.push_back(t);
            t.word[c] = VLetter::B;
            next.push_back(t);
        }
        basis = std::move(next);
    }
    std::vector<TensorSum> out;
    for (auto& t : basis) out.emplace_back(std::move(t));
    return out;
}

// ---- criteria ----

bool ac1_unlink_homology(std::string& detail) {
    const char* files[] = {"unknot.grid", "unlink2.grid", "unlink3.grid"};
    for (uint32_t n = 1; n <= 3; ++n) {
        GradedModule hfl = floer::grid::extract_hfl(load(files[n - 1]));
        if (hfl.dim() != (1u << (n - 1))) {
            detail = "dim mismatch at n=" + std::to_string(n);
            return false;
        }
        // Maslov distribution of V^(n-1): binom(n-1, j) at M = -j, A = 0
        for (uint32_t j = 0; j < n; ++j) {
            MultiGrading g(-static_cast<int>(j), std::vector<int>(n, 0));
            if (hfl.dim_at(g) != binom(n - 1, j)) {
                detail = "Maslov distribution off at n=" + std::to_string(n);
                return false;
            }
        }
    }
    detail = "dims 1,2,4 with binomial Maslov distribution";
    return true;
}

bool ac2_l1prime(std::string& detail) {
    // model build: <T,B> (x) <theta,xi>
    GradedModule model =
        floer::unlinktqft::tensor_space_module({0, 1}, 0, std::map<uint32_t, uint32_t>{{1, 1}});
    // grid build: 4x4 unlink keeping one extra pair on component 1
    auto g = load("unlink2.grid");
    GradedModule grid = floer::grid::extract_hfl(floer::grid::homology(g), g, {0, 1});
    for (const GradedModule* m : {&model, &grid}) {
        if (m->dim() != 4) {
            detail = "dimension != 4";
            return false;
        }
        bool ok = m->dim_at(MultiGrading(0, {0, 1})) == 1 &&
                  m->dim_at(MultiGrading(-1, {0, -1})) == 1 &&
                  m->dim_at(MultiGrading(-1, {0, 1})) == 1 &&
                  m->dim_at(MultiGrading(-2, {0, -1})) == 1;
        if (!ok) {
            detail = "displayed (M, A2) values not matched";
            return false;
        }
    }
    detail = "M(theta)=0, M(xi)=-1, A2 = +-1/2 exactly, model and grid agree";
    return true;
}

bool ac3_l2(std::string& detail) {
    LaurentMV delta = LaurentMV::half_binomial(3, 0);
    GradedModule thin = floer::obstruction::thin_link_homology(delta, 3);
    if (thin.dim() != 16) {
        detail = "thin dim != 16";
        return false;
    }
    GradedModule thin2 = floer::graded::collapse_alexander(thin, {{0}, {1, 2}});
    int top = -1000;
    for (const auto& [l, g] : thin2.basis()) top = std::max(top, g.maslov);
    if (top != 1 || thin2.dim_at(MultiGrading(1, {2, 2})) != 1) {
        detail = "top Maslov != 1";
        return false;
    }
    if (thin2.dim_at(MultiGrading(-2, {0, 0})) != 0) {
        detail = "dimension at (-2,0,0) nonzero";
        return false;
    }
    for (const char* file : {"l2_chain.grid", "l2_chain7.grid"}) {
        auto g = load(file);
        GradedModule grid2 =
            floer::graded::collapse_alexander(floer::grid::extract_hfl(g), {{0}, {1, 2}});
        if (!grid2.same_dims(thin2)) {
            detail = std::string("grid pipeline disagrees with thin formula: ") + file;
            return false;
        }
    }
    detail = "16-dim, top M=1, empty at (-2,0,0); grids (n=6, n=7) collapsed dims identical";
    return true;
}

bool ac4_quasi_stab(std::string& detail) {
    for (const auto& v : unlink_basis(4)) {
        for (uint32_t c = 0; c < 4; ++c) {
            TensorSum sp = quasi_stab(v, QuasiStab::SPlus, c);
            TensorSum tp = quasi_stab(v, QuasiStab::TPlus, c);
            // all six quasi-stabilization formulas
            bool ok = quasi_stab(sp, QuasiStab::SMinus, c).is_zero() &&
                      quasi_stab(tp, QuasiStab::SMinus, c) == v &&
                      quasi_stab(sp, QuasiStab::TMinus, c) == v &&
                      quasi_stab(tp, QuasiStab::TMinus, c).is_zero();
            if (!ok) {
                detail = "quasi-stabilization composition failed";
                return false;
            }
            const ReducedTensor& s0 = *sp.terms().begin();
            const ReducedTensor& t0 = *tp.terms().begin();
            int m = floer::unlinktqft::maslov(*v.terms().begin());
            if (floer::unlinktqft::maslov(s0) != m || floer::unlinktqft::maslov(t0) != m - 1) {
                detail = "S+/T+ Maslov shifts wrong";
                return false;
            }
        }
    }
    detail = "all six formulas and S-S+ = T-T+ = 0 on words up to 4 components";
    return true;
}

bool ac5_thm12(std::string& detail) {
    using floer::cabled::StabilizationReport;
    StabilizationReport rep = floer::cabled::stabilization_report({4, 6, 8});
    for (int alpha = -3; alpha <= 3; ++alpha) {
        auto pit = rep.profiles.find(alpha);
        if (pit == rep.profiles.end()) {
            detail = "missing sector alpha=" + std::to_string(alpha);
            return false;
        }
        const auto& prof = pit->second;
        if (!prof.one_dimensional || !prof.contiguous_step) {
            detail = "profile not one F2 per grading with step -1 at alpha=" +
                     std::to_string(alpha);
            return false;
        }
        // dims agree between N=6 and N=8 on every grading within 3 of the
        // top of the stable window
        const auto& by_m = rep.dims.at(alpha);
        for (int m = prof.top_stable - 3; m <= prof.top_stable; ++m) {
            uint32_t d6 = 0, d8 = 0;
            auto it = by_m.find(m);
            if (it != by_m.end()) {
                d6 = it->second[1];
                d8 = it->second[2];
            }
            if (d6 != d8) {
                detail = "dims did not stabilize near the top at alpha=" + std::to_string(alpha);
                return false;
            }
        }
        if (prof.anchor_offset != 0)
            g_findings.push_back(
                "AC5 alpha=" + std::to_string(alpha) + ": stable profile is one F2 per grading, " +
                "anchored at M=" + std::to_string(prof.anchor_maslov) + " (" + prof.anchored_end +
                " end, truncation-independent); the stated profile anchors at top M=0 -- " +
                "offset " + std::to_string(prof.anchor_offset) + " under M -> 1 - M reflection");
    }
    detail = "stable one-per-grading profile for |alpha| <= 3, N in {4,6,8}";
    return true;
}

bool ac6_thm13(std::string& detail) {
    LaurentMV delta = LaurentMV::half_binomial(3, 0);
    GradedModule thin2 = floer::graded::collapse_alexander(
        floer::obstruction::thin_link_homology(delta, 3), {{0}, {1, 2}});
    auto g = load("l2_chain.grid");
    GradedModule grid2 =
        floer::graded::collapse_alexander(floer::grid::extract_hfl(g), {{0}, {1, 2}});

    auto cert_thin = floer::obstruction::pants_vanishing_certificate(thin2, "thin-link formula");
    auto cert_grid = floer::obstruction::pants_vanishing_certificate(grid2, "grid pipeline");
    if (!cert_thin.valid() || !cert_grid.valid()) {
        detail = "certificate invalid";
        return false;
    }
    auto rep = floer::obstruction::theorem13_vanishing(cert_thin, 6);
    if (!rep.all_zero) {
        detail = "cabled module failed to vanish";
        return false;
    }
    for (const auto& [key, d] : rep.dims)
        if (d != 0) {
            detail = "nonzero block";
            return false;
        }
    detail = "certificate valid from both pipelines; quotient = 0 everywhere, N <= 6";
    return true;
}

bool ac7_grading_moves(std::string& detail) {
    floer::lasagna::LasagnaFilling f =
        floer::lasagna::filling_from_file(g_data + "/fillings/model_k11.json");
    std::mt19937 rng(env_seed());
    for (int t = 0; t < 200; ++t) {
        floer::obstruction::CobordismGradingData move;
        move.w1_count = 2;
        move.w2_count = 1 + rng() % 6;
        move.chi_w = static_cast<int>(rng() % 9) - 4;
        move.chi_z = static_cast<int>(rng() % 9) - 4;
        auto r = floer::lasagna::equivalence_move_audit(f, move);  // throws on drift
        if (r.maslov_before != r.maslov_after ||
            r.alexander_before_doubled != r.alexander_after_doubled) {
            detail = "grading drift";
            return false;
        }
        if (f.homology_class != std::vector<int>{0}) {
            detail = "class drift";
            return false;
        }
    }
    detail = "200 randomized moves, (M, A, alpha) all preserved";
    return true;
}

bool ac8_b4(std::string& detail) {
    const char* files[] = {"unknot.grid", "unlink2.grid", "unlink3.grid"};
    for (uint32_t n = 1; n <= 3; ++n) {
        std::vector<uint32_t> comps;
        for (uint32_t c = 0; c < n; ++c) comps.push_back(c);
        GradedModule image(n);
        std::set<std::string> seen;
        for (const auto& v : unlink_basis(n)) {
            floer::lasagna::LasagnaFilling f = floer::lasagna::identity_filling(comps, 0, v);
            TensorSum out = floer::lasagna::b4_evaluate(f);
            if (!(out == v)) {
                detail = "identity filling did not evaluate to its input";
                return false;
            }
            const ReducedTensor& t = *out.terms().begin();
            if (!seen.insert(floer::unlinktqft::to_string(t)).second) {
                detail = "evaluation not injective";
                return false;
            }
            std::map<uint32_t, uint32_t> slot;
            for (uint32_t c = 0; c < n; ++c) slot[c] = c;
            image.add_basis_element(floer::unlinktqft::to_string(t),
                                    MultiGrading(floer::unlinktqft::maslov(t),
                                                 floer::unlinktqft::alexander(t, n, slot)));
        }
        if (!image.same_dims(floer::grid::extract_hfl(load(files[n - 1])))) {
            detail = "image dims differ from HFL at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "graded bijection onto HFL-hat dims for n = 1, 2, 3";
    return true;
}

bool ac9_euler_oracle(std::string& detail) {
    using floer::grid::euler_characteristic;
    using floer::grid::expected_euler;
    struct Case {
        const char* file;
        LaurentMV delta;
    };
    LaurentMV one = LaurentMV::constant(1, 1);
    LaurentMV trefoil = LaurentMV::monomial(1, {2}, 1) + LaurentMV::monomial(1, {0}, -1) +
                        LaurentMV::monomial(1, {-2}, 1);
    LaurentMV fig8 = LaurentMV::monomial(1, {2}, -1) + LaurentMV::monomial(1, {0}, 3) +
                     LaurentMV::monomial(1, {-2}, -1);
    std::vector<Case> cases;
    cases.push_back({"unknot.grid", one});
    cases.push_back({"unknot3.grid", one});
    cases.push_back({"trefoil.grid", trefoil});
    cases.push_back({"figure8.grid", fig8});
    cases.push_back({"unlink2.grid", LaurentMV::zero(2)});
    cases.push_back({"unlink2b.grid", LaurentMV::zero(2)});
    cases.push_back({"unlink3.grid", LaurentMV::zero(3)});
    cases.push_back({"l2_chain.grid", LaurentMV::half_binomial(3, 0)});
    for (const auto& c : cases) {
        auto g = load(c.file);
        if (!euler_characteristic(g).equals_up_to_sign(expected_euler(g, c.delta))) {
            detail = std::string("Euler characteristic mismatch for ") + c.file;
            return false;
        }
    }
    detail = "unknots, trefoil, figure-eight, unlinks, L2 all match";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        const char* statement;
        std::function<bool(std::string&)> run;
        double budget_seconds;
    };
    std::vector<Criterion> criteria = {
        {"AC1", "unlink HFL-hat is V^(n-1), n = 1..3", ac1_unlink_homology, 1.0},
        {"AC2", "L1' gradings match the displayed values", ac2_l1prime, 1.0},
        {"AC3", "L2: thin formula and grid pipeline", ac3_l2, 300.0},
        {"AC4", "quasi-stabilization algebra", ac4_quasi_stab, 1.0},
        {"AC5", "cabled unknot stabilization (desk scale)", ac5_thm12, 600.0},
        {"AC6", "vanishing certificate and zero module", ac6_thm13, 60.0},
        {"AC7", "grading well-definedness under moves", ac7_grading_moves, 10.0},
        {"AC8", "B^4 evaluation is a graded bijection", ac8_b4, 1.0},
        {"AC9", "graded Euler characteristic oracle", ac9_euler_oracle, 300.0},
    };

    bool all_ok = true;
    for (auto& c : criteria) {
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            ok = false;
            detail += " [over time budget]";
        }
        std::ostringstream line;
        line << (ok ? "PASS " : "FAIL ") << c.name << " (" << c.statement << "): " << detail
             << " [" << secs << "s]";
        std::cout << line.str() << "\n";
        all_ok = all_ok && ok;
    }
    for (const auto& f : g_findings) std::cout << "FINDING " << f << "\n";
    return all_ok ? 0 : 1;
}
