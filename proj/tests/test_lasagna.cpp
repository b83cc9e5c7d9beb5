#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "floer/lasagna.hpp"

using namespace floer::lasagna;
using floer::unlinktqft::QuasiStab;
using floer::unlinktqft::ReducedTensor;
using floer::unlinktqft::TensorSum;
using floer::unlinktqft::VLetter;

namespace {

std::string data_dir() { return FLOER_DATA_DIR; }

unsigned env_seed() {
    if (const char* s = std::getenv("FLOER_LASAGNA_SEED")) return std::atoi(s);
    return 1;
}

TensorSum unlink_word(std::initializer_list<VLetter> letters) {
    ReducedTensor t;
    t.components = {0};
    t.marked = 0;
    uint32_t id = 1;
    for (VLetter l : letters) {
        t.components.push_back(id);
        t.word[id] = l;
        ++id;
    }
    return TensorSum{t};
}

}  // namespace

TEST_CASE("example filling files: identity, model, corrupted") {
    LasagnaFilling ident = filling_from_file(data_dir() + "/fillings/identity_unknot.json");
    CHECK(validate(ident).ok());
    CHECK(maslov(ident) == 1);  // chi_w = 1 strip, input M = 0
    CHECK(alexander_doubled(ident) == 0);
    CHECK(b4_evaluate(ident) == *ident.inputs[0].tensor);

    LasagnaFilling model = filling_from_file(data_dir() + "/fillings/model_k11.json");
    CHECK(validate(model).ok());
    CHECK(maslov(model) == 1);  // M(B) = -1 shifted by k = 2
    CHECK(model.homology_class == std::vector<int>{0});

    LasagnaFilling bad = filling_from_file(data_dir() + "/fillings/corrupt_wz.json");
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("filling JSON round-trip") {
    LasagnaFilling model = filling_from_file(data_dir() + "/fillings/model_k11.json");
    LasagnaFilling redo = filling_from_json(filling_to_json(model));
    CHECK(maslov(redo) == maslov(model));
    CHECK(alexander_doubled(redo) == alexander_doubled(model));
    CHECK(redo.homology_class == model.homology_class);
    CHECK(filling_to_json(redo) == filling_to_json(model));
}

TEST_CASE("model_filling: gradings realize the cable-level shift, k <= 8") {
    for (uint32_t kp = 0; kp <= 4; ++kp)
        for (uint32_t km = 0; km + kp <= 8 && km <= 4; ++km) {
            if (kp + km == 0) {
                LasagnaFilling f = model_filling(0, 0, unlink_word({}));
                CHECK(maslov(f) == 0);  // empty surface: M(f) = M(v)
                continue;
            }
            // the all-B word at the level: M = -(k-1)
            std::vector<VLetter> ls(kp + km - 1, VLetter::B);
            TensorSum v = unlink_word({});
            {
                ReducedTensor t;
                t.components = {0};
                t.marked = 0;
                for (uint32_t i = 1; i < kp + km; ++i) {
                    t.components.push_back(i);
                    t.word[i] = VLetter::B;
                }
                v = TensorSum{t};
            }
            LasagnaFilling f = model_filling(kp, km, v);
            CHECK(validate(f).ok());
            CHECK(maslov(f) == -static_cast<int>(kp + km - 1) + static_cast<int>(kp + km));
            CHECK(alexander_doubled(f) == 0);  // half-disks contribute chi_w = chi_z
            CHECK(f.homology_class ==
                  std::vector<int>{static_cast<int>(kp) - static_cast<int>(km)});
        }
}

TEST_CASE("validate rejects corrupted fillings") {
    LasagnaFilling f = filling_from_file(data_dir() + "/fillings/identity_unknot.json");

    LasagnaFilling unbalanced = f;
    unbalanced.surface.boundaries[0].w_count = 2;  // alternation broken
    CHECK_FALSE(validate(unbalanced).ok());

    LasagnaFilling dangling = f;
    dangling.surface.arcs[0].end_a = "nowhere";
    CHECK_FALSE(validate(dangling).ok());

    LasagnaFilling missing_arc = f;
    missing_arc.surface.arcs.pop_back();
    CHECK_FALSE(validate(missing_arc).ok());

    LasagnaFilling bad_side = f;
    bad_side.surface.boundaries[0].side = 3;
    CHECK_FALSE(validate(bad_side).ok());

    LasagnaFilling no_input_label = f;
    no_input_label.inputs[0].tensor.reset();
    CHECK_FALSE(validate(no_input_label).ok());
}

TEST_CASE("closed dividing circles are accepted and glue with no chi correction") {
    LasagnaFilling f = filling_from_file(data_dir() + "/fillings/identity_unknot.json");
    int chi_before = f.surface.chi_total();
    f.surface.arcs.push_back(DividingArc{"cc", true, "", ""});
    auto rep = validate(f);
    CHECK(rep.ok());
    CHECK(!rep.notes.empty());
    CHECK(f.surface.chi_total() == chi_before);
}

TEST_CASE("maslov/alexander formulas on labelled inputs") {
    LasagnaFilling f = filling_from_file(data_dir() + "/fillings/identity_unknot.json");
    f.inputs[0].tensor.reset();
    f.inputs[0].label = {{3, 2}};  // M = 3, A = 1
    CHECK(maslov(f) == 4);
    CHECK(alexander_doubled(f) == 2);
}

TEST_CASE("inhomogeneous tensor input is rejected") {
    TensorSum mixed = unlink_word({VLetter::T});
    mixed += unlink_word({VLetter::B});
    LasagnaFilling f = model_filling(2, 0, mixed);
    CHECK_THROWS_AS(maslov(f), InhomogeneousInput);
}

TEST_CASE("equivalence moves leave gradings and class unchanged") {
    LasagnaFilling f = filling_from_file(data_dir() + "/fillings/model_k11.json");
    std::mt19937 rng(env_seed());
    for (int t = 0; t < 200; ++t) {
        floer::obstruction::CobordismGradingData move;
        move.w1_count = 2;  // the two cable circles carry one w each
        move.w2_count = 1 + rng() % 6;
        move.chi_w = static_cast<int>(rng() % 9) - 4;
        move.chi_z = static_cast<int>(rng() % 9) - 4;
        AuditResult r = equivalence_move_audit(f, move);
        CHECK(r.maslov_before == r.maslov_after);
        CHECK(r.alexander_before_doubled == r.alexander_after_doubled);
        CHECK(f.homology_class == std::vector<int>{0});  // absorption never touches the class
    }
    floer::obstruction::CobordismGradingData wrong;
    wrong.w1_count = 5;
    CHECK_THROWS(equivalence_move_audit(f, wrong));
}

TEST_CASE("b4_evaluate: identity, closed-disk vanishing, collar composites") {
    // identity on a 3-component unlink word
    TensorSum v = unlink_word({VLetter::T, VLetter::B});
    LasagnaFilling ident = identity_filling({0, 1, 2}, 0, v);
    CHECK(validate(ident).ok());
    CHECK(b4_evaluate(ident) == v);

    // closed w disk forces zero
    LasagnaFilling closed = ident;
    closed.surface.pieces.push_back(SurfacePiece{PieceKind::W, 1, {}});
    CHECK(b4_evaluate(closed).is_zero());

    // S+ then S- collar: the closed-disk composite, zero by the
    // quasi-stabilization algebra
    LasagnaFilling ss = ident;
    ss.collar.push_back(CollarOp{CollarOp::Kind::SPlus, 1, 0, 0});
    ss.collar.push_back(CollarOp{CollarOp::Kind::SMinus, 1, 0, 0});
    CHECK(b4_evaluate(ss).is_zero());

    // T- after S+ cancels
    LasagnaFilling ts = ident;
    ts.collar.push_back(CollarOp{CollarOp::Kind::SPlus, 1, 0, 0});
    ts.collar.push_back(CollarOp{CollarOp::Kind::TMinus, 1, 0, 0});
    CHECK(b4_evaluate(ts) == v);

    // twists act trivially on unlink inputs
    LasagnaFilling tw = ident;
    tw.collar.push_back(CollarOp{CollarOp::Kind::Twist, 1, 0, 3});
    CHECK(b4_evaluate(tw) == v);

    // handles block evaluation
    LasagnaFilling handled = ident;
    handled.homology_class = {1};
    CHECK_THROWS_AS(b4_evaluate(handled), NotComputable);

    // non-tensor input blocks evaluation
    LasagnaFilling labelled = ident;
    labelled.inputs[0].tensor.reset();
    labelled.inputs[0].label = {{0, 0}};
    CHECK_THROWS_AS(b4_evaluate(labelled), NotComputable);
}
