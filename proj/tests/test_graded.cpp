#include "doctest.h"

#include <cstdlib>
#include <map>
#include <random>

#include "floer/graded.hpp"

using namespace floer::graded;

namespace {

GradedModule Vtb() {  // <T, B>: M(T)=0, M(B)=-1, A=0, arity 1
    GradedModule m(1);
    m.add_basis_element("T", MultiGrading(0, {0}));
    m.add_basis_element("B", MultiGrading(-1, {0}));
    return m;
}

GradedModule Wtx() {  // <theta, xi>: (0,+1/2), (-1,-1/2), arity 1
    GradedModule m(1);
    m.add_basis_element("theta", MultiGrading(0, {1}));
    m.add_basis_element("xi", MultiGrading(-1, {-1}));
    return m;
}

std::pair<MultiGrading, MultiGrading> w_factor(uint32_t arity, uint32_t slot) {
    std::vector<int> top(arity, 0), bot(arity, 0);
    top[slot] = 1;
    bot[slot] = -1;
    return {MultiGrading(0, top), MultiGrading(-1, bot)};
}

GradedModule random_module(std::mt19937& rng, uint32_t arity, uint32_t dim) {
    GradedModule m(arity);
    for (uint32_t i = 0; i < dim; ++i) {
        std::vector<int> a(arity);
        for (auto& s : a) s = static_cast<int>(rng() % 7) - 3;
        m.add_basis_element("r" + std::to_string(i),
                            MultiGrading(static_cast<int>(rng() % 9) - 4, a));
    }
    return m;
}

unsigned env_seed() {
    if (const char* s = std::getenv("FLOER_LASAGNA_SEED")) return std::atoi(s);
    return 1;
}

}  // namespace

TEST_CASE("tensor <T,B> (x) <theta,xi> reproduces the displayed L1' gradings") {
    GradedModule l1p = tensor(Vtb(), Wtx(), TensorArity::Concatenate);
    REQUIRE(l1p.dim() == 4);
    // (M; 2A1, 2A2): T.theta (0;0,1), T.xi (-1;0,-1), B.theta (-1;0,1), B.xi (-2;0,-1)
    CHECK(l1p.dim_at(MultiGrading(0, {0, 1})) == 1);
    CHECK(l1p.dim_at(MultiGrading(-1, {0, -1})) == 1);
    CHECK(l1p.dim_at(MultiGrading(-1, {0, 1})) == 1);
    CHECK(l1p.dim_at(MultiGrading(-2, {0, -1})) == 1);
}

TEST_CASE("tensor unit and dimension multiplicativity") {
    GradedModule unit(1);
    unit.add_basis_element("1", MultiGrading(0, {0}));
    CHECK(tensor(Vtb(), unit, TensorArity::Add).same_dims(Vtb()));

    std::mt19937 rng(env_seed());
    for (int t = 0; t < 20; ++t) {
        GradedModule a = random_module(rng, 2, 1 + rng() % 5);
        GradedModule b = random_module(rng, 2, 1 + rng() % 5);
        CHECK(tensor(a, b, TensorArity::Add).dim() == a.dim() * b.dim());
    }
    CHECK_THROWS(tensor(Vtb(), random_module(rng, 2, 2), TensorArity::Add));
}

TEST_CASE("tensor associativity on graded dimensions") {
    std::mt19937 rng(env_seed() + 1);
    for (int t = 0; t < 20; ++t) {
        GradedModule a = random_module(rng, 1, 1 + rng() % 4);
        GradedModule b = random_module(rng, 1, 1 + rng() % 4);
        GradedModule c = random_module(rng, 1, 1 + rng() % 4);
        auto left = tensor(tensor(a, b, TensorArity::Add), c, TensorArity::Add);
        auto right = tensor(a, tensor(b, c, TensorArity::Add), TensorArity::Add);
        CHECK(left.same_dims(right));
    }
}

TEST_CASE("shift translates every grading; shifts compose additively") {
    CHECK(shift(Vtb(), 0, {0}).same_dims(Vtb()));
    GradedModule v2 = shift(Vtb(), 2, {0});
    CHECK(v2.dim_at(MultiGrading(2, {0})) == 1);
    CHECK(v2.dim_at(MultiGrading(1, {0})) == 1);
    GradedModule once = shift(shift(Vtb(), 1, {2}), -3, {1});
    GradedModule direct = shift(Vtb(), -2, {3});
    CHECK(once.same_dims(direct));
}

TEST_CASE("factor_out inverts tensoring with the extra-basepoint factor") {
    GradedModule w = Wtx();
    GradedModule vw = tensor(w, w, TensorArity::Add);
    CHECK(factor_out(vw, w_factor(1, 0), 1).same_dims(w));
    CHECK(factor_out(vw, w_factor(1, 0), 0).same_dims(vw));

    // factoring <theta,xi> out of the 4-dim L1' module leaves <T,B>
    GradedModule l1p = tensor(Vtb(), Wtx(), TensorArity::Concatenate);
    GradedModule tb = factor_out(l1p, w_factor(2, 1), 1);
    CHECK(tb.dim() == 2);
    CHECK(tb.dim_at(MultiGrading(0, {0, 0})) == 1);
    CHECK(tb.dim_at(MultiGrading(-1, {0, 0})) == 1);

    CHECK_THROWS_AS(factor_out(Vtb(), w_factor(1, 0), 1), NotDivisible);
}

TEST_CASE("factor_out(tensor(a, V^k), V, k) has the dims of a") {
    std::mt19937 rng(env_seed() + 2);
    for (int t = 0; t < 25; ++t) {
        uint32_t arity = 1 + rng() % 2;
        GradedModule a = random_module(rng, arity, 1 + rng() % 4);
        uint32_t k = rng() % 4;
        uint32_t slot = rng() % arity;
        auto [top, bot] = w_factor(arity, slot);
        GradedModule f(arity);
        f.add_basis_element("t", top);
        f.add_basis_element("b", bot);
        GradedModule cur = a;
        for (uint32_t i = 0; i < k; ++i) cur = tensor(cur, f, TensorArity::Add);
        CHECK(factor_out(cur, {top, bot}, k).same_dims(a));
    }
}

TEST_CASE("collapse_alexander: partitions, totals, Maslov distribution") {
    GradedModule l1p = tensor(Vtb(), Wtx(), TensorArity::Concatenate);
    GradedModule same = collapse_alexander(l1p, {{0}, {1}});
    CHECK(same.same_dims(l1p));

    GradedModule tot = collapse_alexander(l1p, {{0, 1}});
    CHECK(tot.dim() == l1p.dim());
    std::map<int, uint32_t> before, after;
    for (const auto& [l, g] : l1p.basis()) before[g.maslov]++;
    for (const auto& [l, g] : tot.basis()) after[g.maslov]++;
    CHECK(before == after);

    CHECK_THROWS(collapse_alexander(l1p, {{0}}));
    CHECK_THROWS(collapse_alexander(l1p, {{0, 0}, {1}}));
}

TEST_CASE("canonical JSON serialization of graded dimensions") {
    CHECK(Vtb().dims_json() == "{\"(-1;0)\":1,\"(0;0)\":1}");
}
