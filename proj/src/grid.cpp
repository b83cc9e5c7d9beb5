#include "floer/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace floer::grid {

namespace {

bool is_permutation(const std::vector<uint32_t>& p) {
    std::vector<bool> seen(p.size(), false);
    for (uint32_t v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

// Planar point set bookkeeping for the J-function. All coordinates are
// doubled: state points sit at even coordinates (2c, 2r), markers at odd
// ones (2c+1, 2r+1), so "strictly southwest" needs no fractions.
using Pts = std::vector<std::pair<int, int>>;

int64_t count_sw(const Pts& P, const Pts& Q) {
    int64_t t = 0;
    for (const auto& p : P)
        for (const auto& q : Q)
            if (p.first < q.first && p.second < q.second) ++t;
    return t;
}

// doubled J: I(P,Q) + I(Q,P)
int64_t J2(const Pts& P, const Pts& Q) { return count_sw(P, Q) + count_sw(Q, P); }

Pts state_points(const GridState& s) {
    Pts pts;
    pts.reserve(s.perm.size());
    for (uint32_t c = 0; c < s.perm.size(); ++c) pts.push_back({2 * (int)c, 2 * (int)s.perm[c]});
    return pts;
}

Pts marker_points(const std::vector<uint32_t>& cols) {
    Pts pts;
    pts.reserve(cols.size());
    for (uint32_t r = 0; r < cols.size(); ++r) pts.push_back({2 * (int)cols[r] + 1, 2 * (int)r + 1});
    return pts;
}

}  // namespace

GridDiagram::GridDiagram(std::vector<uint32_t> o_perm, std::vector<uint32_t> x_perm)
    : n_(static_cast<uint32_t>(o_perm.size())), o_(std::move(o_perm)), x_(std::move(x_perm)) {
    if (x_.size() != n_ || n_ == 0) throw MalformedFile("grid: O and X must have equal size n >= 1");
    if (!is_permutation(o_)) throw NotAPermutation("grid: O is not a permutation");
    if (!is_permutation(x_)) throw NotAPermutation("grid: X is not a permutation");
    if (n_ >= 2)
        for (uint32_t i = 0; i < n_; ++i)
            if (o_[i] == x_[i]) throw MarkerCollision("grid: O and X share a cell in row " + std::to_string(i));

    // trace components: the X in row r sits in column x_[r]; the O in that
    // column belongs to the next row of the same component
    std::vector<uint32_t> o_row_of_col(n_);
    for (uint32_t r = 0; r < n_; ++r) o_row_of_col[o_[r]] = r;
    comp_of_row_.assign(n_, UINT32_MAX);
    ncomp_ = 0;
    for (uint32_t start = 0; start < n_; ++start) {
        if (comp_of_row_[start] != UINT32_MAX) continue;
        uint32_t r = start;
        while (comp_of_row_[r] == UINT32_MAX) {
            comp_of_row_[r] = ncomp_;
            r = o_row_of_col[x_[r]];
        }
        ++ncomp_;
    }
    pairs_.assign(ncomp_, 0);
    for (uint32_t r = 0; r < n_; ++r) ++pairs_[comp_of_row_[r]];
}

int GridDiagram::linking_number(uint32_t comp_a, uint32_t comp_b) const {
    if (comp_a == comp_b || comp_a >= ncomp_ || comp_b >= ncomp_)
        throw std::invalid_argument("linking_number: bad component pair");
    // horizontal segments run O -> X inside their row, vertical X -> O
    // inside their column, verticals in front. lk = half the signed count.
    std::vector<uint32_t> x_row_of_col(n_), o_row_of_col(n_);
    for (uint32_t r = 0; r < n_; ++r) {
        x_row_of_col[x_[r]] = r;
        o_row_of_col[o_[r]] = r;
    }
    int total = 0;
    for (uint32_t c = 0; c < n_; ++c) {  // vertical segment in column c
        uint32_t r_from = x_row_of_col[c], r_to = o_row_of_col[c];
        uint32_t vcomp = comp_of_row_[r_from];
        if (vcomp != comp_a && vcomp != comp_b) continue;
        int dirv = r_to > r_from ? 1 : -1;
        uint32_t rlo = std::min(r_from, r_to), rhi = std::max(r_from, r_to);
        for (uint32_t r = 0; r < n_; ++r) {  // horizontal segment in row r
            uint32_t hcomp = comp_of_row_[r];
            if (hcomp == vcomp || (hcomp != comp_a && hcomp != comp_b)) continue;
            uint32_t c_from = o_[r], c_to = x_[r];
            int dirh = c_to > c_from ? 1 : -1;
            uint32_t clo = std::min(c_from, c_to), chi = std::max(c_from, c_to);
            if (clo < c && c < chi && rlo < r && r < rhi) total += -dirv * dirh;
        }
    }
    assert(total % 2 == 0);
    return total / 2;
}

GridDiagram parse_grid(std::istream& in) {
    auto next_line = [&](const char* what) {
        std::string line;
        if (!std::getline(in, line)) throw MalformedFile(std::string("grid file: missing ") + what);
        return line;
    };
    auto parse_header = [](const std::string& line, const std::string& tag) {
        std::istringstream ls(line);
        std::string t;
        ls >> t;
        if (t != tag) throw MalformedFile(std::string("grid file: expected '") + tag + "' line, got: " + line);
        return ls;
    };

    std::istringstream l1 = parse_header(next_line("size line"), "n");
    long long n = -1;
    if (!(l1 >> n) || n < 1 || n > 64) throw MalformedFile("grid file: bad size");
    std::string trailing;
    if (l1 >> trailing) throw MalformedFile("grid file: trailing garbage on size line");

    auto read_perm = [&](const std::string& tag) {
        std::istringstream ls = parse_header(next_line(tag.c_str()), tag);
        std::vector<uint32_t> p;
        long long v;
        while (ls >> v) {
            if (v < 0 || v >= n) throw MalformedFile("grid file: " + tag + " entry out of range");
            p.push_back(static_cast<uint32_t>(v));
        }
        if (!ls.eof()) throw MalformedFile("grid file: non-numeric entry in " + tag + " line");
        if ((long long)p.size() != n) throw MalformedFile("grid file: " + tag + " needs n entries");
        return p;
    };
    std::vector<uint32_t> o = read_perm("O");
    std::vector<uint32_t> x = read_perm("X");

    GridDiagram g(std::move(o), std::move(x));

    std::string line;
    if (std::getline(in, line) && !line.empty()) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "components") throw MalformedFile("grid file: unexpected line: " + line);
        std::vector<std::string> labels;
        std::string lab;
        while (ls >> lab) labels.push_back(lab);
        if (labels.size() != g.size()) throw MalformedFile("grid file: components needs n labels");
        // labels must be constant on traced components and distinct across them
        std::map<uint32_t, std::string> by_comp;
        for (uint32_t r = 0; r < g.size(); ++r) {
            auto [it, fresh] = by_comp.emplace(g.component_of_row(r), labels[r]);
            if (!fresh && it->second != labels[r])
                throw MalformedFile("grid file: component labels disagree with traced link");
        }
        std::vector<std::string> vals;
        for (auto& [c, s] : by_comp) vals.push_back(s);
        std::sort(vals.begin(), vals.end());
        if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
            throw MalformedFile("grid file: duplicate component label across components");
    }
    while (std::getline(in, line))
        if (!line.empty()) throw MalformedFile("grid file: trailing garbage: " + line);
    return g;
}

GridDiagram parse_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("grid file: cannot open " + path);
    return parse_grid(in);
}

int maslov_grading(const GridDiagram& g, const GridState& s) {
    // M(x) = J(x - O, x - O) + 1, normalized so the unknot generator sits
    // in Maslov grading 0
    Pts xs = state_points(s);
    Pts O = marker_points(g.o());
    int64_t m2 = J2(xs, xs) - 2 * J2(xs, O) + J2(O, O) + 2;
    assert(m2 % 2 == 0);
    return static_cast<int>(m2 / 2);
}

std::vector<int> alexander_grading(const GridDiagram& g, const GridState& s) {
    // A_i(x) = J(x - (O+X)/2, X_i - O_i); the absence of the usual
    // -(n_i-1)/2 shift is what makes extra basepoint factors symmetric
    Pts xs = state_points(s);
    Pts O = marker_points(g.o());
    Pts X = marker_points(g.x());
    std::vector<int> out;
    out.reserve(g.components());
    for (uint32_t c = 0; c < g.components(); ++c) {
        Pts Oc, Xc;
        for (uint32_t r = 0; r < g.size(); ++r) {
            if (g.component_of_row(r) != c) continue;
            Oc.push_back({2 * (int)g.o()[r] + 1, 2 * (int)r + 1});
            Xc.push_back({2 * (int)g.x()[r] + 1, 2 * (int)r + 1});
        }
        // doubled A = J2(x,Xc) - J2(x,Oc) - (J2(O,Xc) - J2(O,Oc) + J2(X,Xc) - J2(X,Oc)) / 2
        int64_t num = 2 * (J2(xs, Xc) - J2(xs, Oc)) -
                      (J2(O, Xc) - J2(O, Oc) + J2(X, Xc) - J2(X, Oc));
        assert(num % 2 == 0);
        out.push_back(static_cast<int>(num / 2));
    }
    return out;
}

bool differential_coefficient(const GridDiagram& g, const GridState& s, const GridState& t) {
    const uint32_t n = g.size();
    if (s.perm.size() != n || t.perm.size() != n)
        throw std::invalid_argument("differential_coefficient: state size mismatch");
    uint32_t c1 = UINT32_MAX, c2 = UINT32_MAX;
    for (uint32_t c = 0; c < n; ++c) {
        if (s.perm[c] == t.perm[c]) continue;
        if (c1 == UINT32_MAX)
            c1 = c;
        else if (c2 == UINT32_MAX)
            c2 = c;
        else
            return false;
    }
    if (c2 == UINT32_MAX) return false;
    if (s.perm[c1] != t.perm[c2] || s.perm[c2] != t.perm[c1]) return false;

    unsigned count = 0;
    // the two torus rectangles with SW/NE corners at points of s
    for (auto [a, b] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
        uint32_t x0 = a, y0 = s.perm[a], x1 = b, y1 = s.perm[b];
        auto strictly_inside = [&](uint32_t v, uint32_t lo, uint32_t hi) {
            uint32_t d = (v + n - lo) % n, top = (hi + n - lo) % n;
            return d > 0 && d < top;
        };
        bool empty = true;
        for (uint32_t c = 0; c < n && empty; ++c) {
            if (c == c1 || c == c2) continue;
            if (strictly_inside(c, x0, x1) && strictly_inside(s.perm[c], y0, y1)) empty = false;
        }
        // markers: O in row r occupies cell (o[r], r); cell (cc, rr) lies in
        // the rectangle iff cc in [x0,x1) and rr in [y0,y1) cyclically
        auto cell_inside = [&](uint32_t cc, uint32_t rr) {
            uint32_t dc = (cc + n - x0) % n, topc = (x1 + n - x0) % n;
            uint32_t dr = (rr + n - y0) % n, topr = (y1 + n - y0) % n;
            return dc < topc && dr < topr;
        };
        for (uint32_t r = 0; r < n && empty; ++r) {
            if (cell_inside(g.o()[r], r)) empty = false;
            if (cell_inside(g.x()[r], r)) empty = false;
        }
        if (empty) ++count;
    }
    return count % 2 == 1;
}

namespace {

struct Enumerated {
    // states grouped by Alexander vector, then by Maslov grading
    std::map<std::vector<int>, std::map<int, std::vector<GridState>>> blocks;
};

Enumerated enumerate_states(const GridDiagram& g) {
    Enumerated e;
    std::vector<uint32_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        GridState s{perm};
        e.blocks[alexander_grading(g, s)][maslov_grading(g, s)].push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return e;
}

f2::F2Matrix boundary_block(const GridDiagram& g, const std::vector<GridState>& sources,
                            const std::vector<GridState>& targets) {
    std::vector<f2::F2Vector> rows;
    rows.reserve(sources.size());
    for (const auto& s : sources) {
        f2::F2Vector row;
        for (uint32_t j = 0; j < targets.size(); ++j)
            if (differential_coefficient(g, s, targets[j])) row.flip(j);
        rows.push_back(std::move(row));
    }
    return f2::F2Matrix::from_rows(static_cast<uint32_t>(targets.size()), std::move(rows));
}

}  // namespace

std::vector<GradedBlockMatrix> tilde_differential(const GridDiagram& g) {
    Enumerated e = enumerate_states(g);
    std::vector<GradedBlockMatrix> out;
    for (auto& [alex, by_m] : e.blocks) {
        for (auto& [m, sources] : by_m) {
            static const std::vector<GridState> kEmpty;
            auto tit = by_m.find(m - 1);
            const auto& targets = tit == by_m.end() ? kEmpty : tit->second;
            GradedBlockMatrix blk;
            blk.source_grading = graded::MultiGrading(m, alex);
            blk.matrix = boundary_block(g, sources, targets);
            out.push_back(std::move(blk));
        }
    }

    // grading audit: any rectangle count between states off the (m, m-1)
    // diagonal of the same Alexander block must vanish
    for (const auto& [alex, by_m] : e.blocks)
        for (const auto& [m1, ss] : by_m)
            for (const auto& [m2, tt] : by_m) {
                if (m2 == m1 - 1) continue;
                for (const auto& s : ss)
                    for (const auto& t : tt)
                        if (differential_coefficient(g, s, t))
                            throw GridError("tilde_differential: rectangle does not drop Maslov by 1");
            }

    // d^2 = 0 per block pair
    for (const auto& [alex, by_m] : e.blocks) {
        for (const auto& [m, sources] : by_m) {
            auto t1 = by_m.find(m - 1);
            auto t2 = by_m.find(m - 2);
            if (t1 == by_m.end() || t2 == by_m.end()) continue;
            const auto& mid = t1->second;
            const auto& tgt = t2->second;
            for (const auto& s : sources) {
                std::vector<unsigned> acc(tgt.size(), 0);
                for (const auto& y : mid) {
                    if (!differential_coefficient(g, s, y)) continue;
                    for (uint32_t j = 0; j < tgt.size(); ++j)
                        if (differential_coefficient(g, y, tgt[j])) acc[j] ^= 1;
                }
                for (unsigned v : acc)
                    if (v) throw GridError("tilde_differential: d^2 != 0");
            }
        }
    }
    return out;
}

graded::GradedModule homology(const GridDiagram& g, unsigned jobs) {
    Enumerated e = enumerate_states(g);

    struct BlockResult {
        std::vector<int> alex;
        std::map<int, uint32_t> dims;  // maslov -> homology dim
    };
    auto process = [&](const std::pair<const std::vector<int>, std::map<int, std::vector<GridState>>>&
                           block) {
        const auto& [alex, by_m] = block;
        std::map<int, uint32_t> rank_from;  // rank of boundary leaving grading m
        for (const auto& [m, sources] : by_m) {
            auto tit = by_m.find(m - 1);
            if (tit == by_m.end()) {
                rank_from[m] = 0;
                continue;
            }
            rank_from[m] = f2::rank(boundary_block(g, sources, tit->second));
        }
        BlockResult res;
        res.alex = alex;
        for (const auto& [m, sources] : by_m) {
            uint32_t rk_out = rank_from.at(m);
            auto up = rank_from.find(m + 1);
            uint32_t rk_in = up == rank_from.end() ? 0 : up->second;
            // d^2 = 0 forces im to sit inside ker, so this never underflows
            if (sources.size() < rk_out + rk_in)
                throw GridError("homology: rank overflow, the differential does not square to zero");
            uint32_t d = static_cast<uint32_t>(sources.size()) - rk_out - rk_in;
            if (d) res.dims[m] = d;
        }
        return res;
    };

    std::vector<const std::pair<const std::vector<int>, std::map<int, std::vector<GridState>>>*>
        block_ptrs;
    for (const auto& block : e.blocks) block_ptrs.push_back(&block);
    std::vector<BlockResult> results(block_ptrs.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < block_ptrs.size(); ++i) results[i] = process(*block_ptrs[i]);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (size_t i = next.fetch_add(1); i < block_ptrs.size(); i = next.fetch_add(1))
                results[i] = process(*block_ptrs[i]);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    graded::DimTable dims;
    for (const auto& r : results)
        for (const auto& [m, d] : r.dims) dims[graded::MultiGrading(m, r.alex)] = d;
    return graded::GradedModule::from_dims(g.components(), dims);
}

graded::GradedModule extract_hfl(const graded::GradedModule& grid_homology, const GridDiagram& g,
                                 const std::vector<uint32_t>& keep_extra) {
    graded::GradedModule cur = grid_homology;
    for (uint32_t c = 0; c < g.components(); ++c) {
        uint32_t keep = c < keep_extra.size() ? keep_extra[c] : 0;
        uint32_t extra = g.pairs_on(c) - 1;
        if (keep > extra)
            throw std::invalid_argument("extract_hfl: keep_extra exceeds available factors");
        std::vector<int> a_top(g.components(), 0), a_bot(g.components(), 0);
        a_top[c] = 1;   // theta: A = +1/2 on slot c
        a_bot[c] = -1;  // xi: M -1, A = -1/2
        cur = graded::factor_out(
            cur, {graded::MultiGrading(0, a_top), graded::MultiGrading(-1, a_bot)}, extra - keep);
    }
    return cur;
}

graded::GradedModule extract_hfl(const GridDiagram& g, unsigned jobs,
                                 const std::vector<uint32_t>& keep_extra) {
    return extract_hfl(homology(g, jobs), g, keep_extra);
}

laurent::LaurentMV euler_characteristic(const GridDiagram& g) {
    laurent::LaurentMV chi(g.components());
    std::vector<uint32_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        GridState s{perm};
        int m = maslov_grading(g, s);
        chi += laurent::LaurentMV::monomial(g.components(), alexander_grading(g, s),
                                            m % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return chi;
}

laurent::LaurentMV expected_euler(const GridDiagram& g, const laurent::LaurentMV& delta) {
    if (delta.arity() != g.components())
        throw std::invalid_argument("expected_euler: arity mismatch");
    laurent::LaurentMV out = delta;
    for (uint32_t c = 0; c < g.components(); ++c) {
        uint32_t e = g.pairs_on(c) - 1 + (g.components() >= 2 ? 1 : 0);
        for (uint32_t k = 0; k < e; ++k)
            out = out * laurent::LaurentMV::half_binomial(g.components(), c);
    }
    return out;
}

}  // namespace floer::grid
