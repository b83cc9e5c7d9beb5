#include "floer/graded.hpp"

#include <algorithm>
#include <sstream>

namespace floer::graded {

MultiGrading MultiGrading::operator+(const MultiGrading& o) const {
    if (alex.size() != o.alex.size())
        throw std::invalid_argument("MultiGrading: arity mismatch in addition");
    MultiGrading out(maslov + o.maslov, alex);
    for (size_t i = 0; i < alex.size(); ++i) out.alex[i] += o.alex[i];
    return out;
}

std::string MultiGrading::key() const {
    std::ostringstream os;
    os << '(' << maslov << ';';
    for (size_t i = 0; i < alex.size(); ++i) {
        if (i) os << ',';
        os << alex[i];
    }
    os << ')';
    return os.str();
}

GradedModule GradedModule::from_dims(uint32_t alex_arity, const DimTable& dims,
                                     const std::string& label_prefix) {
    GradedModule m(alex_arity);
    uint32_t count = 0;
    for (const auto& [g, d] : dims)
        for (uint32_t i = 0; i < d; ++i)
            m.add_basis_element(label_prefix + std::to_string(count++), g);
    return m;
}

void GradedModule::add_basis_element(std::string label, MultiGrading grading) {
    if (grading.alex.size() != alex_arity_)
        throw std::invalid_argument("GradedModule: grading arity mismatch");
    for (const auto& [l, g] : basis_)
        if (l == label) throw std::invalid_argument("GradedModule: duplicate label " + label);
    basis_.emplace_back(std::move(label), std::move(grading));
}

DimTable GradedModule::dims() const {
    DimTable out;
    for (const auto& [label, g] : basis_) out[g]++;
    return out;
}

uint32_t GradedModule::dim_at(const MultiGrading& g) const {
    uint32_t d = 0;
    for (const auto& [label, gg] : basis_)
        if (gg == g) ++d;
    return d;
}

bool GradedModule::same_dims(const GradedModule& other) const {
    return alex_arity_ == other.alex_arity_ && dims() == other.dims();
}

std::string GradedModule::dims_json() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [g, d] : dims()) {
        if (!first) os << ',';
        first = false;
        os << '"' << g.key() << "\":" << d;
    }
    os << '}';
    return os.str();
}

GradedModule tensor(const GradedModule& a, const GradedModule& b, TensorArity mode) {
    if (mode == TensorArity::Add && a.alex_arity() != b.alex_arity())
        throw std::invalid_argument("tensor: Add mode requires equal arity");
    uint32_t arity = mode == TensorArity::Add ? a.alex_arity() : a.alex_arity() + b.alex_arity();
    GradedModule out(arity);
    for (const auto& [la, ga] : a.basis()) {
        for (const auto& [lb, gb] : b.basis()) {
            MultiGrading g;
            g.maslov = ga.maslov + gb.maslov;
            if (mode == TensorArity::Add) {
                g.alex = ga.alex;
                for (size_t i = 0; i < g.alex.size(); ++i) g.alex[i] += gb.alex[i];
            } else {
                g.alex = ga.alex;
                g.alex.insert(g.alex.end(), gb.alex.begin(), gb.alex.end());
            }
            out.add_basis_element(la + "*" + lb, std::move(g));
        }
    }
    return out;
}

GradedModule shift(const GradedModule& a, int d_maslov, const std::vector<int>& d_alex_doubled) {
    if (d_alex_doubled.size() != a.alex_arity())
        throw std::invalid_argument("shift: arity mismatch");
    GradedModule out(a.alex_arity());
    for (const auto& [l, g] : a.basis()) {
        MultiGrading s = g;
        s.maslov += d_maslov;
        for (size_t i = 0; i < s.alex.size(); ++i) s.alex[i] += d_alex_doubled[i];
        out.add_basis_element(l, std::move(s));
    }
    return out;
}

GradedModule factor_out(const GradedModule& a,
                        const std::pair<MultiGrading, MultiGrading>& v_bidegrees,
                        uint32_t multiplicity) {
    if (multiplicity == 0) return a;
    MultiGrading top = v_bidegrees.first;
    MultiGrading bot = v_bidegrees.second;
    if (top.alex.size() != a.alex_arity() || bot.alex.size() != a.alex_arity())
        throw std::invalid_argument("factor_out: factor arity mismatch");
    if (top == bot) throw std::invalid_argument("factor_out: degenerate factor");
    if (bot > top) std::swap(top, bot);

    // one division step: greedy from the top grading; remainder must vanish
    auto divide_once = [&](const DimTable& dims) -> DimTable {
        std::map<MultiGrading, int64_t> work;
        for (const auto& [g, d] : dims) work[g] = d;
        DimTable quot;
        while (!work.empty()) {
            auto it = std::prev(work.end());
            while (it->second == 0) {
                work.erase(it);
                if (work.empty()) return quot;
                it = std::prev(work.end());
            }
            int64_t c = it->second;
            if (c < 0) throw NotDivisible("factor_out: negative coefficient at " + it->first.key());
            // quotient term q with q + top == leading grading
            MultiGrading q = it->first;
            q.maslov -= top.maslov;
            for (size_t i = 0; i < q.alex.size(); ++i) q.alex[i] -= top.alex[i];
            quot[q] += static_cast<uint32_t>(c);
            work[q + top] -= c;
            work[q + bot] -= c;
        }
        return quot;
    };

    DimTable dims = a.dims();
    for (uint32_t k = 0; k < multiplicity; ++k) dims = divide_once(dims);
    return GradedModule::from_dims(a.alex_arity(), dims, "q");
}

GradedModule collapse_alexander(const GradedModule& a,
                                const std::vector<std::vector<uint32_t>>& groups) {
    std::vector<bool> seen(a.alex_arity(), false);
    for (const auto& g : groups)
        for (uint32_t s : g) {
            if (s >= a.alex_arity() || seen[s])
                throw std::invalid_argument("collapse_alexander: groups must partition slots");
            seen[s] = true;
        }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("collapse_alexander: groups must cover all slots");

    GradedModule out(static_cast<uint32_t>(groups.size()));
    for (const auto& [l, g] : a.basis()) {
        MultiGrading c;
        c.maslov = g.maslov;
        c.alex.reserve(groups.size());
        for (const auto& grp : groups) {
            int sum = 0;
            for (uint32_t s : grp) sum += g.alex[s];
            c.alex.push_back(sum);
        }
        out.add_basis_element(l, std::move(c));
    }
    return out;
}

}  // namespace floer::graded
