#include "floer/laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace floer::laurent {

LaurentMV LaurentMV::constant(uint32_t arity, int64_t c) {
    return monomial(arity, std::vector<int>(arity, 0), c);
}

LaurentMV LaurentMV::monomial(uint32_t arity, std::vector<int> exps_doubled, int64_t c) {
    if (exps_doubled.size() != arity)
        throw std::invalid_argument("LaurentMV::monomial: arity mismatch");
    LaurentMV p(arity);
    if (c != 0) p.terms_[std::move(exps_doubled)] = c;
    return p;
}

LaurentMV LaurentMV::half_binomial(uint32_t arity, uint32_t var) {
    if (var >= arity) throw std::invalid_argument("half_binomial: bad variable");
    std::vector<int> e(arity, 0);
    e[var] = 1;
    LaurentMV p = monomial(arity, e, 1);
    e[var] = -1;
    p += monomial(arity, e, -1);
    return p;
}

int64_t LaurentMV::coeff(const std::vector<int>& exps_doubled) const {
    auto it = terms_.find(exps_doubled);
    return it == terms_.end() ? 0 : it->second;
}

void LaurentMV::set(const std::vector<int>& e, int64_t c) {
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

LaurentMV& LaurentMV::operator+=(const LaurentMV& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("LaurentMV: arity mismatch");
    for (const auto& [e, c] : o.terms_) set(e, coeff(e) + c);
    return *this;
}

LaurentMV& LaurentMV::operator-=(const LaurentMV& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("LaurentMV: arity mismatch");
    for (const auto& [e, c] : o.terms_) set(e, coeff(e) - c);
    return *this;
}

LaurentMV LaurentMV::operator-() const {
    LaurentMV out(arity_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

LaurentMV LaurentMV::operator*(const LaurentMV& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("LaurentMV: arity mismatch");
    LaurentMV out(arity_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e(arity_);
            for (uint32_t i = 0; i < arity_; ++i) e[i] = e1[i] + e2[i];
            out.set(e, out.coeff(e) + c1 * c2);
        }
    }
    return out;
}

bool LaurentMV::equals_up_to_sign(const LaurentMV& o) const {
    return *this == o || *this == -o;
}

LaurentMV LaurentMV::divide_half_binomial(uint32_t var) const {
    if (var >= arity_) throw std::invalid_argument("divide_half_binomial: bad variable");
    // greedy division from the top exponent in x_var; term order: exponent
    // vector with slot `var` moved first so leading terms are x_var-leading
    auto key = [&](const std::vector<int>& e) {
        std::vector<int> k;
        k.reserve(e.size());
        k.push_back(e[var]);
        for (uint32_t i = 0; i < arity_; ++i)
            if (i != var) k.push_back(e[i]);
        return k;
    };
    std::map<std::vector<int>, std::pair<std::vector<int>, int64_t>> work;  // key -> (exps, coeff)
    int min_var = 0;
    for (const auto& [e, c] : terms_) {
        work[key(e)] = {e, c};
        min_var = std::min(min_var, e[var]);
    }
    LaurentMV quot(arity_);
    while (!work.empty()) {
        auto it = std::prev(work.end());
        auto [e, c] = it->second;
        work.erase(it);
        if (c == 0) continue;
        if (e[var] < min_var) throw NotDivisible("divide_half_binomial: remainder");
        // quotient term q: q * x_var^{1/2} = e
        std::vector<int> q = e;
        q[var] -= 1;
        quot.set(q, quot.coeff(q) + c);
        std::vector<int> low = q;
        low[var] -= 1;
        auto lk = key(low);
        auto wit = work.find(lk);
        int64_t cur = wit == work.end() ? 0 : wit->second.second;
        work[lk] = {low, cur + c};
    }
    // verify: quot * binomial == *this
    if (quot * half_binomial(arity_, var) != *this)
        throw NotDivisible("divide_half_binomial: remainder");
    return quot;
}

uint64_t LaurentMV::abs_coeff_sum() const {
    uint64_t s = 0;
    for (const auto& [e, c] : terms_) s += static_cast<uint64_t>(std::llabs(c));
    return s;
}

std::string LaurentMV::to_json() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << ',';
        first = false;
        os << "\"(";
        for (size_t i = 0; i < e.size(); ++i) {
            if (i) os << ',';
            os << e[i];
        }
        os << ")\":" << c;
    }
    os << '}';
    return os.str();
}

}  // namespace floer::laurent
