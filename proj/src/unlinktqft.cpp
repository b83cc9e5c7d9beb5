#include "floer/unlinktqft.hpp"

#include <algorithm>
#include <sstream>

namespace floer::unlinktqft {

void ReducedTensor::check() const {
    if (std::find(components.begin(), components.end(), marked) == components.end())
        throw TqftError("tensor: marked component not in component list");
    for (uint32_t c : components) {
        bool has = word.count(c) > 0;
        if (c == marked && has) throw TqftError("tensor: marked component carries a V letter");
        if (c != marked && !has) throw TqftError("tensor: missing V letter on component");
    }
    if (word.size() != components.size() - 1) throw TqftError("tensor: stray V letter");
    for (const auto& [c, st] : extra) {
        if (std::find(components.begin(), components.end(), c) == components.end())
            throw TqftError("tensor: extra pair on unknown component");
        if (st.empty()) throw TqftError("tensor: empty extra stack stored");
    }
}

ReducedTensor top_generator(const std::vector<uint32_t>& components, uint32_t marked) {
    ReducedTensor t;
    t.components = components;
    t.marked = marked;
    for (uint32_t c : components)
        if (c != marked) t.word[c] = VLetter::T;
    t.check();
    return t;
}

int maslov(const ReducedTensor& t) {
    int m = 0;
    for (const auto& [c, l] : t.word)
        if (l == VLetter::B) --m;
    for (const auto& [c, st] : t.extra)
        for (WLetter w : st)
            if (w == WLetter::Xi) --m;
    return m;
}

std::vector<int> alexander(const ReducedTensor& t, uint32_t arity,
                           const std::map<uint32_t, uint32_t>& slot_of_component) {
    std::vector<int> a(arity, 0);
    for (const auto& [c, st] : t.extra) {
        uint32_t slot = slot_of_component.at(c);
        if (slot >= arity) throw TqftError("alexander: slot out of range");
        for (WLetter w : st) a[slot] += (w == WLetter::Theta ? 1 : -1);
    }
    return a;
}

void TensorSum::toggle(ReducedTensor t) {
    auto it = terms_.find(t);
    if (it != terms_.end())
        terms_.erase(it);
    else
        terms_.insert(std::move(t));
}

TensorSum& TensorSum::operator+=(const TensorSum& o) {
    for (const auto& t : o.terms_) toggle(t);
    return *this;
}

namespace {

bool has_component(const ReducedTensor& t, uint32_t c) {
    return std::find(t.components.begin(), t.components.end(), c) != t.components.end();
}

void erase_component(ReducedTensor& t, uint32_t c) {
    t.components.erase(std::find(t.components.begin(), t.components.end(), c));
    t.word.erase(c);
    t.extra.erase(c);
}

template <typename Fn>
TensorSum apply(const TensorSum& x, Fn&& per_term) {
    TensorSum out;
    for (const auto& t : x.terms()) out += per_term(t);
    return out;
}

}  // namespace

TensorSum birth(const TensorSum& x, uint32_t new_component) {
    return apply(x, [&](const ReducedTensor& t) {
        if (has_component(t, new_component)) throw TqftError("birth: component id already present");
        ReducedTensor u = t;
        u.components.push_back(new_component);
        u.word[new_component] = VLetter::T;
        return TensorSum(std::move(u));
    });
}

TensorSum death(const TensorSum& x, uint32_t component) {
    return apply(x, [&](const ReducedTensor& t) -> TensorSum {
        if (!has_component(t, component)) throw TqftError("death: no such component");
        if (component == t.marked) throw TqftError("death: cannot cap the marked component");
        if (t.extra.count(component)) throw TqftError("death: component still carries extra pairs");
        if (t.word.at(component) == VLetter::T) return {};
        ReducedTensor u = t;
        erase_component(u, component);
        return TensorSum(std::move(u));
    });
}

TensorSum merge(const TensorSum& x, uint32_t a, uint32_t b) {
    if (a == b) throw TqftError("merge: components must differ");
    return apply(x, [&](const ReducedTensor& t) -> TensorSum {
        if (!has_component(t, a) || !has_component(t, b)) throw TqftError("merge: no such component");
        if (t.extra.count(b)) throw TqftError("merge: merged-away component carries extra pairs");
        if (b == t.marked) throw TqftError("merge: the marked component must be the surviving one");
        VLetter lb = t.word.at(b);
        if (a == t.marked) {
            // X-reduced subspace: T acts as the unit, B as X with X.X = 0
            if (lb == VLetter::B) return {};
            ReducedTensor u = t;
            erase_component(u, b);
            return TensorSum(std::move(u));
        }
        VLetter la = t.word.at(a);
        if (la == VLetter::B && lb == VLetter::B) return {};  // X^2 = 0
        ReducedTensor u = t;
        erase_component(u, b);
        u.word[a] = (la == VLetter::B || lb == VLetter::B) ? VLetter::B : VLetter::T;
        return TensorSum(std::move(u));
    });
}

TensorSum split(const TensorSum& x, uint32_t a, uint32_t fresh) {
    return apply(x, [&](const ReducedTensor& t) -> TensorSum {
        if (!has_component(t, a)) throw TqftError("split: no such component");
        if (has_component(t, fresh)) throw TqftError("split: output id already present");
        ReducedTensor u = t;
        u.components.push_back(fresh);
        if (a == t.marked) {
            u.word[fresh] = VLetter::B;
            return TensorSum(std::move(u));
        }
        if (t.word.at(a) == VLetter::B) {  // Delta(X) = X (x) X
            u.word[a] = VLetter::B;
            u.word[fresh] = VLetter::B;
            return TensorSum(std::move(u));
        }
        // Delta(1) = 1 (x) X + X (x) 1
        TensorSum out;
        u.word[a] = VLetter::T;
        u.word[fresh] = VLetter::B;
        out.toggle(u);
        u.word[a] = VLetter::B;
        u.word[fresh] = VLetter::T;
        out.toggle(u);
        return out;
    });
}

TensorSum braid_action(const TensorSum& x, uint32_t strand_a, uint32_t strand_b,
                       const TqftOptions& opts) {
    if (strand_a == strand_b) throw TqftError("braid_action: strands must differ");
    return apply(x, [&](const ReducedTensor& t) -> TensorSum {
        if (!has_component(t, strand_a) || !has_component(t, strand_b))
            throw TqftError("braid_action: no such strand");
        if (strand_a == t.marked || strand_b == t.marked) {
            if (opts.marked_braid == MarkedBraid::Zero) return {};
            return TensorSum(t);
        }
        ReducedTensor u = t;
        std::swap(u.word.at(strand_a), u.word.at(strand_b));
        return TensorSum(std::move(u));
    });
}

TensorSum basepoint_move(const TensorSum& x, uint32_t component, int /*twists*/) {
    return apply(x, [&](const ReducedTensor& t) -> TensorSum {
        if (!has_component(t, component)) throw TqftError("basepoint_move: no such component");
        return TensorSum(t);
    });
}

TensorSum quasi_stab(const TensorSum& x, QuasiStab kind, uint32_t component) {
    return apply(x, [&](const ReducedTensor& t) -> TensorSum {
        if (!has_component(t, component)) throw TqftError("quasi_stab: no such component");
        ReducedTensor u = t;
        switch (kind) {
            case QuasiStab::SPlus:
                u.extra[component].push_back(WLetter::Theta);
                return TensorSum(std::move(u));
            case QuasiStab::TPlus:
                u.extra[component].push_back(WLetter::Xi);
                return TensorSum(std::move(u));
            case QuasiStab::SMinus:
            case QuasiStab::TMinus: {
                auto it = u.extra.find(component);
                if (it == u.extra.end())
                    throw TqftError("quasi_stab: destabilization needs an extra pair");
                WLetter top = it->second.back();
                bool survives = (kind == QuasiStab::SMinus) ? top == WLetter::Xi
                                                            : top == WLetter::Theta;
                if (!survives) return {};
                it->second.pop_back();
                if (it->second.empty()) u.extra.erase(it);
                return TensorSum(std::move(u));
            }
        }
        throw TqftError("quasi_stab: bad kind");
    });
}

graded::GradedModule tensor_space_module(const std::vector<uint32_t>& components, uint32_t marked,
                                         const std::map<uint32_t, uint32_t>& extra_pairs) {
    std::map<uint32_t, uint32_t> slot;
    for (uint32_t i = 0; i < components.size(); ++i) slot[components[i]] = i;
    uint32_t arity = static_cast<uint32_t>(components.size());

    std::vector<ReducedTensor> basis{top_generator(components, marked)};
    for (uint32_t c : components) {
        if (c != marked) {
            std::vector<ReducedTensor> next;
            for (auto t : basis) {
                t.word[c] = VLetter::T;
                next.push_back(t);
                t.word[c] = VLetter::B;
                next.push_back(t);
            }
            basis = std::move(next);
        }
        auto it = extra_pairs.find(c);
        uint32_t e = it == extra_pairs.end() ? 0 : it->second;
        for (uint32_t k = 0; k < e; ++k) {
            std::vector<ReducedTensor> next;
            for (auto t : basis) {
                t.extra[c].push_back(WLetter::Theta);
                next.push_back(t);
                t.extra[c].back() = WLetter::Xi;
                next.push_back(t);
            }
            basis = std::move(next);
        }
    }

    graded::GradedModule m(arity);
    for (const auto& t : basis)
        m.add_basis_element(to_string(t), graded::MultiGrading(maslov(t), alexander(t, arity, slot)));
    return m;
}

std::string to_string(const ReducedTensor& t) {
    std::ostringstream os;
    bool first = true;
    for (uint32_t c : t.components) {
        if (!first) os << '.';
        first = false;
        os << c << ':';
        if (c == t.marked)
            os << '*';
        else
            os << (t.word.at(c) == VLetter::T ? 'T' : 'B');
        auto it = t.extra.find(c);
        if (it != t.extra.end())
            for (WLetter w : it->second) os << (w == WLetter::Theta ? 't' : 'x');
    }
    return os.str();
}

std::string to_string(const TensorSum& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << to_string(t);
    }
    return os.str();
}

}  // namespace floer::unlinktqft
