#include "floer/lasagna.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace floer::lasagna {

using nlohmann::json;
using unlinktqft::QuasiStab;
using unlinktqft::TensorSum;

int DecoratedSurface::chi_w() const {
    int c = 0;
    for (const auto& p : pieces)
        if (p.kind == PieceKind::W) c += p.euler;
    return c;
}

int DecoratedSurface::chi_z() const {
    int c = 0;
    for (const auto& p : pieces)
        if (p.kind == PieceKind::Z) c += p.euler;
    return c;
}

int DecoratedSurface::chi_total() const {
    int c = 0;
    for (const auto& p : pieces) c += p.euler;
    for (const auto& a : arcs)
        if (!a.closed) c -= 1;
    return c;
}

std::pair<int, int> LasagnaFilling::input_grading(const Input& in) const {
    if (in.label) return *in.label;
    if (!in.tensor) throw NotComputable("input carries neither tensor nor graded label");
    std::optional<std::pair<int, int>> g;
    for (const auto& t : in.tensor->terms()) {
        int m = unlinktqft::maslov(t);
        int a2 = 0;  // collapsed: sum over all slots of the doubled gradings
        for (const auto& [c, st] : t.extra)
            for (auto w : st) a2 += (w == unlinktqft::WLetter::Theta ? 1 : -1);
        if (!g)
            g = {m, a2};
        else if (*g != std::make_pair(m, a2))
            throw InhomogeneousInput("input tensor is not homogeneous");
    }
    if (!g) return {0, 0};  // zero element: grading conventionally trivial
    return *g;
}

ValidationReport validate(const LasagnaFilling& f) {
    ValidationReport rep;
    auto violation = [&](const std::string& s) { rep.violations.push_back(s); };

    std::map<std::string, const BoundaryCircle*> circle;
    for (const auto& b : f.surface.boundaries) {
        if (!circle.emplace(b.id, &b).second) violation("duplicate boundary circle id " + b.id);
        if (b.side >= 0 && static_cast<size_t>(b.side) >= f.inputs.size())
            violation("boundary circle " + b.id + " references missing input ball");
        if (b.w_count != b.z_count)
            violation("boundary circle " + b.id + ": w and z basepoints must alternate (counts differ)");
        if (b.w_count + b.z_count == 0)
            violation("boundary circle " + b.id + ": a multi-based component needs basepoints");
    }

    std::set<uint32_t> balls;
    for (const auto& in : f.inputs)
        if (!balls.insert(in.ball).second) violation("duplicate input ball id");

    // arc endpoints: per circle, #endpoints must equal #basepoints (one
    // basepoint in each arc-divided boundary segment)
    std::map<std::string, uint32_t> endpoints;
    for (const auto& a : f.surface.arcs) {
        if (a.closed) {
            rep.notes.push_back("arc " + a.id + ": closed dividing circle (chi glues with no correction)");
            continue;
        }
        for (const auto& e : {a.end_a, a.end_b}) {
            if (!circle.count(e))
                violation("arc " + a.id + " endpoint on unknown circle " + e);
            else
                endpoints[e] += 1;
        }
    }
    for (const auto& [id, b] : circle) {
        uint32_t want = b->w_count + b->z_count;
        uint32_t got = endpoints.count(id) ? endpoints.at(id) : 0;
        if (got != want)
            violation("circle " + id + ": " + std::to_string(got) + " arc endpoints for " +
                      std::to_string(want) + " basepoints");
    }

    // piece incidence: w pieces must account for exactly the w basepoints
    // of each circle, z pieces for the z basepoints
    std::map<std::string, uint32_t> wseg, zseg;
    for (const auto& p : f.surface.pieces) {
        for (const auto& [cid, cnt] : p.boundary) {
            if (!circle.count(cid)) {
                violation("piece touches unknown circle " + cid);
                continue;
            }
            (p.kind == PieceKind::W ? wseg[cid] : zseg[cid]) += cnt;
        }
        if (p.boundary.empty())
            rep.notes.push_back(std::string("closed ") +
                                (p.kind == PieceKind::W ? "w" : "z") + " piece present");
    }
    for (const auto& [id, b] : circle) {
        uint32_t w = wseg.count(id) ? wseg.at(id) : 0;
        uint32_t z = zseg.count(id) ? zseg.at(id) : 0;
        if (w != b->w_count)
            violation("circle " + id + ": w-piece segments " + std::to_string(w) +
                      " != w basepoints " + std::to_string(b->w_count));
        if (z != b->z_count)
            violation("circle " + id + ": z-piece segments " + std::to_string(z) +
                      " != z basepoints " + std::to_string(b->z_count));
    }

    for (const auto& in : f.inputs) {
        bool touched = false;
        for (const auto& b : f.surface.boundaries)
            if (b.side >= 0 && static_cast<uint32_t>(b.side) == in.ball) touched = true;
        if (!touched && !(in.tensor && in.tensor->is_zero()))
            violation("input ball " + std::to_string(in.ball) + " meets no boundary circle");
        if (in.tensor && in.label) violation("input carries both tensor and label");
        if (!in.tensor && !in.label) violation("input carries neither tensor nor label");
    }
    return rep;
}

int maslov(const LasagnaFilling& f) {
    int m = f.surface.chi_w();
    for (const auto& in : f.inputs) m += f.input_grading(in).first;
    return m;
}

int alexander_doubled(const LasagnaFilling& f) {
    int a = f.surface.chi_w() - f.surface.chi_z();
    for (const auto& in : f.inputs) a += f.input_grading(in).second;
    return a;
}

LasagnaFilling model_filling(uint32_t k_plus, uint32_t k_minus, const TensorSum& v) {
    LasagnaFilling f;
    Input in;
    in.ball = 0;
    in.link = "cable level (" + std::to_string(k_plus) + "," + std::to_string(k_minus) + ")";
    in.tensor = v;
    f.inputs.push_back(std::move(in));
    f.homology_class = {static_cast<int>(k_plus) - static_cast<int>(k_minus)};

    uint32_t k = k_plus + k_minus;
    for (uint32_t j = 0; j < k; ++j) {
        std::string cid = "cable" + std::to_string(j);
        f.surface.boundaries.push_back(BoundaryCircle{cid, j, 0, 1, 1});
        // one capping disk per copy, cut by a diametric arc into half-disks
        f.surface.pieces.push_back(SurfacePiece{PieceKind::W, 1, {{cid, 1}}});
        f.surface.pieces.push_back(SurfacePiece{PieceKind::Z, 1, {{cid, 1}}});
        f.surface.arcs.push_back(DividingArc{"diam" + std::to_string(j), false, cid, cid});
    }
    return f;
}

LasagnaFilling identity_filling(const std::vector<uint32_t>& components, uint32_t marked,
                                const TensorSum& v) {
    for (const auto& t : v.terms())
        if (t.marked != marked)
            throw NotComputable("identity_filling: tensor marked component mismatch");
    LasagnaFilling f;
    Input in;
    in.ball = 0;
    in.link = "unlink";
    in.tensor = v;
    f.inputs.push_back(std::move(in));

    // per component: a cylinder with 2p vertical arcs and 2p strips, one
    // basepoint pair per extra pair plus the standard one
    std::map<uint32_t, uint32_t> pairs;
    for (uint32_t c : components) pairs[c] = 1;
    if (!v.is_zero())
        for (const auto& [c, st] : v.terms().begin()->extra)
            pairs[c] += static_cast<uint32_t>(st.size());

    for (uint32_t c : components) {
        uint32_t p = pairs[c];
        std::string inner = "in" + std::to_string(c);
        std::string outer = "out" + std::to_string(c);
        f.surface.boundaries.push_back(BoundaryCircle{inner, c, 0, p, p});
        f.surface.boundaries.push_back(BoundaryCircle{outer, c, -1, p, p});
        for (uint32_t s = 0; s < p; ++s) {
            std::string tag = std::to_string(c) + "_" + std::to_string(s);
            f.surface.pieces.push_back(
                SurfacePiece{PieceKind::W, 1, {{inner, 1}, {outer, 1}}});
            f.surface.pieces.push_back(
                SurfacePiece{PieceKind::Z, 1, {{inner, 1}, {outer, 1}}});
            f.surface.arcs.push_back(DividingArc{"v1_" + tag, false, inner, outer});
            f.surface.arcs.push_back(DividingArc{"v2_" + tag, false, inner, outer});
        }
    }
    f.homology_class = {};  // B^4: no handles
    return f;
}

AuditResult equivalence_move_audit(const LasagnaFilling& f,
                                   const obstruction::CobordismGradingData& move) {
    uint32_t w_in = 0;
    for (const auto& b : f.surface.boundaries)
        if (b.side >= 0) w_in += b.w_count;
    if (move.w1_count != w_in)
        throw std::invalid_argument("equivalence_move_audit: move w1 count does not match filling");

    AuditResult res{};
    res.maslov_before = maslov(f);
    res.alexander_before_doubled = alexander_doubled(f);

    // absorb: inputs become one ball, input grading shifts by the move,
    // the absorbed collar leaves the surface through the gluing identity
    // chi(Sigma_w) = chi(Sigma_w cap W') + chi(Sigma'_w) - |w'|
    int m_in = 0, a_in = 0;
    for (const auto& in : f.inputs) {
        auto [m, a] = f.input_grading(in);
        m_in += m;
        a_in += a;
    }
    int m_new = m_in + obstruction::maslov_shift(move);
    int a_new = a_in + obstruction::alexander_shift_doubled(move);
    int chi_w_new = f.surface.chi_w() - move.chi_w + static_cast<int>(move.w2_count);
    int chi_z_new = f.surface.chi_z() - move.chi_z + static_cast<int>(move.w2_count);

    res.maslov_after = chi_w_new + m_new;
    res.alexander_after_doubled = (chi_w_new - chi_z_new) + a_new;

    if (res.maslov_after != res.maslov_before ||
        res.alexander_after_doubled != res.alexander_before_doubled) {
        std::ostringstream os;
        os << "equivalence move drifted gradings: M " << res.maslov_before << " -> "
           << res.maslov_after << ", 2A " << res.alexander_before_doubled << " -> "
           << res.alexander_after_doubled;
        throw GradingDrift(os.str());
    }
    return res;
}

TensorSum b4_evaluate(const LasagnaFilling& f) {
    for (int c : f.homology_class)
        if (c != 0) throw NotComputable("b4_evaluate: filling has 2-handle classes");
    if (f.inputs.size() != 1)
        throw NotComputable("b4_evaluate: expected a single input ball");
    const Input& in = f.inputs[0];
    if (!in.tensor) throw NotComputable("b4_evaluate: input link outside the unlink model");

    // a closed disk piece of either type forces the zero map
    for (const auto& p : f.surface.pieces)
        if (p.boundary.empty()) {
            if (p.euler == 1) return {};
            throw NotComputable("b4_evaluate: closed non-disk piece");
        }

    TensorSum cur = *in.tensor;
    for (const auto& op : f.collar) {
        switch (op.kind) {
            case CollarOp::Kind::Birth: cur = unlinktqft::birth(cur, op.component); break;
            case CollarOp::Kind::Death: cur = unlinktqft::death(cur, op.component); break;
            case CollarOp::Kind::Merge: cur = unlinktqft::merge(cur, op.component, op.other); break;
            case CollarOp::Kind::Split: cur = unlinktqft::split(cur, op.component, op.other); break;
            case CollarOp::Kind::Braid:
                cur = unlinktqft::braid_action(cur, op.component, op.other);
                break;
            case CollarOp::Kind::Twist:
                cur = unlinktqft::basepoint_move(cur, op.component, op.twists);
                break;
            case CollarOp::Kind::SPlus: cur = unlinktqft::quasi_stab(cur, QuasiStab::SPlus, op.component); break;
            case CollarOp::Kind::SMinus: cur = unlinktqft::quasi_stab(cur, QuasiStab::SMinus, op.component); break;
            case CollarOp::Kind::TPlus: cur = unlinktqft::quasi_stab(cur, QuasiStab::TPlus, op.component); break;
            case CollarOp::Kind::TMinus: cur = unlinktqft::quasi_stab(cur, QuasiStab::TMinus, op.component); break;
        }
        if (cur.is_zero()) break;
    }
    return cur;
}

// ---- JSON ----

namespace {

json tensor_to_json(const TensorSum& s) {
    json terms = json::array();
    for (const auto& t : s.terms()) {
        json jt;
        jt["components"] = t.components;
        jt["marked"] = t.marked;
        json word = json::object();
        for (const auto& [c, l] : t.word)
            word[std::to_string(c)] = (l == unlinktqft::VLetter::T ? "T" : "B");
        jt["word"] = word;
        json extra = json::array();
        for (const auto& [c, st] : t.extra)
            for (auto w : st)
                extra.push_back(json::array(
                    {c, w == unlinktqft::WLetter::Theta ? "theta" : "xi"}));
        jt["extra"] = extra;
        terms.push_back(jt);
    }
    return terms;
}

TensorSum tensor_from_json(const json& j) {
    TensorSum s;
    for (const auto& jt : j) {
        unlinktqft::ReducedTensor t;
        t.components = jt.at("components").get<std::vector<uint32_t>>();
        t.marked = jt.at("marked").get<uint32_t>();
        for (const auto& [k, v] : jt.at("word").items())
            t.word[static_cast<uint32_t>(std::stoul(k))] =
                v.get<std::string>() == "T" ? unlinktqft::VLetter::T : unlinktqft::VLetter::B;
        if (jt.contains("extra"))
            for (const auto& e : jt.at("extra"))
                t.extra[e.at(0).get<uint32_t>()].push_back(
                    e.at(1).get<std::string>() == "theta" ? unlinktqft::WLetter::Theta
                                                          : unlinktqft::WLetter::Xi);
        t.check();
        s.toggle(std::move(t));
    }
    return s;
}

CollarOp::Kind op_kind(const std::string& s) {
    if (s == "birth") return CollarOp::Kind::Birth;
    if (s == "death") return CollarOp::Kind::Death;
    if (s == "merge") return CollarOp::Kind::Merge;
    if (s == "split") return CollarOp::Kind::Split;
    if (s == "braid") return CollarOp::Kind::Braid;
    if (s == "twist") return CollarOp::Kind::Twist;
    if (s == "S+") return CollarOp::Kind::SPlus;
    if (s == "S-") return CollarOp::Kind::SMinus;
    if (s == "T+") return CollarOp::Kind::TPlus;
    if (s == "T-") return CollarOp::Kind::TMinus;
    throw std::invalid_argument("filling: unknown collar op " + s);
}

std::string op_name(CollarOp::Kind k) {
    switch (k) {
        case CollarOp::Kind::Birth: return "birth";
        case CollarOp::Kind::Death: return "death";
        case CollarOp::Kind::Merge: return "merge";
        case CollarOp::Kind::Split: return "split";
        case CollarOp::Kind::Braid: return "braid";
        case CollarOp::Kind::Twist: return "twist";
        case CollarOp::Kind::SPlus: return "S+";
        case CollarOp::Kind::SMinus: return "S-";
        case CollarOp::Kind::TPlus: return "T+";
        case CollarOp::Kind::TMinus: return "T-";
    }
    return "?";
}

}  // namespace

LasagnaFilling filling_from_json(const std::string& text) {
    json j = json::parse(text);
    LasagnaFilling f;
    for (const auto& ji : j.at("inputs")) {
        Input in;
        in.ball = ji.at("ball").get<uint32_t>();
        in.link = ji.value("link", std::string("unlink"));
        if (ji.contains("tensor")) in.tensor = tensor_from_json(ji.at("tensor"));
        if (ji.contains("label"))
            in.label = {ji.at("label").at("maslov").get<int>(),
                        ji.at("label").at("alexander2").get<int>()};
        f.inputs.push_back(std::move(in));
    }
    const json& js = j.at("surface");
    for (const auto& jp : js.at("pieces")) {
        SurfacePiece p;
        p.kind = jp.at("kind").get<std::string>() == "w" ? PieceKind::W : PieceKind::Z;
        p.euler = jp.at("euler").get<int>();
        for (const auto& b : jp.at("boundary"))
            p.boundary.push_back({b.at(0).get<std::string>(), b.at(1).get<uint32_t>()});
        f.surface.pieces.push_back(std::move(p));
    }
    for (const auto& ja : js.at("arcs")) {
        DividingArc a;
        a.id = ja.at("id").get<std::string>();
        a.closed = ja.value("closed", false);
        if (!a.closed) {
            a.end_a = ja.at("ends").at(0).get<std::string>();
            a.end_b = ja.at("ends").at(1).get<std::string>();
        }
        f.surface.arcs.push_back(std::move(a));
    }
    for (const auto& jb : js.at("boundaries")) {
        BoundaryCircle b;
        b.id = jb.at("id").get<std::string>();
        b.link_component = jb.at("component").get<uint32_t>();
        b.side = jb.at("side").get<int>();
        b.w_count = jb.at("w").get<uint32_t>();
        b.z_count = jb.at("z").get<uint32_t>();
        f.surface.boundaries.push_back(std::move(b));
    }
    f.homology_class = j.value("class", std::vector<int>{});
    if (j.contains("collar"))
        for (const auto& jo : j.at("collar")) {
            CollarOp op;
            op.kind = op_kind(jo.at("op").get<std::string>());
            op.component = jo.value("component", 0u);
            op.other = jo.value("other", 0u);
            op.twists = jo.value("twists", 0);
            f.collar.push_back(op);
        }
    return f;
}

std::string filling_to_json(const LasagnaFilling& f) {
    json j;
    j["inputs"] = json::array();
    for (const auto& in : f.inputs) {
        json ji;
        ji["ball"] = in.ball;
        ji["link"] = in.link;
        if (in.tensor) ji["tensor"] = tensor_to_json(*in.tensor);
        if (in.label) ji["label"] = {{"maslov", in.label->first}, {"alexander2", in.label->second}};
        j["inputs"].push_back(ji);
    }
    json js;
    js["pieces"] = json::array();
    for (const auto& p : f.surface.pieces) {
        json jp;
        jp["kind"] = p.kind == PieceKind::W ? "w" : "z";
        jp["euler"] = p.euler;
        jp["boundary"] = json::array();
        for (const auto& [cid, cnt] : p.boundary) jp["boundary"].push_back(json::array({cid, cnt}));
        js["pieces"].push_back(jp);
    }
    js["arcs"] = json::array();
    for (const auto& a : f.surface.arcs) {
        json ja;
        ja["id"] = a.id;
        if (a.closed)
            ja["closed"] = true;
        else
            ja["ends"] = json::array({a.end_a, a.end_b});
        js["arcs"].push_back(ja);
    }
    js["boundaries"] = json::array();
    for (const auto& b : f.surface.boundaries) {
        js["boundaries"].push_back({{"id", b.id},
                                    {"component", b.link_component},
                                    {"side", b.side},
                                    {"w", b.w_count},
                                    {"z", b.z_count}});
    }
    j["surface"] = js;
    j["class"] = f.homology_class;
    if (!f.collar.empty()) {
        j["collar"] = json::array();
        for (const auto& op : f.collar) {
            json jo;
            jo["op"] = op_name(op.kind);
            jo["component"] = op.component;
            if (op.kind == CollarOp::Kind::Merge || op.kind == CollarOp::Kind::Split ||
                op.kind == CollarOp::Kind::Braid)
                jo["other"] = op.other;
            if (op.kind == CollarOp::Kind::Twist) jo["twists"] = op.twists;
            j["collar"].push_back(jo);
        }
    }
    return j.dump(2);
}

LasagnaFilling filling_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open filling file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return filling_from_json(ss.str());
}

}  // namespace floer::lasagna
