#include "floer/obstruction.hpp"

#include <sstream>

namespace floer::obstruction {

int maslov_shift(const CobordismGradingData& d) {
    int quarters = d.c1_sq - 2 * d.chi_W - 3 * d.sigma_W;
    if (quarters % 4 != 0)
        throw NonIntegralShift("maslov_shift: c1^2 - 2chi(W) - 3sigma(W) not divisible by 4");
    // dgr_w - (w2 - w1)/2 collapses to an integer: the two half-integer
    // terms combine to -w2
    return quarters / 4 + d.chi_w - static_cast<int>(d.w2_count);
}

int alexander_shift_doubled(const CobordismGradingData& d) { return d.chi_w - d.chi_z; }

CobordismGradingData concatenate(const CobordismGradingData& first,
                                 const CobordismGradingData& second) {
    if (first.w2_count != second.w1_count)
        throw std::invalid_argument("concatenate: basepoint counts do not chain");
    CobordismGradingData out;
    // gluing along the middle link: one arc per basepoint on each subsurface
    out.chi_w = first.chi_w + second.chi_w - static_cast<int>(first.w2_count);
    out.chi_z = first.chi_z + second.chi_z - static_cast<int>(first.w2_count);
    out.w1_count = first.w1_count;
    out.w2_count = second.w2_count;
    out.c1_sq = first.c1_sq + second.c1_sq;
    out.chi_W = first.chi_W + second.chi_W;  // glued along S^3, chi(S^3) = 0
    out.sigma_W = first.sigma_W + second.sigma_W;
    return out;
}

graded::GradedModule thin_link_homology(const laurent::LaurentMV& delta, uint32_t n_components) {
    if (delta.arity() != n_components)
        throw std::invalid_argument("thin_link_homology: arity mismatch");
    laurent::LaurentMV product = delta;
    for (uint32_t i = 0; i < n_components; ++i)
        product = product * laurent::LaurentMV::half_binomial(n_components, i);

    graded::DimTable dims;
    for (const auto& [h2, a_h] : product.terms()) {
        int total2 = 0;
        for (int e : h2) total2 += e;
        if (total2 % 2 != 0)
            throw std::invalid_argument("thin_link_homology: |h| not an integer");
        int maslov = total2 / 2 - 1;
        dims[graded::MultiGrading(maslov, h2)] +=
            static_cast<uint32_t>(a_h < 0 ? -a_h : a_h);
    }
    return graded::GradedModule::from_dims(n_components, dims, "h");
}

VanishingCertificate pants_vanishing_certificate(const graded::GradedModule& l2_module,
                                                 const std::string& provenance) {
    if (l2_module.alex_arity() != 2)
        throw std::invalid_argument(
            "pants_vanishing_certificate: module must be collapsed to (A1, A2)");

    VanishingCertificate cert;
    cert.map_description = "F'_P = F^z_B o T^+ applied to B";
    cert.module_provenance = provenance;
    cert.source = graded::MultiGrading(-1, {0, 0});  // B: M = -1, A1 = A2 = 0

    // T+ inserts xi on the unknot component: dM = -1, dA2 = -1/2
    graded::MultiGrading after_stab = cert.source;
    after_stab.maslov += -1;
    after_stab.alex[1] += -1;
    // band map: Maslov-index-0 triangle count, dM = 0; dA2 = +1/2
    cert.band_maslov_shift = 0;
    cert.target = after_stab;
    cert.target.maslov += cert.band_maslov_shift;
    cert.target.alex[1] += 1;

    cert.target_dim = l2_module.dim_at(cert.target);
    return cert;
}

VanishingReport theorem13_vanishing(const VanishingCertificate& cert, uint32_t max_truncation) {
    if (!cert.valid())
        throw InvalidCertificate("theorem13_vanishing: target grading " + cert.target.key() +
                                 " has dimension " + std::to_string(cert.target_dim) +
                                 ", contradicting F'_P(B) = 0");
    VanishingReport rep;
    rep.certificate = cert;
    rep.max_truncation = max_truncation;
    rep.trace.push_back("connected sum: F_P decomposes as F'_P (x) id on HFL(L u K(k+,k-))");
    rep.trace.push_back("certificate: F^z_B(B (x) xi) lands in grading " + cert.target.key() +
                        " of dimension 0, so F'_P(B) = 0 [" + cert.module_provenance + "]");
    rep.trace.push_back("relation v ~ F'_P(B) (x) v = 0 injected for every cable generator");

    cabled::CabledPresentation p = cabled::enumerate_relations(max_truncation);
    std::vector<uint32_t> everything;
    for (const auto& blk : p.levels())
        for (uint32_t i = 0; i < blk.basis.size(); ++i) everything.push_back(blk.offset + i);
    rep.injected_relations = static_cast<uint32_t>(everything.size());
    rep.dims = cabled::truncated_quotient(p, everything);
    rep.all_zero = true;
    for (const auto& [key, d] : rep.dims)
        if (d != 0) rep.all_zero = false;
    rep.trace.push_back(rep.all_zero ? "quotient vanishes in every (alpha, M) block"
                                     : "quotient FAILED to vanish");
    return rep;
}

std::string VanishingCertificate::to_json() const {
    std::ostringstream os;
    os << "{\"map\":\"" << map_description << "\",\"source\":\"" << source.key()
       << "\",\"steps\":[{\"op\":\"T+\",\"dM\":-1,\"dA2_doubled\":-1},{\"op\":\"F^z_B\",\"dM\":"
       << band_maslov_shift << ",\"dA2_doubled\":1}],\"target\":\"" << target.key()
       << "\",\"target_dim\":" << target_dim << ",\"provenance\":\"" << module_provenance
       << "\",\"valid\":" << (valid() ? "true" : "false") << '}';
    return os.str();
}

std::string VanishingReport::to_json() const {
    std::ostringstream os;
    os << "{\"certificate\":" << certificate.to_json()
       << ",\"max_truncation\":" << max_truncation
       << ",\"injected_relations\":" << injected_relations
       << ",\"all_zero\":" << (all_zero ? "true" : "false") << ",\"dims\":{";
    bool first = true;
    for (const auto& [key, d] : dims) {
        if (!first) os << ',';
        first = false;
        os << "\"(" << key.first << ';' << key.second << ")\":" << d;
    }
    os << "},\"trace\":[";
    first = true;
    for (const auto& t : trace) {
        if (!first) os << ',';
        first = false;
        os << '"' << t << '"';
    }
    os << "]}";
    return os.str();
}

}  // namespace floer::obstruction
