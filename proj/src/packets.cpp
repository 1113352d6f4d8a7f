#include "g2p/packets.hpp"

#include <algorithm>

namespace g2p::packets {

using chars::AddChar;
using chars::FieldPtr;
using chars::K1Char;
using chars::MultChar;
using herm::Kind;
using herm::Space;
using padic::ExtElement;
using theta::LiftShape;

PlaceData::PlaceData(bool split, FieldPtr F, FieldPtr K, MultChar chi, AddChar psi,
                     std::optional<ExtElement> delta)
    : split_(split), F_(std::move(F)), K_(std::move(K)), chi_(std::move(chi)),
      psi_(std::move(psi)), delta_(std::move(delta)) {}

PlaceData PlaceData::nonsplit(FieldPtr K, MultChar chi, AddChar psi,
                              std::optional<ExtElement> delta) {
    if (!K->is_ext()) throw domain_error("nonsplit place needs a quadratic extension");
    if (!chi.field()->same(*K)) throw domain_error("chi must live on K");
    if (!chi.is_conjugate_symplectic())
        throw domain_error("chi must be conjugate-symplectic: chi|F^x = omega_{K/F}");
    ExtElement d = delta ? *delta : K->K().delta();
    if (d.is_zero()) throw domain_error("delta must be nonzero");
    if (!d.re().is_zero() && !d.re().is_approx_zero())
        throw domain_error("delta must have trace zero");
    FieldPtr F = K->base_field();
    if (!psi.field()->same(*F)) throw domain_error("psi must live on F");
    return PlaceData(false, std::move(F), std::move(K), std::move(chi),
                     std::move(psi), std::move(d));
}

PlaceData PlaceData::split(FieldPtr F, MultChar chi_w, AddChar psi) {
    if (F->is_ext()) throw domain_error("split place works over F itself");
    if (!chi_w.field()->same(*F)) throw domain_error("chi_w must live on F");
    if (!chi_w.is_unitary()) throw domain_error("chi_w must be unitary");
    if (!psi.field()->same(*F)) throw domain_error("psi must live on F");
    return PlaceData(true, F, nullptr, std::move(chi_w), std::move(psi),
                     std::nullopt);
}

const FieldPtr& PlaceData::ext() const {
    if (split_) throw domain_error("split place has no quadratic extension");
    return K_;
}

MultChar PlaceData::chi_other() const {
    if (!split_) throw domain_error("chi_{w'} only exists at split places");
    return chi_.inv();
}

const ExtElement& PlaceData::delta() const {
    if (!delta_) throw domain_error("split place has no delta");
    return *delta_;
}

int component_group_pu3(const PlaceData& pd) { return pd.is_split() ? 1 : 2; }

int component_group_g2(const PlaceData& pd) {
    if (pd.is_split()) return 1;
    return pd.chi().is_galois_invariant() ? 1 : 2;
}

Pu3Packet pu3_packet(const PlaceData& pd) {
    Pu3Packet out;
    out.s_group = component_group_pu3(pd);
    if (pd.is_split()) {
        out.eps_v1 = 0;
        Pu3Member m;
        m.label = "+";
        m.w_sign = 0;
        m.report = theta::gl_split_lift(MultChar::trivial(pd.base()), pd.chi());
        out.members.push_back(std::move(m));
        return out;
    }
    const FieldPtr& K = pd.ext();
    const MultChar& gamma = pd.chi();
    Space V = Space::three_dim_standard(K);
    int eps_v1 = V.sign();
    out.eps_v1 = eps_v1;
    // the defining sign equation: eps(V1) eps(W^+) = eps_K(1/2, chi^3, psi_-delta)
    K1Char mu3 = K1Char::restriction_of(gamma.inv());
    int s3 = eps::theta_sign(gamma, mu3, pd.psi(), pd.delta());
    for (int which : {+1, -1}) {
        Space W = Space::abstract(K, Kind::SkewHermitian, 1, which * s3 * eps_v1);
        Pu3Member m;
        m.label = which > 0 ? "+" : "-";
        m.w_sign = W.sign();
        m.report = theta::u3_lift(K1Char::trivial(K), V, W, gamma, pd.psi(),
                                  pd.delta());
        if (which > 0) {
            if (m.report.shape != LiftShape::QuotientOfPrincipalSeries)
                throw internal_error("sigma+ is not a principal-series quotient");
            if (!(m.report.principal_series->char_K == gamma) ||
                !(m.report.principal_series->shift == Rational(1, 2)))
                throw internal_error("sigma+ inducing data is not I(chi, 1/2)");
        } else if (m.report.shape != LiftShape::Supercuspidal) {
            throw internal_error("sigma- is not supercuspidal");
        }
        out.members.push_back(std::move(m));
    }
    return out;
}

std::string g2_shape_name(G2Shape s) {
    switch (s) {
        case G2Shape::QuotientOfQ1Induced: return "quotient-of-q1-induced";
        case G2Shape::InducedFromQ2: return "induced-from-q2";
        case G2Shape::TemperedNonGeneric: return "tempered-non-generic";
        case G2Shape::Zero: return "zero";
    }
    throw internal_error("bad G2Shape");
}

G2Packet g2_packet(const PlaceData& pd) {
    G2Packet out;
    out.s_group = component_group_g2(pd);
    out.pi_minus_vanishes = false;

    if (pd.is_split()) {
        G2Member m;
        m.label = "+";
        m.shape = G2Shape::QuotientOfQ1Induced;
        m.nonzero = true;
        m.tempered = false;
        m.tau = TauDescriptor{false, std::make_pair(pd.chi(), pd.chi().inv()),
                              std::nullopt};
        out.members.push_back(std::move(m));
        return out;
    }

    const MultChar& chi = pd.chi();
    bool invariant = chi.is_galois_invariant();
    bool sq_trivial = chi.chi_squared_trivial();
    // for conjugate-symplectic chi over nonsplit K: chi = chi^c <=> chi^2 = 1;
    // a violation signals inconsistent input
    if (invariant != sq_trivial)
        throw internal_error("conjugate-symplectic character violates "
                             "chi = chi^c <=> chi^2 = 1");

    if (!invariant) {
        G2Member plus;
        plus.label = "+";
        plus.shape = G2Shape::QuotientOfQ1Induced;
        plus.nonzero = true;
        plus.tempered = false;
        plus.tau = TauDescriptor{true, std::nullopt, chi};
        out.members.push_back(std::move(plus));

        G2Member minus;
        minus.label = "-";
        minus.shape = G2Shape::TemperedNonGeneric;
        minus.nonzero = true;
        minus.tempered = true;
        out.members.push_back(std::move(minus));
        return out;
    }

    // chi^2 = 1: pi+ = i_Q2(mu o det) with chi = mu o N, mu^2 = omega; pi- = 0
    MultChar mu = chi.descend_via_norm();
    MultChar omega = MultChar::omega(pd.base(), pd.ext()->K());
    if (!(mu.pow(2) == omega))
        throw internal_error("descended mu does not satisfy mu^2 = omega");

    auto tab = g2::SymbolTable::mu_omega();
    g2::FCharExpr mu_sym = g2::FCharExpr::symbol(tab, "mu");
    g2::FCharExpr half = g2::FCharExpr::abs_power(tab, Rational(1, 2));
    g2::InducedDescriptor d{g2::Parabolic::Q1,
                            {mu_sym * half, mu_sym.inv() * half},
                            g2::QuotientTag::FullInduced};
    g2::RewriteResult rw = g2::langlands_rewrite(d);
    if (rw.tag != g2::QuotientTag::IrreducibleInduced ||
        !rw.quotient_parabolic || *rw.quotient_parabolic != g2::Parabolic::Q2 ||
        !rw.quotient_character || !(*rw.quotient_character == mu_sym))
        throw internal_error("the rewriting chain did not terminate at i_Q2(mu o det)");

    G2Member plus;
    plus.label = "+";
    plus.shape = G2Shape::InducedFromQ2;
    plus.nonzero = true;
    plus.tempered = false;
    plus.tau = TauDescriptor{false, std::make_pair(mu, mu.inv()), std::nullopt};
    plus.q2_char = mu;
    plus.rewrite = std::move(rw);
    out.members.push_back(std::move(plus));
    out.pi_minus_vanishes = true;
    return out;
}

namespace {

SatakeParam sorted(SatakeParam s) {
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

} // namespace

SatakeParam satake_pu3(const PlaceData& pd) {
    if (!pd.chi().is_unramified())
        throw domain_error("Satake parameters need an unramified character");
    if (pd.is_split()) {
        Turn t = pd.chi().at_uniformizer();
        SatakeParam s{{Eigenvalue{t * (-2), 0}, Eigenvalue{t, 1}, Eigenvalue{t, -1}},
                      false, pd.base()->q()};
        return sorted(std::move(s));
    }
    if (pd.ext()->K().ramified())
        throw domain_error("nonsplit Satake parameters need an unramified place");
    // Frobenius acts through the non-identity component; the square is an
    // honest SL3 class: eigenvalues {z^{-2}, z q, z q^{-1}}, z = chi(pi_K)
    Turn z = pd.chi().at_uniformizer();
    if (z != Turn::half())
        throw internal_error("unramified conjugate-symplectic chi must have "
                             "chi(pi) = -1");
    SatakeParam s{{Eigenvalue{z * (-2), 0}, Eigenvalue{z, 2}, Eigenvalue{z, -2}},
                  true, pd.base()->q()};
    return sorted(std::move(s));
}

SatakeParam satake_g2(const PlaceData& pd) {
    if (!pd.chi().is_unramified())
        throw domain_error("Satake parameters need an unramified character");
    // eigenvalues on the 7-dimensional representation via
    // V7 = (2 (x) 2) + Sym^2(s): {a q^{±1/2}, a^{-1} q^{±1/2}, a^2, 1, a^{-2}}
    // with {a, a^{-1}} the Frobenius eigenvalues of the dihedral parameter
    SatakeParam s{{}, false, pd.base()->q()};
    if (pd.is_split()) {
        Turn a = pd.chi().at_uniformizer();
        s.eigenvalues = {Eigenvalue{a, 1},        Eigenvalue{a, -1},
                         Eigenvalue{-a, 1},       Eigenvalue{-a, -1},
                         Eigenvalue{a * 2, 0},    Eigenvalue{Turn(), 0},
                         Eigenvalue{a * (-2), 0}};
        return sorted(std::move(s));
    }
    if (pd.ext()->K().ramified())
        throw domain_error("nonsplit Satake parameters need an unramified place");
    Turn z = pd.chi().at_uniformizer();
    if (z != Turn::half())
        throw internal_error("unramified conjugate-symplectic chi must have "
                             "chi(pi) = -1");
    // Frobenius maps to the Weyl element of the short SL2: eigenvalues ±i,
    // i.e. a = sqrt(z) with z = -1
    Turn a(1, 4);
    s.eigenvalues = {Eigenvalue{a, 1},     Eigenvalue{a, -1},
                     Eigenvalue{-a, 1},    Eigenvalue{-a, -1},
                     Eigenvalue{a * 2, 0}, Eigenvalue{Turn(), 0},
                     Eigenvalue{a * (-2), 0}};
    return sorted(std::move(s));
}

} // namespace g2p::packets
