#include "g2p/theta_u.hpp"

namespace g2p::theta {

using chars::AddChar;
using chars::K1Char;
using chars::MultChar;
using herm::Kind;
using herm::Space;
using padic::ExtElement;

std::string lift_shape_name(LiftShape s) {
    switch (s) {
        case LiftShape::Supercuspidal: return "supercuspidal";
        case LiftShape::QuotientOfPrincipalSeries: return "quotient-of-principal-series";
        case LiftShape::LanglandsQuotientGL3: return "langlands-quotient-gl3";
        case LiftShape::OneDimensional: return "one-dimensional";
    }
    throw internal_error("bad LiftShape");
}

bool u1_dichotomy(const K1Char& mu, const Space& V1, const Space& W,
                  const MultChar& gamma, const AddChar& psi,
                  const ExtElement& delta) {
    if (V1.dim() != 1 || W.dim() != 1)
        throw domain_error("u1_dichotomy needs one-dimensional spaces");
    if (V1.kind() != Kind::Hermitian || W.kind() != Kind::SkewHermitian)
        throw domain_error("u1_dichotomy pairs a Hermitian line with a skew line");
    int sign = eps::theta_sign(gamma, mu, psi, delta);
    return V1.sign() * W.sign() == sign;
}

ThetaReport dim_zero_lift(const K1Char& mu, const MultChar& gamma) {
    ThetaReport r;
    // distinguished character chi_even o i o det_W with chi_even = gamma^2;
    // as inflations this reads mu~ == gamma^2
    bool hit = mu.inflation() == gamma.pow(2);
    r.nonzero = hit;
    r.shape = LiftShape::OneDimensional;
    if (hit) r.one_dimensional = mu;
    return r;
}

ThetaReport u3_lift(const K1Char& mu, const Space& V, const Space& W,
                    const MultChar& gamma, const AddChar& psi,
                    const ExtElement& delta) {
    if (V.dim() != 3) throw domain_error("u3_lift needs a 3-dimensional V");
    if (!gamma.is_conjugate_symplectic())
        throw domain_error("u3_lift needs a conjugate-symplectic gamma");
    // the 1-dimensional space in V's Witt tower carries V's sign
    Space V1 = Space::abstract(V.field(), Kind::Hermitian, 1, V.sign());
    K1Char shifted = mu * K1Char::restriction_of(gamma.inv());
    ThetaReport r;
    r.nonzero = true;  // stable range
    if (u1_dichotomy(shifted, V1, W, gamma, psi, delta)) {
        r.shape = LiftShape::QuotientOfPrincipalSeries;
        r.principal_series = PrincipalSeriesData{gamma, Rational(1, 2), shifted};
    } else {
        r.shape = LiftShape::Supercuspidal;
    }
    return r;
}

ThetaReport gl_split_lift(const MultChar& mu, const MultChar& gamma) {
    if (mu.field()->is_ext() || gamma.field()->is_ext())
        throw domain_error("gl_split_lift works over the base field");
    if (!mu.is_unitary()) throw domain_error("gl_split_lift needs unitary mu");
    ThetaReport r;
    r.nonzero = true;
    r.shape = LiftShape::LanglandsQuotientGL3;
    GL3Triple t{{{{gamma, Rational(1, 2)},
                  {mu * gamma.pow(-2), Rational(0)},
                  {gamma, Rational(-1, 2)}}}};
    // "does not precede" order: exponents descending, stable in the input
    std::stable_sort(t.entries.begin(), t.entries.end(),
                     [](const auto& a, const auto& b) { return b.second < a.second; });
    r.gl3 = t;
    return r;
}

FirstOccurrence first_occurrence(const K1Char& mu, int parity,
                                 const MultChar& gamma, const AddChar& psi,
                                 const ExtElement& delta, const Space& W) {
    if (W.dim() != 1 || W.kind() != Kind::SkewHermitian)
        throw domain_error("first_occurrence lifts from a skew line");
    const auto& K = gamma.field();
    if (parity % 2 == 1) {
        // exactly one of the two 1-dimensional classes survives at dim 1;
        // conservation forces 3 on the other tower
        Space Vp = Space::abstract(K, Kind::Hermitian, 1, +1);
        bool plus = u1_dichotomy(mu, Vp, W, gamma, psi, delta);
        return plus ? FirstOccurrence{1, 3} : FirstOccurrence{3, 1};
    }
    // even parity: the split tower starts at V = 0 with the dim-0
    // convention above; otherwise both towers fire at dimension 2
    if (dim_zero_lift(mu, gamma).nonzero) return FirstOccurrence{0, 4};
    return FirstOccurrence{2, 2};
}

} // namespace g2p::theta
