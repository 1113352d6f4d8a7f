#ifndef G2P_THETA_U_HPP
#define G2P_THETA_U_HPP

#include <array>
#include <optional>

#include "g2p/epsilon.hpp"
#include "g2p/hermitian.hpp"

namespace g2p::theta {

// Structural descriptor of a theta lift.  The artifact computes shapes and
// inducing data, never representation spaces.
enum class LiftShape {
    Supercuspidal,
    QuotientOfPrincipalSeries,
    LanglandsQuotientGL3,
    OneDimensional,
};

std::string lift_shape_name(LiftShape s);

// inducing data (gamma | |_K^{shift}, mu gamma^{-1}|_{K^1}) on the Borel of U3
struct PrincipalSeriesData {
    chars::MultChar char_K;   // gamma
    Rational shift;           // the | |_K^{1/2} slot
    chars::K1Char k1_char;    // mu gamma^{-1}|_{K^1}
};

// ordered character triple (chi, exponent) in "does not precede" order
struct GL3Triple {
    std::array<std::pair<chars::MultChar, Rational>, 3> entries;
};

struct ThetaReport {
    bool nonzero = false;
    LiftShape shape = LiftShape::Supercuspidal;
    std::optional<PrincipalSeriesData> principal_series;
    std::optional<GL3Triple> gl3;
    std::optional<chars::K1Char> one_dimensional;
};

// Does the 1-dimensional lift U(W) -> U(V1) of mu survive?  True iff
// eps(V1) eps(W) equals the dichotomy sign of gamma mu~^{-1}.
bool u1_dichotomy(const chars::K1Char& mu, const herm::Space& V1,
                  const herm::Space& W, const chars::MultChar& gamma,
                  const chars::AddChar& psi, const padic::ExtElement& delta);

// The dim-0 convention for the split even tower: the lift of mu to V = 0 is
// nonzero iff mu is the character gamma^2 o i o det_W.
ThetaReport dim_zero_lift(const chars::K1Char& mu, const chars::MultChar& gamma);

// The lift of mu from U(W) to the 3-dimensional U(V): supercuspidal when the
// 1-dimensional lift of mu gamma^{-1}|_{K^1} dies in V's tower, otherwise a
// quotient of i_{B'}(gamma | |_K^{1/2} (x) mu gamma^{-1}|_{K^1}).  Nonzero
// always (stable range).
ThetaReport u3_lift(const chars::K1Char& mu, const herm::Space& V,
                    const herm::Space& W, const chars::MultChar& gamma,
                    const chars::AddChar& psi, const padic::ExtElement& delta);

// split place: theta(mu) on GL3 is the Langlands quotient
// pi(gamma | |^{1/2}, mu gamma^{-2}, gamma | |^{-1/2})
ThetaReport gl_split_lift(const chars::MultChar& mu, const chars::MultChar& gamma);

// First occurrences of mu in the two parity-matched Hermitian Witt towers,
// lifting from U(W), dim W = 1.  Sums to 2m + 2 = 4.
struct FirstOccurrence {
    // odd parity: n_plus is the tower anchored at the eps = +1 line;
    // even parity: n_plus is the split tower (anchor dimension 0)
    int n_plus;
    int n_minus;
};

FirstOccurrence first_occurrence(const chars::K1Char& mu, int parity,
                                 const chars::MultChar& gamma,
                                 const chars::AddChar& psi,
                                 const padic::ExtElement& delta,
                                 const herm::Space& W);

} // namespace g2p::theta

#endif
