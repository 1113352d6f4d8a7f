#ifndef G2P_EPSILON_HPP
#define G2P_EPSILON_HPP

#include <complex>

#include "g2p/chars.hpp"

namespace g2p::eps {

// Tate local epsilon factor at s = 1/2 with the self-dual measure:
//   unramified chi : chi(pi)^n
//   ramified chi   : chi(pi)^{a+n} q^{-a/2}
//                      * sum_{u in (O/p^a)^x} chi^{-1}(u) psi(u pi^{-(a+n)})
// n = level(psi), a = conductor(chi).  |eps| = 1 for unitary chi.
struct EpsilonValue {
    std::complex<double> value;
    int conductor;
    int level;
};

EpsilonValue epsilon_half(const chars::MultChar& chi, const chars::AddChar& psi);
EpsilonValue epsilon_half(const chars::MultChar& chi, const chars::AddCharOnK& psi);

// snap a complex value to ±1 within tol; throws internal_error otherwise
int snap_sign(const std::complex<double>& z, double tol = 1e-6);

// The dichotomy sign of the 1-dimensional unitary theta lift:
//   eps_K(1/2, gamma * mu~^{-1}, psi(Tr_{K/F}(-delta .))) in {±1}
// for conjugate-symplectic gamma and a character mu of K^1.
int theta_sign(const chars::MultChar& gamma, const chars::K1Char& mu,
               const chars::AddChar& psi, const padic::ExtElement& delta);

} // namespace g2p::eps

#endif
