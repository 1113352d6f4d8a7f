#ifndef G2P_CUBIC_HPP
#define G2P_CUBIC_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2p/chars.hpp"
#include "g2p/rational.hpp"

namespace g2p::cubic {

// a x^3 + b x^2 y + c x y^2 + d y^3 over F
struct BinaryCubic {
    padic::PadicNumber a, b, c, d;

    static BinaryCubic from_ints(const padic::PAdicField& F, long a, long b,
                                 long c, long d);
    static BinaryCubic from_rationals(const padic::PAdicField& F,
                                      const std::array<Rational, 4>& coeffs);
};

// the classical covariant: 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2,
// with Delta(g . f) = det(g)^6 Delta(f)
padic::PadicNumber disc_cubic(const BinaryCubic& f);

// GL2 substitution f(x, y) -> f(px + ry, qx + sy)
BinaryCubic gl2_transform(const BinaryCubic& f, long p, long q, long r, long s);

// generic = separable = nonzero discriminant; an indistinguishable-from-zero
// discriminant is an error, never a guess
bool is_generic(const BinaryCubic& f);

enum class CubicClassKind { SplitTriple, FieldTimesQuadratic, CubicField };

std::string cubic_class_name(CubicClassKind k);

struct CubicAlgebraClass {
    CubicClassKind kind;
    // FieldTimesQuadratic: square-class representative of the quadratic
    // discriminant, one of {u, p, up}
    std::optional<long> quad_disc_class;
    // CubicField: ramification index (1 unramified, 3 totally ramified)
    std::optional<int> ramification_e;
    long f_roots;  // number of roots of f(x, 1) in F
};

// classification of F[x]/(f(x,1)) for generic f by exhaustive residue root
// search and Hensel lifting
CubicAlgebraClass etale_class(const BinaryCubic& f);

// the two-orbit decomposition: label 0 iff lambda is a norm from K, with the
// displayed rank-one representative and its stabilizer
struct OrbitLabel {
    int label;                                       // 0 or 1
    std::array<std::array<Rational, 3>, 3> rep;      // f_0 or f_1
    std::string stabilizer;                          // "U(V2)" or "U(V2')"
};

OrbitLabel orbit_label(const padic::PadicNumber& lambda, const padic::QuadExt& K);

// all roots of f(x,1) in F at working precision (exposed for the oracle suite)
std::vector<padic::PadicNumber> cubic_roots(const BinaryCubic& f);

} // namespace g2p::cubic

#endif
