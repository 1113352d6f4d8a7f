#include "g2p/cubic.hpp"

#include <algorithm>
#include <climits>

namespace g2p::cubic {

using padic::mpz_val_p;
using padic::PAdicField;
using padic::PadicNumber;
using padic::QuadExt;

BinaryCubic BinaryCubic::from_ints(const PAdicField& F, long a, long b, long c,
                                   long d) {
    return BinaryCubic{PadicNumber::from_integer(F, a), PadicNumber::from_integer(F, b),
                       PadicNumber::from_integer(F, c), PadicNumber::from_integer(F, d)};
}

BinaryCubic BinaryCubic::from_rationals(const PAdicField& F,
                                        const std::array<Rational, 4>& co) {
    auto mk = [&](const Rational& r) {
        return PadicNumber::from_rational(F, mpz_class(long(r.num())),
                                          mpz_class(long(r.den())));
    };
    return BinaryCubic{mk(co[0]), mk(co[1]), mk(co[2]), mk(co[3])};
}

namespace {

const PAdicField& field_of(const BinaryCubic& f) {
    for (const PadicNumber* x : {&f.a, &f.b, &f.c, &f.d})
        if (!x->is_zero()) return x->field();
    throw domain_error("zero form");
}

} // namespace

PadicNumber disc_cubic(const BinaryCubic& f) {
    const auto& a = f.a;
    const auto& b = f.b;
    const auto& c = f.c;
    const auto& d = f.d;
    const PAdicField& F = field_of(f);
    auto n = [&](long k) { return PadicNumber::from_integer(F, k); };
    // 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2
    PadicNumber t = PadicNumber::zero(F);
    t = t + n(18) * a * b * c * d;
    t = t - n(4) * b * b * b * d;
    t = t + b * b * c * c;
    t = t - n(4) * a * c * c * c;
    t = t - n(27) * a * a * d * d;
    return t;
}

BinaryCubic gl2_transform(const BinaryCubic& f, long p, long q, long r, long s) {
    // substitute x -> p x + r y, y -> q x + s y and expand
    const PAdicField& F = field_of(f);
    auto n = [&](long k) { return PadicNumber::from_integer(F, k); };
    auto P = n(p), Q = n(q), R = n(r), S = n(s);
    // coefficients of (P x + R y)^i (Q x + S y)^{3-i} expansions
    PadicNumber a2 = f.a * P * P * P + f.b * P * P * Q + f.c * P * Q * Q +
                     f.d * Q * Q * Q;
    PadicNumber b2 = n(3) * f.a * P * P * R +
                     f.b * (P * P * S + n(2) * P * Q * R) +
                     f.c * (Q * Q * R + n(2) * P * Q * S) + n(3) * f.d * Q * Q * S;
    PadicNumber c2 = n(3) * f.a * P * R * R +
                     f.b * (Q * R * R + n(2) * P * R * S) +
                     f.c * (P * S * S + n(2) * Q * R * S) + n(3) * f.d * Q * S * S;
    PadicNumber d2 = f.a * R * R * R + f.b * R * R * S + f.c * R * S * S +
                     f.d * S * S * S;
    return BinaryCubic{a2, b2, c2, d2};
}

bool is_generic(const BinaryCubic& f) {
    PadicNumber D = disc_cubic(f);
    if (D.is_zero()) return false;
    if (D.is_approx_zero())
        throw domain_error("genericity undecidable: discriminant is O(p^" +
                           std::to_string(D.val_lower_bound()) + ")");
    return true;
}

namespace {

// integral roots of a cubic with integral mpz coefficients (co[0] x^3 + ...),
// exactly mod p^N; recursion depth bounded by the discriminant valuation
void integral_roots(const PAdicField& F, std::array<mpz_class, 4> co, int depth,
                    std::vector<mpz_class>& out, const mpz_class& base,
                    const mpz_class& scale) {
    long p = F.p();
    int N = F.precision();
    if (depth > N)
        throw domain_error("root search exhausted the precision budget");
    auto eval = [&](const mpz_class& x, const mpz_class& mod) {
        mpz_class v = ((co[0] * x % mod * x % mod * x + co[1] * x % mod * x +
                        co[2] * x + co[3]) % mod + mod) % mod;
        return v;
    };
    auto deriv = [&](const mpz_class& x, const mpz_class& mod) {
        mpz_class v = ((3 * co[0] * x % mod * x + 2 * co[1] * x + co[2]) % mod + mod) % mod;
        return v;
    };
    for (long r0 = 0; r0 < p; ++r0) {
        mpz_class r(r0);
        if (eval(r, mpz_class(p)) != 0) continue;
        if (deriv(r, mpz_class(p)) != 0) {
            // simple root: Hensel lift digit by digit
            for (int k = 1; k < N; ++k) {
                const mpz_class& mod = F.pk(k + 1);
                mpz_class fr = eval(r, mod);
                if (fr == 0) continue;
                mpz_class corr = (fr / F.pk(k)) % p;
                mpz_class dr = deriv(r, mpz_class(p));
                mpz_class step = corr * padic::mod_inv(dr, mpz_class(p)) % p;
                r = (r - step * F.pk(k)) % mod;
                if (r < 0) r += mod;
            }
            out.push_back(base + scale * r);
            continue;
        }
        // singular reduction: substitute x = r0 + p t, divide by the content
        std::array<mpz_class, 4> sh;
        mpz_class r0z(r0);
        sh[0] = co[0] * p * p * p;
        sh[1] = (3 * co[0] * r0z + co[1]) * p * p;
        sh[2] = (3 * co[0] * r0z * r0z + 2 * co[1] * r0z + co[2]) * p;
        sh[3] = co[0] * r0z * r0z * r0z + co[1] * r0z * r0z + co[2] * r0z + co[3];
        long m = -1;
        for (const auto& x : sh)
            if (x != 0) {
                long v = mpz_val_p(x, p);
                if (m < 0 || v < m) m = v;
            }
        if (m < 0) throw internal_error("zero polynomial in root recursion");
        for (auto& x : sh)
            for (long j = 0; j < m; ++j) x /= p;
        integral_roots(F, sh, depth + 1, out, base + scale * r0z, scale * p);
    }
}

// integral mpz coefficients of a unit-content rescaling of f(x, 1)
std::array<mpz_class, 4> integral_coeffs(const BinaryCubic& f) {
    const PAdicField& F = field_of(f);
    long minval = LONG_MAX;
    for (const PadicNumber* x : {&f.a, &f.b, &f.c, &f.d}) {
        if (x->is_zero()) continue;
        if (x->is_approx_zero())
            throw domain_error("coefficient indistinguishable from zero");
        minval = std::min(minval, x->val());
    }
    int N = F.precision();
    std::array<mpz_class, 4> co;
    const PadicNumber* xs[4] = {&f.a, &f.b, &f.c, &f.d};
    for (int i = 0; i < 4; ++i) {
        if (xs[i]->is_zero()) { co[i] = 0; continue; }
        long v = xs[i]->val() - minval;
        int digits = int(std::max<long>(4, N - v));
        co[i] = xs[i]->unit_mod(digits) * F.pk(int(std::min<long>(v, N)));
    }
    return co;
}

} // namespace

std::vector<PadicNumber> cubic_roots(const BinaryCubic& f) {
    const PAdicField& F = field_of(f);
    if (f.a.is_zero() || f.a.is_approx_zero())
        throw domain_error("cubic_roots needs a nonzero leading coefficient");
    // scale to unit content, then monicize: z = a x turns a x^3 + b x^2 + c x + d
    // into z^3 + b z^2 + (ac) z + (a^2 d), whose roots are integral
    std::array<mpz_class, 4> co = integral_coeffs(f);
    std::array<mpz_class, 4> monic = {mpz_class(1), co[1], co[0] * co[2],
                                      co[0] * co[0] * co[3]};
    std::vector<mpz_class> zs;
    integral_roots(F, monic, 0, zs, mpz_class(0), mpz_class(1));
    // x = z / a, deduplicated at working depth
    std::vector<PadicNumber> out;
    PadicNumber a_resc = PadicNumber::from_integer(F, co[0]);
    for (const auto& z : zs) {
        PadicNumber x = PadicNumber::from_integer(F, z) / a_resc;
        bool dup = false;
        for (const auto& y : out) {
            PadicNumber diff = x - y;
            if (diff.is_zero() ||
                (diff.is_approx_zero() && diff.val_lower_bound() >= F.precision() / 2) ||
                (!diff.is_approx_zero() && !diff.is_zero() &&
                 diff.val() >= F.precision() / 2))
                dup = true;
        }
        if (!dup) out.push_back(x);
    }
    return out;
}

CubicAlgebraClass etale_class(const BinaryCubic& f0) {
    const PAdicField& F = field_of(f0);
    if (!is_generic(f0)) throw domain_error("etale_class needs a generic form");
    BinaryCubic f = f0;
    if (f.a.is_zero() || f.a.is_approx_zero()) {
        // move [1:0] off the zero locus: try shears x -> x, y -> tx + y
        bool fixed = false;
        for (long t = 0; t <= 3 * F.p() && !fixed; ++t) {
            BinaryCubic g = gl2_transform(f0, 1, t, 0, 1);
            if (!g.a.is_zero() && !g.a.is_approx_zero()) { f = g; fixed = true; }
        }
        if (!fixed) throw internal_error("could not move the form off a = 0");
    }
    auto roots = cubic_roots(f);
    CubicAlgebraClass out{CubicClassKind::CubicField, std::nullopt, std::nullopt,
                          long(roots.size())};
    if (roots.size() == 3) {
        out.kind = CubicClassKind::SplitTriple;
        return out;
    }
    if (roots.size() == 1) {
        out.kind = CubicClassKind::FieldTimesQuadratic;
        // divide the monicized cubic by (z - rho) and read the quadratic disc
        std::array<mpz_class, 4> co = integral_coeffs(f);
        PadicNumber a = PadicNumber::from_integer(F, co[0]);
        PadicNumber B = PadicNumber::from_integer(F, co[1]);
        PadicNumber C = PadicNumber::from_integer(F, co[0] * co[2]);
        PadicNumber rho = roots[0] * a;
        // z^2 + (B + rho) z + (C + rho B + rho^2)
        PadicNumber B2 = B + rho;
        PadicNumber C2 = C + rho * B + rho * rho;
        PadicNumber disc = B2 * B2 - PadicNumber::from_integer(F, 4) * C2;
        if (disc.is_zero() || disc.is_approx_zero())
            throw internal_error("separable cubic with degenerate quadratic part");
        long v = disc.val();
        int leg = F.legendre(disc.unit_mod(1));
        long cls = (v % 2 ? F.p() : 1) * (leg == -1 ? F.nonsquare_unit() : 1);
        if (cls == 1)
            throw internal_error("square quadratic discriminant with one root");
        out.quad_disc_class = cls;
        return out;
    }
    if (!roots.empty()) throw internal_error("cubic with two roots in F");
    // no roots: unramified iff the reduction is an irreducible cubic, i.e.
    // iff it has no roots mod p; otherwise totally ramified
    std::array<mpz_class, 4> co = integral_coeffs(f);
    std::array<mpz_class, 4> monic = {mpz_class(1), co[1], co[0] * co[2],
                                      co[0] * co[0] * co[3]};
    bool root_mod_p = false;
    for (long r = 0; r < F.p() && !root_mod_p; ++r) {
        mpz_class v = (((monic[0] * r * r * r + monic[1] * r * r + monic[2] * r +
                         monic[3]) % F.p()) + F.p()) % F.p();
        if (v == 0) root_mod_p = true;
    }
    out.ramification_e = root_mod_p ? 3 : 1;
    return out;
}

std::string cubic_class_name(CubicClassKind k) {
    switch (k) {
        case CubicClassKind::SplitTriple: return "split-triple";
        case CubicClassKind::FieldTimesQuadratic: return "field-times-quadratic";
        case CubicClassKind::CubicField: return "cubic-field";
    }
    throw internal_error("bad CubicClassKind");
}

OrbitLabel orbit_label(const PadicNumber& lambda, const QuadExt& K) {
    if (lambda.no_unit_part()) throw domain_error("orbit label of zero");
    OrbitLabel out;
    if (K.is_norm(lambda)) {
        out.label = 0;
        out.stabilizer = "U(V2)";
        out.rep = {{{Rational(0), Rational(0), Rational(0)},
                    {Rational(0), Rational(-1), Rational(0)},
                    {Rational(0), Rational(0), Rational(0)}}};
        return out;
    }
    out.label = 1;
    out.stabilizer = "U(V2')";
    PadicNumber l0 = K.canonical_nonnorm();
    long lam0 = l0.unit_mod(1).get_si() * (l0.val() > 0 ? K.base().p() : 1);
    // f_1 = [[-l0, 0, -1/2], [0, 0, 0], [-1/2, 0, -1/(4 l0)]]
    out.rep = {{{Rational(-lam0), Rational(0), Rational(-1, 2)},
                {Rational(0), Rational(0), Rational(0)},
                {Rational(-1, 2), Rational(0), Rational(-1, 4 * lam0)}}};
    return out;
}

} // namespace g2p::cubic
