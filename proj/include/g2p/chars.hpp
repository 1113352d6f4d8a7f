#ifndef G2P_CHARS_HPP
#define G2P_CHARS_HPP

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "g2p/padic.hpp"
#include "g2p/rational.hpp"
#include "g2p/turn.hpp"

namespace g2p::chars {

// ---------------------------------------------------------------------------
// Field handle: the base field F or a quadratic extension K, with cached unit
// group tables (O/p^a)^x per level.  Characters hold a shared_ptr to one of
// these, so copies stay cheap and tables are built once.
// ---------------------------------------------------------------------------

// residue of an element of O_L / p_L^a as a pair x + y*sqrt(d) (y = 0 over F)
struct ResElt {
    long x = 0, y = 0;
    bool operator==(const ResElt& o) const { return x == o.x && y == o.y; }
};

class Field;

// The unit group (O_L/p_L^a)^x presented by an independent generating set:
// every unit is uniquely prod g_i^{e_i}, 0 <= e_i < order_i.  Discrete logs
// via a full enumeration table (desk-scale levels only).
class UnitBasis {
public:
    UnitBasis(const Field& L, int level);

    int level() const { return level_; }
    int ngens() const { return int(gens_.size()); }
    const std::vector<long>& orders() const { return orders_; }
    const ResElt& gen(int i) const { return gens_[i]; }
    long group_order() const { return group_order_; }

    ResElt one() const { return ResElt{1, 0}; }
    ResElt mul(const ResElt& a, const ResElt& b) const;
    ResElt pow(const ResElt& a, long e) const;
    ResElt canon(long x, long y) const;

    // reduce a unit of O_L to its residue (element must have valuation 0)
    ResElt reduce_unit(const padic::PadicNumber& x) const;
    ResElt reduce_unit(const padic::ExtElement& x) const;

    std::vector<long> dlog(const ResElt& u) const;

    // moduli of the two coordinates
    long mod_x() const { return mx_; }
    long mod_y() const { return my_; }

    // representatives of the layer (1 + p^{level-1})/(1 + p^level)
    std::vector<ResElt> top_layer_units() const;

private:
    void build_table();
    const Field* L_;
    int level_;
    long p_;
    bool ext_, ram_;
    long d_;                 // d mod mx_ (extension case)
    long mx_, my_;
    std::vector<ResElt> gens_;
    std::vector<long> orders_;
    long group_order_;
    std::map<long long, std::vector<long>> dlog_;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    static std::shared_ptr<const Field> base(long p, int precision = 32);
    static std::shared_ptr<const Field> quadratic(long p, padic::ExtType t,
                                                  int precision = 32);
    static std::shared_ptr<const Field> quadratic_of(
        std::shared_ptr<const Field> baseF, padic::ExtType t);

    bool is_ext() const { return K_.has_value(); }
    const padic::PAdicField& F() const { return F_; }
    const padic::QuadExt& K() const;
    long p() const { return F_.p(); }
    long q() const { return is_ext() ? K_->q() : F_.p(); }
    int e() const { return is_ext() ? K_->e() : 1; }

    const UnitBasis& units(int level) const;

    std::shared_ptr<const Field> base_field() const;

    bool same(const Field& o) const;

private:
    explicit Field(long p, int precision);
    Field(long p, padic::ExtType t, int precision);
    padic::PAdicField F_;
    std::optional<padic::QuadExt> K_;
    mutable std::mutex mu_;
    mutable std::map<int, std::unique_ptr<UnitBasis>> bases_;
};

using FieldPtr = std::shared_ptr<const Field>;

// ---------------------------------------------------------------------------
// MultChar: finite-order character of L^x with an unramified real twist,
//   chi(x) = unit_part(u) * z_pi^{val x} * |x|^s ,  x = pi^{val} u.
// unit_part is stored by exact root-of-unity images (turns) on the canonical
// generating set of (O/p^a)^x; the stored conductor is always exact.
// ---------------------------------------------------------------------------
struct CharValue {
    Turn unit;       // exact root of unity
    double scale;    // q^{-s * val(x)}
    std::complex<double> value() const { return unit.value() * scale; }
};

class MultChar {
public:
    static MultChar trivial(FieldPtr L);
    static MultChar unramified(FieldPtr L, Turn at_uniformizer,
                               Rational twist_s = Rational(0));
    static MultChar from_images(FieldPtr L, int conductor,
                                std::vector<Turn> gen_images, Turn at_uniformizer,
                                Rational twist_s = Rational(0));
    // omega_{K/F} as a character of F^x
    static MultChar omega(FieldPtr F, const padic::QuadExt& K);
    // mu o N_{K/F} as a character of K^x, mu over F
    static MultChar compose_norm(const MultChar& mu, FieldPtr K);

    const FieldPtr& field() const { return L_; }
    int conductor() const { return cond_; }
    bool is_unramified() const { return cond_ == 0; }
    const Turn& at_uniformizer() const { return unif_; }
    const std::vector<Turn>& gen_images() const { return images_; }
    const Rational& twist() const { return s_; }
    bool is_unitary() const { return s_.is_zero(); }

    CharValue eval(const padic::PadicNumber& x) const;   // base-field char
    CharValue eval(const padic::ExtElement& x) const;    // extension char
    Turn eval_unit(const ResElt& u) const;               // unit residue direct

    MultChar operator*(const MultChar& o) const;
    MultChar inv() const;
    MultChar pow(long k) const;
    bool is_trivial() const;
    bool operator==(const MultChar& o) const;
    bool operator!=(const MultChar& o) const { return !(*this == o); }

    // exact multiplicative order (requires s = 0)
    long order() const;

    // Galois operations (extension characters only)
    MultChar galois_twist() const;               // chi^c
    MultChar restrict_to_base() const;           // chi|_{F^x}
    bool is_galois_invariant() const;
    bool chi_squared_trivial() const;
    // chi|_{F^x} == omega_{K/F} (requires unitary chi)
    bool is_conjugate_symplectic() const;

    // for Galois-invariant chi: canonical mu over F with mu o N = chi
    MultChar descend_via_norm() const;

    std::string str() const;

private:
    MultChar(FieldPtr L, int cond, std::vector<Turn> images, Turn unif, Rational s);
    void normalize();   // strip trivial top layers so the conductor is exact
    FieldPtr L_;
    int cond_;
    std::vector<Turn> images_;
    Turn unif_;
    Rational s_;
};

// ---------------------------------------------------------------------------
// K1Char: character of the norm-one subgroup K^1 = ker N_{K/F}, represented
// by its pullback along i^{-1}: K^x/F^x ~ K^1 (x -> x/x^c), i.e. by a
// character mu~ of K^x trivial on F^x.
// ---------------------------------------------------------------------------
class K1Char {
public:
    static K1Char trivial(FieldPtr K);
    // restriction eta|_{K^1} of a character of K^x; pullback eta * (eta^c)^{-1}
    static K1Char restriction_of(const MultChar& eta);
    // wrap an explicit character of K^x trivial on F^x
    static K1Char from_inflation(MultChar tilde);

    // mu~ on K^x (this is inflate_via_i)
    const MultChar& inflation() const { return tilde_; }

    // value on u in K^1
    Turn eval_on_norm_one(const padic::ExtElement& u) const;

    K1Char operator*(const K1Char& o) const;
    K1Char inv() const;
    bool is_trivial() const { return tilde_.is_trivial(); }
    bool operator==(const K1Char& o) const { return tilde_ == o.tilde_; }

    // all characters of K^1 of conductor <= 1 (p+1 of them unramified, 2 ramified)
    static std::vector<K1Char> enumerate_conductor_le_one(FieldPtr K);

private:
    explicit K1Char(MultChar tilde);
    MultChar tilde_;
};

// ---------------------------------------------------------------------------
// Additive characters.  Over F: psi(x) = e^{2 pi i {a x / p^n}} -- level n
// before the twist a.  Over K: psi_K(x) = psi_F(Tr(m x)).
// ---------------------------------------------------------------------------
class AddChar {
public:
    AddChar(FieldPtr F, int level);
    AddChar(FieldPtr F, int level, padic::PadicNumber twist);

    const FieldPtr& field() const { return F_; }
    int base_level() const { return level_; }
    // trivial on p^l, nontrivial on p^{l-1}
    int level() const;
    const padic::PadicNumber& twist_scalar() const { return twist_; }

    Turn eval(const padic::PadicNumber& x) const;

    AddChar twist(const padic::PadicNumber& a) const;
    AddChar conjugate() const;   // psi-bar = psi_{-1}

private:
    FieldPtr F_;
    int level_;
    padic::PadicNumber twist_;
};

class AddCharOnK {
public:
    AddCharOnK(FieldPtr K, AddChar base, padic::ExtElement mult);

    const FieldPtr& field() const { return K_; }
    int level() const;   // e*n - val(different) - val_K(mult)
    Turn eval(const padic::ExtElement& x) const;
    const padic::ExtElement& mult() const { return m_; }
    AddCharOnK twist(const padic::ExtElement& a) const;
    AddCharOnK conjugate() const;

private:
    FieldPtr K_;
    AddChar base_;
    padic::ExtElement m_;
};

// x -> psi(Tr_{K/F}(-delta x)); delta must be nonzero (trace-zero by intent)
AddCharOnK add_char_compose_trace(const AddChar& psi, FieldPtr K,
                                  const padic::ExtElement& delta);

// The canonical conjugate-symplectic character: unramified K gives the
// unramified character with value -1 at p; ramified K gives the conductor-1
// character with Legendre unit part and the canonical square root at pi.
MultChar canonical_conjugate_symplectic(FieldPtr K);

// deterministic random characters for property suites
MultChar random_char(std::mt19937& rng, FieldPtr L, int max_conductor,
                     long max_unif_order = 12);

} // namespace g2p::chars

#endif
