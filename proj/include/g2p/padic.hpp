#ifndef G2P_PADIC_HPP
#define G2P_PADIC_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "g2p/errors.hpp"
#include "g2p/turn.hpp"

namespace g2p::padic {

// ---------------------------------------------------------------------------
// Base field F = Q_p, p an odd prime.  Residue cardinality q = p, uniformizer
// p.  Elements are finite-precision: a fixed number of significant p-adic
// digits, with a hard error when a question outruns the known digits.
// ---------------------------------------------------------------------------
class PAdicField {
public:
    explicit PAdicField(long p, int precision = 32);

    long p() const { return p_; }
    int precision() const { return precision_; }

    // p^k for 0 <= k <= precision (cached)
    const mpz_class& pk(int k) const;

    // smallest positive quadratic non-residue mod p (canonical unit u)
    long nonsquare_unit() const { return nonsquare_unit_; }

    // Legendre symbol (a|p) for a coprime to p
    int legendre(const mpz_class& a) const;

    bool operator==(const PAdicField& o) const {
        return p_ == o.p_ && precision_ == o.precision_;
    }

private:
    long p_;
    int precision_;
    long nonsquare_unit_;
    std::vector<mpz_class> powers_;
};

// ---------------------------------------------------------------------------
// Element of Q_p.  Three states:
//   exact zero                     -- the zero element
//   nonzero: p^val * unit          -- unit known modulo p^prec, prec >= 1
//   approximate zero: O(p^A)       -- all known digits cancelled; the value
//                                     lies in p^A Z_p and nothing more is
//                                     known.  Asking for its valuation, unit
//                                     or inverse is an error (never a guess).
// ---------------------------------------------------------------------------
class PadicNumber {
public:
    PadicNumber() : F_(nullptr), state_(State::ExactZero), val_(0), prec_(0) {}

    static PadicNumber zero(const PAdicField& F);
    static PadicNumber from_integer(const PAdicField& F, const mpz_class& n);
    static PadicNumber from_integer(const PAdicField& F, long n);
    static PadicNumber from_rational(const PAdicField& F, const mpz_class& num,
                                     const mpz_class& den);
    // p^val * unit, unit given as an integer coprime to p
    static PadicNumber from_val_unit(const PAdicField& F, long val,
                                     const mpz_class& unit);

    const PAdicField& field() const;
    bool is_zero() const { return state_ == State::ExactZero; }
    bool is_approx_zero() const { return state_ == State::ApproxZero; }
    // zero in either sense; multiplicative preconditions reject both
    bool no_unit_part() const { return state_ != State::Nonzero; }

    long val() const;   // error on exact/approximate zero
    int prec() const { return prec_; }

    // lower bound on the valuation that is always available: val for a
    // nonzero element, the O(p^A) exponent for an approximate zero, and
    // effectively +infinity for the exact zero
    long val_lower_bound() const;

    // unit part reduced mod p^k (requires k <= prec)
    mpz_class unit_mod(int k) const;

    // the value reduced mod p^k (requires val >= 0)
    mpz_class residue_mod(int k) const;

    // fractional part {x} in Q/Z as a turn: r/p^k when val = -k < 0, else 0
    Turn frac_turn() const;

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber inv() const;
    PadicNumber operator/(const PadicNumber& o) const;
    PadicNumber pow(long k) const;

    // x == y modulo p^k, i.e. val(x - y) >= k; errors only if the digits
    // cannot decide
    bool eq_mod(const PadicNumber& o, int k) const;

    std::string str() const;

private:
    enum class State { ExactZero, ApproxZero, Nonzero };
    PadicNumber(const PAdicField* F, long val, mpz_class unit, long prec);
    static PadicNumber approx_zero(const PAdicField& F, long abs_prec);

    const PAdicField* F_;
    State state_;
    long val_;        // valuation (Nonzero) or absolute precision (ApproxZero)
    mpz_class unit_;
    int prec_;
};

// Hilbert symbol (a,b)_p for odd p, via the closed formula
//   (a,b) = (-1)^{alpha*beta*(p-1)/2} (u|p)^beta (v|p)^alpha,
// a = p^alpha u, b = p^beta v.  +1 iff z^2 = a x^2 + b y^2 has a nontrivial
// solution over Q_p.
int hilbert_symbol(const PadicNumber& a, const PadicNumber& b);

// ---------------------------------------------------------------------------
// Quadratic extension K = F(sqrt(d)), d a canonical non-square:
//   d = u    : unramified   (u = smallest positive non-residue mod p)
//   d = p    : ramified
//   d = u*p  : the other ramified class
// delta = sqrt(d) is the canonical trace-zero element; the uniformizer is p
// in the unramified case and sqrt(d) otherwise.
// ---------------------------------------------------------------------------
enum class ExtType { Unramified, RamifiedPi, RamifiedUnitPi };

std::string ext_type_name(ExtType t);
ExtType ext_type_from_name(const std::string& name);

class ExtElement;

class QuadExt {
public:
    QuadExt(const PAdicField& F, ExtType type);

    const PAdicField& base() const { return F_; }
    ExtType type() const { return type_; }
    bool ramified() const { return type_ != ExtType::Unramified; }
    int e() const { return ramified() ? 2 : 1; }
    // residue cardinality of K
    long q() const { return ramified() ? F_.p() : F_.p() * F_.p(); }

    // the non-square class d as an element of F
    PadicNumber d() const;
    long d_small() const { return d_small_; }

    // omega_{K/F}(t) = hilbert(t, d); +1 exactly on norms
    int omega(const PadicNumber& t) const;
    bool is_norm(const PadicNumber& t) const { return omega(t) == +1; }

    // canonical non-norm representative lambda_0 (p if unramified, u if not)
    PadicNumber canonical_nonnorm() const;

    ExtElement delta() const;       // sqrt(d)
    ExtElement uniformizer() const; // p or sqrt(d)
    ExtElement from_base(const PadicNumber& a) const;
    ExtElement make(const PadicNumber& a, const PadicNumber& b) const;
    ExtElement make_int(long a, long b) const;

    bool operator==(const QuadExt& o) const {
        return F_ == o.F_ && type_ == o.type_;
    }

private:
    PAdicField F_;
    ExtType type_;
    long d_small_;
};

// Element a + b*sqrt(d) of K.
class ExtElement {
public:
    ExtElement() : K_(nullptr) {}
    ExtElement(const QuadExt* K, PadicNumber a, PadicNumber b)
        : K_(K), a_(std::move(a)), b_(std::move(b)) {}

    const QuadExt& ext() const;
    const PadicNumber& re() const { return a_; }
    const PadicNumber& im() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    long val() const; // valuation w.r.t. the uniformizer of K

    ExtElement conj() const;          // a - b*sqrt(d)
    PadicNumber norm() const;         // a^2 - d b^2
    PadicNumber trace() const;        // 2a
    ExtElement operator-() const;
    ExtElement operator+(const ExtElement& o) const;
    ExtElement operator-(const ExtElement& o) const;
    ExtElement operator*(const ExtElement& o) const;
    ExtElement inv() const;
    ExtElement operator/(const ExtElement& o) const;
    ExtElement pow(long k) const;

    std::string str() const;

private:
    const QuadExt* K_;
    PadicNumber a_, b_;
};

// valuation of n w.r.t. p (n != 0)
long mpz_val_p(const mpz_class& n, long p);

// modular inverse, a coprime to m
mpz_class mod_inv(const mpz_class& a, const mpz_class& m);

// a square root of a mod p^k for odd p, val_p(a) = 0; throws if a is a
// non-residue
mpz_class sqrt_mod_pk(const PAdicField& F, const mpz_class& a, int k);

} // namespace g2p::padic

#endif
