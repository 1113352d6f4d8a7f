#include "g2p/padic.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace g2p::padic {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

PAdicField::PAdicField(long p, int precision) : p_(p), precision_(precision) {
    if (!is_prime(p)) throw domain_error("p must be prime, got " + std::to_string(p));
    if (p == 2) throw domain_error("p = 2 is not supported (wild ramification)");
    if (precision < 4) throw domain_error("precision must be >= 4");
    powers_.resize(precision_ + 1);
    powers_[0] = 1;
    for (int k = 1; k <= precision_; ++k) powers_[k] = powers_[k - 1] * p_;
    nonsquare_unit_ = 0;
    for (long u = 2; u < p_; ++u) {
        if (legendre(mpz_class(u)) == -1) { nonsquare_unit_ = u; break; }
    }
    if (nonsquare_unit_ == 0) throw internal_error("no quadratic non-residue found");
}

const mpz_class& PAdicField::pk(int k) const {
    if (k < 0 || k > precision_)
        throw domain_error("p^k out of precision range, k = " + std::to_string(k));
    return powers_[k];
}

int PAdicField::legendre(const mpz_class& a) const {
    mpz_class r;
    mpz_class pz(p_);
    mpz_powm_ui(r.get_mpz_t(), a.get_mpz_t(), (p_ - 1) / 2, pz.get_mpz_t());
    if (r == 1) return +1;
    if (r == p_ - 1) return -1;
    throw domain_error("legendre symbol of a non-unit");
}

long mpz_val_p(const mpz_class& n, long p) {
    if (n == 0) throw domain_error("valuation of zero");
    mpz_class m = n, q, r;
    long v = 0;
    while (true) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p);
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

mpz_class mod_inv(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("not invertible modulo " + m.get_str());
    return r;
}

mpz_class sqrt_mod_pk(const PAdicField& F, const mpz_class& a, int k) {
    long p = F.p();
    mpz_class a0 = a % p;
    if (a0 < 0) a0 += p;
    if (a0 == 0) throw domain_error("sqrt_mod_pk needs a unit");
    // root mod p by direct search (desk-scale p), then Hensel
    mpz_class r(-1);
    for (long x = 1; x < p; ++x) {
        if ((mpz_class(x) * x - a0) % p == 0) { r = x; break; }
    }
    if (r < 0) throw domain_error("not a square mod p");
    for (int j = 1; j < k; ++j) {
        const mpz_class& m = F.pk(j + 1);
        mpz_class f = (r * r - a) % m;
        if (f < 0) f += m;
        mpz_class corr = (f / F.pk(j)) % p;
        mpz_class step = (corr * mod_inv(2 * r % m, mpz_class(p))) % p;
        r = (r - step * F.pk(j)) % m;
        if (r < 0) r += m;
    }
    mpz_class res = r % F.pk(k);
    if (res < 0) res += F.pk(k);
    return res;
}

// --- PadicNumber -----------------------------------------------------------

PadicNumber::PadicNumber(const PAdicField* F, long val, mpz_class unit, long prec)
    : F_(F), state_(State::Nonzero), val_(val), unit_(std::move(unit)), prec_(0) {
    if (prec < 1) throw domain_error("padic element with no known digits");
    prec_ = int(std::min<long>(prec, F_->precision()));
    unit_ %= F_->pk(prec_);
    if (unit_ < 0) unit_ += F_->pk(prec_);
    if (unit_ % F_->p() == 0) throw internal_error("unit part divisible by p");
}

PadicNumber PadicNumber::zero(const PAdicField& F) {
    PadicNumber x;
    x.F_ = &F;
    return x;
}

PadicNumber PadicNumber::approx_zero(const PAdicField& F, long abs_prec) {
    PadicNumber x;
    x.F_ = &F;
    x.state_ = State::ApproxZero;
    x.val_ = abs_prec;
    return x;
}

PadicNumber PadicNumber::from_integer(const PAdicField& F, const mpz_class& n) {
    if (n == 0) return zero(F);
    long v = mpz_val_p(n, F.p());
    mpz_class u = n;
    for (long j = 0; j < v; ++j) u /= F.p();
    return PadicNumber(&F, v, u, F.precision());
}

PadicNumber PadicNumber::from_integer(const PAdicField& F, long n) {
    return from_integer(F, mpz_class(n));
}

PadicNumber PadicNumber::from_rational(const PAdicField& F, const mpz_class& num,
                                       const mpz_class& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    if (num == 0) return zero(F);
    return from_integer(F, num) / from_integer(F, den);
}

PadicNumber PadicNumber::from_val_unit(const PAdicField& F, long val,
                                       const mpz_class& unit) {
    if (unit % F.p() == 0) throw domain_error("unit part must be coprime to p");
    return PadicNumber(&F, val, unit, F.precision());
}

const PAdicField& PadicNumber::field() const {
    if (!F_) throw internal_error("unattached padic element");
    return *F_;
}

long PadicNumber::val() const {
    if (state_ == State::ExactZero) throw domain_error("valuation of zero");
    if (state_ == State::ApproxZero)
        throw domain_error("valuation undecidable: element is O(p^" +
                           std::to_string(val_) + ")");
    return val_;
}

long PadicNumber::val_lower_bound() const {
    if (state_ == State::ExactZero) return LONG_MAX;
    return val_;
}

mpz_class PadicNumber::unit_mod(int k) const {
    if (state_ != State::Nonzero) throw domain_error("unit part of (approximate) zero");
    if (k > prec_)
        throw domain_error("precision exhausted: " + std::to_string(k) +
                           " digits requested, " + std::to_string(prec_) + " known");
    mpz_class r = unit_ % F_->pk(k);
    if (r < 0) r += F_->pk(k);
    return r;
}

mpz_class PadicNumber::residue_mod(int k) const {
    if (state_ == State::ExactZero) return 0;
    if (state_ == State::ApproxZero) {
        if (val_ >= k) return 0;
        throw domain_error("residue undecidable at requested depth");
    }
    if (val_ < 0) throw domain_error("residue of a non-integral element");
    if (val_ >= k) return 0;
    return (unit_mod(int(k - val_)) * F_->pk(int(val_))) % F_->pk(k);
}

Turn PadicNumber::frac_turn() const {
    if (state_ == State::ApproxZero) {
        if (val_ >= 0) return Turn();
        throw domain_error("fractional part undecidable at precision");
    }
    if (state_ == State::ExactZero || val_ >= 0) return Turn();
    int k = int(-val_);
    mpz_class r = unit_mod(k);
    mpz_class pk = F_->pk(k);
    if (!r.fits_slong_p() || !pk.fits_slong_p())
        throw domain_error("fractional part too deep for exact turn arithmetic");
    return Turn(r.get_si(), pk.get_si());
}

PadicNumber PadicNumber::operator-() const {
    if (state_ != State::Nonzero) return *this;
    return PadicNumber(F_, val_, F_->pk(prec_) - unit_, prec_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (state_ == State::ExactZero) return o;
    if (o.state_ == State::ExactZero) return *this;
    if (state_ == State::ApproxZero && o.state_ == State::ApproxZero)
        return approx_zero(*F_, std::min(val_, o.val_));
    if (state_ == State::ApproxZero || o.state_ == State::ApproxZero) {
        const PadicNumber& az = (state_ == State::ApproxZero) ? *this : o;
        const PadicNumber& nz = (state_ == State::ApproxZero) ? o : *this;
        if (nz.val_ >= az.val_) return approx_zero(*F_, az.val_);
        long digits = std::min<long>(nz.prec_, az.val_ - nz.val_);
        return PadicNumber(F_, nz.val_, nz.unit_mod(int(digits)), digits);
    }
    long v = std::min(val_, o.val_);
    long s1 = val_ - v, s2 = o.val_ - v;
    // digits both summands are known to, counted from p^v
    long m = std::min<long>(prec_ + s1, o.prec_ + s2);
    m = std::min<long>(m, F_->precision());
    mpz_class sum = 0;
    if (s1 < m) sum += unit_ * F_->pk(int(s1));
    if (s2 < m) sum += o.unit_ * F_->pk(int(s2));
    sum %= F_->pk(int(m));
    if (sum < 0) sum += F_->pk(int(m));
    if (sum == 0) return approx_zero(*F_, v + m);
    long w = mpz_val_p(sum, F_->p());
    return PadicNumber(F_, v + w, sum / F_->pk(int(w)), m - w);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (state_ == State::ExactZero || o.state_ == State::ExactZero) return zero(*F_);
    if (state_ == State::ApproxZero || o.state_ == State::ApproxZero) {
        // val_ holds the valuation or the O(p^A) bound; either way the sum
        // bounds the product from below
        return approx_zero(*F_, val_ + o.val_);
    }
    int k = std::min(prec_, o.prec_);
    return PadicNumber(F_, val_ + o.val_, (unit_mod(k) * o.unit_mod(k)) % F_->pk(k), k);
}

PadicNumber PadicNumber::inv() const {
    if (state_ == State::ExactZero) throw domain_error("division by zero");
    if (state_ == State::ApproxZero)
        throw domain_error("cannot invert an element indistinguishable from zero");
    return PadicNumber(F_, -val_, mod_inv(unit_, F_->pk(prec_)), prec_);
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const { return *this * o.inv(); }

PadicNumber PadicNumber::pow(long k) const {
    if (state_ == State::ExactZero) {
        if (k <= 0) throw domain_error("0^k for k <= 0");
        return *this;
    }
    if (state_ == State::ApproxZero) {
        if (k <= 0) throw domain_error("cannot invert an approximate zero");
        return approx_zero(*F_, val_ * k);
    }
    if (k == 0) return from_integer(*F_, 1);
    PadicNumber base = k > 0 ? *this : inv();
    long e = k > 0 ? k : -k;
    mpz_class u;
    mpz_powm_ui(u.get_mpz_t(), base.unit_.get_mpz_t(), (unsigned long)e,
                F_->pk(base.prec_).get_mpz_t());
    return PadicNumber(F_, base.val_ * e, u, base.prec_);
}

bool PadicNumber::eq_mod(const PadicNumber& o, int k) const {
    PadicNumber d = *this - o;
    if (d.state_ == State::ExactZero) return true;
    if (d.state_ == State::ApproxZero) {
        if (d.val_ >= k) return true;
        throw domain_error("equality undecidable at requested depth");
    }
    return d.val_ >= k;
}

std::string PadicNumber::str() const {
    if (state_ == State::ExactZero) return "0";
    if (state_ == State::ApproxZero) return "O(p^" + std::to_string(val_) + ")";
    std::ostringstream os;
    os << unit_.get_str() << "*" << F_->p() << "^" << val_
       << " (mod p^" << (val_ + prec_) << ")";
    return os.str();
}

int hilbert_symbol(const PadicNumber& a, const PadicNumber& b) {
    if (a.no_unit_part() || b.no_unit_part())
        throw domain_error("hilbert symbol needs nonzero arguments");
    const PAdicField& F = a.field();
    long alpha = a.val(), beta = b.val();
    mpz_class u = a.unit_mod(1), v = b.unit_mod(1);
    int sign = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && ((F.p() - 1) / 2) % 2 != 0) sign = -sign;
    if (beta % 2 != 0 && F.legendre(u) == -1) sign = -sign;
    if (alpha % 2 != 0 && F.legendre(v) == -1) sign = -sign;
    return sign;
}

// --- QuadExt ---------------------------------------------------------------

std::string ext_type_name(ExtType t) {
    switch (t) {
        case ExtType::Unramified: return "unramified";
        case ExtType::RamifiedPi: return "ramified-p";
        case ExtType::RamifiedUnitPi: return "ramified-up";
    }
    throw internal_error("bad ExtType");
}

ExtType ext_type_from_name(const std::string& name) {
    if (name == "unramified") return ExtType::Unramified;
    if (name == "ramified-p") return ExtType::RamifiedPi;
    if (name == "ramified-up") return ExtType::RamifiedUnitPi;
    throw domain_error("unknown extension type '" + name + "'");
}

QuadExt::QuadExt(const PAdicField& F, ExtType type) : F_(F), type_(type) {
    switch (type_) {
        case ExtType::Unramified: d_small_ = F_.nonsquare_unit(); break;
        case ExtType::RamifiedPi: d_small_ = F_.p(); break;
        case ExtType::RamifiedUnitPi: d_small_ = F_.nonsquare_unit() * F_.p(); break;
    }
}

PadicNumber QuadExt::d() const { return PadicNumber::from_integer(F_, d_small_); }

int QuadExt::omega(const PadicNumber& t) const { return hilbert_symbol(t, d()); }

PadicNumber QuadExt::canonical_nonnorm() const {
    // unramified: norms are the even-valuation elements, take p;
    // ramified: unit norms are the residue squares, take u
    long l0 = ramified() ? F_.nonsquare_unit() : F_.p();
    PadicNumber lam = PadicNumber::from_integer(F_, l0);
    if (is_norm(lam)) throw internal_error("canonical non-norm is a norm");
    return lam;
}

ExtElement QuadExt::delta() const {
    return ExtElement(this, PadicNumber::zero(F_), PadicNumber::from_integer(F_, 1));
}

ExtElement QuadExt::uniformizer() const {
    if (ramified()) return delta();
    return from_base(PadicNumber::from_integer(F_, F_.p()));
}

ExtElement QuadExt::from_base(const PadicNumber& a) const {
    return ExtElement(this, a, PadicNumber::zero(F_));
}

ExtElement QuadExt::make(const PadicNumber& a, const PadicNumber& b) const {
    return ExtElement(this, a, b);
}

ExtElement QuadExt::make_int(long a, long b) const {
    return ExtElement(this, PadicNumber::from_integer(F_, a),
                      PadicNumber::from_integer(F_, b));
}

// --- ExtElement ------------------------------------------------------------

const QuadExt& ExtElement::ext() const {
    if (!K_) throw internal_error("unattached extension element");
    return *K_;
}

long ExtElement::val() const {
    if (is_zero()) throw domain_error("valuation of zero");
    long e = K_->e();
    // K-valuations of the two coordinates: e*val(a) and e*val(b) + (e-1)
    long exact = LONG_MAX;  // min over coordinates with a known valuation
    long bound = LONG_MAX;  // min over lower bounds of cancelled coordinates
    auto feed = [&](const PadicNumber& c, long shift) {
        if (c.is_zero()) return;
        if (c.is_approx_zero())
            bound = std::min(bound, e * c.val_lower_bound() + shift);
        else
            exact = std::min(exact, e * c.val() + shift);
    };
    feed(a_, 0);
    feed(b_, e - 1);
    if (exact < bound) return exact;
    throw domain_error("valuation undecidable: coordinate lost to cancellation");
}

ExtElement ExtElement::conj() const { return ExtElement(K_, a_, -b_); }

PadicNumber ExtElement::norm() const { return a_ * a_ - K_->d() * b_ * b_; }

PadicNumber ExtElement::trace() const { return a_ + a_; }

ExtElement ExtElement::operator-() const { return ExtElement(K_, -a_, -b_); }

ExtElement ExtElement::operator+(const ExtElement& o) const {
    return ExtElement(K_, a_ + o.a_, b_ + o.b_);
}

ExtElement ExtElement::operator-(const ExtElement& o) const {
    return ExtElement(K_, a_ - o.a_, b_ - o.b_);
}

ExtElement ExtElement::operator*(const ExtElement& o) const {
    // (a + b s)(a' + b' s) = (aa' + d bb') + (ab' + a'b) s
    return ExtElement(K_, a_ * o.a_ + K_->d() * b_ * o.b_, a_ * o.b_ + o.a_ * b_);
}

ExtElement ExtElement::inv() const {
    if (is_zero()) throw domain_error("division by zero in K");
    PadicNumber n = norm();
    return ExtElement(K_, a_ / n, -(b_ / n));
}

ExtElement ExtElement::operator/(const ExtElement& o) const { return *this * o.inv(); }

ExtElement ExtElement::pow(long k) const {
    if (k == 0) return K_->make_int(1, 0);
    ExtElement base = k > 0 ? *this : inv();
    long e = k > 0 ? k : -k;
    ExtElement acc = K_->make_int(1, 0);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string ExtElement::str() const {
    return a_.str() + " + (" + b_.str() + ")*sqrt(d)";
}

} // namespace g2p::padic
