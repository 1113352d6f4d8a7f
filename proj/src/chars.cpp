#include "g2p/chars.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

namespace g2p::chars {

using padic::ExtElement;
using padic::ExtType;
using padic::PAdicField;
using padic::PadicNumber;
using padic::QuadExt;

namespace {

constexpr int kMaxConductor = 3;    // residue enumerations stay <= p^6 terms
constexpr long kMaxTablePrime = 47; // desk-scale guard for unit tables

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

long lcm2(long a, long b) { return a / std::gcd(a, b) * b; }

// primitive root mod p (odd p)
long primitive_root(long p) {
    for (long c = 2; c < p; ++c) {
        bool prim = true;
        for (long f : prime_factors(p - 1))
            if (powmod(c, (p - 1) / f, p) == 1) { prim = false; break; }
        if (prim) return c;
    }
    throw internal_error("no primitive root mod " + std::to_string(p));
}

} // namespace

// --- UnitBasis ---------------------------------------------------------------

UnitBasis::UnitBasis(const Field& L, int level) : L_(&L), level_(level) {
    if (level < 1) throw internal_error("UnitBasis needs level >= 1");
    if (level > kMaxConductor)
        throw domain_error("conductor exponent " + std::to_string(level) +
                           " exceeds the enforced bound " + std::to_string(kMaxConductor));
    p_ = L.p();
    if (p_ > kMaxTablePrime)
        throw domain_error("residue tables limited to p <= " +
                           std::to_string(kMaxTablePrime));
    ext_ = L.is_ext();
    ram_ = ext_ && L.K().ramified();
    if (!ext_) {
        mx_ = ipow(p_, level_);
        my_ = 1;
        d_ = 0;
    } else if (!ram_) {
        mx_ = my_ = ipow(p_, level_);
        d_ = L.K().d_small() % mx_;
    } else {
        int j = level_ / 2, r = level_ % 2;
        mx_ = ipow(p_, j + r);
        my_ = std::max(ipow(p_, j), 1L);
        d_ = L.K().d_small() % mx_;
    }

    if (!ext_) {
        long g = primitive_root(p_);
        if (level_ >= 2 && powmod(g, p_ - 1, p_ * p_) == 1) g += p_;
        gens_ = {canon(g, 0)};
        orders_ = {(p_ - 1) * ipow(p_, level_ - 1)};
        group_order_ = orders_[0];
    } else if (!ram_) {
        // mu_{p^2-1} times the 1-units generated by 1+p and 1+p*sqrt(d)
        long n0 = p_ * p_ - 1;
        ResElt cand{};
        bool found = false;
        for (long x = 0; x < p_ && !found; ++x)
            for (long y = 1; y < p_ && !found; ++y) {
                ResElt c0{x, y};
                bool prim = true;
                for (long f : prime_factors(n0)) {
                    ResElt t = pow(c0, n0 / f);
                    if (t.x % p_ == 1 && t.y % p_ == 0) { prim = false; break; }
                }
                if (prim) { cand = c0; found = true; }
            }
        if (!found) throw internal_error("no generator of F_{p^2}^x found");
        ResElt g0 = pow(cand, ipow(p_, 2 * (level_ - 1)));
        for (long f : prime_factors(n0))
            if (pow(g0, n0 / f) == one())
                throw internal_error("residue-field generator lift lost full order");
        gens_ = {g0};
        orders_ = {n0};
        if (level_ >= 2) {
            gens_.push_back(canon(1 + p_, 0));
            gens_.push_back(canon(1, p_));
            long po = ipow(p_, level_ - 1);
            orders_.push_back(po);
            orders_.push_back(po);
        }
        group_order_ = n0 * ipow(p_, 2 * (level_ - 1));
    } else {
        // ramified: mu_{p-1} times 1-units generated by 1+pi and 1+pi^2 = 1+d
        ResElt g0 = pow(canon(primitive_root(p_), 0), ipow(p_, level_ - 1));
        gens_ = {g0};
        orders_ = {p_ - 1};
        if (level_ >= 2) { gens_.push_back(canon(1, 1)); orders_.push_back(p_); }
        if (level_ >= 3) { gens_.push_back(canon(1 + d_, 0)); orders_.push_back(p_); }
        group_order_ = (p_ - 1) * ipow(p_, level_ - 1);
    }
    build_table();
}

ResElt UnitBasis::canon(long x, long y) const {
    long cx = ((x % mx_) + mx_) % mx_;
    long cy = my_ > 1 ? ((y % my_) + my_) % my_ : 0;
    return ResElt{cx, cy};
}

ResElt UnitBasis::mul(const ResElt& a, const ResElt& b) const {
    if (!ext_) return canon(a.x * b.x, 0);
    // (x1 + y1 w)(x2 + y2 w) = x1 x2 + d y1 y2 + (x1 y2 + x2 y1) w,  w = sqrt d
    long x = (a.x * b.x % mx_ + d_ * (a.y * b.y % mx_)) % mx_;
    long y = my_ > 1 ? (a.x * b.y + b.x * a.y) % my_ : 0;
    return canon(x, y);
}

ResElt UnitBasis::pow(const ResElt& a, long e) const {
    if (e < 0) throw internal_error("UnitBasis::pow with negative exponent");
    ResElt acc = one(), b = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, b);
        b = mul(b, b);
        e >>= 1;
    }
    return acc;
}

ResElt UnitBasis::reduce_unit(const PadicNumber& x) const {
    if (x.no_unit_part() || x.val() != 0)
        throw domain_error("reduce_unit needs a unit");
    mpz_class r = x.unit_mod(level_);
    return canon(r.get_si(), 0);
}

ResElt UnitBasis::reduce_unit(const ExtElement& x) const {
    if (x.is_zero() || x.val() != 0) throw domain_error("reduce_unit needs a unit");
    int kx, ky;
    if (!ram_) { kx = ky = level_; }
    else { int j = level_ / 2, r = level_ % 2; kx = j + r; ky = j; }
    long rx = x.re().residue_mod(kx).get_si();
    long ry = ky > 0 ? x.im().residue_mod(ky).get_si() : 0;
    return canon(rx, ry);
}

std::vector<long> UnitBasis::dlog(const ResElt& u) const {
    auto it = dlog_.find((long long)u.x * my_ + u.y);
    if (it == dlog_.end())
        throw internal_error("dlog: element not in the unit table");
    return it->second;
}

std::vector<ResElt> UnitBasis::top_layer_units() const {
    std::vector<ResElt> out;
    if (level_ == 1) {
        // the layer is the full residue-field unit group
        if (!ext_ || ram_) {
            for (long t = 1; t < p_; ++t) out.push_back(canon(t, 0));
        } else {
            for (long x = 0; x < p_; ++x)
                for (long y = 0; y < p_; ++y)
                    if (x || y) out.push_back(canon(x, y));
        }
        return out;
    }
    // 1 + pi^{level-1} t over residue-field representatives t != 0
    if (!ext_) {
        long pk = ipow(p_, level_ - 1);
        for (long t = 1; t < p_; ++t) out.push_back(canon(1 + t * pk, 0));
    } else if (!ram_) {
        long pk = ipow(p_, level_ - 1);
        for (long tx = 0; tx < p_; ++tx)
            for (long ty = 0; ty < p_; ++ty) {
                if (tx == 0 && ty == 0) continue;
                out.push_back(canon(1 + tx * pk, ty * pk));
            }
    } else {
        int k = level_ - 1;
        int j = k / 2;
        long pj = ipow(p_, j);
        for (long t = 1; t < p_; ++t) {
            if (k % 2 == 0) out.push_back(canon(1 + t * pj, 0));
            else out.push_back(canon(1, t * pj));
        }
    }
    return out;
}

void UnitBasis::build_table() {
    struct Rec {
        UnitBasis* self;
        long long count = 0;
        void run(size_t i, ResElt acc, std::vector<long>& e) {
            if (i == self->gens_.size()) {
                long long key = (long long)acc.x * self->my_ + acc.y;
                if (!self->dlog_.emplace(key, e).second)
                    throw internal_error("unit basis is not independent (dlog collision)");
                ++count;
                return;
            }
            ResElt cur = self->one();
            for (long k = 0; k < self->orders_[i]; ++k) {
                e[i] = k;
                run(i + 1, self->mul(acc, cur), e);
                cur = self->mul(cur, self->gens_[i]);
            }
            e[i] = 0;
        }
    } rec{this};
    std::vector<long> e(gens_.size(), 0);
    rec.run(0, one(), e);
    if (rec.count != group_order_)
        throw internal_error("unit basis does not generate the unit group");
}

// --- Field -------------------------------------------------------------------

Field::Field(long p, int precision) : F_(p, precision) {}
Field::Field(long p, ExtType t, int precision) : F_(p, precision), K_(QuadExt(F_, t)) {}

std::shared_ptr<const Field> Field::base(long p, int precision) {
    return std::shared_ptr<const Field>(new Field(p, precision));
}

std::shared_ptr<const Field> Field::quadratic(long p, ExtType t, int precision) {
    return std::shared_ptr<const Field>(new Field(p, t, precision));
}

std::shared_ptr<const Field> Field::quadratic_of(std::shared_ptr<const Field> baseF,
                                                 ExtType t) {
    return quadratic(baseF->p(), t, baseF->F().precision());
}

const QuadExt& Field::K() const {
    if (!K_) throw internal_error("not an extension field");
    return *K_;
}

const UnitBasis& Field::units(int level) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = bases_.find(level);
    if (it == bases_.end())
        it = bases_.emplace(level, std::make_unique<UnitBasis>(*this, level)).first;
    return *it->second;
}

std::shared_ptr<const Field> Field::base_field() const {
    return Field::base(F_.p(), F_.precision());
}

bool Field::same(const Field& o) const {
    if (p() != o.p() || is_ext() != o.is_ext()) return false;
    if (is_ext() && K().type() != o.K().type()) return false;
    return true;
}

// --- MultChar ----------------------------------------------------------------

MultChar::MultChar(FieldPtr L, int cond, std::vector<Turn> images, Turn unif,
                   Rational s)
    : L_(std::move(L)), cond_(cond), images_(std::move(images)), unif_(unif), s_(s) {
    normalize();
}

MultChar MultChar::trivial(FieldPtr L) {
    return MultChar(std::move(L), 0, {}, Turn(), Rational(0));
}

MultChar MultChar::unramified(FieldPtr L, Turn at_uniformizer, Rational twist_s) {
    return MultChar(std::move(L), 0, {}, at_uniformizer, twist_s);
}

MultChar MultChar::from_images(FieldPtr L, int conductor, std::vector<Turn> gen_images,
                               Turn at_uniformizer, Rational twist_s) {
    if (conductor < 0 || conductor > kMaxConductor)
        throw domain_error("conductor out of range [0, " +
                           std::to_string(kMaxConductor) + "]");
    if (conductor > 0) {
        const UnitBasis& B = L->units(conductor);
        if (int(gen_images.size()) != B.ngens())
            throw domain_error("expected " + std::to_string(B.ngens()) +
                               " generator images, got " +
                               std::to_string(gen_images.size()));
        for (int i = 0; i < B.ngens(); ++i)
            if (!(gen_images[i] * B.orders()[i]).is_trivial())
                throw domain_error("unit image " + std::to_string(i) +
                                   " incompatible with generator order " +
                                   std::to_string(B.orders()[i]));
    } else if (!gen_images.empty()) {
        throw domain_error("conductor 0 admits no unit images");
    }
    return MultChar(std::move(L), conductor, std::move(gen_images), at_uniformizer,
                    twist_s);
}

void MultChar::normalize() {
    while (cond_ >= 1) {
        const UnitBasis& B = L_->units(cond_);
        bool trivial_layer = true;
        for (const ResElt& t : B.top_layer_units()) {
            if (!eval_unit(t).is_trivial()) { trivial_layer = false; break; }
        }
        if (!trivial_layer) break;
        int down = cond_ - 1;
        std::vector<Turn> smaller;
        if (down >= 1) {
            const UnitBasis& S = L_->units(down);
            for (int i = 0; i < S.ngens(); ++i) {
                ResElt g = S.gen(i);
                smaller.push_back(eval_unit(B.canon(g.x, g.y)));
            }
        }
        images_ = std::move(smaller);
        cond_ = down;
    }
}

MultChar MultChar::omega(FieldPtr Fp, const QuadExt& K) {
    if (Fp->is_ext()) throw domain_error("omega_{K/F} lives on the base field");
    if (!K.ramified()) {
        // unramified quadratic character: trivial on units, -1 at p
        return unramified(std::move(Fp), Turn::half());
    }
    const UnitBasis& B = Fp->units(1);
    std::vector<Turn> im;
    for (int i = 0; i < B.ngens(); ++i) {
        long g = B.gen(i).x;
        im.push_back(Fp->F().legendre(mpz_class(g)) == 1 ? Turn() : Turn::half());
    }
    PadicNumber p_elt = PadicNumber::from_integer(Fp->F(), Fp->p());
    Turn zp = K.omega(p_elt) == 1 ? Turn() : Turn::half();
    return from_images(std::move(Fp), 1, im, zp);
}

CharValue MultChar::eval(const PadicNumber& x) const {
    if (L_->is_ext()) throw domain_error("extension character evaluated on F");
    if (x.no_unit_part()) throw domain_error("character of zero");
    long v = x.val();
    Turn t = unif_ * v;
    if (cond_ >= 1) {
        const UnitBasis& B = L_->units(cond_);
        t += eval_unit(B.canon(x.unit_mod(cond_).get_si(), 0));
    }
    double scale = s_.is_zero() ? 1.0 : std::pow(double(L_->q()), -s_.to_double() * double(v));
    return CharValue{t, scale};
}

CharValue MultChar::eval(const ExtElement& x) const {
    if (!L_->is_ext()) throw domain_error("base character evaluated on K");
    if (x.is_zero()) throw domain_error("character of zero");
    long v = x.val();
    Turn t = unif_ * v;
    if (cond_ >= 1) {
        const UnitBasis& B = L_->units(cond_);
        ExtElement u = x * L_->K().uniformizer().pow(-v);
        t += eval_unit(B.reduce_unit(u));
    }
    double scale = s_.is_zero() ? 1.0 : std::pow(double(L_->q()), -s_.to_double() * double(v));
    return CharValue{t, scale};
}

Turn MultChar::eval_unit(const ResElt& u) const {
    if (cond_ == 0) return Turn();
    const UnitBasis& B = L_->units(cond_);
    auto e = B.dlog(B.canon(u.x, u.y));
    Turn t;
    for (size_t i = 0; i < e.size(); ++i) t += images_[i] * e[i];
    return t;
}

MultChar MultChar::operator*(const MultChar& o) const {
    if (!L_->same(*o.L_)) throw domain_error("character product across fields");
    int a = std::max(cond_, o.cond_);
    std::vector<Turn> im;
    if (a >= 1) {
        const UnitBasis& B = L_->units(a);
        for (int i = 0; i < B.ngens(); ++i) {
            ResElt g = B.gen(i);
            im.push_back(eval_unit(g) + o.eval_unit(g));
        }
    }
    return MultChar(L_, a, std::move(im), unif_ + o.unif_, s_ + o.s_);
}

MultChar MultChar::inv() const {
    std::vector<Turn> im;
    im.reserve(images_.size());
    for (const Turn& t : images_) im.push_back(-t);
    return MultChar(L_, cond_, std::move(im), -unif_, -s_);
}

MultChar MultChar::pow(long k) const {
    std::vector<Turn> im;
    im.reserve(images_.size());
    for (const Turn& t : images_) im.push_back(t * k);
    return MultChar(L_, cond_, std::move(im), unif_ * k, s_ * k);
}

bool MultChar::is_trivial() const {
    return cond_ == 0 && unif_.is_trivial() && s_.is_zero();
}

bool MultChar::operator==(const MultChar& o) const {
    if (!L_->same(*o.L_)) return false;
    return cond_ == o.cond_ && images_ == o.images_ && unif_ == o.unif_ && s_ == o.s_;
}

long MultChar::order() const {
    if (!s_.is_zero()) throw domain_error("order of a non-unitary character");
    long n = unif_.order();
    for (const Turn& t : images_) n = lcm2(n, t.order());
    return n;
}

std::string MultChar::str() const {
    std::ostringstream os;
    os << "chi[cond=" << cond_ << ", z=" << unif_.str();
    if (!images_.empty()) {
        os << ", units=(";
        for (size_t i = 0; i < images_.size(); ++i)
            os << (i ? "," : "") << images_[i].str();
        os << ")";
    }
    if (!s_.is_zero()) os << ", s=" << s_.str();
    os << "]";
    return os.str();
}

MultChar MultChar::galois_twist() const {
    if (!L_->is_ext()) throw domain_error("galois_twist of a base-field character");
    const QuadExt& K = L_->K();
    std::vector<Turn> im;
    if (cond_ >= 1) {
        const UnitBasis& B = L_->units(cond_);
        for (int i = 0; i < B.ngens(); ++i) {
            ResElt g = B.gen(i);
            im.push_back(eval_unit(B.canon(g.x, -g.y)));
        }
    }
    // chi^c(pi) = chi(pi^c) = chi(pi^c / pi) + chi(pi)
    Turn zu = unif_;
    if (K.ramified()) {
        // pi^c = -pi
        if (cond_ >= 1) {
            const UnitBasis& B = L_->units(cond_);
            zu += eval_unit(B.canon(-1, 0));
        }
    }
    return MultChar(L_, cond_, std::move(im), zu, s_);
}

MultChar MultChar::restrict_to_base() const {
    if (!L_->is_ext()) throw domain_error("restrict_to_base of a base-field character");
    const QuadExt& K = L_->K();
    FieldPtr Fp = L_->base_field();
    // 1 + p^m O_F sits inside 1 + p_K^{e m}: m = cond (unramified), ceil(cond/2)
    int m = cond_ == 0 ? 0 : (K.ramified() ? (cond_ + 1) / 2 : cond_);
    std::vector<Turn> im;
    if (m >= 1) {
        const UnitBasis& BF = Fp->units(m);
        for (int i = 0; i < BF.ngens(); ++i)
            im.push_back(eval(K.make_int(BF.gen(i).x, 0)).unit);
    }
    Turn zp = eval(K.from_base(PadicNumber::from_integer(Fp->F(), Fp->p()))).unit;
    // |x|_K = |x|_F^2 on F^x (e*f = 2 in both ramification cases)
    return MultChar(Fp, m, std::move(im), zp, s_ * 2);
}

bool MultChar::is_galois_invariant() const { return galois_twist() == *this; }

bool MultChar::chi_squared_trivial() const { return pow(2).is_trivial(); }

bool MultChar::is_conjugate_symplectic() const {
    if (!L_->is_ext()) throw domain_error("conjugate-symplectic test needs a K-character");
    if (!s_.is_zero()) throw domain_error("conjugate-symplectic test needs unitary chi");
    FieldPtr Fp = L_->base_field();
    return restrict_to_base() == omega(Fp, L_->K());
}

MultChar MultChar::compose_norm(const MultChar& mu, FieldPtr Kf) {
    if (mu.field()->is_ext()) throw domain_error("compose_norm needs mu over F");
    if (!Kf->is_ext()) throw domain_error("compose_norm needs an extension field");
    const QuadExt& K = Kf->K();
    // f(mu o N) <= e * f(mu); a silent cap would build the wrong character
    int a = std::max(1, K.e() * std::max(mu.cond_, 1));
    if (a > kMaxConductor)
        throw domain_error("mu o N exceeds the conductor bound " +
                           std::to_string(kMaxConductor));
    std::vector<Turn> im;
    const UnitBasis& B = Kf->units(a);
    for (int i = 0; i < B.ngens(); ++i) {
        ResElt g = B.gen(i);
        im.push_back(mu.eval(K.make_int(g.x, g.y).norm()).unit);
    }
    Turn zu = mu.eval(K.uniformizer().norm()).unit;
    return MultChar(Kf, a, std::move(im), zu, mu.s_);
}

MultChar MultChar::descend_via_norm() const {
    if (!L_->is_ext()) throw domain_error("descend_via_norm needs a K-character");
    if (!is_galois_invariant())
        throw domain_error("descend_via_norm: character is not Galois-invariant");
    const QuadExt& K = L_->K();
    FieldPtr Fp = L_->base_field();
    const PAdicField& F = Fp->F();
    PadicNumber lam0 = K.canonical_nonnorm();

    // chi at any norm preimage of t; well-defined since chi is trivial on K^1
    int abox = std::max(1, cond_);
    auto chi_of_preimage = [&](const PadicNumber& t) -> Turn {
        long vF = t.val();
        long w;
        if (!K.ramified()) {
            if (vF % 2 != 0) throw internal_error("norm preimage with odd valuation");
            w = vF / 2;
        } else {
            w = vF;
        }
        ExtElement piw = K.uniformizer().pow(w);
        PadicNumber target = t / piw.norm();
        int mt = K.ramified() ? (abox + 1) / 2 : abox;
        const UnitBasis& B = L_->units(abox);
        struct Search {
            const UnitBasis* B;
            const QuadExt* K;
            const PadicNumber* target;
            int mt;
            bool found = false;
            ResElt hit{};
            void run(size_t i, ResElt acc) {
                if (found) return;
                if (i == size_t(B->ngens())) {
                    PadicNumber n = K->make_int(acc.x, acc.y).norm();
                    if (n.eq_mod(*target, mt)) { found = true; hit = acc; }
                    return;
                }
                ResElt cur = B->one();
                for (long k = 0; k < B->orders()[i] && !found; ++k) {
                    run(i + 1, B->mul(acc, cur));
                    cur = B->mul(cur, B->gen(i));
                }
            }
        } s{&B, &K, &target, mt};
        s.run(0, B.one());
        if (!s.found) throw internal_error("norm preimage not found for a norm");
        ExtElement x = K.make_int(s.hit.x, s.hit.y) * piw;
        return eval(x).unit;
    };

    // mu(lam0)^2 = chi(lam0) via N(lam0) = lam0^2: two square-root candidates
    Turn chi_lam = chi_of_preimage(lam0 * lam0);
    Turn sqrt0(chi_lam.frac().num(), chi_lam.frac().den() * 2);
    std::vector<Turn> sigmas = {sqrt0, sqrt0 + Turn::half()};

    PadicNumber p_elt = PadicNumber::from_integer(F, F.p());
    auto build = [&](int m, const Turn& sigma) -> std::optional<MultChar> {
        auto value_at = [&](const PadicNumber& t) -> Turn {
            if (K.is_norm(t)) return chi_of_preimage(t);
            return sigma + chi_of_preimage(t / lam0);
        };
        std::vector<Turn> im;
        if (m >= 1) {
            const UnitBasis& BF = Fp->units(m);
            for (int i = 0; i < BF.ngens(); ++i) {
                Turn v = value_at(PadicNumber::from_integer(F, BF.gen(i).x));
                if (!(v * BF.orders()[i]).is_trivial()) return std::nullopt;
                im.push_back(v);
            }
        }
        Turn zp = value_at(p_elt);
        MultChar mu(Fp, m, std::move(im), zp, s_);
        if (compose_norm(mu, L_) == *this) return mu;
        return std::nullopt;
    };

    for (int m = 0; m <= kMaxConductor; ++m) {
        std::vector<MultChar> found;
        for (const Turn& sg : sigmas) {
            auto mu = build(m, sg);
            if (mu) found.push_back(*mu);
        }
        if (found.empty()) continue;
        if (found.size() == 1) return found[0];
        // tie-break: at the first test point where the two candidates differ,
        // keep the one with argument in [0, pi), i.e. turn in [0, 1/2)
        const UnitBasis& BF = Fp->units(std::max(m, 1));
        std::vector<PadicNumber> pts;
        for (int i = 0; i < BF.ngens(); ++i)
            pts.push_back(PadicNumber::from_integer(F, BF.gen(i).x));
        pts.push_back(p_elt);
        for (const auto& t : pts) {
            Turn v0 = found[0].eval(t).unit, v1 = found[1].eval(t).unit;
            if (v0 == v1) continue;
            return (v0.frac() < Rational(1, 2)) ? found[0] : found[1];
        }
        return found[0];
    }
    throw domain_error("descend_via_norm: no mu of conductor <= 3 satisfies mu o N = chi");
}

// --- K1Char ------------------------------------------------------------------

K1Char::K1Char(MultChar tilde) : tilde_(std::move(tilde)) {}

K1Char K1Char::trivial(FieldPtr K) { return K1Char(MultChar::trivial(std::move(K))); }

K1Char K1Char::restriction_of(const MultChar& eta) {
    return K1Char(eta * eta.galois_twist().inv());
}

K1Char K1Char::from_inflation(MultChar tilde) {
    if (!tilde.field()->is_ext())
        throw domain_error("K1Char inflation must live on K");
    if (!tilde.restrict_to_base().is_trivial())
        throw domain_error("K1Char inflation must be trivial on F^x");
    return K1Char(std::move(tilde));
}

Turn K1Char::eval_on_norm_one(const ExtElement& u) const {
    // Hilbert 90: for u in K^1, x = u + 1 satisfies x/x^c = u unless u = -1,
    // where delta works (delta/delta^c = -1)
    const QuadExt& K = tilde_.field()->K();
    PadicNumber one = PadicNumber::from_integer(K.base(), 1);
    ExtElement x = u + K.from_base(one);
    bool degenerate = x.is_zero();
    if (!degenerate) {
        // x could still be indistinguishable from zero
        try { (void)x.val(); } catch (const domain_error&) { degenerate = true; }
    }
    if (degenerate) x = K.delta();
    return tilde_.eval(x).unit;
}

K1Char K1Char::operator*(const K1Char& o) const { return K1Char(tilde_ * o.tilde_); }
K1Char K1Char::inv() const { return K1Char(tilde_.inv()); }

std::vector<K1Char> K1Char::enumerate_conductor_le_one(FieldPtr Kf) {
    const QuadExt& K = Kf->K();
    std::vector<K1Char> out;
    if (!K.ramified()) {
        long p = Kf->p();
        // characters of F_{p^2}^x trivial on F_p^x: the generator maps to a
        // (p+1)-st root of unity; trivial at the uniformizer p (which is in F)
        for (long k = 0; k < p + 1; ++k) {
            if (k == 0) { out.push_back(trivial(Kf)); continue; }
            std::vector<Turn> im = {Turn(k, p + 1)};
            out.push_back(K1Char(MultChar::from_images(Kf, 1, im, Turn())));
        }
    } else {
        out.push_back(trivial(Kf));
        out.push_back(K1Char(MultChar::unramified(Kf, Turn::half())));
    }
    return out;
}

// --- AddChar -----------------------------------------------------------------

AddChar::AddChar(FieldPtr F, int level)
    : F_(std::move(F)), level_(level),
      twist_(PadicNumber::from_integer(F_->F(), 1)) {
    if (F_->is_ext()) throw domain_error("AddChar lives on the base field");
}

AddChar::AddChar(FieldPtr F, int level, PadicNumber twist)
    : F_(std::move(F)), level_(level), twist_(std::move(twist)) {
    if (F_->is_ext()) throw domain_error("AddChar lives on the base field");
    if (twist_.no_unit_part()) throw domain_error("additive twist must be nonzero");
}

int AddChar::level() const { return int(level_ - twist_.val()); }

Turn AddChar::eval(const PadicNumber& x) const {
    if (x.is_zero()) return Turn();
    PadicNumber y = twist_ * x;
    if (y.is_approx_zero()) {
        if (y.val_lower_bound() >= level_) return Turn();
        throw domain_error("additive character undecidable at precision");
    }
    if (y.val() >= level_) return Turn();
    // psi(x) = e^{2 pi i { y / p^level }}
    PadicNumber pl = PadicNumber::from_integer(F_->F(), F_->p()).pow(level_);
    return (y / pl).frac_turn();
}

AddChar AddChar::twist(const PadicNumber& a) const {
    return AddChar(F_, level_, twist_ * a);
}

AddChar AddChar::conjugate() const {
    return AddChar(F_, level_, twist_ * PadicNumber::from_integer(F_->F(), -1));
}

// --- AddCharOnK ----------------------------------------------------------------

AddCharOnK::AddCharOnK(FieldPtr K, AddChar base, ExtElement mult)
    : K_(std::move(K)), base_(std::move(base)), m_(std::move(mult)) {
    if (!K_->is_ext()) throw domain_error("AddCharOnK needs an extension field");
    if (m_.is_zero()) throw domain_error("additive multiplier must be nonzero");
}

int AddCharOnK::level() const {
    // trivial on p_K^l exactly when Tr(m p_K^l) lands in p_F^n:
    //   l = e*n - val(different) - val_K(m)
    const QuadExt& K = K_->K();
    int dv = K.ramified() ? 1 : 0;
    return K.e() * base_.level() - dv - int(m_.val());
}

Turn AddCharOnK::eval(const ExtElement& x) const {
    if (x.is_zero()) return Turn();
    return base_.eval((m_ * x).trace());
}

AddCharOnK AddCharOnK::twist(const ExtElement& a) const {
    return AddCharOnK(K_, base_, m_ * a);
}

AddCharOnK AddCharOnK::conjugate() const {
    return AddCharOnK(K_, base_.conjugate(), m_);
}

AddCharOnK add_char_compose_trace(const AddChar& psi, FieldPtr K,
                                  const ExtElement& delta) {
    if (delta.is_zero()) throw domain_error("compose_trace: delta must be nonzero");
    return AddCharOnK(std::move(K), psi, -delta);
}

MultChar canonical_conjugate_symplectic(FieldPtr Kf) {
    if (!Kf->is_ext())
        throw domain_error("conjugate-symplectic characters live on K");
    const QuadExt& K = Kf->K();
    if (!K.ramified()) {
        MultChar chi = MultChar::unramified(Kf, Turn::half());
        if (!chi.is_conjugate_symplectic())
            throw internal_error("canonical conjugate-symplectic construction failed");
        return chi;
    }
    // unit part is the Legendre character of the residue field; the value at
    // pi = sqrt(d) solves z^2 * chi_unit(p/d) = omega(p)
    FieldPtr Fp = Kf->base_field();
    const UnitBasis& B = Kf->units(1);
    std::vector<Turn> im;
    for (int i = 0; i < B.ngens(); ++i)
        im.push_back(Fp->F().legendre(mpz_class(B.gen(i).x)) == 1 ? Turn()
                                                                  : Turn::half());
    MultChar unit_only = MultChar::from_images(Kf, 1, im, Turn());
    PadicNumber p_elt = PadicNumber::from_integer(Fp->F(), Fp->p());
    ExtElement u0 = K.from_base(p_elt) * K.uniformizer().pow(-2);
    Turn need = (K.omega(p_elt) == 1 ? Turn() : Turn::half()) -
                unit_only.eval_unit(B.reduce_unit(u0));
    Turn z(need.frac().num(), need.frac().den() * 2);  // canonical square root
    MultChar chi = MultChar::from_images(Kf, 1, im, z);
    if (!chi.is_conjugate_symplectic())
        throw internal_error("canonical conjugate-symplectic construction failed");
    return chi;
}

// --- random characters ----------------------------------------------------------

MultChar random_char(std::mt19937& rng, FieldPtr L, int max_conductor,
                     long max_unif_order) {
    int a = int(rng() % (max_conductor + 1));
    std::vector<Turn> im;
    if (a >= 1) {
        const UnitBasis& B = L->units(a);
        for (int i = 0; i < B.ngens(); ++i) {
            long n = B.orders()[i];
            im.push_back(Turn(long(rng() % n), n));
        }
    }
    long zo = 1 + long(rng() % max_unif_order);
    Turn z(long(rng() % zo), zo);
    return MultChar::from_images(L, a, std::move(im), z);
}

} // namespace g2p::chars
