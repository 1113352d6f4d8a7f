#include "g2p/hermitian.hpp"

#include <sstream>

namespace g2p::herm {

using padic::ExtElement;
using padic::PadicNumber;
using padic::QuadExt;

namespace {

// check Phi = Phi^dagger (Hermitian) or Phi = -Phi^dagger (skew), at working
// precision
void check_form(const chars::FieldPtr& K, Kind kind, const Gram& g) {
    size_t n = g.size();
    int depth = std::max(4, K->F().precision() / 2);
    for (size_t i = 0; i < n; ++i) {
        if (g[i].size() != n) throw domain_error("Gram matrix is not square");
        for (size_t j = 0; j < n; ++j) {
            ExtElement rhs = g[j][i].conj();
            if (kind == Kind::SkewHermitian) rhs = -rhs;
            ExtElement d = g[i][j] - rhs;
            bool ok_re = d.re().is_zero() || d.re().is_approx_zero() ||
                         d.re().val() >= depth;
            bool ok_im = d.im().is_zero() || d.im().is_approx_zero() ||
                         d.im().val() >= depth;
            if (!ok_re || !ok_im)
                throw domain_error("Gram matrix fails the (skew-)Hermitian symmetry");
        }
    }
}

} // namespace

ExtElement gram_det(const chars::FieldPtr& Kf, const Gram& g) {
    const QuadExt& K = Kf->K();
    size_t n = g.size();
    Gram a = g;
    ExtElement det = K.make_int(1, 0);
    for (size_t col = 0; col < n; ++col) {
        // smallest-valuation pivot keeps the elimination well-conditioned
        size_t piv = col;
        bool found = false;
        long best = 0;
        for (size_t r = col; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            long v = a[r][col].val();
            if (!found || v < best) { piv = r; best = v; found = true; }
        }
        if (!found) throw domain_error("degenerate Gram matrix");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        ExtElement inv = a[col][col].inv();
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            ExtElement f = a[r][col] * inv;
            for (size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
        }
    }
    return det;
}

Space::Space(chars::FieldPtr K, Kind kind, int dim, std::optional<int> sign,
             std::optional<Gram> g)
    : K_(std::move(K)), kind_(kind), dim_(dim), sign_(sign), gram_(std::move(g)) {
    if (!K_->is_ext()) throw domain_error("spaces live over a quadratic extension");
    if (dim_ < 1) throw domain_error("space dimension must be positive");
}

Space Space::abstract(chars::FieldPtr K, Kind kind, int dim, int sign) {
    if (sign != 1 && sign != -1) throw domain_error("sign must be ±1");
    return Space(std::move(K), kind, dim, sign, std::nullopt);
}

Space Space::from_gram(chars::FieldPtr K, Kind kind, Gram g) {
    check_form(K, kind, g);
    int n = int(g.size());
    return Space(std::move(K), kind, n, std::nullopt, std::move(g));
}

Space Space::hermitian_line(chars::FieldPtr Kf, const PadicNumber& lambda) {
    if (lambda.no_unit_part()) throw domain_error("degenerate line");
    const QuadExt& K = Kf->K();
    Gram g = {{K.from_base(lambda)}};
    return from_gram(std::move(Kf), Kind::Hermitian, std::move(g));
}

Space Space::skew_line(chars::FieldPtr Kf, const PadicNumber& lambda) {
    if (lambda.no_unit_part()) throw domain_error("degenerate line");
    const QuadExt& K = Kf->K();
    Gram g = {{K.delta() * K.from_base(lambda)}};
    return from_gram(std::move(Kf), Kind::SkewHermitian, std::move(g));
}

Space Space::hyperbolic(chars::FieldPtr Kf, Kind kind) {
    const QuadExt& K = Kf->K();
    ExtElement one = K.make_int(1, 0), zero = K.make_int(0, 0);
    if (kind == Kind::Hermitian) {
        Gram g = {{zero, one}, {one, zero}};
        return from_gram(std::move(Kf), kind, std::move(g));
    }
    // skew hyperbolic plane: [[0, delta], [delta, 0]] satisfies Phi = -Phi^dag
    Gram g = {{zero, K.delta()}, {K.delta(), zero}};
    return from_gram(std::move(Kf), kind, std::move(g));
}

Space Space::three_dim_standard(chars::FieldPtr Kf) {
    const QuadExt& K = Kf->K();
    ExtElement m1 = K.make_int(-1, 0), zero = K.make_int(0, 0);
    Gram g = {{zero, zero, m1}, {zero, m1, zero}, {m1, zero, zero}};
    return from_gram(std::move(Kf), Kind::Hermitian, std::move(g));
}

const Gram& Space::gram() const {
    if (!gram_) throw domain_error("abstract space carries no Gram matrix");
    return *gram_;
}

PadicNumber Space::disc_value() const {
    const QuadExt& K = K_->K();
    ExtElement det = gram_det(K_, gram());
    if (kind_ == Kind::SkewHermitian) det = det * K.delta().pow(-dim_);
    // (-1)^{n(n-1)/2} det lands in F^x
    long n = dim_;
    ExtElement d = ((n * (n - 1) / 2) % 2 == 0) ? det : -det;
    // the imaginary coordinate must vanish at working precision
    if (!d.im().is_zero() && !d.im().is_approx_zero() &&
        d.im().val() < d.re().val() + K_->F().precision() / 2)
        throw internal_error("discriminant does not land in the base field");
    return d.re();
}

PadicNumber Space::disc_class() const {
    const QuadExt& K = K_->K();
    PadicNumber d = disc_value();
    if (K.is_norm(d)) return PadicNumber::from_integer(K.base(), 1);
    return K.canonical_nonnorm();
}

int Space::sign() const {
    if (!sign_) sign_ = K_->K().omega(disc_value());
    return *sign_;
}

bool Space::is_split() const {
    return kind_ == Kind::Hermitian && dim_ % 2 == 0 && sign() == +1;
}

Space Space::add_hyperbolic() const {
    // epsilon(V + H) = epsilon(V); with a Gram matrix, extend block-diagonally
    if (!gram_) return Space(K_, kind_, dim_ + 2, sign(), std::nullopt);
    Space H = hyperbolic(K_, kind_);
    Gram g = *gram_;
    const QuadExt& K = K_->K();
    ExtElement zero = K.make_int(0, 0);
    for (auto& row : g) { row.push_back(zero); row.push_back(zero); }
    std::vector<ExtElement> r1(dim_, zero), r2(dim_, zero);
    r1.push_back(H.gram()[0][0]); r1.push_back(H.gram()[0][1]);
    r2.push_back(H.gram()[1][0]); r2.push_back(H.gram()[1][1]);
    g.push_back(std::move(r1));
    g.push_back(std::move(r2));
    return Space(K_, kind_, dim_ + 2, std::nullopt, std::move(g));
}

Space Space::negate_form() const {
    if (!gram_) {
        int s = sign();
        // disc scales by (-1)^m
        if (dim_ % 2 != 0) {
            PadicNumber m1 = PadicNumber::from_integer(K_->F(), -1);
            s *= K_->K().omega(m1);
        }
        return Space(K_, kind_, dim_, s, std::nullopt);
    }
    Gram g = *gram_;
    for (auto& row : g)
        for (auto& e : row) e = -e;
    return Space(K_, kind_, dim_, std::nullopt, std::move(g));
}

std::string Space::str() const {
    std::ostringstream os;
    os << (kind_ == Kind::Hermitian ? "hermitian" : "skew") << "[dim=" << dim_
       << ", sign=" << (sign() > 0 ? "+1" : "-1") << "]";
    return os.str();
}

WittTower tower_of(const Space& V) {
    WittTower t;
    t.kind = V.kind();
    t.parity = V.dim() % 2;
    t.sign = V.sign();
    if (t.parity == 1) {
        t.anchor_dim = 1;
    } else {
        // the split even tower descends to 0, the other stops at the
        // 2-dimensional anisotropic space
        t.anchor_dim = (t.sign == +1) ? 0 : 2;
    }
    return t;
}

bool same_tower(const Space& V, const Space& W) {
    if (V.kind() != W.kind())
        throw domain_error("Witt towers do not mix Hermitian and skew spaces");
    return tower_of(V) == tower_of(W);
}

bool same_unitary_group(const Space& V, const Space& W) {
    if (V.kind() != W.kind()) throw domain_error("mixed space kinds");
    if (V.dim() != W.dim()) return false;
    if (V.dim() % 2 == 1) return true;
    return V.sign() == W.sign();
}

} // namespace g2p::herm
