#include "g2p/epsilon.hpp"

#include <cmath>

namespace g2p::eps {

using chars::AddChar;
using chars::AddCharOnK;
using chars::K1Char;
using chars::MultChar;
using chars::ResElt;
using chars::UnitBasis;
using padic::ExtElement;
using padic::PadicNumber;

namespace {

// compensated accumulation: the sums are over roots of unity, so cancellation
// is the normal case, not the exception
struct KahanSum {
    std::complex<double> s{0.0, 0.0}, c{0.0, 0.0};
    void add(const std::complex<double>& x) {
        std::complex<double> y = x - c;
        std::complex<double> t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// enumerate the unit box of a basis, calling f on every unit residue
template <typename F>
void for_each_unit(const UnitBasis& B, F&& f) {
    struct Rec {
        const UnitBasis* B;
        F* f;
        void run(size_t i, ResElt acc) {
            if (i == size_t(B->ngens())) { (*f)(acc); return; }
            ResElt cur = B->one();
            for (long k = 0; k < B->orders()[i]; ++k) {
                run(i + 1, B->mul(acc, cur));
                cur = B->mul(cur, B->gen(i));
            }
        }
    } rec{&B, &f};
    rec.run(0, B.one());
}

} // namespace

// The ramified branch is the normalized Gauss sum over the shell of
// valuation n - a, the only shell where the unit sum does not vanish:
//   eps = chi(pi)^{n-a} q^{-a/2} sum_{u mod p^a} chi(u) psi(u pi^{n-a}).
// The normalization is pinned by the contract identities: eps = chi(pi)^n for
// unramified chi, unit twists psi -> psi_a scale by chi(a)^{-1}, and the
// conductor-1 quadratic sum mod 3 at level 0 equals i.

EpsilonValue epsilon_half(const MultChar& chi, const AddChar& psi) {
    const auto& L = chi.field();
    if (L->is_ext()) throw domain_error("base-field epsilon with a K-character");
    if (!L->same(*psi.field())) throw domain_error("epsilon: mismatched fields");
    int a = chi.conductor();
    int n = psi.level();
    if (a == 0)
        return EpsilonValue{(chi.at_uniformizer() * n).value(), a, n};
    const UnitBasis& B = L->units(a);
    PadicNumber shift = PadicNumber::from_integer(L->F(), L->p()).pow(n - a);
    KahanSum acc;
    for_each_unit(B, [&](const ResElt& u) {
        Turn t = chi.eval_unit(u);
        t += psi.eval(PadicNumber::from_integer(L->F(), u.x) * shift);
        acc.add(t.value());
    });
    double norm = std::pow(double(L->q()), -0.5 * a);
    std::complex<double> val =
        (chi.at_uniformizer() * (n - a)).value() * acc.s * norm;
    return EpsilonValue{val, a, n};
}

EpsilonValue epsilon_half(const MultChar& chi, const AddCharOnK& psi) {
    const auto& L = chi.field();
    if (!L->is_ext()) throw domain_error("extension epsilon with an F-character");
    if (!L->same(*psi.field())) throw domain_error("epsilon: mismatched fields");
    int a = chi.conductor();
    int n = psi.level();
    if (a == 0)
        return EpsilonValue{(chi.at_uniformizer() * n).value(), a, n};
    const UnitBasis& B = L->units(a);
    ExtElement shift = L->K().uniformizer().pow(n - a);
    KahanSum acc;
    for_each_unit(B, [&](const ResElt& u) {
        Turn t = chi.eval_unit(u);
        t += psi.eval(L->K().make_int(u.x, u.y) * shift);
        acc.add(t.value());
    });
    double norm = std::pow(double(L->q()), -0.5 * a);
    std::complex<double> val =
        (chi.at_uniformizer() * (n - a)).value() * acc.s * norm;
    return EpsilonValue{val, a, n};
}

int snap_sign(const std::complex<double>& z, double tol) {
    if (std::abs(z - std::complex<double>(1.0, 0.0)) <= tol) return +1;
    if (std::abs(z + std::complex<double>(1.0, 0.0)) <= tol) return -1;
    throw internal_error("epsilon value not within tolerance of ±1 "
                         "(convention bug or inconsistent input): " +
                         std::to_string(z.real()) + " + " +
                         std::to_string(z.imag()) + "i");
}

int theta_sign(const MultChar& gamma, const K1Char& mu, const AddChar& psi,
               const ExtElement& delta) {
    if (!gamma.is_conjugate_symplectic())
        throw domain_error("theta_sign: gamma must be conjugate-symplectic");
    MultChar tested = gamma * mu.inflation().inv();
    AddCharOnK psiK =
        chars::add_char_compose_trace(psi, gamma.field(), delta);
    EpsilonValue e = epsilon_half(tested, psiK);
    return snap_sign(e.value);
}

} // namespace g2p::eps
