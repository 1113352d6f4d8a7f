#include "doctest.h"

#include <complex>
#include <random>

#include "g2p/epsilon.hpp"

using namespace g2p;
using namespace g2p::chars;
using namespace g2p::eps;
using padic::ExtType;
using padic::PadicNumber;

namespace {

constexpr double kTol = 1e-9;

bool close(std::complex<double> a, std::complex<double> b, double tol = kTol) {
    return std::abs(a - b) <= tol;
}

// independent 2-term oracle for the pinned mod-3 value
std::complex<double> gauss_mod3() {
    // 3^{-1/2} (chi(1) e^{2 pi i/3} + chi(2) e^{4 pi i /3}), chi = (.|3)
    std::complex<double> w1 = std::polar(1.0, 2 * M_PI / 3);
    std::complex<double> w2 = std::polar(1.0, 4 * M_PI / 3);
    return (w1 - w2) / std::sqrt(3.0);
}

MultChar nontrivial_random(std::mt19937& rng, const FieldPtr& L, int max_cond) {
    while (true) {
        MultChar c = random_char(rng, L, max_cond);
        if (c.conductor() >= 1) return c;
    }
}

} // namespace

TEST_CASE("unramified pairs give trivial epsilon") {
    FieldPtr F = Field::base(7);
    AddChar psi(F, 0);
    CHECK(close(epsilon_half(MultChar::trivial(F), psi).value, {1.0, 0.0}));
    MultChar un = MultChar::unramified(F, Turn(1, 3));
    CHECK(close(epsilon_half(un, psi).value, {1.0, 0.0}));
    AddChar psi2(F, 2);
    CHECK(close(epsilon_half(un, psi2).value, (Turn(2, 3)).value()));
}

TEST_CASE("pinned value: quadratic character mod 3 has epsilon i") {
    FieldPtr F = Field::base(3);
    MultChar quad = MultChar::from_images(F, 1, {Turn::half()}, Turn());
    AddChar psi(F, 0);
    auto e = epsilon_half(quad, psi);
    CHECK(close(e.value, {0.0, 1.0}));
    CHECK(close(e.value, gauss_mod3()));
}

TEST_CASE("|eps| = 1 for unitary characters") {
    std::mt19937 rng(101);
    for (long p : {3L, 5L, 7L}) {
        FieldPtr F = Field::base(p);
        FieldPtr Ku = Field::quadratic(p, ExtType::Unramified);
        FieldPtr Kr = Field::quadratic(p, ExtType::RamifiedPi);
        AddChar psi(F, 0);
        for (int i = 0; i < 17; ++i) {
            MultChar chi = random_char(rng, F, 2);
            CHECK(std::abs(std::abs(epsilon_half(chi, psi).value) - 1.0) < kTol);
            MultChar chiK = random_char(rng, Ku, 2);
            auto psiK = add_char_compose_trace(psi, Ku, Ku->K().delta());
            CHECK(std::abs(std::abs(epsilon_half(chiK, psiK).value) - 1.0) < kTol);
            MultChar chiR = random_char(rng, Kr, 2);
            auto psiR = add_char_compose_trace(psi, Kr, Kr->K().delta());
            CHECK(std::abs(std::abs(epsilon_half(chiR, psiR).value) - 1.0) < kTol);
        }
    }
}

TEST_CASE("the conductor bound is exercised and enforced") {
    // a genuine conductor-3 character over F and over unramified K
    FieldPtr F = Field::base(5);
    AddChar psi(F, 0);
    MultChar deep = MultChar::from_images(F, 3, {Turn(1, 100)}, Turn());
    REQUIRE(deep.conductor() == 3);
    CHECK(std::abs(std::abs(epsilon_half(deep, psi).value) - 1.0) < kTol);

    FieldPtr K = Field::quadratic(5, ExtType::Unramified);
    const auto& B = K->units(3);
    std::vector<Turn> im;
    for (int i = 0; i < B.ngens(); ++i) im.push_back(Turn(1, B.orders()[i]));
    MultChar deepK = MultChar::from_images(K, 3, im, Turn());
    REQUIRE(deepK.conductor() == 3);
    auto psiK = add_char_compose_trace(psi, K, K->K().delta());
    CHECK(std::abs(std::abs(epsilon_half(deepK, psiK).value) - 1.0) < kTol);

    // conductor 4 is past the enforced bound
    CHECK_THROWS_AS(MultChar::from_images(F, 4, {Turn(1, 4)}, Turn()),
                    domain_error);
}

TEST_CASE("conjugation identities") {
    // eps(1/2, chi, psi-bar) = chi(-1) eps(1/2, chi, psi)
    // eps(1/2, chi-bar, psi) = chi(-1) conj(eps(1/2, chi, psi))
    std::mt19937 rng(202);
    for (long p : {3L, 5L, 7L}) {
        FieldPtr F = Field::base(p);
        AddChar psi(F, 0);
        auto minus_one = PadicNumber::from_integer(F->F(), -1);
        for (int i = 0; i < 17; ++i) {
            MultChar chi = random_char(rng, F, 2);
            std::complex<double> sgn = chi.eval(minus_one).unit.value();
            auto e = epsilon_half(chi, psi).value;
            CHECK(close(epsilon_half(chi, psi.conjugate()).value, sgn * e));
            CHECK(close(epsilon_half(chi.inv(), psi).value, sgn * std::conj(e)));
        }
    }
}

TEST_CASE("additive twist covariance") {
    // unit twists: eps(1/2, chi, psi_a) = chi(a) eps(1/2, chi, psi);
    // uniformizer twists shift the level slot: eps(chi, psi_pi) picks up
    // chi(pi) on the prefactor, checked against the direct sum
    std::mt19937 rng(303);
    FieldPtr F = Field::base(5);
    AddChar psi(F, 0);
    for (int i = 0; i < 20; ++i) {
        MultChar chi = nontrivial_random(rng, F, 2);
        long a0 = 1 + long(rng() % 4);
        auto a = PadicNumber::from_integer(F->F(), a0);
        auto lhs = epsilon_half(chi, psi.twist(a)).value;
        auto rhs = (-chi.eval(a).unit).value() * epsilon_half(chi, psi).value;
        CHECK(close(lhs, rhs));
    }
    // uniformizer twist changes the level by -1 (psi_p has level -1)
    auto p_elt = PadicNumber::from_integer(F->F(), 5);
    MultChar chi = MultChar::from_images(F, 1, {Turn(1, 4)}, Turn(1, 3));
    auto l = epsilon_half(chi, psi.twist(p_elt));
    CHECK(l.level == -1);
    auto r = epsilon_half(chi, psi);
    CHECK(close(l.value * chi.at_uniformizer().value(), r.value));
}

TEST_CASE("unramified-twist stability links the two branches") {
    // for unramified chi and ramified eta:
    //   eps(1/2, chi*eta, psi) = chi(pi)^{n - a(eta)} eps(1/2, eta, psi),
    // matching the unramified branch at a(eta) = 0
    std::mt19937 rng(404);
    for (long p : {3L, 5L}) {
        FieldPtr F = Field::base(p);
        for (int n : {0, 1}) {
            AddChar psi(F, n);
            for (int i = 0; i < 10; ++i) {
                MultChar eta = nontrivial_random(rng, F, 2);
                MultChar chi = MultChar::unramified(F, Turn(long(rng() % 8), 8));
                auto lhs = epsilon_half(chi * eta, psi).value;
                auto pref = (chi.at_uniformizer() * (n - eta.conductor())).value();
                auto rhs = pref * epsilon_half(eta, psi).value;
                CHECK(close(lhs, rhs));
            }
        }
    }
}

TEST_CASE("theta sign: containment and pinned 8-term case") {
    // K = Q_3(sqrt 2), gamma the conductor-1 conjugate-symplectic character
    // with unit image of order 4 on F_9^x, mu trivial: an 8-term Gauss sum
    FieldPtr F = Field::base(3);
    FieldPtr K = Field::quadratic(3, ExtType::Unramified);
    AddChar psi(F, 0);
    MultChar gamma = MultChar::from_images(K, 1, {Turn(1, 4)}, Turn::half());
    REQUIRE(gamma.is_conjugate_symplectic());
    K1Char mu = K1Char::trivial(K);
    int s = theta_sign(gamma, mu, psi, K->K().delta());
    CHECK((s == 1 || s == -1));

    // independent oracle: direct 8-term sum over F_9^x for gamma itself
    // (conductor 1, psi_K level 0, shell at valuation -1)
    const UnitBasis& B = K->units(1);
    auto psiK = add_char_compose_trace(psi, K, K->K().delta());
    REQUIRE(psiK.level() == 0);
    std::complex<double> acc = 0;
    auto shift = K->K().uniformizer().pow(-1);
    for (long x = 0; x < 3; ++x)
        for (long y = 0; y < 3; ++y) {
            if (x == 0 && y == 0) continue;
            Turn t = gamma.eval_unit(B.canon(x, y));
            t += psiK.eval(K->K().make_int(x, y) * shift);
            acc += t.value();
        }
    acc *= (gamma.at_uniformizer() * (-1)).value() / 3.0;
    CHECK(close(acc, std::complex<double>(double(s), 0.0), 1e-9));
}

TEST_CASE("theta sign with mu = gamma^{-1}|_{K^1} tests gamma^3") {
    FieldPtr F = Field::base(5);
    FieldPtr K = Field::quadratic(5, ExtType::Unramified);
    AddChar psi(F, 0);
    MultChar gamma = MultChar::from_images(K, 1, {Turn(1, 6)}, Turn::half());
    REQUIRE(gamma.is_conjugate_symplectic());
    K1Char mu = K1Char::restriction_of(gamma.inv());
    auto psiK = add_char_compose_trace(psi, K, K->K().delta());
    int s = theta_sign(gamma, mu, psi, K->K().delta());
    int s3 = snap_sign(epsilon_half(gamma.pow(3), psiK).value);
    CHECK(s == s3);
}

TEST_CASE("theta sign over every extension type") {
    for (long p : {3L, 5L, 7L}) {
        FieldPtr F = Field::base(p);
        AddChar psi(F, 0);
        for (auto t : {ExtType::Unramified, ExtType::RamifiedPi, ExtType::RamifiedUnitPi}) {
            FieldPtr K = Field::quadratic(p, t);
            MultChar gamma = canonical_conjugate_symplectic(K);
            REQUIRE(gamma.is_conjugate_symplectic());
            for (const K1Char& mu : K1Char::enumerate_conductor_le_one(K)) {
                int s = theta_sign(gamma, mu, psi, K->K().delta());
                CHECK((s == 1 || s == -1));
            }
        }
    }
}
