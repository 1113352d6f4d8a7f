#include "doctest.h"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <set>
#include <vector>

#include "g2p/packets.hpp"

using namespace g2p;
using namespace g2p::packets;
using chars::AddChar;
using chars::Field;
using chars::FieldPtr;
using chars::MultChar;
using padic::ExtType;

namespace {

PlaceData nonsplit_place(const MultChar& chi) {
    FieldPtr K = chi.field();
    FieldPtr F = K->base_field();
    return PlaceData::nonsplit(K, chi, AddChar(F, 0));
}

MultChar cs_char_with_distinct_conjugate(const FieldPtr& K) {
    // conductor-1 conjugate-symplectic character moved by Frobenius
    long p = K->p();
    if (!K->K().ramified()) {
        for (long k = 1; k <= p; ++k) {
            MultChar chi = MultChar::from_images(K, 1, {Turn(k, p + 1)}, Turn::half());
            if (chi.is_conjugate_symplectic() && !chi.is_galois_invariant())
                return chi;
        }
    } else {
        MultChar chi = chars::canonical_conjugate_symplectic(K);
        if (!chi.is_galois_invariant()) return chi;
    }
    throw std::runtime_error("no chi != chi^c available at this place");
}

// --- independent 7x7 matrix model -----------------------------------------------
// Basis: v+w+, v+w-, v-w+, v-w- (the 2x2 block), then v+^2, v+v-, v-^2
// (Sym^2 of the short SL2).  The dihedral Frobenius acts on the short factor,
// the Arthur element diag(q^{-1/2}, q^{1/2}) on the long factor.
Eigen::MatrixXcd seven_dim_model(const Eigen::Matrix2cd& frob_short, double q) {
    using C = std::complex<double>;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(7, 7);
    double x = 1.0 / std::sqrt(q);
    Eigen::Matrix2cd arthur;
    arthur << C(x, 0), C(0, 0), C(0, 0), C(1.0 / x, 0);
    // tensor block: (frob_short (x) arthur)
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    M(2 * i + k, 2 * j + l) = frob_short(i, j) * arthur(k, l);
    // Sym^2 of the short factor on (v+^2, v+v-, v-^2)
    const auto& g = frob_short;
    M(4, 4) = g(0, 0) * g(0, 0);
    M(4, 5) = 2.0 * g(0, 0) * g(0, 1);
    M(4, 6) = g(0, 1) * g(0, 1);
    M(5, 4) = g(0, 0) * g(1, 0);
    M(5, 5) = g(0, 0) * g(1, 1) + g(0, 1) * g(1, 0);
    M(5, 6) = g(0, 1) * g(1, 1);
    M(6, 4) = g(1, 0) * g(1, 0);
    M(6, 5) = 2.0 * g(1, 0) * g(1, 1);
    M(6, 6) = g(1, 1) * g(1, 1);
    return M;
}

bool multisets_close(std::vector<std::complex<double>> a,
                     std::vector<std::complex<double>> b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        bool hit = false;
        for (size_t j = 0; j < b.size(); ++j)
            if (std::abs(b[j] - x) < tol) {
                b.erase(b.begin() + long(j));
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return b.empty();
}

std::vector<std::complex<double>> complex_values(const SatakeParam& s) {
    std::vector<std::complex<double>> out;
    for (const auto& e : s.eigenvalues) out.push_back(e.value(double(s.q)));
    return out;
}

} // namespace

TEST_CASE("component groups") {
    FieldPtr F5 = Field::base(5);
    PlaceData sp = PlaceData::split(F5, MultChar::unramified(F5, Turn(1, 4)),
                                    AddChar(F5, 0));
    CHECK(component_group_pu3(sp) == 1);
    CHECK(component_group_g2(sp) == 1);

    FieldPtr K5 = Field::quadratic(5, ExtType::Unramified);
    MultChar un = chars::canonical_conjugate_symplectic(K5);
    PlaceData ns = nonsplit_place(un);
    CHECK(component_group_pu3(ns) == 2);
    CHECK(component_group_g2(ns) == 1);  // unramified chi is Galois-invariant

    MultChar moved = cs_char_with_distinct_conjugate(K5);
    PlaceData ns2 = nonsplit_place(moved);
    CHECK(component_group_pu3(ns2) == 2);
    CHECK(component_group_g2(ns2) == 2);
}

TEST_CASE("pu3 packets have the stated shapes") {
    for (long p : {3L, 5L, 7L}) {
        for (auto t : {ExtType::Unramified, ExtType::RamifiedPi, ExtType::RamifiedUnitPi}) {
            FieldPtr K = Field::quadratic(p, t);
            MultChar chi = chars::canonical_conjugate_symplectic(K);
            PlaceData pd = nonsplit_place(chi);
            Pu3Packet pk = pu3_packet(pd);
            CHECK(pk.s_group == 2);
            REQUIRE(pk.members.size() == 2);
            CHECK(pk.members[0].label == "+");
            CHECK(pk.members[0].report.shape ==
                  theta::LiftShape::QuotientOfPrincipalSeries);
            CHECK(pk.members[1].report.shape == theta::LiftShape::Supercuspidal);
            CHECK(pk.members[0].w_sign == -pk.members[1].w_sign);
        }
    }
    // split: one member, the Langlands triple with exponents (1/2, 0, -1/2)
    FieldPtr F = Field::base(5);
    PlaceData sp = PlaceData::split(F, MultChar::unramified(F, Turn(1, 4)),
                                    AddChar(F, 0));
    Pu3Packet pk = pu3_packet(sp);
    CHECK(pk.s_group == 1);
    REQUIRE(pk.members.size() == 1);
    REQUIRE(pk.members[0].report.gl3.has_value());
    const auto& e = pk.members[0].report.gl3->entries;
    CHECK(e[0].second == Rational(1, 2));
    CHECK(e[1].second == Rational(0));
    CHECK(e[2].second == Rational(-1, 2));
}

TEST_CASE("g2 packet truth table") {
    // (nonsplit, chi != chi^c): two members, pi- nonzero tempered
    FieldPtr K5 = Field::quadratic(5, ExtType::Unramified);
    MultChar moved = cs_char_with_distinct_conjugate(K5);
    G2Packet a = g2_packet(nonsplit_place(moved));
    CHECK(a.s_group == 2);
    REQUIRE(a.members.size() == 2);
    CHECK(a.members[0].shape == G2Shape::QuotientOfQ1Induced);
    CHECK(a.members[0].tau->dihedral);
    CHECK(a.members[1].shape == G2Shape::TemperedNonGeneric);
    CHECK(a.members[1].nonzero);
    CHECK(a.members[1].tempered);
    CHECK_FALSE(a.pi_minus_vanishes);

    // (nonsplit, chi^2 = 1): single member i_Q2(mu o det), mu^2 = omega
    MultChar un = chars::canonical_conjugate_symplectic(K5);
    G2Packet b = g2_packet(nonsplit_place(un));
    CHECK(b.s_group == 1);
    REQUIRE(b.members.size() == 1);
    CHECK(b.members[0].shape == G2Shape::InducedFromQ2);
    CHECK(b.pi_minus_vanishes);
    REQUIRE(b.members[0].q2_char.has_value());
    MultChar om = MultChar::omega(Field::base(5), K5->K());
    CHECK(b.members[0].q2_char->pow(2) == om);
    REQUIRE(b.members[0].rewrite.has_value());
    CHECK(b.members[0].rewrite->tag == g2::QuotientTag::IrreducibleInduced);

    // split: single member, quotient of i_Q1(|det|^{1/2} tau)
    FieldPtr F = Field::base(5);
    G2Packet c = g2_packet(PlaceData::split(F, MultChar::unramified(F, Turn(1, 4)),
                                            AddChar(F, 0)));
    CHECK(c.s_group == 1);
    REQUIRE(c.members.size() == 1);
    CHECK(c.members[0].shape == G2Shape::QuotientOfQ1Induced);
    REQUIRE(c.members[0].tau.has_value());
    CHECK_FALSE(c.members[0].tau->dihedral);
    CHECK(c.members[0].tau->pair->second == c.members[0].tau->pair->first.inv());

    // packet sizes equal the component group across a sweep
    for (long p : {3L, 5L, 7L}) {
        for (auto t : {ExtType::Unramified, ExtType::RamifiedPi, ExtType::RamifiedUnitPi}) {
            FieldPtr K = Field::quadratic(p, t);
            MultChar chi = chars::canonical_conjugate_symplectic(K);
            PlaceData pd = nonsplit_place(chi);
            CHECK(g2_packet(pd).members.size() == size_t(component_group_g2(pd)));
        }
    }
}

TEST_CASE("satake: structural invariants") {
    // product 1 always; inversion closure and the eigenvalue 1 are the
    // self-duality properties of the 7-dimensional representation
    auto check_sat = [](const SatakeParam& s, size_t n, bool self_dual) {
        REQUIRE(s.eigenvalues.size() == n);
        std::multiset<std::pair<Rational, int>> set, invset;
        Turn prod;
        int half = 0;
        bool has_one = false;
        for (const auto& e : s.eigenvalues) {
            set.insert({e.turn.frac(), e.half_power});
            invset.insert({(-e.turn).frac(), -e.half_power});
            prod += e.turn;
            half += e.half_power;
            if (e.turn.is_trivial() && e.half_power == 0) has_one = true;
        }
        CHECK(prod.is_trivial());
        CHECK(half == 0);
        if (self_dual) {
            CHECK(set == invset);
            CHECK(has_one);
        }
    };
    FieldPtr F = Field::base(5);
    PlaceData sp = PlaceData::split(F, MultChar::unramified(F, Turn(1, 4)),
                                    AddChar(F, 0));
    check_sat(satake_pu3(sp), 3, false);
    check_sat(satake_g2(sp), 7, true);

    FieldPtr K = Field::quadratic(5, ExtType::Unramified);
    PlaceData ns = nonsplit_place(chars::canonical_conjugate_symplectic(K));
    check_sat(satake_pu3(ns), 3, true);  // the squared class happens to be self-dual
    check_sat(satake_g2(ns), 7, true);
    CHECK(satake_pu3(ns).squared_class);

    // ramified chi rejected
    MultChar ram = cs_char_with_distinct_conjugate(K);
    CHECK_THROWS_AS(satake_g2(nonsplit_place(ram)),
                    domain_error);
}

TEST_CASE("split satake agrees with the Q1-inducing-character computation") {
    // pi+ is the quotient of i_Q1(|det|^{1/2} pi(chi_w, chi_w^{-1})); its
    // Borel character is (chi_w^{-1}|.|^{1/2}, chi_w^2) and the eigenvalue at
    // a dual weight (m1, m2) is X^{m1} Y^{m2} with X, Y the values at p
    for (long zden : {1L, 3L, 4L, 6L}) {
        FieldPtr F = Field::base(5);
        Turn t(1, zden);
        PlaceData sp = PlaceData::split(F, MultChar::unramified(F, t), AddChar(F, 0));
        SatakeParam s = satake_g2(sp);
        std::vector<Eigenvalue> oracle;
        Eigenvalue X{-t, -1}, Y{t * 2, 0};
        for (auto [m1, m2] : g2::seven_dim_dual_weights())
            oracle.push_back(
                Eigenvalue{X.turn * m1 + Y.turn * m2, int(m1) * X.half_power});
        std::sort(oracle.begin(), oracle.end());
        CHECK(oracle == s.eigenvalues);
    }
}

TEST_CASE("satake vs the independent 7x7 matrix model") {
    using C = std::complex<double>;
    // split place, a = chi_w(p)
    for (long zden : {1L, 4L, 6L}) {
        FieldPtr F = Field::base(7);
        Turn t(1, zden);
        PlaceData sp = PlaceData::split(F, MultChar::unramified(F, t), AddChar(F, 0));
        Eigen::Matrix2cd frob;
        frob << t.value(), C(0, 0), C(0, 0), (-t).value();
        Eigen::MatrixXcd M = seven_dim_model(frob, 7.0);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
        std::vector<C> model(es.eigenvalues().data(), es.eigenvalues().data() + 7);
        CHECK(multisets_close(model, complex_values(satake_g2(sp)), 1e-8));
    }

    // nonsplit unramified, q = 5: Frobenius is the Weyl element of the short
    // SL2 (eigenvalues ±i since chi(pi_K) = -1)
    FieldPtr K = Field::quadratic(5, ExtType::Unramified);
    PlaceData ns = nonsplit_place(chars::canonical_conjugate_symplectic(K));
    Eigen::Matrix2cd w0;
    w0 << C(0, 0), C(-1, 0), C(1, 0), C(0, 0);
    Eigen::MatrixXcd M = seven_dim_model(w0, 5.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    std::vector<C> model(es.eigenvalues().data(), es.eigenvalues().data() + 7);
    SatakeParam s = satake_g2(ns);
    CHECK(multisets_close(model, complex_values(s), 1e-8));

    // frozen values derived from the oracle: {± i sqrt5, ± i/sqrt5, -1, 1, -1}
    double r5 = std::sqrt(5.0);
    std::vector<C> frozen = {C(0, r5),  C(0, -r5),     C(0, 1 / r5), C(0, -1 / r5),
                             C(-1, 0),  C(1, 0),       C(-1, 0)};
    CHECK(multisets_close(model, frozen, 1e-9));
}

TEST_CASE("satake_pu3 agrees with the sigma+ inducing data") {
    // split: eigenvalues read off the Langlands triple at p equal the formula
    FieldPtr F = Field::base(7);
    Turn t(1, 6);
    PlaceData sp = PlaceData::split(F, MultChar::unramified(F, t), AddChar(F, 0));
    auto member = pu3_packet(sp).members[0];
    REQUIRE(member.report.gl3.has_value());
    std::vector<Eigenvalue> from_triple;
    for (const auto& [chi, s] : member.report.gl3->entries) {
        // |.|^{s}(p) contributes q^{-s}; s is a half-integer here
        REQUIRE((s * 2).is_integer());
        from_triple.push_back(
            Eigenvalue{chi.at_uniformizer(), -int((s * 2).num())});
    }
    std::sort(from_triple.begin(), from_triple.end());
    CHECK(from_triple == satake_pu3(sp).eigenvalues);

    // nonsplit: sigma+ is the quotient of I(chi, 1/2); its parameter at
    // Frob_K is {z^{-2}, z q_K^{±1/2}} with q_K = q^2, matching the squared
    // class reported by satake_pu3
    FieldPtr K = Field::quadratic(7, ExtType::Unramified);
    PlaceData ns = nonsplit_place(chars::canonical_conjugate_symplectic(K));
    auto plus = pu3_packet(ns).members[0];
    REQUIRE(plus.report.principal_series.has_value());
    const auto& ps = *plus.report.principal_series;
    Turn z = ps.char_K.at_uniformizer();
    REQUIRE((ps.shift * 2).is_integer());
    int half_K = int((ps.shift * 2).num());  // q_K^{1/2} = q^{2 * 1/2}
    std::vector<Eigenvalue> from_ps = {
        Eigenvalue{z * (-2), 0},
        Eigenvalue{z, 2 * half_K},
        Eigenvalue{z, -2 * half_K},
    };
    std::sort(from_ps.begin(), from_ps.end());
    CHECK(from_ps == satake_pu3(ns).eigenvalues);
}

TEST_CASE("pu3 satake values") {
    // split, z = 1: {1, q^{1/2}, q^{-1/2}}
    FieldPtr F = Field::base(5);
    PlaceData sp = PlaceData::split(F, MultChar::trivial(F), AddChar(F, 0));
    SatakeParam s = satake_pu3(sp);
    std::vector<Eigenvalue> expect = {Eigenvalue{Turn(), -1}, Eigenvalue{Turn(), 0},
                                      Eigenvalue{Turn(), 1}};
    CHECK(s.eigenvalues == expect);

    // nonsplit: the squared class is {1, -q, -1/q}
    FieldPtr K = Field::quadratic(5, ExtType::Unramified);
    PlaceData ns = nonsplit_place(chars::canonical_conjugate_symplectic(K));
    SatakeParam s2 = satake_pu3(ns);
    std::vector<Eigenvalue> expect2 = {Eigenvalue{Turn::half(), -2},
                                       Eigenvalue{Turn(), 0},
                                       Eigenvalue{Turn::half(), 2}};
    CHECK(s2.eigenvalues == expect2);

    // consistency across the two sides: the squares of the 7-dim eigenvalues
    // are V3(s^2) + V3^dual(s^2) + {1}
    SatakeParam g = satake_g2(ns);
    std::multiset<std::pair<Rational, int>> sq7;
    for (const auto& e : g.eigenvalues)
        sq7.insert({(e.turn * 2).frac(), 2 * e.half_power});
    std::multiset<std::pair<Rational, int>> sq3;
    for (const auto& e : s2.eigenvalues) {
        sq3.insert({e.turn.frac(), e.half_power});
        sq3.insert({(-e.turn).frac(), -e.half_power});
    }
    sq3.insert({Rational(0), 0});
    CHECK(sq7 == sq3);
}
