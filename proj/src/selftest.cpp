#include "g2p/selftest.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "g2p/cubic.hpp"
#include "g2p/scenario.hpp"

namespace g2p::selftest {

using chars::AddChar;
using chars::Field;
using chars::FieldPtr;
using chars::K1Char;
using chars::MultChar;
using padic::ExtType;
using padic::PadicNumber;

namespace {

struct Suite {
    SuiteResult r;
    explicit Suite(std::string name) : r{std::move(name), true, 0, ""} {}
    void check(bool ok, const std::string& what) {
        ++r.checks;
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = what;
        }
    }
    SuiteResult done(const std::string& summary) {
        if (r.pass) r.detail = summary;
        return r;
    }
};

// brute-force solvability oracle: z^2 = a x^2 + b y^2 has a primitive
// solution mod p^3 iff it is solvable over Q_p (valuations of a, b at most 1)
int hilbert_oracle(long p, long a, long b) {
    long p3 = p * p * p;
    auto mods = [&](long x) { return (x % p3 + p3) % p3; };
    std::set<long> squares;
    for (long z = 0; z < p3; ++z) squares.insert(z * z % p3);
    long am = mods(a), bm = mods(b);
    for (long x = 0; x < p3; ++x)
        for (long y = 0; y < p3; ++y) {
            if (x % p == 0 && y % p == 0) continue;
            long c = (am * x % p3 * x % p3 + bm * y % p3 * y % p3) % p3;
            if (squares.count(c)) return +1;
        }
    return -1;
}

// Bareiss determinant of the 5x5 Sylvester matrix: disc = -Res(f, f')/a
mpz_class disc_resultant(long a, long b, long c, long d) {
    mpz_class M[5][5] = {{a, b, c, d, 0},
                         {0, a, b, c, d},
                         {3 * a, 2 * b, c, 0, 0},
                         {0, 3 * a, 2 * b, c, 0},
                         {0, 0, 3 * a, 2 * b, c}};
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < 4; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < 5; ++r)
                if (M[r][k] != 0) { piv = r; break; }
            if (piv < 0) return 0;
            for (int cc = 0; cc < 5; ++cc) std::swap(M[k][cc], M[piv][cc]);
            sign = -sign;
        }
        for (int r = k + 1; r < 5; ++r)
            for (int cc = k + 1; cc < 5; ++cc)
                M[r][cc] = (M[r][cc] * M[k][k] - M[r][k] * M[k][cc]) / prev;
        prev = M[k][k];
    }
    mpz_class disc = -(sign * M[4][4]);
    return disc / a;
}

SuiteResult suite_hilbert() {
    Suite s("hilbert-norm");
    for (long p : {3L, 5L, 7L}) {
        padic::PAdicField F(p);
        long u = F.nonsquare_unit();
        for (long a : {1L, u, p, u * p})
            for (long b : {1L, u, p, u * p}) {
                int closed = padic::hilbert_symbol(PadicNumber::from_integer(F, a),
                                                   PadicNumber::from_integer(F, b));
                s.check(closed == hilbert_oracle(p, a, b),
                        "closed form vs oracle at p=" + std::to_string(p) + " (" +
                            std::to_string(a) + "," + std::to_string(b) + ")");
            }
    }
    std::mt19937 rng(1);
    int pairs = 0;
    while (pairs < 200) {
        long p = std::vector<long>{3, 5, 7, 11}[rng() % 4];
        padic::PAdicField F(p);
        auto rnd = [&]() {
            return PadicNumber::from_val_unit(F, long(rng() % 3) - 1,
                                              1 + long(rng() % (p - 1)));
        };
        auto a = rnd(), b = rnd(), a2 = rnd();
        s.check(padic::hilbert_symbol(a, b) == padic::hilbert_symbol(b, a),
                "symmetry");
        s.check(padic::hilbert_symbol(a * a2, b) ==
                    padic::hilbert_symbol(a, b) * padic::hilbert_symbol(a2, b),
                "bimultiplicativity");
        ++pairs;
    }
    for (long p : {3L, 5L, 7L, 11L}) {
        padic::PAdicField F(p);
        long u = F.nonsquare_unit();
        for (auto t : {ExtType::Unramified, ExtType::RamifiedPi,
                       ExtType::RamifiedUnitPi}) {
            padic::QuadExt K(F, t);
            int norms = 0;
            for (long rep : {1L, u, p, u * p})
                if (K.is_norm(PadicNumber::from_integer(F, rep))) ++norms;
            s.check(norms == 2, "norm index 2 at p=" + std::to_string(p));
        }
    }
    return s.done("closed formula = oracle on all class pairs; index 2");
}

SuiteResult suite_epsilon() {
    Suite s("epsilon");
    std::mt19937 rng(2);
    int done = 0;
    while (done < 50) {
        long p = std::vector<long>{3, 5, 7}[rng() % 3];
        FieldPtr F = Field::base(p);
        AddChar psi(F, int(rng() % 2));
        MultChar chi = chars::random_char(rng, F, 2);
        auto e = eps::epsilon_half(chi, psi).value;
        s.check(std::abs(std::abs(e) - 1.0) <= 1e-9, "|eps| = 1");
        auto minus_one = PadicNumber::from_integer(F->F(), -1);
        std::complex<double> sgn = chi.eval(minus_one).unit.value();
        s.check(std::abs(eps::epsilon_half(chi, psi.conjugate()).value - sgn * e) <=
                    1e-9,
                "eps(chi, psi-bar) = chi(-1) eps(chi, psi)");
        s.check(std::abs(eps::epsilon_half(chi.inv(), psi).value -
                         sgn * std::conj(e)) <= 1e-9,
                "eps(chi-bar, psi) = chi(-1) conj eps(chi, psi)");
        ++done;
    }
    // the same modulus statement over the quadratic extensions
    int doneK = 0;
    while (doneK < 24) {
        long p = std::vector<long>{3, 5, 7}[rng() % 3];
        auto t = std::vector<ExtType>{ExtType::Unramified, ExtType::RamifiedPi,
                                      ExtType::RamifiedUnitPi}[rng() % 3];
        FieldPtr K = Field::quadratic(p, t);
        FieldPtr F = Field::base(p);
        MultChar chi = chars::random_char(rng, K, 2);
        auto psiK = chars::add_char_compose_trace(AddChar(F, 0), K, K->K().delta());
        s.check(std::abs(std::abs(eps::epsilon_half(chi, psiK).value) - 1.0) <= 1e-9,
                "|eps_K| = 1");
        ++doneK;
    }
    FieldPtr F3 = Field::base(3);
    MultChar quad = MultChar::from_images(F3, 1, {Turn::half()}, Turn());
    auto ev = eps::epsilon_half(quad, AddChar(F3, 0)).value;
    s.check(std::abs(ev - std::complex<double>(0, 1)) <= 1e-9,
            "quadratic character mod 3 has eps = i");
    return s.done("random unitary characters over F and K; pinned value i");
}

SuiteResult suite_dichotomy() {
    Suite s("dichotomy-conservation");
    for (long p : {3L, 5L, 7L}) {
        FieldPtr F = Field::base(p);
        AddChar psi(F, 0);
        for (auto t : {ExtType::RamifiedPi, ExtType::RamifiedUnitPi,
                       ExtType::Unramified}) {
            FieldPtr K = Field::quadratic(p, t);
            MultChar gamma = chars::canonical_conjugate_symplectic(K);
            auto delta = K->K().delta();
            herm::Space V = herm::Space::three_dim_standard(K);
            for (int ws : {+1, -1}) {
                herm::Space W =
                    herm::Space::abstract(K, herm::Kind::SkewHermitian, 1, ws);
                for (const K1Char& mu : K1Char::enumerate_conductor_le_one(K)) {
                    auto fo = theta::first_occurrence(mu, 1, gamma, psi, delta, W);
                    s.check(fo.n_plus + fo.n_minus == 4, "conservation n + n' = 4");
                    s.check(std::min(fo.n_plus, fo.n_minus) == 1 &&
                                std::max(fo.n_plus, fo.n_minus) == 3,
                            "odd occurrences are {1,3}");
                }
            }
            // sigma+ never supercuspidal, sigma- always, across the sweep
            packets::PlaceData pd = packets::PlaceData::nonsplit(K, gamma, psi);
            auto pk = packets::pu3_packet(pd);
            s.check(pk.members[0].report.shape ==
                        theta::LiftShape::QuotientOfPrincipalSeries,
                    "sigma+ shape");
            s.check(pk.members[1].report.shape == theta::LiftShape::Supercuspidal,
                    "sigma- shape");
        }
    }
    return s.done("all mu of conductor <= 1, both parities of W, p in {3,5,7}");
}

SuiteResult suite_packets(const std::string& fixtures_dir) {
    Suite s("packet-truth-table");
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (!fixtures_dir.empty() && fs::exists(fixtures_dir))
        for (const auto& e : fs::directory_iterator(fixtures_dir))
            if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    s.check(files.size() >= 12, "at least 12 fixture scenarios present");
    for (const auto& f : files) {
        scenario::Scenario sc = scenario::load_scenario(f);
        scenario::Place pl = scenario::build_place(sc);
        const auto& pd = *pl.data;
        auto g = packets::g2_packet(pd);
        s.check(int(g.members.size()) == packets::component_group_g2(pd),
                "packet size equals the component group: " + f);
        if (pd.is_split()) {
            s.check(g.members[0].shape == packets::G2Shape::QuotientOfQ1Induced,
                    "split member is a Q1 quotient: " + f);
        } else if (pd.chi().is_galois_invariant()) {
            s.check(g.members.size() == 1 &&
                        g.members[0].shape == packets::G2Shape::InducedFromQ2,
                    "chi^2 = 1 member is i_Q2(mu o det): " + f);
            s.check(g.pi_minus_vanishes, "pi- vanishes when chi^2 = 1: " + f);
            MultChar om = MultChar::omega(pd.base(), pl.field->K());
            s.check(g.members[0].q2_char && g.members[0].q2_char->pow(2) == om,
                    "mu^2 = omega: " + f);
        } else {
            s.check(g.members.size() == 2 && g.members[1].nonzero &&
                        g.members[1].tempered,
                    "chi != chi^c gives a nonzero tempered pi-: " + f);
        }
        auto pu = packets::pu3_packet(pd);
        s.check(int(pu.members.size()) == (pd.is_split() ? 1 : 2),
                "PU3 packet size: " + f);
    }
    return s.done(std::to_string(files.size()) + " fixture scenarios checked");
}

SuiteResult suite_rewrite() {
    Suite s("rewrite");
    auto tab = g2::SymbolTable::mu_omega();
    auto mu = g2::FCharExpr::symbol(tab, "mu");
    auto half = g2::FCharExpr::abs_power(tab, Rational(1, 2));
    g2::InducedDescriptor d{g2::Parabolic::Q1, {mu * half, mu.inv() * half},
                            g2::QuotientTag::FullInduced};
    auto r = g2::langlands_rewrite(d);
    s.check(r.tag == g2::QuotientTag::IrreducibleInduced, "terminates irreducible");
    s.check(r.quotient_parabolic && *r.quotient_parabolic == g2::Parabolic::Q2,
            "lands on the Heisenberg parabolic");
    s.check(r.quotient_character && *r.quotient_character == mu, "quotient mu o det");
    // machine-verify the logged steps
    for (const auto& st : r.log) {
        if (st.kind == "to-borel") {
            s.check(st.after == g2::induce_to_borel(d), "to-borel equality");
        } else if (st.kind == "swap") {
            auto p = g2::factor_as(st.parabolic, st.before);
            auto ratio = p.first * p.second.inv();
            s.check(!(ratio.symbols_trivial() &&
                      (ratio.s() == Rational(1) || ratio.s() == Rational(-1))),
                    "swap certificate");
            g2::InducedDescriptor sw{st.parabolic, {p.second, p.first},
                                     g2::QuotientTag::FullInduced};
            s.check(g2::induce_to_borel(sw) == st.after, "swap target equality");
            g2::WeylElt refl = st.parabolic == g2::Parabolic::Q2
                                   ? g2::WeylElt::reflection_alpha()
                                   : g2::WeylElt::reflection_beta();
            s.check(g2::weyl_act(refl, st.before) == st.after,
                    "swap is the Levi reflection");
        }
    }
    // split-case torus identity with a free symbol
    auto tf = g2::SymbolTable::free_symbol("chi");
    auto chi = g2::FCharExpr::symbol(tf, "chi");
    auto h = g2::FCharExpr::abs_power(tf, Rational(1, 2));
    g2::InducedDescriptor l{g2::Parabolic::Q2, {chi.inv() * h, chi.pow(2)},
                            g2::QuotientTag::FullInduced};
    g2::InducedDescriptor rr{g2::Parabolic::Q1, {chi * h, chi.inv() * h},
                             g2::QuotientTag::FullInduced};
    s.check(g2::induce_to_borel(l) == g2::induce_to_borel(rr),
            "i_Q2(tau~) = i_Q1(|det|^{1/2} tau) at the torus level");
    return s.done("the full chain replays with certified steps");
}

SuiteResult suite_g2_structure() {
    Suite s("g2-structure");
    s.check(g2::weyl_group().size() == 12, "Weyl group order 12");
    auto reps = g2::bruhat_double_cosets(g2::Parabolic::Q2);
    s.check(reps.size() == 4, "4 double cosets");
    std::multiset<size_t> lens;
    for (const auto& w : reps) lens.insert(w.length());
    s.check(lens == std::multiset<size_t>{0, 1, 3, 5}, "lengths {0,1,3,5}");
    auto tab = g2::SymbolTable::mu_omega();
    auto d1 = g2::modulus_char(tab, g2::Parabolic::Q1);
    s.check(d1.at_e1() == g2::FCharExpr::abs_power(tab, Rational(5)) &&
                d1.at_e2() == g2::FCharExpr::one(tab),
            "delta_Q1 = |t1|^5");
    auto d2 = g2::modulus_char(tab, g2::Parabolic::Q2);
    s.check(d2.at_e1() == g2::FCharExpr::abs_power(tab, Rational(3)) &&
                d2.at_e2() == g2::FCharExpr::abs_power(tab, Rational(3)),
            "delta_Q2 = |t1 t2|^3");
    // root-sum oracle
    long m1 = 0, k1 = 0;
    for (const auto& r : g2::radical_roots(g2::Parabolic::Q1)) { m1 += r.m; k1 += r.k; }
    s.check(m1 == 10 && k1 == 5, "Q1 radical root sum 10a + 5b");
    std::multiset<std::pair<long, long>> weights;
    for (const auto& w : g2::seven_dim_weights())
        weights.insert({w.m, w.k});
    std::multiset<std::pair<long, long>> expect = {{0, 0}, {1, 0},  {-1, 0}, {1, 1},
                                                   {-1, -1}, {2, 1}, {-2, -1}};
    s.check(weights == expect, "7-dim weight multiset");
    std::multiset<std::pair<long, long>> pairs;
    for (auto pr : g2::seven_dim_sl2_pair_weights()) pairs.insert(pr);
    std::multiset<std::pair<long, long>> pexpect = {{0, 0}, {2, 0},  {-2, 0}, {1, 1},
                                                    {1, -1}, {-1, 1}, {-1, -1}};
    s.check(pairs == pexpect, "branching datum 4 + 3 = 7");
    return s.done("Weyl, Bruhat, moduli and weights all pinned");
}

SuiteResult suite_satake() {
    Suite s("satake");
    // invariants and the split-side agreement for several twists
    for (long zden : {1L, 3L, 4L, 6L, 8L}) {
        FieldPtr F = Field::base(5);
        Turn t(1, zden);
        auto pd = packets::PlaceData::split(F, MultChar::unramified(F, t),
                                            AddChar(F, 0));
        auto g = packets::satake_g2(pd);
        Turn prod;
        int half = 0;
        bool has_one = false;
        std::multiset<std::pair<Rational, int>> set, invset;
        for (const auto& e : g.eigenvalues) {
            prod += e.turn;
            half += e.half_power;
            if (e.turn.is_trivial() && e.half_power == 0) has_one = true;
            set.insert({e.turn.frac(), e.half_power});
            invset.insert({(-e.turn).frac(), -e.half_power});
        }
        s.check(prod.is_trivial() && half == 0, "product 1");
        s.check(has_one, "contains 1");
        s.check(set == invset, "inversion-closed");
        // independent computation from the Q1-inducing characters
        std::vector<packets::Eigenvalue> oracle;
        packets::Eigenvalue X{-t, -1}, Y{t * 2, 0};
        for (auto [m1, m2] : g2::seven_dim_dual_weights())
            oracle.push_back(packets::Eigenvalue{X.turn * m1 + Y.turn * m2,
                                                 int(m1) * X.half_power});
        std::sort(oracle.begin(), oracle.end());
        s.check(oracle == g.eigenvalues, "matches the Borel-character computation");
    }
    // the nonsplit q = 5 example against the values derived from the
    // independent matrix model: {± i sqrt(5), ± i/sqrt(5), -1, 1, -1}
    FieldPtr K = Field::quadratic(5, ExtType::Unramified);
    auto pd = packets::PlaceData::nonsplit(
        K, chars::canonical_conjugate_symplectic(K), AddChar(Field::base(5), 0));
    auto g = packets::satake_g2(pd);
    std::vector<packets::Eigenvalue> frozen = {
        {Turn(1, 4), 1},  {Turn(1, 4), -1}, {Turn(3, 4), 1}, {Turn(3, 4), -1},
        {Turn(1, 2), 0},  {Turn(), 0},      {Turn(1, 2), 0}};
    std::sort(frozen.begin(), frozen.end());
    s.check(g.eigenvalues == frozen, "q = 5 nonsplit eigenvalues");
    auto p3 = packets::satake_pu3(pd);
    std::vector<packets::Eigenvalue> frozen3 = {
        {Turn(1, 2), 2}, {Turn(), 0}, {Turn(1, 2), -2}};
    std::sort(frozen3.begin(), frozen3.end());
    s.check(p3.eigenvalues == frozen3 && p3.squared_class,
            "PU3 squared class {1, -q, -1/q}");
    return s.done("invariants, split agreement, pinned q = 5 multisets");
}

SuiteResult suite_cubic() {
    Suite s("cubic");
    padic::PAdicField F5(5);
    auto f = cubic::BinaryCubic::from_ints(F5, 1, 0, -1, 0);
    s.check(cubic::disc_cubic(f).eq_mod(PadicNumber::from_integer(F5, 4), 6),
            "disc(x^3 - x y^2) = 4");
    std::mt19937 rng(3);
    int done = 0;
    while (done < 100) {
        long a = long(rng() % 11) - 5, b = long(rng() % 11) - 5;
        long c = long(rng() % 11) - 5, d = long(rng() % 11) - 5;
        if (a == 0) continue;
        ++done;
        mpz_class want = disc_resultant(a, b, c, d);
        auto g = cubic::BinaryCubic::from_ints(F5, a, b, c, d);
        auto D = cubic::disc_cubic(g);
        if (want == 0)
            s.check(D.is_zero() || D.is_approx_zero(), "disc vanishing iff resultant");
        else
            s.check(D.eq_mod(PadicNumber::from_integer(F5, want), 5),
                    "disc equals the resultant oracle");
    }
    // covariance
    done = 0;
    while (done < 50) {
        long a = long(rng() % 7) - 3, b = long(rng() % 7) - 3;
        long c = long(rng() % 7) - 3, d = long(rng() % 7) - 3;
        long P = long(rng() % 5) - 2, Q = long(rng() % 5) - 2;
        long R = long(rng() % 5) - 2, S = long(rng() % 5) - 2;
        if ((a | b | c | d) == 0 || P * S - Q * R == 0) continue;
        auto g = cubic::BinaryCubic::from_ints(F5, a, b, c, d);
        auto D = cubic::disc_cubic(g);
        if (D.is_zero() || D.is_approx_zero()) continue;
        ++done;
        auto gt = cubic::gl2_transform(g, P, Q, R, S);
        auto want =
            PadicNumber::from_integer(F5, P * S - Q * R).pow(6) * D;
        s.check(cubic::disc_cubic(gt).eq_mod(want, 4), "GL2 covariance");
    }
    // orbit partition with the displayed representatives
    for (long p : {3L, 5L, 7L}) {
        padic::PAdicField F(p);
        for (auto t : {ExtType::Unramified, ExtType::RamifiedPi,
                       ExtType::RamifiedUnitPi}) {
            padic::QuadExt K(F, t);
            std::set<int> labels;
            for (long rep : {1L, F.nonsquare_unit(), p, F.nonsquare_unit() * p})
                labels.insert(
                    cubic::orbit_label(PadicNumber::from_integer(F, rep), K).label);
            s.check(labels == std::set<int>{0, 1}, "two orbit labels");
        }
    }
    return s.done("disc formula vs resultant, covariance, orbit partition");
}

SuiteResult suite_determinism(const std::string& fixtures_dir) {
    Suite s("determinism");
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (!fixtures_dir.empty() && fs::exists(fixtures_dir))
        for (const auto& e : fs::directory_iterator(fixtures_dir))
            if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    s.check(!files.empty(), "fixtures available");
    int count = 0;
    for (const auto& f : files) {
        auto run = [&]() {
            scenario::Scenario sc = scenario::load_scenario(f);
            scenario::Place pl = scenario::build_place(sc);
            return scenario::make_report(pl, "packet", scenario::report_packet(pl))
                .dump(2);
        };
        std::string once = run();
        if (++count <= 4)
            s.check(once == run(), "byte-identical repeated report: " + f);
        // shipped goldens are regression pins for the whole grid
        fs::path golden = fs::path(fixtures_dir) / "golden" /
                          (fs::path(f).stem().string() + ".packet.json");
        if (fs::exists(golden)) {
            std::ifstream in(golden);
            std::string want((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            while (!want.empty() && (want.back() == '\n' || want.back() == '\r'))
                want.pop_back();
            s.check(once == want, "matches the shipped golden: " + f);
        }
    }
    return s.done("repeated reports byte-identical; goldens match");
}

} // namespace

std::vector<SuiteResult> run_all(const std::string& fixtures_dir) {
    std::vector<SuiteResult> out;
    out.push_back(suite_hilbert());
    out.push_back(suite_epsilon());
    out.push_back(suite_dichotomy());
    out.push_back(suite_packets(fixtures_dir));
    out.push_back(suite_rewrite());
    out.push_back(suite_g2_structure());
    out.push_back(suite_satake());
    out.push_back(suite_cubic());
    out.push_back(suite_determinism(fixtures_dir));
    return out;
}

} // namespace g2p::selftest
