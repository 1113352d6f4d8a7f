#ifndef G2P_G2_HPP
#define G2P_G2_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "g2p/chars.hpp"
#include "g2p/rational.hpp"

namespace g2p::g2 {

// ---------------------------------------------------------------------------
// Root system of type G2.  Weights are m*alpha + k*beta with alpha the short
// and beta the long simple root.  The torus is coordinatized by
//   t -> (t1, t2) = ((2a+b)(t), (a+b)(t)),
// so alpha = e1 - e2 and beta = 2 e2 - e1 in the coordinate weights e1, e2.
// ---------------------------------------------------------------------------
struct Weight {
    long m = 0, k = 0;
    bool operator==(const Weight& o) const { return m == o.m && k == o.k; }
    bool operator<(const Weight& o) const {
        return m != o.m ? m < o.m : k < o.k;
    }
    Weight operator-() const { return Weight{-m, -k}; }
    std::string str() const;
};

// e-coordinates of a weight: m*alpha + k*beta = (m-k) e1 + (2k-m) e2
std::pair<long, long> to_e(const Weight& w);

// inner product with alpha.alpha = 2, beta.beta = 6, alpha.beta = -3
long dot(const Weight& a, const Weight& b);

const std::vector<Weight>& positive_roots();
const std::vector<Weight>& short_positive_roots();
const std::vector<Weight>& long_positive_roots();

// Weyl group element: integer 2x2 matrix acting on (m, k), with a reduced
// word over the simple reflections a = w_alpha, b = w_beta.
class WeylElt {
public:
    WeylElt();  // identity
    static WeylElt reflection_alpha();
    static WeylElt reflection_beta();

    Weight apply(const Weight& w) const;
    WeylElt operator*(const WeylElt& o) const;  // this after o
    bool operator==(const WeylElt& o) const { return m_ == o.m_; }
    bool operator<(const WeylElt& o) const { return m_ < o.m_; }

    const std::string& word() const { return word_; }
    size_t length() const { return word_.size(); }

private:
    std::array<long, 4> m_;  // row-major [a b; c d]
    std::string word_;
    friend const std::vector<WeylElt>& weyl_group();
};

// all 12 elements, sorted by length then word
const std::vector<WeylElt>& weyl_group();

// ---------------------------------------------------------------------------
// Symbolic characters of F^x: the free abelian group on declared symbols
// modulo declared relations, together with one rational | |^s slot.
// ---------------------------------------------------------------------------
class SymbolTable {
public:
    // relations are exponent vectors that equal the trivial character
    static std::shared_ptr<const SymbolTable> make(
        std::vector<std::string> symbols,
        std::vector<std::vector<long>> relations);
    // the section-7 table: symbols (mu, omega), relations mu^2 = omega,
    // omega^2 = 1
    static std::shared_ptr<const SymbolTable> mu_omega();
    // a single free unitary symbol
    static std::shared_ptr<const SymbolTable> free_symbol(const std::string& name);

    int nsyms() const { return int(symbols_.size()); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    int index_of(const std::string& s) const;

    // canonical representative of v modulo the relation lattice
    std::vector<long> normalize(std::vector<long> v) const;

private:
    SymbolTable(std::vector<std::string> symbols,
                std::vector<std::vector<long>> relations);
    std::vector<std::string> symbols_;
    std::vector<std::vector<long>> hnf_;  // row HNF of the relation lattice
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

class FCharExpr {
public:
    static FCharExpr one(SymbolTablePtr t);
    static FCharExpr symbol(SymbolTablePtr t, const std::string& name);
    static FCharExpr abs_power(SymbolTablePtr t, const Rational& s);

    const SymbolTablePtr& table() const { return tab_; }
    const std::vector<long>& exps() const { return e_; }
    const Rational& s() const { return s_; }

    FCharExpr operator*(const FCharExpr& o) const;
    FCharExpr inv() const;
    FCharExpr pow(long k) const;
    FCharExpr times_abs(const Rational& ds) const;

    bool operator==(const FCharExpr& o) const { return e_ == o.e_ && s_ == o.s_; }
    bool operator!=(const FCharExpr& o) const { return !(*this == o); }
    bool is_one() const;
    bool symbols_trivial() const;

    // numeric unit-part value under a symbol -> MultChar binding (unitary)
    Turn eval_unit(const std::map<std::string, chars::MultChar>& bind,
                   const padic::PadicNumber& x) const;

    std::string str() const;

private:
    FCharExpr(SymbolTablePtr t, std::vector<long> e, Rational s);
    SymbolTablePtr tab_;
    std::vector<long> e_;
    Rational s_;
};

// character of the torus in the coordinates (t1, t2)
class TorusChar {
public:
    static TorusChar trivial(SymbolTablePtr t);
    TorusChar(FCharExpr at_e1, FCharExpr at_e2);

    const FCharExpr& at_e1() const { return c1_; }
    const FCharExpr& at_e2() const { return c2_; }

    // multiply in eta attached to the weight w
    TorusChar attach(const FCharExpr& eta, const Weight& w) const;
    TorusChar operator*(const TorusChar& o) const;
    bool operator==(const TorusChar& o) const { return c1_ == o.c1_ && c2_ == o.c2_; }
    bool operator!=(const TorusChar& o) const { return !(*this == o); }

    std::string str() const;

private:
    FCharExpr c1_, c2_;
};

TorusChar weyl_act(const WeylElt& w, const TorusChar& c);
// the Weyl element carrying c1 to c2, if any (searches all 12)
std::optional<WeylElt> weyl_equivalent(const TorusChar& c1, const TorusChar& c2);

// ---------------------------------------------------------------------------
// Parabolic bookkeeping.  Q1 is the three-step parabolic (Levi root beta,
// Levi coordinates diag((a+b)(t), a(t))); Q2 is the Heisenberg parabolic
// (Levi root alpha, Levi coordinates diag((2a+b)(t), (a+b)(t))).
// ---------------------------------------------------------------------------
enum class Parabolic { Q1, Q2 };

std::string parabolic_name(Parabolic q);
Weight levi_root(Parabolic q);
std::vector<Weight> radical_roots(Parabolic q);

// modular character delta_Q as a torus character: |t1|^5 for Q1,
// |t1 t2|^3 for Q2
TorusChar modulus_char(SymbolTablePtr t, Parabolic q);

enum class QuotientTag { FullInduced, UniqueIrreducibleQuotient, IrreducibleInduced };

std::string quotient_tag_name(QuotientTag t);

struct LeviPair {
    FCharExpr first, second;
};

struct InducedDescriptor {
    Parabolic src;
    LeviPair pair;
    QuotientTag tag = QuotientTag::FullInduced;
};

// unnormalized bookkeeping: the Levi characters are attached to the Levi
// coordinate weights exactly as written
TorusChar induce_to_borel(const InducedDescriptor& d);
LeviPair factor_as(Parabolic q, const TorusChar& c);

// ---------------------------------------------------------------------------
// The induction-rewriting algorithm: replay the Borel-level identities and
// certified GL2-Levi swaps until a pair (eta | |^{1/2}, eta | |^{-1/2}) is
// found; then the unique irreducible quotient is eta o det on that Levi, and
// i_{Q2}(eta o det) is certified irreducible when eta is unitary with
// eta^2 != 1 in the declared presentation.
// ---------------------------------------------------------------------------
struct RewriteStep {
    std::string kind;          // "to-borel" | "swap" | "quotient" | "irreducible"
    Parabolic parabolic;
    TorusChar before, after;
    std::string note;          // certificate or emitted data
};

struct RewriteResult {
    QuotientTag tag = QuotientTag::FullInduced;
    std::optional<Parabolic> quotient_parabolic;
    std::optional<FCharExpr> quotient_character;  // eta (with any | |^t shift)
    InducedDescriptor input;
    std::vector<RewriteStep> log;
};

RewriteResult langlands_rewrite(const InducedDescriptor& d);

// does any Weyl translate of c admit a (eta| |^{1/2}, eta| |^{-1/2}) Levi
// factorization? (exhaustive 12-element scan, used as a cross-check)
bool weyl_orbit_has_quotient_pattern(const TorusChar& c);

// minimal-length representatives of W_L \ W / W_L
std::vector<WeylElt> bruhat_double_cosets(Parabolic q);

// weights of the 7-dimensional fundamental representation: 0 and the six
// short roots
std::vector<Weight> seven_dim_weights();
// the same multiset as (s, l)-weight pairs under the commuting pair
// (SL2 along 2a+b, SL2 along beta): (2 (x) 2) + Sym^2(s)
std::vector<std::pair<long, long>> seven_dim_sl2_pair_weights();
// dual-side weights (coroots of the long roots and 0) in the basis dual to
// (e1, e2); these read Satake eigenvalues off an unramified Borel character
std::vector<std::pair<long, long>> seven_dim_dual_weights();

} // namespace g2p::g2

#endif
