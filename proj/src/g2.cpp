#include "g2p/g2.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace g2p::g2 {

using chars::MultChar;
using padic::PadicNumber;

// --- roots -------------------------------------------------------------------

std::string Weight::str() const {
    std::ostringstream os;
    os << m << "a+" << k << "b";
    return os.str();
}

std::pair<long, long> to_e(const Weight& w) { return {w.m - w.k, 2 * w.k - w.m}; }

long dot(const Weight& a, const Weight& b) {
    // Gram matrix [[2, -3], [-3, 6]] in the (alpha, beta) basis
    return 2 * a.m * b.m - 3 * (a.m * b.k + a.k * b.m) + 6 * a.k * b.k;
}

const std::vector<Weight>& positive_roots() {
    static const std::vector<Weight> r = {{1, 0}, {0, 1}, {1, 1},
                                          {2, 1}, {3, 1}, {3, 2}};
    return r;
}

const std::vector<Weight>& short_positive_roots() {
    static const std::vector<Weight> r = {{1, 0}, {1, 1}, {2, 1}};
    return r;
}

const std::vector<Weight>& long_positive_roots() {
    static const std::vector<Weight> r = {{0, 1}, {3, 1}, {3, 2}};
    return r;
}

// --- Weyl group ----------------------------------------------------------------

WeylElt::WeylElt() : m_{1, 0, 0, 1} {}

WeylElt WeylElt::reflection_alpha() {
    // alpha -> -alpha, beta -> 3 alpha + beta
    WeylElt w;
    w.m_ = {-1, 3, 0, 1};
    w.word_ = "a";
    return w;
}

WeylElt WeylElt::reflection_beta() {
    // alpha -> alpha + beta, beta -> -beta
    WeylElt w;
    w.m_ = {1, 0, 1, -1};
    w.word_ = "b";
    return w;
}

Weight WeylElt::apply(const Weight& w) const {
    return Weight{m_[0] * w.m + m_[1] * w.k, m_[2] * w.m + m_[3] * w.k};
}

WeylElt WeylElt::operator*(const WeylElt& o) const {
    WeylElt r;
    r.m_ = {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
            m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
    r.word_ = word_ + o.word_;  // not reduced in general
    return r;
}

const std::vector<WeylElt>& weyl_group() {
    static const std::vector<WeylElt> G = [] {
        std::vector<WeylElt> out;
        std::set<std::array<long, 4>> seen;
        std::deque<WeylElt> queue;
        WeylElt e;
        queue.push_back(e);
        seen.insert(e.m_);
        out.push_back(e);
        const WeylElt gens[2] = {WeylElt::reflection_alpha(),
                                 WeylElt::reflection_beta()};
        while (!queue.empty()) {
            WeylElt cur = queue.front();
            queue.pop_front();
            for (const WeylElt& g : gens) {
                WeylElt nxt = cur * g;
                nxt.word_ = cur.word_ + g.word_;  // BFS gives a reduced word
                if (seen.insert(nxt.m_).second) {
                    out.push_back(nxt);
                    queue.push_back(nxt);
                }
            }
        }
        if (out.size() != 12)
            throw internal_error("Weyl group closure has wrong order");
        std::sort(out.begin(), out.end(), [](const WeylElt& x, const WeylElt& y) {
            if (x.length() != y.length()) return x.length() < y.length();
            return x.word() < y.word();
        });
        return out;
    }();
    return G;
}

// --- symbol tables --------------------------------------------------------------

SymbolTable::SymbolTable(std::vector<std::string> symbols,
                         std::vector<std::vector<long>> relations)
    : symbols_(std::move(symbols)) {
    for (auto& r : relations)
        if (r.size() != symbols_.size())
            throw domain_error("relation arity mismatch");
    // row Hermite normal form of the relation lattice (integer row reduction)
    std::vector<std::vector<long>> rows = std::move(relations);
    size_t rank = 0;
    for (size_t col = 0; col < symbols_.size() && rank < rows.size(); ++col) {
        // reduce column col below row `rank` by gcd steps
        while (true) {
            size_t piv = rows.size();
            for (size_t r = rank; r < rows.size(); ++r)
                if (rows[r][col] != 0 &&
                    (piv == rows.size() ||
                     std::abs(rows[r][col]) < std::abs(rows[piv][col])))
                    piv = r;
            if (piv == rows.size()) break;
            std::swap(rows[rank], rows[piv]);
            bool again = false;
            for (size_t r = rank + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                long q = rows[r][col] / rows[rank][col];
                for (size_t c = 0; c < symbols_.size(); ++c)
                    rows[r][c] -= q * rows[rank][c];
                if (rows[r][col] != 0) again = true;
            }
            if (!again) break;
        }
        if (rank < rows.size() && rows[rank][col] != 0) {
            if (rows[rank][col] < 0)
                for (auto& x : rows[rank]) x = -x;
            ++rank;
        }
    }
    rows.resize(rank);
    hnf_ = std::move(rows);
}

std::shared_ptr<const SymbolTable> SymbolTable::make(
    std::vector<std::string> symbols, std::vector<std::vector<long>> relations) {
    return std::shared_ptr<const SymbolTable>(
        new SymbolTable(std::move(symbols), std::move(relations)));
}

std::shared_ptr<const SymbolTable> SymbolTable::mu_omega() {
    // mu^2 = omega, omega^2 = 1:  relations mu^2 omega^{-1}, omega^2
    return make({"mu", "omega"}, {{2, -1}, {0, 2}});
}

std::shared_ptr<const SymbolTable> SymbolTable::free_symbol(const std::string& n) {
    return make({n}, {});
}

int SymbolTable::index_of(const std::string& s) const {
    for (size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == s) return int(i);
    throw domain_error("unknown symbol '" + s + "'");
}

std::vector<long> SymbolTable::normalize(std::vector<long> v) const {
    if (v.size() != symbols_.size()) throw internal_error("exponent arity mismatch");
    // reduce against the HNF rows, pivot by pivot
    for (const auto& row : hnf_) {
        size_t col = 0;
        while (col < row.size() && row[col] == 0) ++col;
        if (col == row.size()) continue;
        long h = row[col];
        long q = v[col] / h;
        if (v[col] % h < 0) q -= 1;  // floor division keeps 0 <= v[col] < h
        if (q != 0)
            for (size_t c = 0; c < v.size(); ++c) v[c] -= q * row[c];
    }
    return v;
}

// --- FCharExpr -------------------------------------------------------------------

FCharExpr::FCharExpr(SymbolTablePtr t, std::vector<long> e, Rational s)
    : tab_(std::move(t)), e_(tab_->normalize(std::move(e))), s_(s) {}

FCharExpr FCharExpr::one(SymbolTablePtr t) {
    std::vector<long> e(t->nsyms(), 0);
    return FCharExpr(std::move(t), std::move(e), Rational(0));
}

FCharExpr FCharExpr::symbol(SymbolTablePtr t, const std::string& name) {
    std::vector<long> e(t->nsyms(), 0);
    e[t->index_of(name)] = 1;
    return FCharExpr(std::move(t), std::move(e), Rational(0));
}

FCharExpr FCharExpr::abs_power(SymbolTablePtr t, const Rational& s) {
    std::vector<long> e(t->nsyms(), 0);
    return FCharExpr(std::move(t), std::move(e), s);
}

FCharExpr FCharExpr::operator*(const FCharExpr& o) const {
    if (tab_ != o.tab_) throw domain_error("mixed symbol tables");
    std::vector<long> e(e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = e_[i] + o.e_[i];
    return FCharExpr(tab_, std::move(e), s_ + o.s_);
}

FCharExpr FCharExpr::inv() const { return pow(-1); }

FCharExpr FCharExpr::pow(long k) const {
    std::vector<long> e(e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = e_[i] * k;
    return FCharExpr(tab_, std::move(e), s_ * k);
}

FCharExpr FCharExpr::times_abs(const Rational& ds) const {
    return FCharExpr(tab_, e_, s_ + ds);
}

bool FCharExpr::is_one() const { return symbols_trivial() && s_.is_zero(); }

bool FCharExpr::symbols_trivial() const {
    for (long x : e_)
        if (x != 0) return false;
    return true;
}

Turn FCharExpr::eval_unit(const std::map<std::string, MultChar>& bind,
                          const PadicNumber& x) const {
    Turn t;
    for (size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] == 0) continue;
        auto it = bind.find(tab_->symbols()[i]);
        if (it == bind.end())
            throw domain_error("no binding for symbol '" + tab_->symbols()[i] + "'");
        t += it->second.eval(x).unit * e_[i];
    }
    return t;
}

std::string FCharExpr::str() const {
    std::ostringstream os;
    bool wrote = false;
    for (size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] == 0) continue;
        if (wrote) os << "*";
        os << tab_->symbols()[i];
        if (e_[i] != 1) os << "^" << e_[i];
        wrote = true;
    }
    if (!s_.is_zero()) {
        if (wrote) os << "*";
        os << "|.|^(" << s_.str() << ")";
        wrote = true;
    }
    if (!wrote) os << "1";
    return os.str();
}

// --- TorusChar ------------------------------------------------------------------

TorusChar::TorusChar(FCharExpr at_e1, FCharExpr at_e2)
    : c1_(std::move(at_e1)), c2_(std::move(at_e2)) {}

TorusChar TorusChar::trivial(SymbolTablePtr t) {
    FCharExpr one = FCharExpr::one(t);
    return TorusChar(one, one);
}

TorusChar TorusChar::attach(const FCharExpr& eta, const Weight& w) const {
    auto [c1, c2] = to_e(w);
    return TorusChar(c1_ * eta.pow(c1), c2_ * eta.pow(c2));
}

TorusChar TorusChar::operator*(const TorusChar& o) const {
    return TorusChar(c1_ * o.c1_, c2_ * o.c2_);
}

std::string TorusChar::str() const {
    return "(" + c1_.str() + ", " + c2_.str() + ")";
}

TorusChar weyl_act(const WeylElt& w, const TorusChar& c) {
    TorusChar out = TorusChar::trivial(c.at_e1().table());
    out = out.attach(c.at_e1(), w.apply(Weight{2, 1}));  // e1 = 2a+b
    out = out.attach(c.at_e2(), w.apply(Weight{1, 1}));  // e2 = a+b
    return out;
}

std::optional<WeylElt> weyl_equivalent(const TorusChar& c1, const TorusChar& c2) {
    for (const WeylElt& w : weyl_group())
        if (weyl_act(w, c1) == c2) return w;
    return std::nullopt;
}

// --- parabolics -----------------------------------------------------------------

std::string parabolic_name(Parabolic q) { return q == Parabolic::Q1 ? "Q1" : "Q2"; }

Weight levi_root(Parabolic q) {
    // the ratio of the two Levi coordinates: (a+b) - a = b for Q1,
    // (2a+b) - (a+b) = a for Q2
    return q == Parabolic::Q1 ? Weight{0, 1} : Weight{1, 0};
}

std::vector<Weight> radical_roots(Parabolic q) {
    std::vector<Weight> out;
    Weight lr = levi_root(q);
    for (const Weight& r : positive_roots())
        if (!(r == lr)) out.push_back(r);
    return out;
}

TorusChar modulus_char(SymbolTablePtr t, Parabolic q) {
    Weight sum{0, 0};
    for (const Weight& r : radical_roots(q)) { sum.m += r.m; sum.k += r.k; }
    auto [c1, c2] = to_e(sum);
    FCharExpr e1 = FCharExpr::abs_power(t, Rational(c1));
    FCharExpr e2 = FCharExpr::abs_power(t, Rational(c2));
    return TorusChar(std::move(e1), std::move(e2));
}

std::string quotient_tag_name(QuotientTag t) {
    switch (t) {
        case QuotientTag::FullInduced: return "full-induced";
        case QuotientTag::UniqueIrreducibleQuotient: return "unique-irreducible-quotient";
        case QuotientTag::IrreducibleInduced: return "irreducible-induced";
    }
    throw internal_error("bad QuotientTag");
}

TorusChar induce_to_borel(const InducedDescriptor& d) {
    SymbolTablePtr t = d.pair.first.table();
    TorusChar c = TorusChar::trivial(t);
    if (d.src == Parabolic::Q1) {
        // first at a+b, second at a
        c = c.attach(d.pair.first, Weight{1, 1});
        c = c.attach(d.pair.second, Weight{1, 0});
    } else {
        // first at 2a+b, second at a+b
        c = c.attach(d.pair.first, Weight{2, 1});
        c = c.attach(d.pair.second, Weight{1, 1});
    }
    return c;
}

LeviPair factor_as(Parabolic q, const TorusChar& c) {
    if (q == Parabolic::Q2) return LeviPair{c.at_e1(), c.at_e2()};
    // Q1: first = c2 * c1, second = c1
    return LeviPair{c.at_e2() * c.at_e1(), c.at_e1()};
}

// --- the rewrite ----------------------------------------------------------------

namespace {

// (eta | |^{1/2}, eta | |^{-1/2}) detection; returns eta (with its | |^t core)
std::optional<FCharExpr> quotient_pattern(const LeviPair& p) {
    FCharExpr ratio = p.first * p.second.inv();
    if (!ratio.symbols_trivial() || !(ratio.s() == Rational(1))) return std::nullopt;
    return p.first.times_abs(Rational(-1, 2));
}

// Prop 1.1(i)-style certificate: the GL2 principal series i(first, second) is
// irreducible iff first/second is not | |^{±1}
bool swap_certified(const LeviPair& p) {
    FCharExpr ratio = p.first * p.second.inv();
    if (!ratio.symbols_trivial()) return true;
    return !(ratio.s() == Rational(1) || ratio.s() == Rational(-1));
}

std::string state_key(const TorusChar& c) { return c.str(); }

} // namespace

RewriteResult langlands_rewrite(const InducedDescriptor& d) {
    RewriteResult res{QuotientTag::FullInduced, std::nullopt, std::nullopt, d, {}};

    TorusChar c0 = induce_to_borel(d);
    RewriteStep toborel{"to-borel", d.src, c0, c0,
                        "i_" + parabolic_name(d.src) + "(" + d.pair.first.str() +
                            " (x) " + d.pair.second.str() + ") = i_B(" + c0.str() +
                            ")"};

    // BFS over certified swaps; parents reconstruct the audited path
    struct Node { TorusChar c; int parent; RewriteStep via; };
    std::vector<Node> nodes = {Node{c0, -1, toborel}};
    std::set<std::string> seen = {state_key(c0)};
    size_t head = 0;

    auto emit_path = [&](int idx) {
        std::vector<RewriteStep> path;
        for (int i = idx; i >= 0; i = nodes[i].parent) path.push_back(nodes[i].via);
        std::reverse(path.begin(), path.end());
        for (auto& s : path) res.log.push_back(std::move(s));
    };

    while (head < nodes.size()) {
        int idx = int(head++);
        TorusChar c = nodes[idx].c;
        // quotient pattern first, Heisenberg parabolic before the three-step one
        for (Parabolic q : {Parabolic::Q2, Parabolic::Q1}) {
            LeviPair p = factor_as(q, c);
            if (auto eta = quotient_pattern(p)) {
                emit_path(idx);
                res.tag = QuotientTag::UniqueIrreducibleQuotient;
                res.quotient_parabolic = q;
                res.quotient_character = *eta;
                res.log.push_back(RewriteStep{
                    "quotient", q, c, c,
                    "i_" + parabolic_name(q) + "(" + eta->str() +
                        " o det): unique irreducible quotient of i(" +
                        p.first.str() + " (x) " + p.second.str() + ")"});
                // final irreducibility on the Heisenberg parabolic: eta unitary
                // with eta^2 nontrivial in the presentation
                if (q == Parabolic::Q2 && eta->s().is_zero() &&
                    !eta->pow(2).symbols_trivial()) {
                    res.tag = QuotientTag::IrreducibleInduced;
                    res.log.push_back(RewriteStep{
                        "irreducible", q, c, c,
                        "i_Q2(" + eta->str() + " o det) is irreducible: " +
                            eta->str() + " unitary with square " +
                            eta->pow(2).str() + " != 1"});
                }
                return res;
            }
        }
        for (Parabolic q : {Parabolic::Q2, Parabolic::Q1}) {
            LeviPair p = factor_as(q, c);
            if (!swap_certified(p)) continue;
            FCharExpr ratio = p.first * p.second.inv();
            if (ratio.is_one()) continue;  // swapping equal characters is idle
            InducedDescriptor swapped{q, LeviPair{p.second, p.first},
                                      QuotientTag::FullInduced};
            TorusChar c2 = induce_to_borel(swapped);
            if (seen.insert(state_key(c2)).second) {
                RewriteStep step{"swap", q, c, c2,
                                 "i(" + p.first.str() + " (x) " + p.second.str() +
                                     ") irreducible on the " + parabolic_name(q) +
                                     " Levi (ratio " + ratio.str() +
                                     " != |.|^{±1})"};
                nodes.push_back(Node{c2, idx, std::move(step)});
            }
        }
    }

    res.tag = QuotientTag::FullInduced;
    res.log.push_back(toborel);
    res.log.push_back(RewriteStep{"exhausted", d.src, c0, c0,
                                  "no quotient pattern in the certified orbit"});
    return res;
}

bool weyl_orbit_has_quotient_pattern(const TorusChar& c) {
    for (const WeylElt& w : weyl_group()) {
        TorusChar cw = weyl_act(w, c);
        for (Parabolic q : {Parabolic::Q1, Parabolic::Q2})
            if (quotient_pattern(factor_as(q, cw))) return true;
    }
    return false;
}

std::vector<WeylElt> bruhat_double_cosets(Parabolic q) {
    WeylElt s = (q == Parabolic::Q1) ? WeylElt::reflection_beta()
                                     : WeylElt::reflection_alpha();
    std::vector<WeylElt> reps;
    std::set<std::string> covered;
    for (const WeylElt& w : weyl_group()) {  // sorted by length
        if (covered.count(w.word())) continue;
        reps.push_back(w);
        // mark the whole double coset {e,s} w {e,s}
        for (int l : {0, 1})
            for (int r : {0, 1}) {
                WeylElt x = (l ? s : WeylElt()) * w * (r ? s : WeylElt());
                for (const WeylElt& g : weyl_group())
                    if (g == x) covered.insert(g.word());
            }
    }
    return reps;
}

// --- seven-dimensional representation data ----------------------------------------

std::vector<Weight> seven_dim_weights() {
    std::vector<Weight> out = {{0, 0}};
    for (const Weight& r : short_positive_roots()) {
        out.push_back(r);
        out.push_back(-r);
    }
    return out;
}

std::vector<std::pair<long, long>> seven_dim_sl2_pair_weights() {
    // pairing with the short root 2a+b (its own coroot) and the long root
    // beta (coroot beta/3)
    Weight gs{2, 1}, gl{0, 1};
    std::vector<std::pair<long, long>> out;
    for (const Weight& w : seven_dim_weights())
        out.push_back({dot(w, gs), dot(w, gl) / 3});
    return out;
}

std::vector<std::pair<long, long>> seven_dim_dual_weights() {
    // coroots of the long roots, written in the basis dual to (e1, e2):
    // gamma^vee = 2 gamma / (gamma, gamma), coordinates (e_i, gamma^vee)
    std::vector<std::pair<long, long>> out = {{0, 0}};
    Weight e1{2, 1}, e2{1, 1};
    for (const Weight& g : long_positive_roots()) {
        long n = dot(g, g);
        long c1 = 2 * dot(e1, g) / n;
        long c2 = 2 * dot(e2, g) / n;
        out.push_back({c1, c2});
        out.push_back({-c1, -c2});
    }
    return out;
}

} // namespace g2p::g2
