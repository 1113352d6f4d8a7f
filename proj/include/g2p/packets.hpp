#ifndef G2P_PACKETS_HPP
#define G2P_PACKETS_HPP

#include <optional>
#include <vector>

#include "g2p/g2.hpp"
#include "g2p/theta_u.hpp"

namespace g2p::packets {

// Per-place input data: the base field, the splitting behaviour, the local
// character and additive character, and the canonical trace-zero element.
class PlaceData {
public:
    static PlaceData nonsplit(chars::FieldPtr K, chars::MultChar chi,
                              chars::AddChar psi,
                              std::optional<padic::ExtElement> delta = std::nullopt);
    static PlaceData split(chars::FieldPtr F, chars::MultChar chi_w,
                           chars::AddChar psi);

    bool is_split() const { return split_; }
    const chars::FieldPtr& base() const { return F_; }
    const chars::FieldPtr& ext() const;                 // nonsplit only
    const chars::MultChar& chi() const { return chi_; } // over K or F resp.
    chars::MultChar chi_other() const;                  // split: chi_w^{-1}
    const chars::AddChar& psi() const { return psi_; }
    const padic::ExtElement& delta() const;             // nonsplit only

private:
    PlaceData(bool split, chars::FieldPtr F, chars::FieldPtr K,
              chars::MultChar chi, chars::AddChar psi,
              std::optional<padic::ExtElement> delta);
    bool split_;
    chars::FieldPtr F_, K_;
    chars::MultChar chi_;
    chars::AddChar psi_;
    std::optional<padic::ExtElement> delta_;
};

// component groups: Z/2 detected as 2, trivial as 1
int component_group_pu3(const PlaceData& pd);
int component_group_g2(const PlaceData& pd);

// --- Howe--PS packet on the PU3 side -----------------------------------------

struct Pu3Member {
    std::string label;        // "+" or "-"
    int w_sign;               // eps(W^±) used to build it (nonsplit)
    theta::ThetaReport report;
};

struct Pu3Packet {
    int s_group;
    int eps_v1;               // eps of the line in V's Witt tower (nonsplit)
    std::vector<Pu3Member> members;
};

Pu3Packet pu3_packet(const PlaceData& pd);

// --- the G2 packet -------------------------------------------------------------

enum class G2Shape { QuotientOfQ1Induced, InducedFromQ2, TemperedNonGeneric, Zero };

std::string g2_shape_name(G2Shape s);

// automorphic-induction datum of chi: a pair of F^x-characters when chi
// descends (chi = chi^c, or a split place), the inducing K-character itself
// in the genuinely dihedral case
struct TauDescriptor {
    bool dihedral;
    std::optional<std::pair<chars::MultChar, chars::MultChar>> pair;
    std::optional<chars::MultChar> inducing_char;
};

struct G2Member {
    std::string label;        // "+" or "-"
    G2Shape shape;
    bool nonzero;
    bool tempered;
    std::optional<TauDescriptor> tau;           // Q1-quotient form
    std::optional<chars::MultChar> q2_char;     // mu in i_Q2(mu o det)
    std::optional<g2::RewriteResult> rewrite;   // audited chain, chi^2 = 1 case
};

struct G2Packet {
    int s_group;
    std::vector<G2Member> members;  // only nonzero members; size == s_group
    bool pi_minus_vanishes;         // nonsplit chi^2 = 1
};

G2Packet g2_packet(const PlaceData& pd);

// --- Satake parameters -----------------------------------------------------------

// exact eigenvalue e^{2 pi i turn} * q^{half_power/2}
struct Eigenvalue {
    Turn turn;
    int half_power;
    bool operator==(const Eigenvalue& o) const {
        return turn == o.turn && half_power == o.half_power;
    }
    bool operator<(const Eigenvalue& o) const {
        if (half_power != o.half_power) return half_power < o.half_power;
        return turn < o.turn;
    }
    std::complex<double> value(double q) const {
        return turn.value() * std::pow(q, 0.5 * half_power);
    }
};

struct SatakeParam {
    std::vector<Eigenvalue> eigenvalues;  // canonically sorted
    // nonsplit places: Frobenius lands in the non-identity component of the
    // L-group; what is reported is the honest class of the square
    bool squared_class;
    long q;
};

// 3-dimensional parameter of the PU3-side member (chi unramified)
SatakeParam satake_pu3(const PlaceData& pd);
// 7-dimensional parameter of pi+ (unramified place)
SatakeParam satake_g2(const PlaceData& pd);

} // namespace g2p::packets

#endif
