#ifndef G2P_HERMITIAN_HPP
#define G2P_HERMITIAN_HPP

#include <optional>
#include <vector>

#include "g2p/chars.hpp"

namespace g2p::herm {

enum class Kind { Hermitian, SkewHermitian };

using Gram = std::vector<std::vector<padic::ExtElement>>;

// Hermitian or skew-Hermitian space over K, either abstract (dimension and
// sign class only) or carrying an explicit Gram matrix.  All skew signs are
// taken relative to the canonical module-wide delta = sqrt(d).
class Space {
public:
    static Space abstract(chars::FieldPtr K, Kind kind, int dim, int sign);
    static Space from_gram(chars::FieldPtr K, Kind kind, Gram g);

    // <lambda> with form lambda * x * conj(y) (Hermitian line)
    static Space hermitian_line(chars::FieldPtr K, const padic::PadicNumber& lambda);
    // form delta * lambda * x * conj(y) (skew-Hermitian line)
    static Space skew_line(chars::FieldPtr K, const padic::PadicNumber& lambda);
    // the hyperbolic plane
    static Space hyperbolic(chars::FieldPtr K, Kind kind = Kind::Hermitian);
    // the 3-dimensional space with antidiagonal (-1,-1,-1) Gram matrix
    static Space three_dim_standard(chars::FieldPtr K);

    const chars::FieldPtr& field() const { return K_; }
    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool has_gram() const { return gram_.has_value(); }
    const Gram& gram() const;

    // discriminant (-1)^{n(n-1)/2} det(Phi), reduced into F^x (for skew
    // spaces after dividing by delta^m); requires a Gram matrix
    padic::PadicNumber disc_value() const;

    // canonical representative of disc mod norms: 1 or the canonical non-norm
    padic::PadicNumber disc_class() const;

    // epsilon(V) = omega(disc) resp. epsilon(W) = omega(delta^{-m} disc)
    int sign() const;

    // split even-dimensional Hermitian space (epsilon = +1)
    bool is_split() const;

    Space add_hyperbolic() const;
    Space negate_form() const;   // W^{-1}: same space, negated form

    std::string str() const;

private:
    Space(chars::FieldPtr K, Kind kind, int dim, std::optional<int> sign,
          std::optional<Gram> g);
    chars::FieldPtr K_;
    Kind kind_;
    int dim_;
    mutable std::optional<int> sign_;
    std::optional<Gram> gram_;
};

// Witt tower of a space: parity and anisotropic-kernel data.  Two spaces are
// in the same tower iff kind, parity and sign agree.
struct WittTower {
    Kind kind;
    int parity;       // dim mod 2
    int sign;         // epsilon of every member
    int anchor_dim;   // 0 or 2 (even), 1 (odd)

    bool operator==(const WittTower& o) const {
        return kind == o.kind && parity == o.parity && sign == o.sign &&
               anchor_dim == o.anchor_dim;
    }
};

WittTower tower_of(const Space& V);
bool same_tower(const Space& V, const Space& W);

// Whether two spaces of the same kind carry isomorphic unitary groups: in
// even dimension the sign separates the two classes; in odd dimension both
// discriminant classes give the one quasi-split group.
bool same_unitary_group(const Space& V, const Space& W);

// determinant of a square matrix over K by fraction-free elimination
padic::ExtElement gram_det(const chars::FieldPtr& K, const Gram& g);

} // namespace g2p::herm

#endif
