#ifndef G2P_TURN_HPP
#define G2P_TURN_HPP

#include <complex>
#include <cmath>
#include <string>

#include "g2p/rational.hpp"

namespace g2p {

// A root of unity stored as an exact fraction of a full revolution, i.e.
// e^{2*pi*i*t} with t in Q/Z.  All character algebra happens here exactly;
// complex doubles only appear when a Gauss sum is actually accumulated.
class Turn {
public:
    Turn() : t_() {}
    explicit Turn(const Rational& t) : t_(t) { reduce(); }
    Turn(long long num, long long den) : t_(num, den) { reduce(); }

    static Turn zero() { return Turn(); }
    static Turn half() { return Turn(1, 2); }

    const Rational& frac() const { return t_; }
    bool is_trivial() const { return t_.is_zero(); }

    Turn operator+(const Turn& o) const { return Turn(t_ + o.t_); }
    Turn operator-(const Turn& o) const { return Turn(t_ - o.t_); }
    Turn operator-() const { return Turn(-t_); }
    Turn operator*(long long k) const { return Turn(t_ * k); }
    Turn& operator+=(const Turn& o) { return *this = *this + o; }

    friend bool operator==(const Turn& a, const Turn& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Turn& a, const Turn& b) { return !(a == b); }
    friend bool operator<(const Turn& a, const Turn& b) { return a.t_ < b.t_; }

    // multiplicative order of the root of unity
    long long order() const { return t_.is_zero() ? 1 : t_.den(); }

    std::complex<double> value() const {
        double x = 2.0 * M_PI * t_.to_double();
        return {std::cos(x), std::sin(x)};
    }

    std::string str() const { return t_.str(); }

private:
    void reduce() {
        // canonical representative in [0,1)
        long long n = t_.num() % t_.den();
        if (n < 0) n += t_.den();
        t_ = Rational(n, t_.den());
    }
    Rational t_;
};

} // namespace g2p

#endif
