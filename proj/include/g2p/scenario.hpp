#ifndef G2P_SCENARIO_HPP
#define G2P_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "g2p/cubic.hpp"
#include "g2p/packets.hpp"

namespace g2p::scenario {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "g2packets 1.0.0";

// A scenario file fixes the place: base prime, splitting, the character chi,
// the additive level, and optional overrides.  Validation produces
// field-level diagnostics before any computation runs.
struct Scenario {
    long p = 0;
    std::string extension;          // "split" | "unramified" | "ramified-p" | "ramified-up"
    int precision = 32;
    int psi_level = 0;
    int chi_conductor = 0;
    std::vector<Rational> chi_unit_images;   // turns per canonical generator
    Rational chi_uniformizer{0};             // turn
    Rational chi_twist{0};
    std::optional<Rational> delta_coeff;     // delta = coeff * sqrt(d)
};

// throws domain_error with joined diagnostics when invalid
Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& s);

// the built place plus the canonical choices it commits to
struct Place {
    Scenario scenario;
    std::optional<packets::PlaceData> data;  // engaged after build
    chars::FieldPtr field;                   // K (nonsplit) or F (split)
};

Place build_place(const Scenario& s);

// canonical-choice ledger embedded in every report
Json canonical_block(const Place& pl);

// subcommand payloads
Json report_classify(const Place& pl, const std::string& kind, int dim,
                     const std::optional<Rational>& line);
Json report_epsilon(const Place& pl);
Json report_dichotomy(const Place& pl);
Json report_packet(const Place& pl);
Json report_satake(const Place& pl);
Json report_cubic(const Place& pl, const std::array<Rational, 4>& coeffs);

// the rewrite subcommand works on symbolic data; relations is "mu-omega" or
// "free:<name>"; exprs use the prefix grammar: mu, omega, abs^{q}, x^k, a*b
Json report_rewrite(const std::string& relations, const std::string& parabolic,
                    const std::string& first, const std::string& second);

// wrap a payload into the versioned report envelope
Json make_report(const Place& pl, const std::string& subcommand, Json payload);

// helpers shared with tests
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);
g2::FCharExpr parse_char_expr(const g2::SymbolTablePtr& tab, const std::string& s);

} // namespace g2p::scenario

#endif
