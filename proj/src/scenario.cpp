#include "g2p/scenario.hpp"

#include <fstream>
#include <sstream>

namespace g2p::scenario {

using chars::AddChar;
using chars::Field;
using chars::FieldPtr;
using chars::K1Char;
using chars::MultChar;
using padic::ExtElement;
using padic::ExtType;
using padic::PadicNumber;

Rational parse_rational(const std::string& s) {
    auto bad = [&]() { throw domain_error("malformed rational '" + s + "'"); };
    if (s.empty()) bad();
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::exception&) {
        bad();
    }
    return Rational(0);
}

std::string rational_str(const Rational& r) { return r.str(); }

namespace {

Rational json_rational(const Json& j, const std::string& field,
                       std::vector<std::string>& errs) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const domain_error& e) {
            errs.push_back(field + ": " + e.what());
            return Rational(0);
        }
    }
    errs.push_back(field + ": expected an integer or a \"num/den\" string");
    return Rational(0);
}

Turn rational_turn(const Rational& r) { return Turn(r.num(), r.den()); }

Json turn_json(const Turn& t) { return t.frac().str(); }

Json eigenvalue_json(const packets::Eigenvalue& e) {
    Json j;
    j["turn"] = turn_json(e.turn);
    j["half_power_of_q"] = e.half_power;
    return j;
}

Json satake_json(const packets::SatakeParam& s) {
    Json j;
    j["q"] = s.q;
    j["squared_class"] = s.squared_class;
    Json arr = Json::array();
    for (const auto& e : s.eigenvalues) arr.push_back(eigenvalue_json(e));
    j["eigenvalues"] = std::move(arr);
    return j;
}

Json char_json(const MultChar& chi) {
    Json j;
    j["conductor"] = chi.conductor();
    Json im = Json::array();
    for (const Turn& t : chi.gen_images()) im.push_back(turn_json(t));
    j["unit_images"] = std::move(im);
    j["uniformizer_value"] = turn_json(chi.at_uniformizer());
    j["twist_s"] = chi.twist().str();
    return j;
}

Json theta_report_json(const theta::ThetaReport& r) {
    Json j;
    j["nonzero"] = r.nonzero;
    j["shape"] = theta::lift_shape_name(r.shape);
    if (r.principal_series) {
        Json ps;
        ps["character"] = char_json(r.principal_series->char_K);
        ps["abs_shift"] = r.principal_series->shift.str();
        ps["k1_inflation"] = char_json(r.principal_series->k1_char.inflation());
        j["principal_series"] = std::move(ps);
    }
    if (r.gl3) {
        Json arr = Json::array();
        for (const auto& [chi, s] : r.gl3->entries) {
            Json e;
            e["character"] = char_json(chi);
            e["exponent"] = s.str();
            arr.push_back(std::move(e));
        }
        j["langlands_triple"] = std::move(arr);
    }
    if (r.one_dimensional)
        j["one_dimensional"] = char_json(r.one_dimensional->inflation());
    return j;
}

Json rewrite_json(const g2::RewriteResult& r) {
    Json j;
    j["tag"] = g2::quotient_tag_name(r.tag);
    if (r.quotient_parabolic)
        j["parabolic"] = g2::parabolic_name(*r.quotient_parabolic);
    if (r.quotient_character)
        j["quotient_character"] = r.quotient_character->str();
    Json steps = Json::array();
    for (const auto& s : r.log) {
        Json e;
        e["kind"] = s.kind;
        e["parabolic"] = g2::parabolic_name(s.parabolic);
        e["before"] = s.before.str();
        e["after"] = s.after.str();
        e["note"] = s.note;
        steps.push_back(std::move(e));
    }
    j["steps"] = std::move(steps);
    return j;
}

} // namespace

Scenario parse_scenario(const Json& j) {
    std::vector<std::string> errs;
    Scenario s;
    if (!j.is_object()) throw domain_error("scenario: expected a JSON object");

    if (!j.contains("p") || !j["p"].is_number_integer())
        errs.push_back("p: required integer (an odd prime)");
    else
        s.p = j["p"].get<long>();

    if (!j.contains("extension") || !j["extension"].is_string()) {
        errs.push_back("extension: required, one of \"split\", \"unramified\", "
                       "\"ramified-p\", \"ramified-up\"");
    } else {
        s.extension = j["extension"].get<std::string>();
        if (s.extension != "split" && s.extension != "unramified" &&
            s.extension != "ramified-p" && s.extension != "ramified-up")
            errs.push_back("extension: unknown value '" + s.extension + "'");
    }

    if (j.contains("precision")) {
        if (!j["precision"].is_number_integer() || j["precision"].get<int>() < 4)
            errs.push_back("precision: integer >= 4");
        else
            s.precision = j["precision"].get<int>();
    }
    if (j.contains("psi_level")) {
        if (!j["psi_level"].is_number_integer())
            errs.push_back("psi_level: integer");
        else
            s.psi_level = j["psi_level"].get<int>();
    }

    if (!j.contains("chi") || !j["chi"].is_object()) {
        errs.push_back("chi: required object");
    } else {
        const Json& c = j["chi"];
        if (!c.contains("conductor") || !c["conductor"].is_number_integer() ||
            c["conductor"].get<int>() < 0 || c["conductor"].get<int>() > 3)
            errs.push_back("chi.conductor: integer in [0, 3]");
        else
            s.chi_conductor = c["conductor"].get<int>();
        if (c.contains("unit_images")) {
            if (!c["unit_images"].is_array())
                errs.push_back("chi.unit_images: array of rational turns");
            else
                for (size_t i = 0; i < c["unit_images"].size(); ++i)
                    s.chi_unit_images.push_back(json_rational(
                        c["unit_images"][i], "chi.unit_images[" + std::to_string(i) + "]",
                        errs));
        }
        if (c.contains("uniformizer_value"))
            s.chi_uniformizer = json_rational(c["uniformizer_value"],
                                              "chi.uniformizer_value", errs);
        if (c.contains("twist_s"))
            s.chi_twist = json_rational(c["twist_s"], "chi.twist_s", errs);
    }

    if (j.contains("delta_coeff"))
        s.delta_coeff = json_rational(j["delta_coeff"], "delta_coeff", errs);

    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key != "p" && key != "extension" && key != "precision" &&
            key != "psi_level" && key != "chi" && key != "delta_coeff" &&
            key != "comment")
            errs.push_back(key + ": unknown field");
    }

    if (!errs.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw domain_error(msg);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open scenario file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw domain_error("scenario '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(j);
}

Json scenario_to_json(const Scenario& s) {
    Json j;
    j["p"] = s.p;
    j["extension"] = s.extension;
    j["precision"] = s.precision;
    j["psi_level"] = s.psi_level;
    Json chi;
    chi["conductor"] = s.chi_conductor;
    Json im = Json::array();
    for (const auto& r : s.chi_unit_images) im.push_back(r.str());
    chi["unit_images"] = std::move(im);
    chi["uniformizer_value"] = s.chi_uniformizer.str();
    chi["twist_s"] = s.chi_twist.str();
    j["chi"] = std::move(chi);
    if (s.delta_coeff) j["delta_coeff"] = s.delta_coeff->str();
    return j;
}

Place build_place(const Scenario& s) {
    Place pl{s, std::nullopt, nullptr};
    if (s.extension == "split") {
        FieldPtr F = Field::base(s.p, s.precision);
        std::vector<Turn> im;
        for (const auto& r : s.chi_unit_images) im.push_back(rational_turn(r));
        MultChar chi = MultChar::from_images(F, s.chi_conductor, std::move(im),
                                             rational_turn(s.chi_uniformizer),
                                             s.chi_twist);
        pl.field = F;
        pl.data = packets::PlaceData::split(F, std::move(chi),
                                            AddChar(F, s.psi_level));
        return pl;
    }
    FieldPtr K = Field::quadratic(s.p, padic::ext_type_from_name(s.extension),
                                  s.precision);
    std::vector<Turn> im;
    for (const auto& r : s.chi_unit_images) im.push_back(rational_turn(r));
    MultChar chi = MultChar::from_images(K, s.chi_conductor, std::move(im),
                                         rational_turn(s.chi_uniformizer),
                                         s.chi_twist);
    FieldPtr F = K->base_field();
    std::optional<ExtElement> delta;
    if (s.delta_coeff) {
        // delta = coeff * sqrt(d), trace-zero by construction
        delta = K->K().make(PadicNumber::zero(K->K().base()),
                            PadicNumber::from_rational(
                                K->K().base(), mpz_class(long(s.delta_coeff->num())),
                                mpz_class(long(s.delta_coeff->den()))));
    }
    pl.field = K;
    pl.data = packets::PlaceData::nonsplit(K, std::move(chi),
                                           AddChar(F, s.psi_level), delta);
    return pl;
}

Json canonical_block(const Place& pl) {
    Json j;
    const auto& s = pl.scenario;
    j["p"] = s.p;
    j["extension"] = s.extension;
    if (s.extension != "split") {
        const auto& K = pl.field->K();
        j["nonsquare_unit_u"] = K.base().nonsquare_unit();
        j["d"] = K.d_small();
        std::string dc = s.delta_coeff ? s.delta_coeff->str() : std::string("1");
        j["delta"] = dc + "*sqrt(" + std::to_string(K.d_small()) + ")";
        j["lambda0"] = K.canonical_nonnorm().unit_mod(1).get_si() *
                       (K.ramified() ? 1 : K.base().p());
    } else {
        j["nonsquare_unit_u"] = pl.field->F().nonsquare_unit();
    }
    j["descend_tie_break"] = "value argument in [0, pi) at the first splitting point";
    return j;
}

Json make_report(const Place& pl, const std::string& subcommand, Json payload) {
    Json j;
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["scenario"] = scenario_to_json(pl.scenario);
    j["canonical"] = canonical_block(pl);
    j["result"] = std::move(payload);
    return j;
}

Json report_classify(const Place& pl, const std::string& kind, int dim,
                     const std::optional<Rational>& line) {
    if (pl.scenario.extension == "split")
        throw domain_error("classify needs a nonsplit place");
    const FieldPtr& K = pl.field;
    herm::Kind k = kind == "skew" ? herm::Kind::SkewHermitian : herm::Kind::Hermitian;
    std::optional<herm::Space> sp;
    if (line) {
        PadicNumber lam = PadicNumber::from_rational(
            K->K().base(), mpz_class(long(line->num())), mpz_class(long(line->den())));
        sp = (k == herm::Kind::Hermitian) ? herm::Space::hermitian_line(K, lam)
                                          : herm::Space::skew_line(K, lam);
    } else if (dim == 2) {
        sp = herm::Space::hyperbolic(K, k);
    } else if (dim == 3 && k == herm::Kind::Hermitian) {
        sp = herm::Space::three_dim_standard(K);
    } else {
        throw domain_error("classify: give --line <rational> or --dim 2|3");
    }
    Json j;
    j["kind"] = kind == "skew" ? "skew" : "hermitian";
    j["dim"] = sp->dim();
    j["disc_class"] = sp->disc_class().unit_mod(1).get_si() *
                      ((sp->disc_class().val() > 0) ? K->p() : 1);
    j["sign"] = sp->sign();
    auto tower = herm::tower_of(*sp);
    j["tower_anchor_dim"] = tower.anchor_dim;
    return j;
}

Json report_epsilon(const Place& pl) {
    const auto& pd = *pl.data;
    eps::EpsilonValue e = [&]() {
        if (pd.is_split()) return eps::epsilon_half(pd.chi(), pd.psi());
        auto psiK = chars::add_char_compose_trace(pd.psi(), pl.field, pd.delta());
        return eps::epsilon_half(pd.chi(), psiK);
    }();
    Json j;
    j["value_re"] = e.value.real();
    j["value_im"] = e.value.imag();
    int snapped = 0;
    try {
        snapped = eps::snap_sign(e.value);
    } catch (const internal_error&) {}
    if (snapped != 0) j["snapped_sign"] = snapped;
    else j["snapped_sign"] = nullptr;
    j["conductor"] = e.conductor;
    j["level"] = e.level;
    return j;
}

Json report_dichotomy(const Place& pl) {
    const auto& pd = *pl.data;
    if (pd.is_split()) {
        Json j;
        j["split"] = true;
        j["lift"] = theta_report_json(
            theta::gl_split_lift(MultChar::trivial(pd.base()), pd.chi()));
        return j;
    }
    const FieldPtr& K = pl.field;
    const MultChar& gamma = pd.chi();
    herm::Space V = herm::Space::three_dim_standard(K);
    Json j;
    j["split"] = false;
    j["eps_v1"] = V.sign();
    Json sweep = Json::array();
    auto mus = K1Char::enumerate_conductor_le_one(K);
    for (size_t i = 0; i < mus.size(); ++i) {
        const K1Char& mu = mus[i];
        Json entry;
        entry["mu_index"] = i;
        entry["mu_inflation"] = char_json(mu.inflation());
        for (int ws : {+1, -1}) {
            herm::Space W =
                herm::Space::abstract(K, herm::Kind::SkewHermitian, 1, ws);
            Json side;
            side["u1_passes_on_plus_line"] = theta::u1_dichotomy(
                mu, herm::Space::abstract(K, herm::Kind::Hermitian, 1, +1), W,
                gamma, pd.psi(), pd.delta());
            auto fo_odd = theta::first_occurrence(mu, 1, gamma, pd.psi(),
                                                  pd.delta(), W);
            side["first_occurrence_odd"] = Json::array({fo_odd.n_plus, fo_odd.n_minus});
            auto fo_even = theta::first_occurrence(mu, 0, gamma, pd.psi(),
                                                   pd.delta(), W);
            side["first_occurrence_even"] =
                Json::array({fo_even.n_plus, fo_even.n_minus});
            side["u3_lift"] =
                theta_report_json(theta::u3_lift(mu, V, W, gamma, pd.psi(), pd.delta()));
            entry[ws > 0 ? "w_plus" : "w_minus"] = std::move(side);
        }
        sweep.push_back(std::move(entry));
    }
    j["sweep"] = std::move(sweep);
    return j;
}

Json report_packet(const Place& pl) {
    const auto& pd = *pl.data;
    Json j;
    j["s_group_pu3"] = packets::component_group_pu3(pd);
    j["s_group_g2"] = packets::component_group_g2(pd);

    packets::Pu3Packet pu = packets::pu3_packet(pd);
    Json pu_members = Json::array();
    for (const auto& m : pu.members) {
        Json e;
        e["label"] = m.label;
        if (!pd.is_split()) e["w_sign"] = m.w_sign;
        e["report"] = theta_report_json(m.report);
        pu_members.push_back(std::move(e));
    }
    j["pu3_members"] = std::move(pu_members);

    packets::G2Packet g = packets::g2_packet(pd);
    Json g_members = Json::array();
    for (const auto& m : g.members) {
        Json e;
        e["label"] = m.label;
        e["shape"] = packets::g2_shape_name(m.shape);
        e["nonzero"] = m.nonzero;
        e["tempered"] = m.tempered;
        if (m.tau) {
            Json t;
            t["dihedral"] = m.tau->dihedral;
            if (m.tau->pair) {
                t["pair"] = Json::array(
                    {char_json(m.tau->pair->first), char_json(m.tau->pair->second)});
            }
            if (m.tau->inducing_char)
                t["inducing_character"] = char_json(*m.tau->inducing_char);
            e["tau"] = std::move(t);
        }
        if (m.q2_char) e["q2_character"] = char_json(*m.q2_char);
        if (m.rewrite) e["rewrite"] = rewrite_json(*m.rewrite);
        g_members.push_back(std::move(e));
    }
    j["g2_members"] = std::move(g_members);
    j["pi_minus_vanishes"] = g.pi_minus_vanishes;

    if (pd.chi().is_unramified() &&
        (pd.is_split() || !pl.field->K().ramified())) {
        j["satake_pu3"] = satake_json(packets::satake_pu3(pd));
        j["satake_g2"] = satake_json(packets::satake_g2(pd));
    }
    return j;
}

Json report_satake(const Place& pl) {
    const auto& pd = *pl.data;
    Json j;
    j["pu3"] = satake_json(packets::satake_pu3(pd));
    j["g2"] = satake_json(packets::satake_g2(pd));
    return j;
}

Json report_cubic(const Place& pl, const std::array<Rational, 4>& coeffs) {
    const padic::PAdicField& F = pl.scenario.extension == "split"
                                     ? pl.field->F()
                                     : pl.field->K().base();
    cubic::BinaryCubic f = cubic::BinaryCubic::from_rationals(F, coeffs);
    Json j;
    padic::PadicNumber D = cubic::disc_cubic(f);
    j["disc_is_zero"] = D.is_zero();
    if (!D.is_zero() && !D.is_approx_zero()) {
        j["disc_val"] = D.val();
        j["disc_unit_mod_p2"] = D.unit_mod(2).get_si();
    }
    bool generic = cubic::is_generic(f);
    j["generic"] = generic;
    if (generic) {
        auto cls = cubic::etale_class(f);
        Json c;
        c["kind"] = cubic::cubic_class_name(cls.kind);
        c["roots_in_F"] = cls.f_roots;
        if (cls.quad_disc_class) c["quad_disc_class"] = *cls.quad_disc_class;
        if (cls.ramification_e) c["ramification_e"] = *cls.ramification_e;
        j["etale_class"] = std::move(c);
    }
    if (pl.scenario.extension != "split") {
        Json demos = Json::array();
        const auto& K = pl.field->K();
        long u = K.base().nonsquare_unit();
        for (long lam : {1L, u, K.base().p(), u * K.base().p()}) {
            auto lab = cubic::orbit_label(PadicNumber::from_integer(K.base(), lam), K);
            Json e;
            e["lambda"] = lam;
            e["label"] = lab.label;
            e["stabilizer"] = lab.stabilizer;
            Json rep = Json::array();
            for (const auto& row : lab.rep) {
                Json r = Json::array();
                for (const auto& x : row) r.push_back(x.str());
                rep.push_back(std::move(r));
            }
            e["representative"] = std::move(rep);
            demos.push_back(std::move(e));
        }
        j["orbit_demos"] = std::move(demos);
    }
    return j;
}

// --- expression grammar ------------------------------------------------------
// expr := factor (('*' factor)*)
// factor := ident ('^' int)? | 'abs' '^' '{' rational '}' | 'abs^' rational
g2::FCharExpr parse_char_expr(const g2::SymbolTablePtr& tab, const std::string& in) {
    g2::FCharExpr acc = g2::FCharExpr::one(tab);
    size_t i = 0;
    auto skip = [&]() { while (i < in.size() && isspace((unsigned char)in[i])) ++i; };
    auto fail = [&](const std::string& why) {
        throw domain_error("cannot parse character expression '" + in + "': " + why);
    };
    skip();
    bool first = true;
    while (i < in.size()) {
        if (!first) {
            if (in[i] != '*') fail("expected '*'");
            ++i;
            skip();
        }
        first = false;
        size_t j = i;
        while (j < in.size() && (isalnum((unsigned char)in[j]) || in[j] == '_')) ++j;
        if (j == i) fail("expected a symbol name");
        std::string name = in.substr(i, j - i);
        i = j;
        skip();
        Rational exp(1);
        bool isabs = (name == "abs");
        if (i < in.size() && in[i] == '^') {
            ++i;
            skip();
            bool braced = i < in.size() && in[i] == '{';
            if (braced) { ++i; skip(); }
            size_t k = i;
            while (k < in.size() &&
                   (isdigit((unsigned char)in[k]) || in[k] == '-' || in[k] == '/'))
                ++k;
            if (k == i) fail("expected an exponent");
            exp = parse_rational(in.substr(i, k - i));
            i = k;
            skip();
            if (braced) {
                if (i >= in.size() || in[i] != '}') fail("expected '}'");
                ++i;
                skip();
            }
        }
        if (isabs) {
            acc = acc.times_abs(exp);
        } else {
            if (!exp.is_integer()) fail("symbol exponents must be integers");
            acc = acc * g2::FCharExpr::symbol(tab, name).pow(long(exp.num()));
        }
    }
    return acc;
}

Json report_rewrite(const std::string& relations, const std::string& parabolic,
                    const std::string& first, const std::string& second) {
    g2::SymbolTablePtr tab;
    if (relations == "mu-omega") {
        tab = g2::SymbolTable::mu_omega();
    } else if (relations.rfind("free:", 0) == 0) {
        tab = g2::SymbolTable::free_symbol(relations.substr(5));
    } else {
        throw domain_error("relations must be \"mu-omega\" or \"free:<name>\"");
    }
    g2::Parabolic q;
    if (parabolic == "Q1") q = g2::Parabolic::Q1;
    else if (parabolic == "Q2") q = g2::Parabolic::Q2;
    else throw domain_error("parabolic must be Q1 or Q2");
    g2::InducedDescriptor d{q,
                            {parse_char_expr(tab, first), parse_char_expr(tab, second)},
                            g2::QuotientTag::FullInduced};
    g2::RewriteResult r = g2::langlands_rewrite(d);
    Json j;
    j["input"] = "i_" + g2::parabolic_name(q) + "(" + d.pair.first.str() + " (x) " +
                 d.pair.second.str() + ")";
    j["relations"] = relations;
    Json body = rewrite_json(r);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    return j;
}

} // namespace g2p::scenario
