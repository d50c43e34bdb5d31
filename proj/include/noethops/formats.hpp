// Text and JSON documents for ideals, prime lists, and differential
// primary decompositions.
//
// Ideal document:
//     ring x,y,z over QQ
//     order grevlex            (optional; grevlex or lex)
//     ideal: x^2*y; x^2*z
//
// Prime list:
//     ring x,y,z over QQ
//     prime: x; y
//     prime: z
//
// Decomposition document:
//     ring x,y,z over QQ
//     component: prime = <x; y> | basis = <z> | ops = <dx>
//
// Blank lines and '#' comments are skipped everywhere. The JSON forms
// mirror the same fields; parsers accept either representation and
// auto-detect JSON by a leading '{'.
#pragma once

#include <cctype>
#include <sstream>

#include "json.hpp"
#include "noethops/noetherian.hpp"

namespace noethops {

struct IdealDocument {
    RingPtr ring;
    Ideal ideal;
    std::string order = "grevlex";  // as declared; CLI flags may override
};

struct DecompositionDocument {
    RingPtr ring;
    std::vector<DifferentialComponent> components;
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& line) {
    return trim(line.substr(0, line.find('#')));
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

inline bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// `ring x,y,z over QQ` -> variable names.
inline std::vector<std::string> parse_ring_line(const std::string& line) {
    if (line.rfind("ring", 0) != 0 || (line.size() > 4 && !std::isspace((unsigned char)line[4])))
        throw ParseError("expected a ring declaration, got '" + line + "'");
    std::string rest = trim(line.substr(4));
    size_t at = rest.rfind(" over ");
    if (at == std::string::npos) {
        // tolerate tabs or squeezed spacing around 'over'
        at = rest.rfind("over");
        if (at == std::string::npos || at == 0)
            throw ParseError("ring declaration is missing 'over QQ': '" + line + "'");
        if (trim(rest.substr(at + 4)) != "QQ")
            throw ParseError("only the field QQ is supported: '" + line + "'");
        rest = trim(rest.substr(0, at));
    } else {
        if (trim(rest.substr(at + 6)) != "QQ")
            throw ParseError("only the field QQ is supported: '" + line + "'");
        rest = trim(rest.substr(0, at));
    }
    std::vector<std::string> vars = split_list(rest, ',');
    if (vars.empty()) throw ParseError("ring declaration lists no variables");
    for (const auto& v : vars)
        if (!valid_identifier(v))
            throw ParseError("invalid variable name '" + v + "' in ring declaration");
    return vars;
}

inline MonomialOrder order_by_name(const std::string& name) {
    if (name == "grevlex") return MonomialOrder::grevlex_order();
    if (name == "lex") return MonomialOrder::lex_order();
    throw ParseError("unknown monomial order '" + name + "' (expected grevlex or lex)");
}

inline std::vector<std::string> document_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = strip_comment(line);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

inline void check_same_vars(const RingPtr& ring, const std::vector<std::string>& vars,
                            const std::string& what) {
    if (ring->vars != vars)
        throw ParseError(what + " declares different variables than the ideal document");
}

}  // namespace detail

// `order_override` (empty = none) wins over the document's order line.
inline IdealDocument parse_ideal_document(const std::string& text,
                                          const std::string& order_override = "") {
    std::vector<std::string> lines = detail::document_lines(text);
    if (lines.empty()) throw ParseError("empty ideal document");
    std::vector<std::string> vars = detail::parse_ring_line(lines[0]);

    IdealDocument doc;
    size_t at = 1;
    if (at < lines.size() && lines[at].rfind("order", 0) == 0 &&
        lines[at].find(':') == std::string::npos) {
        doc.order = detail::trim(lines[at].substr(5));
        detail::order_by_name(doc.order);  // validate
        ++at;
    }
    if (!order_override.empty()) doc.order = order_override;
    doc.ring = make_ring(vars, detail::order_by_name(doc.order));

    if (at >= lines.size() || lines[at].rfind("ideal:", 0) != 0)
        throw ParseError("ideal document is missing its 'ideal:' line");
    std::vector<Polynomial> gens;
    for (const auto& s : detail::split_list(detail::trim(lines[at].substr(6)), ';'))
        gens.push_back(parse_poly(s, doc.ring));
    ++at;
    if (at != lines.size())
        throw ParseError("unexpected content after the ideal line: '" + lines[at] + "'");
    doc.ideal = Ideal(doc.ring, gens);
    return doc;
}

inline std::string format_ideal_document(const Ideal& I) {
    std::ostringstream out;
    out << "ring ";
    for (size_t i = 0; i < I.ring()->vars.size(); ++i)
        out << (i ? "," : "") << I.ring()->vars[i];
    out << " over QQ\n";
    out << "ideal:";
    const std::vector<Polynomial>& gens = I.groebner().gens;
    for (size_t i = 0; i < gens.size(); ++i)
        out << (i ? "; " : " ") << format_poly(gens[i]);
    out << "\n";
    return out.str();
}

// Prime lists ride along with solvePDE: same ring header, one prime per
// line. The ring must match the ideal document the primes are used with.
inline std::vector<Ideal> parse_primes_document(const std::string& text, const RingPtr& ring) {
    std::vector<std::string> lines = detail::document_lines(text);
    if (lines.empty()) throw ParseError("empty prime list document");
    detail::check_same_vars(ring, detail::parse_ring_line(lines[0]), "prime list");
    std::vector<Ideal> primes;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].rfind("prime:", 0) != 0)
            throw ParseError("expected a 'prime:' line, got '" + lines[i] + "'");
        std::vector<Polynomial> gens;
        for (const auto& s : detail::split_list(detail::trim(lines[i].substr(6)), ';'))
            gens.push_back(parse_poly(s, ring));
        if (gens.empty()) throw ParseError("a prime line lists no generators");
        primes.push_back(Ideal(ring, gens));
    }
    if (primes.empty()) throw ParseError("prime list document lists no primes");
    return primes;
}

inline std::string format_primes_document(const RingPtr& ring, const std::vector<Ideal>& primes) {
    std::ostringstream out;
    out << "ring ";
    for (size_t i = 0; i < ring->vars.size(); ++i) out << (i ? "," : "") << ring->vars[i];
    out << " over QQ\n";
    for (const auto& p : primes) {
        out << "prime:";
        const std::vector<Polynomial>& gens = p.groebner().gens;
        for (size_t i = 0; i < gens.size(); ++i) out << (i ? "; " : " ") << format_poly(gens[i]);
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline std::string angle_list(const std::vector<std::string>& items, const char* sep) {
    std::string out = "<";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out + ">";
}

inline std::string unwrap_angles(const std::string& s, const std::string& what) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '<' || t.back() != '>')
        throw ParseError(what + " must be wrapped in angle brackets, got '" + s + "'");
    return t.substr(1, t.size() - 2);
}

inline std::string field_value(const std::string& part, const std::string& key) {
    size_t eq = part.find('=');
    if (eq == std::string::npos || trim(part.substr(0, eq)) != key)
        throw ParseError("expected '" + key + " = <...>' in component line, got '" + part + "'");
    return part.substr(eq + 1);
}

}  // namespace detail

inline std::string format_component_line(const DifferentialComponent& comp) {
    const RingPtr& ring = comp.prime.ring();
    std::vector<std::string> prime, basis, ops;
    for (const auto& g : comp.prime.groebner().gens) prime.push_back(format_poly(g));
    for (int v : comp.basis_vars) basis.push_back(ring->vars[v]);
    for (const auto& op : comp.operators.ops) ops.push_back(format_operator(op));
    return "component: prime = " + detail::angle_list(prime, "; ") +
           " | basis = " + detail::angle_list(basis, ",") +
           " | ops = " + detail::angle_list(ops, "; ");
}

inline std::string format_decomposition_document(const RingPtr& ring,
                                                 const std::vector<DifferentialComponent>& comps) {
    std::ostringstream out;
    out << "ring ";
    for (size_t i = 0; i < ring->vars.size(); ++i) out << (i ? "," : "") << ring->vars[i];
    out << " over QQ\n";
    for (const auto& c : comps) out << format_component_line(c) << "\n";
    return out.str();
}

// `use_ring` (optional) substitutes an existing ring after checking that
// the document declares the same variables; callers that combine
// documents need everything to live in one ring object.
inline DecompositionDocument parse_decomposition_document(const std::string& text,
                                                          const RingPtr& use_ring = nullptr) {
    std::vector<std::string> lines = detail::document_lines(text);
    if (lines.empty()) throw ParseError("empty decomposition document");
    DecompositionDocument doc;
    std::vector<std::string> vars = detail::parse_ring_line(lines[0]);
    if (use_ring) {
        detail::check_same_vars(use_ring, vars, "decomposition document");
        doc.ring = use_ring;
    } else {
        doc.ring = make_ring(vars);
    }

    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].rfind("component:", 0) != 0)
            throw ParseError("expected a 'component:' line, got '" + lines[i] + "'");
        std::vector<std::string> parts = detail::split_list(lines[i].substr(10), '|');
        if (parts.size() != 3)
            throw ParseError("component line needs prime, basis, and ops fields: '" + lines[i] +
                             "'");
        std::string prime_s = detail::unwrap_angles(detail::field_value(parts[0], "prime"),
                                                    "the prime generator list");
        std::string basis_s =
            detail::unwrap_angles(detail::field_value(parts[1], "basis"), "the basis list");
        std::string ops_s =
            detail::unwrap_angles(detail::field_value(parts[2], "ops"), "the operator list");

        DifferentialComponent comp;
        std::vector<Polynomial> gens;
        for (const auto& s : detail::split_list(prime_s, ';')) gens.push_back(parse_poly(s, doc.ring));
        // an empty generator list is the zero ideal, the prime under the
        // whole-ring component
        comp.prime = Ideal(doc.ring, gens);

        for (const auto& name : detail::split_list(basis_s, ',')) {
            auto it = std::find(doc.ring->vars.begin(), doc.ring->vars.end(), name);
            if (it == doc.ring->vars.end())
                throw ParseError("basis lists '" + name + "', which is not a ring variable");
            comp.basis_vars.push_back(static_cast<int>(it - doc.ring->vars.begin()));
        }
        std::sort(comp.basis_vars.begin(), comp.basis_vars.end());
        if (std::adjacent_find(comp.basis_vars.begin(), comp.basis_vars.end()) !=
            comp.basis_vars.end())
            throw ParseError("basis lists a variable twice");

        comp.operators = OperatorSet{doc.ring, comp.basis_vars, {}};
        for (const auto& s : detail::split_list(ops_s, ';'))
            comp.operators.ops.push_back(parse_operator(s, doc.ring, comp.basis_vars));
        comp.multiplicity = static_cast<int>(comp.operators.ops.size());
        for (const auto& op : comp.operators.ops)
            comp.stabilization_order =
                std::max(comp.stabilization_order, operator_order(op) + 1);
        doc.components.push_back(std::move(comp));
    }
    if (doc.components.empty()) throw ParseError("decomposition document lists no components");
    return doc;
}

// ---------------------------------------------------------------------------
// JSON forms. Keys: ring, components[], prime[], basis[], operators[],
// multiplicity, amult, source, verified; ideal documents use ring, ideal[].

using json = nlohmann::ordered_json;

inline json ring_to_json(const RingPtr& ring) { return json(ring->vars); }

inline RingPtr ring_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("JSON 'ring' must list variable names");
    std::vector<std::string> vars;
    for (const auto& v : j) {
        if (!v.is_string() || !detail::valid_identifier(v.get<std::string>()))
            throw ParseError("JSON 'ring' holds an invalid variable name");
        vars.push_back(v.get<std::string>());
    }
    return make_ring(vars);
}

inline json ideal_to_json(const Ideal& I) {
    json j;
    j["ring"] = ring_to_json(I.ring());
    json gens = json::array();
    for (const auto& g : I.groebner().gens) gens.push_back(format_poly(g));
    j["ideal"] = gens;
    return j;
}

inline Ideal ideal_from_json(const json& j) {
    if (!j.contains("ring") || !j.contains("ideal"))
        throw ParseError("ideal JSON needs 'ring' and 'ideal' keys");
    RingPtr ring = ring_from_json(j["ring"]);
    std::vector<Polynomial> gens;
    for (const auto& s : j["ideal"]) gens.push_back(parse_poly(s.get<std::string>(), ring));
    return Ideal(ring, gens);
}

inline json component_to_json(const DifferentialComponent& comp) {
    const RingPtr& ring = comp.prime.ring();
    json j;
    json prime = json::array();
    for (const auto& g : comp.prime.groebner().gens) prime.push_back(format_poly(g));
    j["prime"] = prime;
    json basis = json::array();
    for (int v : comp.basis_vars) basis.push_back(ring->vars[v]);
    j["basis"] = basis;
    json ops = json::array();
    for (const auto& op : comp.operators.ops) ops.push_back(format_operator(op));
    j["operators"] = ops;
    j["multiplicity"] = comp.multiplicity;
    return j;
}

inline json decomposition_to_json(const DifferentialPrimaryDecomposition& d, bool verified) {
    json j;
    j["ring"] = ring_to_json(d.ideal.ring());
    j["amult"] = d.amult;
    j["source"] = to_string(d.source);
    j["verified"] = verified;
    json comps = json::array();
    for (const auto& c : d.components) comps.push_back(component_to_json(c));
    j["components"] = comps;
    return j;
}

inline DecompositionDocument decomposition_from_json(const json& j,
                                                     const RingPtr& use_ring = nullptr) {
    if (!j.contains("ring") || !j.contains("components"))
        throw ParseError("decomposition JSON needs 'ring' and 'components' keys");
    DecompositionDocument doc;
    if (use_ring) {
        RingPtr declared = ring_from_json(j["ring"]);
        detail::check_same_vars(use_ring, declared->vars, "decomposition document");
        doc.ring = use_ring;
    } else {
        doc.ring = ring_from_json(j["ring"]);
    }
    for (const auto& jc : j["components"]) {
        DifferentialComponent comp;
        std::vector<Polynomial> gens;
        for (const auto& s : jc.at("prime")) gens.push_back(parse_poly(s.get<std::string>(), doc.ring));
        comp.prime = Ideal(doc.ring, gens);
        for (const auto& name : jc.at("basis")) {
            const std::string& n = name.get<std::string>();
            auto it = std::find(doc.ring->vars.begin(), doc.ring->vars.end(), n);
            if (it == doc.ring->vars.end())
                throw ParseError("basis lists '" + n + "', which is not a ring variable");
            comp.basis_vars.push_back(static_cast<int>(it - doc.ring->vars.begin()));
        }
        std::sort(comp.basis_vars.begin(), comp.basis_vars.end());
        comp.operators = OperatorSet{doc.ring, comp.basis_vars, {}};
        for (const auto& s : jc.at("operators"))
            comp.operators.ops.push_back(
                parse_operator(s.get<std::string>(), doc.ring, comp.basis_vars));
        comp.multiplicity = jc.value("multiplicity", static_cast<int>(comp.operators.ops.size()));
        for (const auto& op : comp.operators.ops)
            comp.stabilization_order =
                std::max(comp.stabilization_order, operator_order(op) + 1);
        doc.components.push_back(std::move(comp));
    }
    if (doc.components.empty()) throw ParseError("decomposition document lists no components");
    return doc;
}

// Auto-detects JSON against the line-based text form.
inline DecompositionDocument load_decomposition_text(const std::string& text,
                                                     const RingPtr& use_ring = nullptr) {
    std::string t = detail::trim(text);
    if (!t.empty() && t.front() == '{') {
        json j;
        try {
            j = json::parse(t);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        return decomposition_from_json(j, use_ring);
    }
    return parse_decomposition_document(text, use_ring);
}

// Auto-detecting ideal loader, same contract.
inline IdealDocument load_ideal_text(const std::string& text,
                                     const std::string& order_override = "") {
    std::string t = detail::trim(text);
    if (!t.empty() && t.front() == '{') {
        json j;
        try {
            j = json::parse(t);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        if (!j.contains("ring") || !j.contains("ideal"))
            throw ParseError("ideal JSON needs 'ring' and 'ideal' keys");
        IdealDocument doc;
        doc.order = order_override.empty() ? "grevlex" : order_override;
        doc.ring = make_ring(ring_from_json(j["ring"])->vars, detail::order_by_name(doc.order));
        std::vector<Polynomial> gens;
        for (const auto& s : j["ideal"]) gens.push_back(parse_poly(s.get<std::string>(), doc.ring));
        doc.ideal = Ideal(doc.ring, gens);
        return doc;
    }
    return parse_ideal_document(text, order_override);
}

}  // namespace noethops
