// Command-line surface. Subcommands:
//
//   solvepde  ideal file -> differential primary decomposition
//   getpde    decomposition file -> the ideal it cuts out
//   amult     ideal file -> arithmetic multiplicity and per-prime table
//   ass       ideal file -> associated primes (reusable as --primes input)
//   primdec   ideal file -> primary decomposition
//   apply     --op/--poly strings -> the differentiated polynomial
//   verify    ideal file + decomposition file -> verification report
//
// Exit codes: 0 success, 1 parse error, 2 engine failure, 3 verification
// failure. Output is byte-deterministic for fixed inputs and --seed.
#pragma once

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "noethops/formats.hpp"

namespace noethops {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string prime_label(const Ideal& p) {
    std::vector<std::string> gens;
    for (const auto& g : p.groebner().gens) gens.push_back(format_poly(g));
    return angle_list(gens, "; ");
}

// Collect identifier tokens; in operator text a token d<name> names the
// partial with respect to <name>.
inline void scan_identifiers(const std::string& text, bool operator_text,
                             std::vector<std::string>& vars, std::vector<std::string>& diffed) {
    size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string tok = text.substr(i, j - i);
            if (operator_text && tok.size() > 1 && tok[0] == 'd' &&
                valid_identifier(tok.substr(1))) {
                vars.push_back(tok.substr(1));
                diffed.push_back(tok.substr(1));
            } else {
                vars.push_back(tok);
            }
            i = j;
        } else {
            ++i;
        }
    }
}

}  // namespace detail

struct CliCommon {
    std::string order = "grevlex";
    unsigned seed = 0;
    int max_order = config::default_max_order;
    int factor_budget = config::default_factor_degree_budget;
    bool json_output = false;

    SolveOptions solve_options(bool verify) const {
        SolveOptions opt;
        opt.max_order = max_order;
        opt.seed = seed;
        opt.degree_budget = factor_budget;
        opt.verify = verify;
        return opt;
    }
};

inline int cmd_solvepde(const std::string& ideal_path, const std::string& primes_path,
                        bool verify, const CliCommon& c) {
    IdealDocument doc = load_ideal_text(detail::read_file(ideal_path), c.order);
    std::optional<std::vector<Ideal>> primes;
    if (!primes_path.empty())
        primes = parse_primes_document(detail::read_file(primes_path), doc.ring);
    DifferentialPrimaryDecomposition d = solve_pde(doc.ideal, primes, c.solve_options(verify));
    if (c.json_output) {
        std::cout << decomposition_to_json(d, verify).dump(2) << "\n";
    } else {
        std::cout << "# amult = " << d.amult << "\n";
        std::cout << "# source = " << to_string(d.source) << "\n";
        std::cout << "# verified = " << (verify ? "yes" : "no") << "\n";
        std::cout << format_decomposition_document(doc.ring, d.components);
    }
    return 0;
}

inline int cmd_getpde(const std::string& decomp_path, const CliCommon& c) {
    DecompositionDocument doc = load_decomposition_text(detail::read_file(decomp_path));
    Ideal I = get_pde(doc.components);
    if (c.json_output)
        std::cout << ideal_to_json(I).dump(2) << "\n";
    else
        std::cout << format_ideal_document(I);
    return 0;
}

inline int cmd_amult(const std::string& ideal_path, const std::string& primes_path, bool verify,
                     const CliCommon& c) {
    IdealDocument doc = load_ideal_text(detail::read_file(ideal_path), c.order);
    std::optional<std::vector<Ideal>> primes;
    if (!primes_path.empty())
        primes = parse_primes_document(detail::read_file(primes_path), doc.ring);
    DifferentialPrimaryDecomposition d = solve_pde(doc.ideal, primes, c.solve_options(verify));
    if (c.json_output) {
        json j;
        j["ring"] = ring_to_json(doc.ring);
        j["amult"] = d.amult;
        j["source"] = to_string(d.source);
        j["verified"] = verify;
        json comps = json::array();
        for (const auto& comp : d.components) {
            json jc;
            json prime = json::array();
            for (const auto& g : comp.prime.groebner().gens) prime.push_back(format_poly(g));
            jc["prime"] = prime;
            jc["multiplicity"] = comp.multiplicity;
            comps.push_back(jc);
        }
        j["components"] = comps;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "amult = " << d.amult << "\n";
        for (const auto& comp : d.components)
            std::cout << detail::prime_label(comp.prime) << " : " << comp.multiplicity << "\n";
    }
    return 0;
}

inline int cmd_ass(const std::string& ideal_path, const CliCommon& c) {
    IdealDocument doc = load_ideal_text(detail::read_file(ideal_path), c.order);
    std::vector<Ideal> primes = associated_primes(doc.ideal, c.seed, c.factor_budget);
    if (c.json_output) {
        json j;
        j["ring"] = ring_to_json(doc.ring);
        json arr = json::array();
        for (const auto& p : primes) {
            json gens = json::array();
            for (const auto& g : p.groebner().gens) gens.push_back(format_poly(g));
            arr.push_back(gens);
        }
        j["primes"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_primes_document(doc.ring, primes);
    }
    return 0;
}

inline int cmd_primdec(const std::string& ideal_path, const CliCommon& c) {
    IdealDocument doc = load_ideal_text(detail::read_file(ideal_path), c.order);
    DecompositionOutput d = primary_decomposition(doc.ideal, c.seed, c.factor_budget);
    if (c.json_output) {
        json j;
        j["ring"] = ring_to_json(doc.ring);
        j["source"] = to_string(d.source);
        json comps = json::array();
        for (const auto& comp : d.components) {
            json jc;
            json prime = json::array(), primary = json::array();
            for (const auto& g : comp.prime.groebner().gens) prime.push_back(format_poly(g));
            for (const auto& g : comp.primary.groebner().gens) primary.push_back(format_poly(g));
            jc["prime"] = prime;
            jc["primary"] = primary;
            comps.push_back(jc);
        }
        j["components"] = comps;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# source = " << to_string(d.source) << "\n";
        std::cout << "ring ";
        for (size_t i = 0; i < doc.ring->vars.size(); ++i)
            std::cout << (i ? "," : "") << doc.ring->vars[i];
        std::cout << " over QQ\n";
        for (const auto& comp : d.components) {
            std::vector<std::string> prime, primary;
            for (const auto& g : comp.prime.groebner().gens) prime.push_back(format_poly(g));
            for (const auto& g : comp.primary.groebner().gens) primary.push_back(format_poly(g));
            std::cout << "component: prime = " << detail::angle_list(prime, "; ")
                      << " | primary = " << detail::angle_list(primary, "; ") << "\n";
        }
    }
    return 0;
}

inline int cmd_apply(const std::string& op_text, const std::string& poly_text,
                     const std::string& ring_spec, const CliCommon& c) {
    std::vector<std::string> vars, diffed;
    if (!ring_spec.empty()) {
        vars = detail::split_list(ring_spec, ',');
        for (const auto& v : vars)
            if (!detail::valid_identifier(v))
                throw ParseError("invalid variable name '" + v + "' in --ring");
        std::vector<std::string> seen;
        detail::scan_identifiers(op_text, true, seen, diffed);
    } else {
        detail::scan_identifiers(op_text, true, vars, diffed);
        detail::scan_identifiers(poly_text, false, vars, diffed);
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        if (vars.empty()) throw ParseError("no variables found; pass --ring to name them");
    }
    RingPtr ring = make_ring(vars, detail::order_by_name(c.order));
    std::sort(diffed.begin(), diffed.end());
    diffed.erase(std::unique(diffed.begin(), diffed.end()), diffed.end());
    std::vector<int> basis_vars;
    for (size_t v = 0; v < ring->vars.size(); ++v)
        if (std::find(diffed.begin(), diffed.end(), ring->vars[v]) == diffed.end())
            basis_vars.push_back(static_cast<int>(v));
    DiffOperator op = parse_operator(op_text, ring, basis_vars);
    Polynomial f = parse_poly(poly_text, ring);
    Polynomial result = apply_operator(op, f);
    if (c.json_output) {
        json j;
        j["result"] = format_poly(result);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_poly(result) << "\n";
    }
    return 0;
}

inline int cmd_verify(const std::string& ideal_path, const std::string& decomp_path,
                      const CliCommon& c) {
    IdealDocument idoc = load_ideal_text(detail::read_file(ideal_path), c.order);
    DecompositionDocument ddoc =
        load_decomposition_text(detail::read_file(decomp_path), idoc.ring);
    VerifyOptions vo;
    vo.max_order = c.max_order;
    VerificationReport rep = verify_decomposition(idoc.ideal, ddoc.components, vo);
    if (c.json_output) {
        json j;
        j["roundtrip"] = rep.roundtrip_equal;
        if (rep.counterexample) j["counterexample"] = format_poly(*rep.counterexample);
        json comps = json::array();
        for (const auto& ck : rep.components) {
            json jc;
            jc["operators"] = ck.size;
            jc["annihilation"] = ck.annihilation_ok;
            if (ck.witness) jc["witness"] = format_poly(*ck.witness);
            jc["multiplicity"] = ck.recomputed_multiplicity;
            jc["size_ok"] = ck.size_ok;
            if (!ck.note.empty()) jc["note"] = ck.note;
            comps.push_back(jc);
        }
        j["components"] = comps;
        j["pass"] = rep.pass();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "roundtrip = " << (rep.roundtrip_equal ? "yes" : "no") << "\n";
        if (rep.counterexample)
            std::cout << "counterexample = " << format_poly(*rep.counterexample) << "\n";
        if (!rep.note.empty()) std::cout << "note = " << rep.note << "\n";
        for (size_t i = 0; i < rep.components.size(); ++i) {
            const ComponentCheck& ck = rep.components[i];
            std::cout << "component " << i << ": operators = " << ck.size << ", annihilation = "
                      << (ck.annihilation_ok ? "ok" : "FAIL") << ", multiplicity = "
                      << ck.recomputed_multiplicity << ", size = "
                      << (ck.size_ok ? "ok" : "mismatch") << "\n";
            if (ck.witness)
                std::cout << "  witness = " << format_poly(*ck.witness) << " (operator "
                          << ck.witness_operator << ")\n";
            if (!ck.note.empty()) std::cout << "  note = " << ck.note << "\n";
        }
        std::cout << "verdict = " << (rep.pass() ? "pass" : "FAIL") << "\n";
    }
    return rep.pass() ? 0 : 3;
}

inline int run_cli(int argc, char** argv) {
    CLI::App app{"exact differential primary decomposition of polynomial ideals over QQ"};
    app.require_subcommand(1);

    CliCommon c;
    std::string ideal_path, decomp_path, primes_path, op_text, poly_text, ring_spec;
    bool verify_flag = true;

    auto add_common = [&](CLI::App* sub, bool with_engine_knobs) {
        sub->add_flag("--json", c.json_output, "emit JSON instead of text");
        if (with_engine_knobs) {
            sub->add_option("--order", c.order, "monomial order (grevlex or lex)")
                ->check(CLI::IsMember({"grevlex", "lex"}))
                ->default_str("grevlex");
            sub->add_option("--seed", c.seed, "random seed for the decomposition engine")
                ->default_str("0");
            sub->add_option("--factor-budget", c.factor_budget,
                            "degree budget for univariate factoring")
                ->default_str(std::to_string(config::default_factor_degree_budget));
        }
    };

    CLI::App* solve = app.add_subcommand("solvepde", "decompose an ideal into primes and operators");
    solve->add_option("ideal", ideal_path, "ideal document")->required();
    solve->add_option("--primes", primes_path, "use a supplied associated-prime list");
    solve->add_option("--max-order", c.max_order, "truncation cap for dual spaces")
        ->default_str(std::to_string(config::default_max_order));
    solve->add_flag("--verify,!--no-verify", verify_flag, "verify the output (default on)");
    add_common(solve, true);

    CLI::App* get = app.add_subcommand("getpde", "reconstruct the ideal a decomposition cuts out");
    get->add_option("decomposition", decomp_path, "decomposition document")->required();
    add_common(get, false);

    CLI::App* am = app.add_subcommand("amult", "arithmetic multiplicity with a per-prime table");
    am->add_option("ideal", ideal_path, "ideal document")->required();
    am->add_option("--primes", primes_path, "use a supplied associated-prime list");
    am->add_option("--max-order", c.max_order, "truncation cap for dual spaces")
        ->default_str(std::to_string(config::default_max_order));
    am->add_flag("--verify,!--no-verify", verify_flag, "verify before reporting (default on)");
    add_common(am, true);

    CLI::App* ass = app.add_subcommand("ass", "associated primes");
    ass->add_option("ideal", ideal_path, "ideal document")->required();
    add_common(ass, true);

    CLI::App* pd = app.add_subcommand("primdec", "primary decomposition");
    pd->add_option("ideal", ideal_path, "ideal document")->required();
    add_common(pd, true);

    CLI::App* ap = app.add_subcommand("apply", "apply a differential operator to a polynomial");
    ap->add_option("--op", op_text, "operator, e.g. \"x*dy + dz\"")->required();
    ap->add_option("--poly", poly_text, "polynomial to differentiate")->required();
    ap->add_option("--ring", ring_spec,
                   "comma-separated variables (default: inferred, sorted by name)");
    add_common(ap, true);

    CLI::App* ver = app.add_subcommand("verify", "check a decomposition against an ideal");
    ver->add_option("ideal", ideal_path, "ideal document")->required();
    ver->add_option("decomposition", decomp_path, "decomposition document")->required();
    ver->add_option("--max-order", c.max_order, "truncation cap for dual spaces")
        ->default_str(std::to_string(config::default_max_order));
    add_common(ver, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solvepde(ideal_path, primes_path, verify_flag, c);
        if (get->parsed()) return cmd_getpde(decomp_path, c);
        if (am->parsed()) return cmd_amult(ideal_path, primes_path, verify_flag, c);
        if (ass->parsed()) return cmd_ass(ideal_path, c);
        if (pd->parsed()) return cmd_primdec(ideal_path, c);
        if (ap->parsed()) return cmd_apply(op_text, poly_text, ring_spec, c);
        if (ver->parsed()) return cmd_verify(ideal_path, decomp_path, c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace noethops
