#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Exit status: 0 success, 1 identity failure, 2 usage error, 3 size guardrail.

#include "jetsec/text.hpp"
#include "jetsec/theorems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace jetsec::cli {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Range {
    unsigned long lo = 0;
    unsigned long hi = 0;
};

/// "a..b" (inclusive) or a single "a".
inline Range parse_range(const std::string& s) {
    auto number = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9) {
            throw UsageError("invalid range '" + s + "' (expected N or A..B)");
        }
        return std::stoul(t);
    };
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const auto v = number(s);
        return {v, v};
    }
    Range r{number(s.substr(0, dots)), number(s.substr(dots + 2))};
    if (r.lo > r.hi) {
        throw UsageError("empty range '" + s + "'");
    }
    return r;
}

inline unsigned long parse_nat(const std::string& s, const char* what) {
    const Range r = parse_range(s);
    if (r.lo != r.hi || s.find("..") != std::string::npos) {
        throw UsageError(std::string(what) + " expects a single number, got '" + s + "'");
    }
    return r.lo;
}

/// Comma list "2,1,0".
inline Composition parse_mu(const std::string& s) {
    std::vector<unsigned> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 6) {
            throw UsageError("invalid --mu '" + s + "' (expected a comma list such as 2,1,0)");
        }
        parts.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (parts.empty() || s.back() == ',') {
        throw UsageError("invalid --mu '" + s + "'");
    }
    return Composition(std::move(parts));
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out += (i ? "," : "") + csv_field(fields[i]);
    }
    return out + "\n";
}

struct Report {
    Json json;
    std::string text;
    std::string csv;
    int status = 0;
};

inline Json term_json(const LaurentKey& k, const Rational& c) {
    return Json{{"numerator", format_monomial(k.numerator)}, {"x0Power", k.x0_power}, {"coefficient", c.get_str()}};
}

inline std::string term_text(const LaurentKey& k, const Rational& c) {
    LaurentExpansion e;
    e.add_term(k, c);
    return format_laurent(e);
}

inline std::string join_params(const Params& p) {
    std::string out;
    for (const auto& [k, v] : p) {
        out += (out.empty() ? "" : " ") + k + "=" + v;
    }
    return out;
}

inline Json params_json(const Params& p) {
    Json j = Json::object();
    for (const auto& [k, v] : p) {
        j[k] = v;
    }
    return j;
}

// ---- verbs -----------------------------------------------------------------

inline Report do_expand(const std::string& poly) {
    const auto rho = parse_poly(poly);
    const auto e = inversion_expansion(rho);
    Report r;
    const auto min = e.min_x0_power();
    r.json = {{"verb", "expand"}, {"poly", format_poly(rho)}, {"expansion", format_laurent(e)}};
    r.json["minX0Power"] = min ? Json(*min) : Json(nullptr);
    Json terms = Json::array();
    r.csv = csv_row({"numerator", "x0_power", "coefficient"});
    for (const auto& [k, c] : e.terms()) {
        terms.push_back(term_json(k, c));
        r.csv += csv_row({format_monomial(k.numerator), std::to_string(k.x0_power), c.get_str()});
    }
    r.json["terms"] = terms;
    r.text = "poly: " + format_poly(rho) + "\nexpansion: " + format_laurent(e) +
             "\nminX0Power: " + (min ? std::to_string(*min) : std::string("none")) + "\n";
    return r;
}

inline Report do_partner(const std::string& verb, const std::string& poly, unsigned long n) {
    const auto rho = parse_poly(poly);
    if (rho.is_zero()) {
        throw UsageError("the zero polynomial has no partner");
    }
    const auto e = inversion_expansion(rho);
    const auto result = partner_from_expansion(rho, e, n);
    const long min = *e.min_x0_power();
    Report r;
    r.json = {{"verb", verb}, {"poly", format_poly(rho)}, {"n", n}, {"member", is_member(result)},
              {"minX0Power", min}};
    std::string partner_text = "none";
    std::string witness_text;
    if (const auto* w = std::get_if<CompatibilityWitness>(&result)) {
        partner_text = format_poly(w->rho2);
        r.json["partner"] = partner_text;
        r.json["witness"] = nullptr;
    } else {
        const auto& nm = std::get<NotAMember>(result);
        witness_text = term_text(nm.witness, nm.witness_coefficient);
        r.json["partner"] = nullptr;
        r.json["witness"] = term_json(nm.witness, nm.witness_coefficient);
    }
    r.text = "poly: " + format_poly(rho) + "\nn: " + std::to_string(n) +
             "\nmember: " + (is_member(result) ? "true" : "false") + "\nminX0Power: " + std::to_string(min) + "\n";
    if (is_member(result)) {
        r.text += "partner: " + partner_text + "\n";
    } else {
        r.text += "witness: " + witness_text + "\n";
    }
    r.csv = csv_row({"poly", "n", "member", "min_x0_power", "partner", "witness"}) +
            csv_row({format_poly(rho), std::to_string(n), is_member(result) ? "true" : "false", std::to_string(min),
                     is_member(result) ? partner_text : "", witness_text});
    return r;
}

inline Report do_derive(const std::string& poly) {
    const auto rho = parse_poly(poly);
    const auto d = derive(rho);
    Report r;
    r.json = {{"verb", "derive"}, {"poly", format_poly(rho)}, {"result", format_poly(d)}};
    r.text = "poly: " + format_poly(rho) + "\nderivative: " + format_poly(d) + "\n";
    r.csv = csv_row({"poly", "result"}) + csv_row({format_poly(rho), format_poly(d)});
    return r;
}

inline Report basis_report(const std::string& verb, unsigned long n, unsigned long d, const std::string& source,
                           const std::vector<JetPolynomial>& basis, const std::size_t* candidates,
                           std::optional<unsigned long> l = std::nullopt) {
    Report r;
    r.json = {{"verb", verb}, {"n", n}, {"d", d}};
    if (verb == "solve") {
        r.json["l"] = l ? Json(*l) : Json(nullptr);
    } else {
        r.json["source"] = source;
    }
    if (candidates) {
        r.json["candidateCount"] = *candidates;
    }
    r.json["dimension"] = basis.size();
    Json list = Json::array();
    r.text = "n: " + std::to_string(n) + "\nd: " + std::to_string(d) + "\n";
    if (l) {
        r.text += "l: " + std::to_string(*l) + "\n";
    }
    if (verb == "basis") {
        r.text += "source: " + source + "\n";
    }
    if (candidates) {
        r.text += "candidates: " + std::to_string(*candidates) + "\n";
    }
    r.text += "dimension: " + std::to_string(basis.size()) + "\nbasis:\n";
    r.csv = csv_row({"index", "sd", "element"});
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto s = format_poly(basis[i]);
        list.push_back(s);
        r.text += "  " + s + "\n";
        r.csv += csv_row({std::to_string(i), std::to_string(basis[i].order_of_derivatives()), s});
    }
    r.json["basis"] = list;
    return r;
}

inline Report do_basis(unsigned long n, unsigned long d, const std::string& source) {
    if (source == "theorem") {
        if (d != 2) {
            throw UsageError("--source theorem is only available for --d 2");
        }
        if (n < 2) {
            throw UsageError("--source theorem requires n >= 2");
        }
        return basis_report("basis", n, d, source, theorem_basis_p2(n), nullptr);
    }
    const auto rep = solve_subspace(SubspaceQuery{n, d, {}});
    return basis_report("basis", n, d, source, rep.basis, nullptr);
}

inline Report do_solve(unsigned long n, unsigned long d, std::optional<unsigned long> l) {
    const auto rep = solve_subspace(SubspaceQuery{n, d, l});
    return basis_report("solve", n, d, "solver", rep.basis, &rep.candidate_count, l);
}

inline Report do_dims(Range ns, unsigned long d, const std::string& source) {
    const bool formula = source != "solver";
    const bool solver = source != "formula";
    if (formula && d != 2) {
        throw UsageError("the closed formula covers --d 2 only; use --source solver");
    }
    Report r;
    r.json = {{"verb", "dims"}, {"d", d}, {"source", source}};
    Json rows = Json::array();
    r.csv = csv_row({"n", "d", "l", "formula", "solver"});
    for (unsigned long n = ns.lo; n <= ns.hi; ++n) {
        if (d > n || (formula && n < 2)) {
            throw UsageError("n=" + std::to_string(n) + " is outside the domain for d=" + std::to_string(d));
        }
        r.text += "n=" + std::to_string(n) + " d=" + std::to_string(d) + ":";
        unsigned long ftotal = 0;
        std::size_t stotal = 0;
        InversionExpander expander;
        for (unsigned long l = 0; l <= d * (n - (n > 0 ? 1 : 0)); ++l) {
            Json row = {{"n", n}, {"l", l}};
            std::string ftext;
            std::string stext;
            if (formula) {
                const auto f = dim_formula_p2(n, static_cast<long>(l));
                ftotal += f;
                row["formula"] = f;
                ftext = std::to_string(f);
            } else {
                row["formula"] = nullptr;
            }
            if (solver) {
                const auto s = solve_subspace(SubspaceQuery{n, d, l}, expander).dimension;
                stotal += s;
                row["solver"] = s;
                stext = std::to_string(s);
            } else {
                row["solver"] = nullptr;
            }
            rows.push_back(row);
            r.text += " " + std::to_string(l) + ":" + (formula && solver ? ftext + "/" + stext : ftext + stext);
            r.csv += csv_row({std::to_string(n), std::to_string(d), std::to_string(l), ftext, stext});
        }
        r.text += "  total " + (formula && solver ? std::to_string(ftotal) + "/" + std::to_string(stotal)
                                                    : std::to_string(formula ? ftotal : stotal)) +
                  "\n";
    }
    r.json["rows"] = rows;
    return r;
}

inline void append_identity(Report& r, Json& reports, const IdentityReport& rep) {
    Json j = {{"statement", rep.statement}, {"grid", params_json(rep.grid)}, {"pass", rep.pass()}};
    Json inst = Json::array();
    const std::string grid = join_params(rep.grid);
    r.text += rep.statement + " " + grid + ": " + (rep.pass() ? "pass" : "FAIL") + "\n";
    for (const auto& i : rep.instances) {
        inst.push_back({{"params", params_json(i.params)}, {"check", i.check}, {"left", i.left},
                        {"right", i.right}, {"pass", i.pass}});
        r.text += "  " + join_params(i.params) + "  " + i.check + "  " + i.left + (i.pass ? " = " : " != ") +
                  i.right + "  " + (i.pass ? "ok" : "FAIL") + "\n";
        r.csv += csv_row({rep.statement, grid, "instance", join_params(i.params), i.check, i.left, i.right,
                          i.pass ? "true" : "false"});
    }
    Json wit = Json::array();
    for (const auto& w : rep.witnesses) {
        wit.push_back({{"params", params_json(w.params)}, {"check", w.check}, {"left", w.left}, {"right", w.right}});
        r.text += "  witness " + join_params(w.params) + "  " + w.check + "  " + w.left + " != " + w.right + "\n";
        r.csv += csv_row({rep.statement, grid, "witness", join_params(w.params), w.check, w.left, w.right, "false"});
    }
    j["instances"] = inst;
    j["witnesses"] = wit;
    reports.push_back(j);
    if (!rep.pass()) {
        r.status = 1;
    }
}

inline Report do_identity(const std::string& prop, Range ns, std::optional<Range> k2s, unsigned long bijection_max) {
    Report r;
    Json reports = Json::array();
    r.csv = csv_row({"statement", "grid", "kind", "params", "check", "left", "right", "pass"});
    for (unsigned long n = ns.lo; n <= ns.hi; ++n) {
        if (prop == "cis") {
            if (n < 4) {
                throw UsageError("--prop cis requires n >= 4");
            }
            append_identity(r, reports, verify_prop_cis(n, n <= bijection_max));
        } else if (prop == "corollary") {
            if (n < 4) {
                throw UsageError("--prop corollary requires n >= 4");
            }
            const Range k = k2s ? *k2s : Range{1, n - 3};
            for (unsigned long k2 = k.lo; k2 <= k.hi; ++k2) {
                if (k2 < 1 || k2 > n - 3) {
                    throw UsageError("--k2 must lie in 1..n-3");
                }
                append_identity(r, reports, verify_corollary(n, k2));
            }
        } else {
            if (n < 2) {
                throw UsageError("--prop theorem requires n >= 2");
            }
            append_identity(r, reports, verify_theorem_p2(n));
        }
    }
    r.text += std::string("overall: ") + (r.status == 0 ? "pass" : "FAIL") + "\n";
    r.json = {{"verb", "identity"}, {"prop", prop}, {"pass", r.status == 0}, {"reports", reports}};
    return r;
}

inline Report do_bijection(unsigned long n, const Composition& mu) {
    if (!sigma_domain_ok(n, mu)) {
        throw UsageError("--mu must lie in P_{n-1,2n-4} with |mu| >= n-1 and n >= 4");
    }
    Report r;
    Json pairs = Json::array();
    std::set<std::vector<unsigned>> image;
    bool injective = true;
    r.csv = csv_row({"from", "to"});
    r.text = "n: " + std::to_string(n) + "\nmu: " + to_string(mu) + "\n";
    unsigned long size_a = 0;
    for_each_filtered_permutation(mu, n - 1, [&](const std::vector<unsigned>& w) {
        ++size_a;
        const auto s = sigma_bijection(MultisetPermutation(w), n, mu);
        const auto from = to_string(MultisetPermutation(w));
        const auto to = to_string(s);
        pairs.push_back({{"from", from}, {"to", to}});
        r.text += "  " + from + " -> " + to + "\n";
        r.csv += csv_row({from, to});
        injective = image.insert(s.entries).second && injective;
    });
    unsigned long size_a_prime = 0;
    bool onto = true;
    for_each_filtered_permutation(mu, n - 2, [&](const std::vector<unsigned>& w) {
        ++size_a_prime;
        onto = onto && image.count(w) > 0;
    });
    const bool ok = injective && onto && image.size() == size_a_prime;
    r.text += "|A|: " + std::to_string(size_a) + "\n|A'|: " + std::to_string(size_a_prime) +
              "\nbijective: " + (ok ? "true" : "false") + "\n";
    r.json = {{"verb", "bijection"}, {"n", n}, {"mu", to_string(mu)}, {"pairs", pairs},
              {"sizeA", size_a}, {"sizeAPrime", size_a_prime}, {"bijective", ok}};
    r.status = ok ? 0 : 1;
    return r;
}

inline Report do_probe(Range ns, unsigned long d) {
    Report r;
    Json reports = Json::array();
    r.csv = csv_row({"n", "d", "solver_dimension", "binomial", "symmetry", "support", "l", "dim"});
    for (unsigned long n = ns.lo; n <= ns.hi; ++n) {
        if (d > n) {
            throw UsageError("probe requires d <= n");
        }
        const auto p = conjecture_probe(n, d);
        Json grading = Json::array();
        std::string line;
        for (const auto& [l, dim] : p.grading) {
            grading.push_back({{"l", l}, {"dim", dim}});
            line += " " + std::to_string(l) + ":" + std::to_string(dim);
            r.csv += csv_row({std::to_string(n), std::to_string(d), std::to_string(p.solver_dimension),
                              p.binomial_value.get_str(), p.symmetry ? "true" : "false",
                              p.support ? "true" : "false", std::to_string(l), std::to_string(dim)});
        }
        reports.push_back({{"n", n}, {"d", d}, {"solverDimension", p.solver_dimension},
                           {"binomial", p.binomial_value.get_str()}, {"equalsBinomial", p.matches_binomial()},
                           {"grading", grading}, {"gradingTotal", p.grading_total},
                           {"consistent", p.consistent()}, {"symmetry", p.symmetry}, {"support", p.support}});
        r.text += "n=" + std::to_string(n) + " d=" + std::to_string(d) + ": dimension " +
                  std::to_string(p.solver_dimension) + ", binom " + p.binomial_value.get_str() +
                  (p.matches_binomial() ? " (equal)" : " (differs)") + ", symmetry " +
                  (p.symmetry ? "yes" : "no") + ", support " + (p.support ? "yes" : "no") + ", grading sum " +
                  std::to_string(p.grading_total) + (p.consistent() ? " (consistent)" : " (INCONSISTENT)") +
                  "\n  l:" + line + "\n";
        if (!p.consistent()) {
            r.status = 1;
        }
    }
    r.json = {{"verb", "probe"}, {"d", d}, {"reports", reports}};
    return r;
}

// ---- driver ----------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact jet-polynomial computations on the sections P_n"};
    app.name("jetsec");
    app.require_subcommand(1, 1);
    std::string format = "text";
    std::string out_path;
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", out_path, "Write the report to FILE instead of standard output");

    std::string poly;
    std::string n_arg;
    std::string d_arg;
    std::string l_arg;
    std::string k2_arg;
    std::string mu_arg;
    std::string source;
    std::string prop;
    unsigned long bijection_max = 10;

    auto common = [&](CLI::App* sub) {
        sub->fallthrough();
        return sub;
    };
    auto* expand = common(app.add_subcommand("expand", "Inversion expansion of a polynomial"));
    expand->add_option("--poly", poly, "Jet polynomial")->required();
    auto* partner_cmd = common(app.add_subcommand("partner", "Partner at level n, or evidence of non-membership"));
    partner_cmd->add_option("--poly", poly)->required();
    partner_cmd->add_option("--n", n_arg)->required();
    auto* member = common(app.add_subcommand("member", "Membership in P_n with evidence"));
    member->add_option("--poly", poly)->required();
    member->add_option("--n", n_arg)->required();
    auto* derive_cmd = common(app.add_subcommand("derive", "Total derivative"));
    derive_cmd->add_option("--poly", poly)->required();
    auto* basis = common(app.add_subcommand("basis", "Basis of P_{n,d}"));
    basis->add_option("--n", n_arg)->required();
    basis->add_option("--d", d_arg, "Degree (default 2)");
    basis->add_option("--source", source, "theorem (default) or solver")
        ->check(CLI::IsMember({"theorem", "solver"}));
    auto* dims = common(app.add_subcommand("dims", "Graded dimensions of P_{n,d}"));
    dims->add_option("--n", n_arg, "N or A..B")->required();
    dims->add_option("--d", d_arg, "Degree (default 2)");
    dims->add_option("--source", source, "formula, solver or both (default)")
        ->check(CLI::IsMember({"formula", "solver", "both"}));
    auto* solve = common(app.add_subcommand("solve", "Dimension and canonical basis of P_{n,d} or P_{n,d,l}"));
    solve->add_option("--n", n_arg)->required();
    solve->add_option("--d", d_arg)->required();
    solve->add_option("--l", l_arg);
    auto* identity = common(app.add_subcommand("identity", "Verify an identity over a parameter grid"));
    identity->add_option("--prop", prop)->required()->check(CLI::IsMember({"cis", "corollary", "theorem"}));
    identity->add_option("--n", n_arg, "N or A..B")->required();
    identity->add_option("--k2", k2_arg, "corollary only: K or A..B (default 1..n-3)");
    identity->add_option("--bijection-max", bijection_max, "cis only: check the bijection up to this n")
        ->capture_default_str();
    auto* bijection = common(app.add_subcommand("bijection", "Dump the permutation bijection for one mu"));
    bijection->add_option("--n", n_arg)->required();
    bijection->add_option("--mu", mu_arg, "Comma list such as 2,1,0")->required();
    auto* probe = common(app.add_subcommand("probe", "Record solver facts for P_{n,d}"));
    probe->add_option("--n", n_arg, "N or A..B")->required();
    probe->add_option("--d", d_arg)->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Report r;
        auto d_or = [&](unsigned long dflt) { return d_arg.empty() ? dflt : parse_nat(d_arg, "--d"); };
        if (*expand) {
            r = do_expand(poly);
        } else if (*partner_cmd) {
            r = do_partner("partner", poly, parse_nat(n_arg, "--n"));
        } else if (*member) {
            r = do_partner("member", poly, parse_nat(n_arg, "--n"));
        } else if (*derive_cmd) {
            r = do_derive(poly);
        } else if (*basis) {
            r = do_basis(parse_nat(n_arg, "--n"), d_or(2), source.empty() ? "theorem" : source);
        } else if (*dims) {
            r = do_dims(parse_range(n_arg), d_or(2), source.empty() ? "both" : source);
        } else if (*solve) {
            std::optional<unsigned long> l;
            if (!l_arg.empty()) {
                l = parse_nat(l_arg, "--l");
            }
            r = do_solve(parse_nat(n_arg, "--n"), parse_nat(d_arg, "--d"), l);
        } else if (*identity) {
            std::optional<Range> k2s;
            if (!k2_arg.empty()) {
                if (prop != "corollary") {
                    throw UsageError("--k2 applies to --prop corollary only");
                }
                k2s = parse_range(k2_arg);
            }
            r = do_identity(prop, parse_range(n_arg), k2s, bijection_max);
        } else if (*bijection) {
            r = do_bijection(parse_nat(n_arg, "--n"), parse_mu(mu_arg));
        } else if (*probe) {
            r = do_probe(parse_range(n_arg), parse_nat(d_arg, "--d"));
        }

        std::string body;
        if (format == "json") {
            body = r.json.dump(2) + "\n";
        } else if (format == "csv") {
            body = r.csv;
        } else {
            body = r.text;
        }
        if (out_path.empty()) {
            out << body;
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file || !(file << body) || !file.flush()) {
                err << "error: cannot write " << out_path << "\n";
                return 2;
            }
        }
        return r.status;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace jetsec::cli
