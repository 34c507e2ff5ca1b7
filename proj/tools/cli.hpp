/*
   Copyright 2026 The gwchi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GWCHI_TOOLS_CLI_HPP
#define GWCHI_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gwchi/covering.hpp"
#include "gwchi/factor.hpp"
#include "gwchi/gw.hpp"
#include "gwchi/parse.hpp"
#include "gwchi/pipeline.hpp"
#include "gwchi/quadform.hpp"
#include "gwchi/scheja_storch.hpp"

namespace gwchi::cli {

using json = nlohmann::json;

struct GlobalFlags {
    bool json = false;
    bool unicode = false;
    std::uint64_t seed = 1;
    int max_degree = 64;
    std::string field;  // empty: Q, or the config's field for `cover`
};

inline json integer_json(const Integer& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

inline json gw_json(const GWElement& x) {
    const GWDisplayForm d = display_form(x);
    json entries = json::array();
    for (const auto& [c, m] : d.entries) entries.push_back({integer_json(c), m});
    json out;
    out["entries"] = entries;
    out["hyperbolic"] = d.hyperbolic;
    out["rank"] = x.rank();
    out["signature"] = x.field().is_rational() ? json(x.signature()) : json(nullptr);
    out["discriminant"] = integer_json(x.discriminant());
    out["display"] = gw_display(x);
    return out;
}

inline std::string invariants_line(const GWElement& x) {
    std::ostringstream s;
    s << "rank " << x.rank();
    if (x.field().is_rational()) s << ", signature " << x.signature();
    s << ", discriminant " << x.discriminant();
    return s.str();
}

/// Calls fn(base_field) with RationalField or PrimeField.
template <class Fn>
auto with_field(const FieldDescriptor& k, Fn&& fn) {
    if (k.is_rational()) return fn(RationalField{});
    return fn(PrimeField{k.p});
}

inline std::string read_config_arg(const std::string& arg) {
    std::ifstream in(arg);
    if (!in) return arg;  // not a file: inline config text
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string check_word(bool ok) { return ok ? "ok" : "FAILED"; }

template <class K>
int print_cover(const PipelineReport<K>& rep, const MultiPoly<Rat>& F, const GlobalFlags& g, std::ostream& out) {
    if (g.json) {
        json j;
        j["field"] = rep.field.to_string();
        j["n"] = rep.n;
        j["F"] = F.to_string();
        j["chi"] = gw_json(rep.chi);
        j["beta"] = gw_json(rep.beta);
        j["chi_blowup"] = gw_json(rep.chi_blowup);
        json pts = json::array();
        for (const auto& p : rep.points) {
            json pj;
            pj["chart"] = p.chart == 0 ? "X0" : "X1";
            pj["min_polys"] = p.min_polys;
            pj["degree"] = p.degree;
            pj["m"] = p.m;
            pj["alpha"] = p.alpha ? p.alpha->to_string() : "";
            pj["alpha_class"] = p.local_class ? json(gw_display(*p.local_class)) : json(nullptr);
            pts.push_back(pj);
        }
        j["points"] = pts;
        json c;
        c["bezout"] = rep.checks.bezout;
        c["rank"] = rep.checks.rank;
        c["beta_even"] = rep.checks.beta_even;
        if (rep.checks.parity) c["parity"] = *rep.checks.parity;
        if (rep.checks.chart_independence) c["chart_independence"] = *rep.checks.chart_independence;
        if (rep.checks.etale_oracle) c["etale_oracle"] = *rep.checks.etale_oracle;
        j["checks"] = c;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "field = " << rep.field.to_string() << "\n";
    out << "n = " << rep.n << "\n";
    out << "F = " << F.to_string() << "\n";
    out << "critical points: " << rep.points.size() << "\n";
    for (const auto& p : rep.points) {
        out << "  chart " << (p.chart == 0 ? "X0" : "X1") << "  {";
        for (std::size_t i = 0; i < p.min_polys.size(); ++i) out << (i ? ", " : "") << p.min_polys[i];
        out << "}  degree " << p.degree << "  m " << p.m << "  alpha " << (p.alpha ? p.alpha->to_string() : "?");
        if (p.local_class) out << "  Tr<-2*alpha> = " << gw_display(*p.local_class, g.unicode);
        out << "\n";
    }
    out << "beta = " << gw_display(rep.beta, g.unicode) << "\n";
    out << "chi = " << gw_display(rep.chi, g.unicode) << "\n";
    out << "chi_blowup = " << gw_display(rep.chi_blowup, g.unicode) << "\n";
    out << "chi: " << invariants_line(rep.chi) << "\n";
    out << "checks: bezout " << check_word(rep.checks.bezout) << " (" << rep.checks.bezout_sum << " = "
        << rep.checks.bezout_expected << "), rank " << check_word(rep.checks.rank) << ", beta even "
        << check_word(rep.checks.beta_even);
    if (rep.checks.parity) out << ", parity " << check_word(*rep.checks.parity);
    if (rep.checks.chart_independence) out << ", chart independence " << check_word(*rep.checks.chart_independence);
    if (rep.checks.etale_oracle) out << ", etale oracle " << check_word(*rep.checks.etale_oracle);
    out << "\n";
    return 0;
}

inline int cmd_cover(const std::string& config, const std::string& move, const GlobalFlags& g, std::ostream& out) {
    CoverInput in = parse_config(read_config_arg(config));
    if (!g.field.empty()) in.field = parse_field(g.field);
    if (!move.empty()) {
        const auto parts = split_list(move);
        if (parts.size() != 3)
            fail(ErrorKind::parse, "bad-point", "--move-point expects three comma-separated coordinates a,b,c");
        in.F = move_point(in.F, parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
    }
    PipelineOptions opt;
    opt.factor.seed = g.seed;
    opt.factor.max_degree = g.max_degree;
    return with_field(in.field, [&](const auto& base) {
        using K = typename std::decay_t<decltype(base)>::element_type;
        return print_cover(chi_of_cover_over<K>(base, in, opt), in.F, g, out);
    });
}

inline int print_gw(const GWElement& x, const GlobalFlags& g, std::ostream& out) {
    if (g.json) {
        out << gw_json(x).dump(2) << "\n";
        return 0;
    }
    out << gw_display(x, g.unicode) << "\n";
    return 0;
}

inline int cmd_gw(const std::string& expr, const GlobalFlags& g, std::ostream& out) {
    const FieldDescriptor k = g.field.empty() ? FieldDescriptor::rationals() : parse_field(g.field);
    const GWElement x = parse_gw(k, expr);
    if (g.json) return print_gw(x, g, out);
    out << gw_display(x, g.unicode) << "\n" << invariants_line(x) << "\n";
    return 0;
}

/// Builds the tower k[v1]/(p1)[v2]/(p2)... where each p_i introduces exactly
/// one new variable, then returns Tr<b> for the multiplier b.
template <class K>
GWElement trace_of(const typename K::Field& base, const std::vector<std::string>& ext, const std::string& mult,
                   const FactorOptions& opt) {
    Tower<K> L = Tower<K>::over(base);
    std::vector<std::string> vars;
    std::vector<TowerElem<K>> gens;
    for (const auto& text : ext) {
        const std::size_t before = vars.size();
        const MultiPoly<Rat> p = parse_poly_open(text, vars);
        if (vars.size() != before + 1)
            fail(ErrorKind::parse, "bad-extension",
                 "each --ext polynomial must introduce exactly one new variable: '" + text + "'");
        std::vector<TowerElem<K>> c(static_cast<std::size_t>(std::max(p.degree_in(before), 0)) + 1, L.zero());
        for (const auto& [e, q] : p.terms()) {
            TowerElem<K> t = L.from_rational(q.value());
            for (std::size_t i = 0; i < before; ++i)
                for (unsigned r = 0; r < e[i]; ++r) t *= L.embed(gens[i]);
            c[e[before]] += t;
        }
        L = make_extension(L, vars.back(), Poly<TowerElem<K>>(L, std::move(c)), opt);
        gens.push_back(L.generator());
    }
    const MultiPoly<Rat> b = parse_poly(mult, vars);
    std::vector<TowerElem<K>> at;
    for (const auto& x : gens) at.push_back(L.embed(x));
    const TowerElem<K> bv = b.template evaluate_in<TowerElem<K>>(
        at, L.zero(), [&](const Rat& q) { return L.from_rational(q.value()); });
    return trace_form(L, bv);
}

inline int cmd_trace(const std::vector<std::string>& ext, const std::string& mult, const GlobalFlags& g,
                     std::ostream& out) {
    const FieldDescriptor k = g.field.empty() ? FieldDescriptor::rationals() : parse_field(g.field);
    FactorOptions opt{g.seed, g.max_degree};
    const GWElement x = with_field(k, [&](const auto& base) {
        using K = typename std::decay_t<decltype(base)>::element_type;
        return trace_of<K>(base, ext, mult, opt);
    });
    return print_gw(x, g, out);
}

template <class E>
int print_ss(const SSForm<E>& f, const GWElement& cls, const GlobalFlags& g, std::ostream& out) {
    if (g.json) {
        json j = gw_json(cls);
        j["local_dimension"] = f.algebra.dim();
        j["basis"] = f.algebra.labels;
        j["ss_element"] = f.determinant.to_string();
        out << j.dump(2) << "\n";
        return 0;
    }
    out << gw_display(cls, g.unicode) << "\n";
    out << invariants_line(cls) << "\n";
    out << "local algebra: dimension " << f.algebra.dim() << ", basis {";
    for (std::size_t i = 0; i < f.algebra.labels.size(); ++i) out << (i ? ", " : "") << f.algebra.labels[i];
    out << "}\n";
    out << "Scheja-Storch element: " << f.determinant.to_string() << "\n";
    out << "Gram matrix: " << f.gram.to_string() << "\n";
    return 0;
}

template <class K>
int run_ss(const typename K::Field& base, const std::vector<std::string>& vars, const std::vector<std::string>& polys,
           bool milnor, const GlobalFlags& g, std::ostream& out) {
    std::vector<MultiPoly<K>> s;
    for (const auto& p : polys) {
        const MultiPoly<Rat> q = parse_poly(p, vars);
        s.push_back(q.template map_coeffs<K>(base, [&](const Rat& c) { return base.from_rational(c.value()); }));
    }
    const SSForm<K> f = milnor ? a1_milnor(s.at(0)) : ss_at_origin(s);
    return print_ss(f, diagonalize(f.gram), g, out);
}

inline int cmd_ss(const std::string& var_list, const std::vector<std::string>& polys, bool milnor,
                  const GlobalFlags& g, std::ostream& out) {
    const auto vars = split_list(var_list);
    for (const auto& v : vars)
        if (v.empty()) fail(ErrorKind::parse, "bad-vars", "empty variable name in --vars");
    if (milnor && polys.size() != 1) fail(ErrorKind::parse, "bad-args", "milnor takes exactly one --f polynomial");
    if (!milnor && polys.size() != vars.size())
        fail(ErrorKind::validation, "not-complete-intersection",
             "ss needs as many polynomials as variables (" + std::to_string(vars.size()) + ")");
    const FieldDescriptor k = g.field.empty() ? FieldDescriptor::rationals() : parse_field(g.field);
    return with_field(k, [&](const auto& base) {
        using K = typename std::decay_t<decltype(base)>::element_type;
        return run_ss<K>(base, vars, polys, milnor, g, out);
    });
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"gwchi: quadratic Euler characteristics of double covers of the projective plane"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--unicode", g.unicode, "Display forms with angle brackets and a middle dot");
    app.add_option("--seed", g.seed, "Seed for randomized factorization and coordinate choices");
    app.add_option("--max-degree", g.max_degree, "Degree cap for factorization over Q")->check(CLI::PositiveNumber);
    app.add_option("--field", g.field, "Base field: Q or Fp:<prime>");

    std::string config, move;
    auto* cover = app.add_subcommand("cover", "Quadratic Euler characteristic of the double cover branched along V(F)");
    cover->add_option("config", config, "Config file, or inline text such as \"field=Q; n=3; F=X0^6+X1^6+X2^6\"")
        ->required();
    cover->add_option("--move-point", move, "Coordinate change sending the point [a:b:c] to [0:0:1]");

    std::string expr;
    auto* gw = app.add_subcommand("gw", "Evaluate an expression in GW(k)");
    gw->add_option("expr", expr, "Expression such as \"(<3> + H)*(<1> + H)\"")->required();

    std::vector<std::string> ext;
    std::string mult = "1";
    auto* trace = app.add_subcommand("trace", "Trace form Tr<b> of a tower of simple extensions");
    trace->add_option("--ext", ext, "Defining polynomials, each introducing one new variable")->required();
    trace->add_option("--mult", mult, "Multiplier b, a polynomial in the tower variables");

    std::string vars, f;
    auto* milnor = app.add_subcommand("milnor", "A1-Milnor number of a germ at the origin");
    milnor->add_option("--vars", vars, "Comma-separated variables")->required();
    milnor->add_option("--f", f, "The germ")->required();

    std::string ss_vars;
    std::vector<std::string> ss_polys;
    auto* ss = app.add_subcommand("ss", "Scheja-Storch form of a system at the origin");
    ss->add_option("--vars", ss_vars, "Comma-separated variables")->required();
    ss->add_option("--s", ss_polys, "Polynomials s1 ... sr")->required();

    for (auto* sub : {cover, gw, trace, milnor, ss}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : exit_code(ErrorKind::parse);
    }
    try {
        if (cover->parsed()) return cmd_cover(config, move, g, out);
        if (gw->parsed()) return cmd_gw(expr, g, out);
        if (trace->parsed()) return cmd_trace(ext, mult, g, out);
        if (milnor->parsed()) return cmd_ss(vars, {f}, true, g, out);
        if (ss->parsed()) return cmd_ss(ss_vars, ss_polys, false, g, out);
    } catch (const Error& e) {
        err << "error [" << kind_name(e.kind()) << "/" << e.code() << "]: " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return 1;
}

}  // namespace gwchi::cli

#endif
