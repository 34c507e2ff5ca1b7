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

#ifndef GWCHI_PARSE_HPP
#define GWCHI_PARSE_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "gw.hpp"
#include "multipoly.hpp"
#include "pipeline.hpp"
#include "scalars.hpp"

namespace gwchi {

/// Position of a character in a (possibly multi-line) text, 1-based.
struct SourcePos {
    int line = 1;
    int column = 1;
};

[[noreturn]] inline void parse_fail(const std::string& code, SourcePos at, const std::string& msg) {
    fail(ErrorKind::parse, code,
         "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + msg);
}

namespace detail {

inline void advance_pos(SourcePos& p, char c) {
    if (c == '\n') {
        ++p.line;
        p.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++p.column;
    }
}

/// Recursive-descent parser for polynomials with rational coefficients.
///
///   expr    := ['+'|'-'] term { ('+'|'-') term }
///   term    := power { ['*'|'/'] power }        (a missing '*' is implied)
///   power   := unary ['^' integer]
///   unary   := '-' unary | primary
///   primary := integer | identifier | '(' expr ')'
///
/// Identifiers are split greedily into known variable names, so "X0X1"
/// reads as X0*X1. With `open_vars` unknown identifiers become new variables.
class PolyParser {
   public:
    using MP = MultiPoly<Rat>;

    PolyParser(const std::string& text, std::vector<std::string>& vars, bool open_vars, SourcePos origin)
        : s_(text), vars_(vars), open_(open_vars), origin_(origin) {}

    MP parse() {
        MP r = expr();
        skip_ws();
        if (i_ < s_.size()) parse_fail("syntax", pos(), std::string("unexpected '") + s_[i_] + "'");
        return r;
    }

   private:
    SourcePos pos() const {
        SourcePos p = origin_;
        for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) advance_pos(p, s_[k]);
        return p;
    }
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip_ws();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++i_;
        return true;
    }
    bool starts_primary() {
        skip_ws();
        if (i_ >= s_.size()) return false;
        const unsigned char c = static_cast<unsigned char>(s_[i_]);
        return std::isalnum(c) || c == '(' || c == '_';
    }

    MP constant(const Rational& q) const { return MP::constant(RationalField{}, vars_, Rat(q)); }
    // Re-embeds a polynomial after new variables were appended.
    MP widen(const MP& p) const {
        if (p.vars() == vars_) return p;
        MP r(RationalField{}, vars_);
        for (const auto& [e, c] : p.terms()) {
            Exponent w = e;
            w.resize(vars_.size(), 0);
            r.add_term(w, c);
        }
        return r;
    }

    MP expr() {
        MP acc = constant(0);
        bool first = true;
        for (;;) {
            bool neg = false;
            if (accept('+')) {
            } else if (accept('-')) {
                neg = true;
            } else if (!first) {
                return acc;
            }
            MP t = term();
            acc = widen(acc);
            acc = neg ? acc - t : acc + t;
            first = false;
        }
    }

    MP term() {
        MP acc = power();
        for (;;) {
            if (accept('*')) {
                MP r = power();
                acc = widen(acc) * r;
            } else if (peek('/')) {
                const SourcePos at = pos();
                ++i_;
                MP d = power();
                if (d.total_degree() > 0) parse_fail("division", at, "division is only allowed by a constant");
                if (d.is_zero()) parse_fail("division", at, "division by zero");
                acc = widen(acc) * constant(Rational(1) / d.coeff(Exponent(vars_.size(), 0)).value());
            } else if (starts_primary()) {
                MP r = power();
                acc = widen(acc) * r;
            } else {
                return acc;
            }
        }
    }

    MP power() {
        MP b = unary();
        if (accept('^')) {
            skip_ws();
            const SourcePos at = pos();
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            if (j == i_) parse_fail("syntax", at, "expected a non-negative integer exponent");
            if (j - i_ > 4) parse_fail("exponent", at, "exponent too large");
            const unsigned e = static_cast<unsigned>(std::stoul(s_.substr(i_, j - i_)));
            i_ = j;
            return b.pow(e);
        }
        return b;
    }

    MP unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return primary();
    }

    MP primary() {
        skip_ws();
        const SourcePos at = pos();
        if (i_ >= s_.size()) parse_fail("syntax", at, "unexpected end of input");
        const unsigned char c = static_cast<unsigned char>(s_[i_]);
        if (c == '(') {
            ++i_;
            MP r = expr();
            if (!accept(')')) parse_fail("syntax", pos(), "expected ')'");
            return r;
        }
        if (std::isdigit(c)) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            Integer v(s_.substr(i_, j - i_));
            i_ = j;
            return constant(Rational(v));
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
            const std::string id = s_.substr(i_, j - i_);
            i_ = j;
            return identifier(id, at);
        }
        parse_fail("syntax", at, std::string("unexpected '") + s_[i_] + "'");
    }

    MP identifier(const std::string& id, SourcePos at) {
        auto find = [&](const std::string& v) -> std::optional<std::size_t> {
            for (std::size_t k = 0; k < vars_.size(); ++k)
                if (vars_[k] == v) return k;
            return std::nullopt;
        };
        if (auto k = find(id)) return MP::variable(RationalField{}, vars_, *k);
        // Greedy split into known names.
        std::vector<std::size_t> parts;
        for (std::size_t p = 0; p < id.size();) {
            std::size_t best = 0, idx = 0;
            for (std::size_t k = 0; k < vars_.size(); ++k)
                if (vars_[k].size() > best && id.compare(p, vars_[k].size(), vars_[k]) == 0) {
                    best = vars_[k].size();
                    idx = k;
                }
            if (best == 0) {
                parts.clear();
                break;
            }
            parts.push_back(idx);
            p += best;
        }
        if (!parts.empty()) {
            MP r = constant(1);
            for (auto k : parts) r = r * MP::variable(RationalField{}, vars_, k);
            return r;
        }
        if (!open_) parse_fail("unknown-variable", at, "unknown variable '" + id + "'");
        vars_.push_back(id);
        return MP::variable(RationalField{}, vars_, vars_.size() - 1);
    }

    const std::string& s_;
    std::vector<std::string>& vars_;
    bool open_;
    SourcePos origin_;
    std::size_t i_ = 0;
};

}  // namespace detail

/// Parses a polynomial in the given variables.
inline MultiPoly<Rat> parse_poly(const std::string& text, const std::vector<std::string>& vars,
                                 SourcePos origin = {}) {
    std::vector<std::string> v = vars;
    detail::PolyParser p(text, v, false, origin);
    return p.parse();
}

/// Parses a polynomial, appending unknown identifiers to `vars` (in order of appearance).
inline MultiPoly<Rat> parse_poly_open(const std::string& text, std::vector<std::string>& vars,
                                      SourcePos origin = {}) {
    detail::PolyParser p(text, vars, true, origin);
    MultiPoly<Rat> r = p.parse();
    if (r.vars() == vars) return r;
    MultiPoly<Rat> w(RationalField{}, vars);
    for (const auto& [e, c] : r.terms()) {
        Exponent x = e;
        x.resize(vars.size(), 0);
        w.add_term(x, c);
    }
    return w;
}

/// Parses a rational number such as "-3", "3/4" or "-(1/2)".
inline Rational parse_rational(const std::string& text) {
    const MultiPoly<Rat> p = parse_poly(text, {});
    if (p.is_zero()) return 0;
    return p.coeff(Exponent{}).value();
}

/// "Q" or "Fp:<prime>".
inline FieldDescriptor parse_field(const std::string& text, SourcePos at = {}) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "Q" || t == "QQ") return FieldDescriptor::rationals();
    if (t.rfind("Fp:", 0) == 0 || t.rfind("F_p:", 0) == 0) {
        const std::string num = t.substr(t.find(':') + 1);
        if (num.empty() || num.size() > 10 || num.find_first_not_of("0123456789") != std::string::npos)
            parse_fail("bad-field", at, "expected Fp:<prime>, got '" + text + "'");
        const unsigned long long p = std::stoull(num);
        if (p < 3 || p >= (1ull << 31) || !is_prime(p))
            parse_fail("bad-field", at, "field characteristic must be an odd prime below 2^31, got " + num);
        return FieldDescriptor::prime(p);
    }
    parse_fail("bad-field", at, "unknown field '" + text + "' (expected Q or Fp:<prime>)");
}

/// Config text: `key = value` entries separated by newlines or ';', '#'
/// starts a comment. Keys: field, n, F.
inline CoverInput parse_config(const std::string& text) {
    struct Entry {
        std::string value;
        SourcePos key_at, value_at;
    };
    std::map<std::string, Entry> entries;
    SourcePos cur;
    std::size_t i = 0;
    auto advance = [&](char c) { detail::advance_pos(cur, c); };
    while (i < text.size()) {
        // One entry up to ';', '\n' or '#'.
        std::size_t j = i;
        const SourcePos start = cur;
        while (j < text.size() && text[j] != ';' && text[j] != '\n' && text[j] != '#') ++j;
        std::string item = text.substr(i, j - i);
        std::size_t eq = item.find('=');
        auto is_blank = [](const std::string& s) {
            return s.find_first_not_of(" \t\r") == std::string::npos;
        };
        if (!is_blank(item)) {
            std::size_t k0 = item.find_first_not_of(" \t\r");
            SourcePos key_at = start;
            key_at.column += static_cast<int>(k0);
            if (eq == std::string::npos) parse_fail("config-syntax", key_at, "expected 'key = value'");
            std::string key = item.substr(k0, eq - k0);
            key.erase(key.find_last_not_of(" \t\r") + 1);
            std::size_t v0 = item.find_first_not_of(" \t\r", eq + 1);
            SourcePos value_at = start;
            for (std::size_t q = 0; q < (v0 == std::string::npos ? eq + 1 : v0); ++q) detail::advance_pos(value_at, item[q]);
            if (v0 == std::string::npos) parse_fail("config-syntax", value_at, "missing value for '" + key + "'");
            std::string value = item.substr(v0);
            value.erase(value.find_last_not_of(" \t\r") + 1);
            if (key != "field" && key != "n" && key != "F")
                parse_fail("unknown-key", key_at, "unknown key '" + key + "' (expected field, n or F)");
            if (entries.count(key)) parse_fail("duplicate-key", key_at, "duplicate key '" + key + "'");
            entries[key] = {value, key_at, value_at};
        }
        for (std::size_t q = i; q < j; ++q) advance(text[q]);
        if (j < text.size() && text[j] == '#') {
            while (j < text.size() && text[j] != '\n') advance(text[j++]);
        }
        if (j < text.size()) advance(text[j++]);
        i = j;
    }
    const SourcePos end = cur;
    for (const char* k : {"field", "n", "F"})
        if (!entries.count(k)) parse_fail("missing-key", end, std::string("missing key '") + k + "'");

    CoverInput in;
    in.field = parse_field(entries["field"].value, entries["field"].value_at);
    const Entry& ne = entries["n"];
    if (ne.value.find_first_not_of("0123456789") != std::string::npos || ne.value.size() > 6)
        parse_fail("config-syntax", ne.value_at, "n must be a positive integer, got '" + ne.value + "'");
    in.n = std::stoll(ne.value);
    in.F = parse_poly(entries["F"].value, {"X0", "X1", "X2"}, entries["F"].value_at);
    return in;
}

}  // namespace gwchi

#endif
