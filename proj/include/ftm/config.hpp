#pragma once

// Plain-text system description, one `key = value` per line, '#' comments.
//
//   rho = 1/4                        rational contraction, or
//   minpoly = [4, -18, 9]            integer coefficients, constant term first
//   isolating = [1/10, 1/2]
//   translations = [0, 1/8, [0, 1, -1]]   rationals or polynomials in rho
//   probabilities = [1/2, 1/2]
//
// or one of the built-in families:
//
//   family = cantor                  with d, m and optionally probabilities
//   family = bernoulli_simple_pisot  with k and p
//   family = convolution             with d, base, power

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ifs.hpp"

namespace ftm {

struct ConfigValue {
    bool is_list = false;
    Rational number;
    std::vector<ConfigValue> items;
};

namespace detail {

class ValueParser {
  public:
    ValueParser(const std::string& text, int line) : s_(text), line_(line) {}

    ConfigValue parse() {
        ConfigValue v = value();
        skip();
        if (i_ != s_.size()) fail("unexpected text '" + s_.substr(i_) + "'");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("config line " + std::to_string(line_) + ": " + msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    ConfigValue value() {
        skip();
        if (i_ >= s_.size()) fail("missing value");
        if (s_[i_] == '[') {
            ++i_;
            ConfigValue v;
            v.is_list = true;
            skip();
            if (i_ < s_.size() && s_[i_] == ']') {
                ++i_;
                return v;
            }
            while (true) {
                v.items.push_back(value());
                skip();
                if (i_ < s_.size() && s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                if (i_ < s_.size() && s_[i_] == ']') {
                    ++i_;
                    return v;
                }
                fail("expected ',' or ']'");
            }
        }
        size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-' ||
                                  s_[i_] == '+' || s_[i_] == '/'))
            ++i_;
        std::string tok = s_.substr(start, i_ - start);
        if (tok.empty()) fail("expected a number or a list");
        if (tok[0] == '+') tok = tok.substr(1);
        ConfigValue v;
        try {
            v.number = Rational(tok);
        } catch (const std::exception&) {
            fail("bad number '" + tok + "'");
        }
        if (v.number.get_den() == 0) fail("zero denominator in '" + tok + "'");
        v.number.canonicalize();
        return v;
    }

    std::string s_;
    size_t i_ = 0;
    int line_;
};

}  // namespace detail

class Config {
  public:
    static Config parse(std::istream& in) {
        Config c;
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) throw InputError("config line " + std::to_string(n) + ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty()) throw InputError("config line " + std::to_string(n) + ": empty key");
            if (c.raw_.count(key)) throw InputError("config line " + std::to_string(n) + ": duplicate key " + key);
            c.raw_[key] = {val, n};
        }
        return c;
    }

    static Config parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open config file " + path);
        return parse(in);
    }

    bool has(const std::string& key) const { return raw_.count(key) > 0; }

    std::string text(const std::string& key) const { return entry(key).first; }

    ConfigValue value(const std::string& key) const {
        auto [v, line] = entry(key);
        return detail::ValueParser(v, line).parse();
    }

    Rational number(const std::string& key) const {
        ConfigValue v = value(key);
        if (v.is_list) throw InputError("config key " + key + " must be a number");
        return v.number;
    }

    long integer(const std::string& key) const {
        Rational r = number(key);
        if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw InputError("config key " + key + " must be an integer");
        return r.get_num().get_si();
    }

    std::vector<Rational> numbers(const std::string& key) const {
        ConfigValue v = value(key);
        if (!v.is_list) throw InputError("config key " + key + " must be a list");
        std::vector<Rational> out;
        for (const auto& it : v.items) {
            if (it.is_list) throw InputError("config key " + key + " must be a flat list of numbers");
            out.push_back(it.number);
        }
        return out;
    }

    IFSSystem build() const {
        std::string fam = has("family") ? text("family") : "custom";
        std::vector<Rational> probs = has("probabilities") ? numbers("probabilities") : std::vector<Rational>{};
        if (fam == "cantor") {
            return cantor_like(static_cast<int>(integer("d")), static_cast<int>(integer("m")), probs);
        }
        if (fam == "bernoulli_simple_pisot") {
            return bernoulli_simple_pisot(static_cast<int>(integer("k")), number("p"));
        }
        if (fam == "convolution") {
            return convolution_power(static_cast<int>(integer("d")), numbers("base"), static_cast<int>(integer("power")));
        }
        if (fam != "custom") throw InputError("unknown family '" + fam + "'");
        FieldPtr field;
        if (has("rho")) {
            field = FieldContext::rational(number("rho"));
        } else {
            if (!has("minpoly") || !has("isolating")) throw InputError("config needs rho, or minpoly and isolating");
            poly::ZPoly mp;
            for (const auto& q : numbers("minpoly")) {
                if (q.get_den() != 1) throw InputError("minpoly coefficients must be integers");
                mp.push_back(q.get_num());
            }
            auto iso = numbers("isolating");
            if (iso.size() != 2) throw InputError("isolating must be [lo, hi]");
            field = FieldContext::create(mp, iso[0], iso[1]);
        }
        ConfigValue t = value("translations");
        if (!t.is_list) throw InputError("translations must be a list");
        std::vector<FieldElement> ts;
        for (const auto& it : t.items) {
            if (!it.is_list) {
                ts.push_back(field->constant(it.number));
                continue;
            }
            poly::QPoly c;
            for (const auto& x : it.items) {
                if (x.is_list) throw InputError("translation coefficients must be numbers");
                c.push_back(x.number);
            }
            ts.push_back(field->element(c));
        }
        return build_ifs(field, ts, probs);
    }

  private:
    static std::string trim(const std::string& s) {
        auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return "";
        auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    }

    std::pair<std::string, int> entry(const std::string& key) const {
        auto it = raw_.find(key);
        if (it == raw_.end()) throw InputError("config is missing key " + key);
        return it->second;
    }

    std::map<std::string, std::pair<std::string, int>> raw_;
};

}  // namespace ftm
