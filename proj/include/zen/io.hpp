#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zen/common.hpp"
#include "zen/function.hpp"
#include "zen/measure.hpp"
#include "zen/space.hpp"
#include "zen/symbol.hpp"

namespace zen {

/// Malformed input (unreadable file, bad JSON, wrong shape). Distinct from
/// ValidationError, which means the input parsed but names a rejected object.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

namespace detail {

inline double json_num(const nlohmann::json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(ctx + ": missing numeric field \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ParseError(ctx + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

inline double json_num_or(const nlohmann::json& j, const char* key, double fallback,
                          const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ParseError(ctx + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

inline Cplx json_complex(const nlohmann::json& j, const std::string& ctx) {
    if (j.is_number()) return Cplx(j.get<double>(), 0.0);
    if (j.is_object())
        return Cplx(json_num(j, "re", ctx), json_num_or(j, "im", 0.0, ctx));
    throw ParseError(ctx + ": expected a number or an object with \"re\"/\"im\"");
}

/// Coefficient arrays are ascending-order and may mix plain numbers with
/// {"re":...,"im":...} objects.
inline std::vector<Cplx> json_coeff_vector(const nlohmann::json& j, const std::string& ctx) {
    if (!j.is_array()) throw ParseError(ctx + ": expected an array of coefficients");
    std::vector<Cplx> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(json_complex(v, ctx));
    return out;
}

} // namespace detail

/// Measure files: {"atoms": [{"r":..., "mass":...}, ...],
///                 "pieces": [{"coeff":..., "alpha":...}, ...]}
/// Either list may be absent or empty; positivity and the doubling condition
/// are checked by the space constructor, not here.
inline BoundaryMeasure measure_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("measure: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "atoms" && it.key() != "pieces")
            throw ParseError("measure: unknown field \"" + it.key() + "\"");
    BoundaryMeasure m;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw ParseError("measure: \"atoms\" must be an array");
        for (const auto& a : j.at("atoms"))
            m.atoms.push_back({detail::json_num(a, "r", "measure.atoms"),
                               detail::json_num(a, "mass", "measure.atoms")});
    }
    if (j.contains("pieces")) {
        if (!j.at("pieces").is_array()) throw ParseError("measure: \"pieces\" must be an array");
        for (const auto& p : j.at("pieces"))
            m.pieces.push_back({detail::json_num(p, "coeff", "measure.pieces"),
                                detail::json_num(p, "alpha", "measure.pieces")});
    }
    return m;
}

/// Symbol files are a tagged union on "kind":
///   {"kind":"nevanlinna", "a":..., "b":..., "mu":[{"t":...,"m":...},...]}
///   {"kind":"scaling", "a":...}
///   {"kind":"shift", "c": {"re":...,"im":...}}
///   {"kind":"sqrt"}
///   {"kind":"constant", "c": {"re":...,"im":...}}
///   {"kind":"compose", "of": [symbol, symbol, ...]}   (outermost first)
inline Symbol symbol_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("symbol: expected an object with a string \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "nevanlinna") {
        NevanlinnaSymbol s;
        s.a = detail::json_num_or(j, "a", 0.0, "symbol.nevanlinna");
        s.b = detail::json_num_or(j, "b", 0.0, "symbol.nevanlinna");
        if (j.contains("mu")) {
            if (!j.at("mu").is_array())
                throw ParseError("symbol.nevanlinna: \"mu\" must be an array");
            for (const auto& at : j.at("mu"))
                s.mu.push_back({detail::json_num(at, "t", "symbol.nevanlinna.mu"),
                                detail::json_num(at, "m", "symbol.nevanlinna.mu")});
        }
        return Symbol::nevanlinna(std::move(s));
    }
    if (kind == "scaling") return Symbol::scaling(detail::json_num(j, "a", "symbol.scaling"));
    if (kind == "shift") {
        if (!j.contains("c")) throw ParseError("symbol.shift: missing \"c\"");
        return Symbol::shift(detail::json_complex(j.at("c"), "symbol.shift.c"));
    }
    if (kind == "sqrt") return Symbol::sqrt();
    if (kind == "constant") {
        if (!j.contains("c")) throw ParseError("symbol.constant: missing \"c\"");
        return Symbol::constant(detail::json_complex(j.at("c"), "symbol.constant.c"));
    }
    if (kind == "compose") {
        if (!j.contains("of") || !j.at("of").is_array() || j.at("of").empty())
            throw ParseError("symbol.compose: \"of\" must be a nonempty array");
        std::vector<Symbol> parts;
        for (const auto& s : j.at("of")) parts.push_back(symbol_from_json(s));
        return Symbol::compose(std::move(parts));
    }
    throw ParseError("symbol: unknown kind \"" + kind +
                     "\" (expected nevanlinna|scaling|shift|sqrt|constant|compose)");
}

/// Multiplier files: {"kind":"one"} | {"kind":"constant","c":...}
///                  | {"kind":"rational","num":[...],"den":[...]} (ascending).
inline Multiplier multiplier_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("multiplier: expected an object with a string \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "one") return Multiplier::one();
    if (kind == "constant") {
        if (!j.contains("c")) throw ParseError("multiplier.constant: missing \"c\"");
        return Multiplier::constant(detail::json_complex(j.at("c"), "multiplier.constant.c"));
    }
    if (kind == "rational") {
        if (!j.contains("num") || !j.contains("den"))
            throw ParseError("multiplier.rational: need \"num\" and \"den\"");
        return Multiplier::rational(detail::json_coeff_vector(j.at("num"), "multiplier.rational.num"),
                                    detail::json_coeff_vector(j.at("den"), "multiplier.rational.den"));
    }
    throw ParseError("multiplier: unknown kind \"" + kind + "\" (expected one|constant|rational)");
}

/// Function files:
///   {"kind":"rational","num":[...],"den":[...]}            (ascending coefficients)
///   {"kind":"laplace_of","form":"exp"|"texp"|"power_exp","rate":...,"power":...}
///   {"kind":"kernel","at":{"re":...,"im":...}}             (kernel of the active space)
inline AnalyticFunction function_from_json(const nlohmann::json& j,
                                           std::shared_ptr<const ZenSpace> space,
                                           KernelMethod method = KernelMethod::automatic) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("function: expected an object with a string \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") {
        if (!j.contains("num") || !j.contains("den"))
            throw ParseError("function.rational: need \"num\" and \"den\"");
        return AnalyticFunction::from_rational(
            detail::json_coeff_vector(j.at("num"), "function.rational.num"),
            detail::json_coeff_vector(j.at("den"), "function.rational.den"));
    }
    if (kind == "laplace_of") {
        if (!j.contains("form") || !j.at("form").is_string())
            throw ParseError("function.laplace_of: missing string \"form\"");
        const std::string form = j.at("form").get<std::string>();
        double rate = detail::json_num(j, "rate", "function.laplace_of");
        double power = 0.0;
        if (form == "exp")
            power = 0.0;
        else if (form == "texp")
            power = 1.0;
        else if (form == "power_exp")
            power = detail::json_num(j, "power", "function.laplace_of");
        else
            throw ParseError("function.laplace_of: unknown form \"" + form +
                             "\" (expected exp|texp|power_exp)");
        return AnalyticFunction::from_density(PowerExpDensity{power, rate});
    }
    if (kind == "kernel") {
        if (!j.contains("at")) throw ParseError("function.kernel: missing \"at\"");
        if (!space) throw ParseError("function.kernel: no space in scope");
        return AnalyticFunction::kernel_function(std::move(space),
                                                 detail::json_complex(j.at("at"), "function.kernel.at"),
                                                 method);
    }
    throw ParseError("function: unknown kind \"" + kind +
                     "\" (expected rational|laplace_of|kernel)");
}

/// Space argument: the literals "hardy" and "bergman:<alpha>", or a path to a
/// measure JSON file.
inline ZenSpace space_from_arg(const std::string& arg) {
    if (arg == "hardy") return hardy_space();
    if (arg.rfind("bergman:", 0) == 0) {
        const std::string tail = arg.substr(8);
        std::size_t used = 0;
        double alpha = 0.0;
        try {
            alpha = std::stod(tail, &used);
        } catch (const std::exception&) {
            throw ParseError("bad bergman exponent in \"" + arg + "\"");
        }
        if (used != tail.size()) throw ParseError("bad bergman exponent in \"" + arg + "\"");
        return bergman_space(alpha);
    }
    return ZenSpace(measure_from_json(load_json_file(arg)));
}

namespace detail {

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

/// Streaming JSON writer with caller-controlled key order and %.17g numbers,
/// so identical runs serialize byte-identically. Non-finite values are not
/// representable as JSON numbers and are written as the strings "inf",
/// "-inf", "nan".
class JsonWriter {
  public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& name) {
        separate();
        quoted(name);
        out_ += ": ";
        just_keyed_ = true;
        return *this;
    }

    JsonWriter& value(double x) {
        separate();
        if (std::isfinite(x))
            out_ += detail::format_g17(x);
        else
            quoted(std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf"));
        return *this;
    }
    JsonWriter& value(int x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(unsigned x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(long long x) {
        separate();
        out_ += std::to_string(x);
        return *this;
    }
    JsonWriter& value(std::uint64_t x) {
        separate();
        out_ += std::to_string(x);
        return *this;
    }
    JsonWriter& value(bool b) {
        separate();
        out_ += b ? "true" : "false";
        return *this;
    }
    JsonWriter& value(const std::string& s) {
        separate();
        quoted(s);
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& value(Cplx z) {
        begin_object();
        key("re").value(z.real());
        key("im").value(z.imag());
        return end_object();
    }

    std::string str() const { return out_ + "\n"; }

  private:
    std::string out_;
    std::vector<bool> has_items_;
    bool just_keyed_ = false;

    void indent() {
        out_ += '\n';
        out_.append(2 * has_items_.size(), ' ');
    }
    void separate() {
        if (just_keyed_) {
            just_keyed_ = false;
            return;
        }
        if (has_items_.empty()) return;
        if (has_items_.back()) out_ += ',';
        has_items_.back() = true;
        indent();
    }
    JsonWriter& open(char c) {
        separate();
        out_ += c;
        has_items_.push_back(false);
        return *this;
    }
    JsonWriter& close(char c) {
        bool had = has_items_.back();
        has_items_.pop_back();
        if (had) indent();
        out_ += c;
        return *this;
    }
    void quoted(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }
};

/// Re-serialize a parsed JSON value through the deterministic writer
/// (object keys in nlohmann's sorted order), used to echo input configs
/// into reports with the same number formatting as everything else.
inline void write_json_value(JsonWriter& w, const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object:
            w.begin_object();
            for (auto it = j.begin(); it != j.end(); ++it) {
                w.key(it.key());
                write_json_value(w, it.value());
            }
            w.end_object();
            break;
        case nlohmann::json::value_t::array:
            w.begin_array();
            for (const auto& v : j) write_json_value(w, v);
            w.end_array();
            break;
        case nlohmann::json::value_t::string:
            w.value(j.get<std::string>());
            break;
        case nlohmann::json::value_t::boolean:
            w.value(j.get<bool>());
            break;
        case nlohmann::json::value_t::number_integer:
            w.value(static_cast<long long>(j.get<std::int64_t>()));
            break;
        case nlohmann::json::value_t::number_unsigned:
            w.value(j.get<std::uint64_t>());
            break;
        case nlohmann::json::value_t::number_float:
            w.value(j.get<double>());
            break;
        default:
            w.value(std::string("null"));
            break;
    }
}

inline void write_measure(JsonWriter& w, const BoundaryMeasure& m) {
    w.begin_object();
    w.key("atoms").begin_array();
    for (const auto& a : m.atoms) {
        w.begin_object();
        w.key("r").value(a.r);
        w.key("mass").value(a.mass);
        w.end_object();
    }
    w.end_array();
    w.key("pieces").begin_array();
    for (const auto& p : m.pieces) {
        w.begin_object();
        w.key("coeff").value(p.coeff);
        w.key("alpha").value(p.alpha);
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

/// CSV accumulator with the same %.17g number format as the JSON writer.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ += ',';
            out_ += header[i];
        }
        out_ += '\n';
    }
    CsvWriter& cell(double x) { return raw(detail::format_g17(x)); }
    CsvWriter& cell(int x) { return raw(std::to_string(x)); }
    CsvWriter& cell(long long x) { return raw(std::to_string(x)); }
    CsvWriter& cell(std::uint64_t x) { return raw(std::to_string(x)); }
    CsvWriter& cell(const std::string& s) { return raw(s); }
    CsvWriter& endrow() {
        out_ += '\n';
        col_ = 0;
        return *this;
    }
    const std::string& str() const { return out_; }

  private:
    std::string out_;
    int col_ = 0;
    CsvWriter& raw(const std::string& s) {
        if (col_++) out_ += ',';
        out_ += s;
        return *this;
    }
};

/// Write-then-rename so readers never observe a half-written report.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw DomainError("cannot rename " + tmp + " to " + path);
}

} // namespace zen
