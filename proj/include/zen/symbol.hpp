#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "zen/common.hpp"

namespace zen {

/// Herglotz-type self-map a*z + i*b + sum_k m_k * (1/(i t_k + z) + i t_k/(1+t_k^2))
/// with a >= 0, b real, and finitely many boundary masses m_k > 0 at heights t_k.
struct NevanlinnaSymbol {
    double a = 1.0;
    double b = 0.0;
    struct MuAtom {
        double t = 0.0;
        double m = 0.0;
    };
    std::vector<MuAtom> mu;
};

struct ScalingSymbol {
    double a = 1.0;
}; // z -> a z
struct ShiftSymbol {
    Cplx c{0.0, 0.0};
}; // z -> z + c, Re c >= 0
struct SqrtSymbol {}; // principal square root
struct ConstantSymbol {
    Cplx c{1.0, 0.0};
}; // z -> c, Re c > 0

class Symbol;
struct ComposeSymbol {
    std::vector<Symbol> of;
}; // of[0]( of[1]( ... ) )

/// A holomorphic self-map of the right half-plane, validated on construction.
class Symbol {
public:
    using Node =
        std::variant<NevanlinnaSymbol, ScalingSymbol, ShiftSymbol, SqrtSymbol, ConstantSymbol,
                     ComposeSymbol>;

    static Symbol nevanlinna(NevanlinnaSymbol s) {
        if (!std::isfinite(s.a) || s.a < 0.0)
            throw ValidationError("symbol: nevanlinna coefficient a must be finite and >= 0");
        if (!std::isfinite(s.b)) throw ValidationError("symbol: nevanlinna b must be finite");
        for (const auto& at : s.mu)
            if (!std::isfinite(at.t) || !(at.m > 0.0))
                throw ValidationError("symbol: boundary masses need finite t and m > 0");
        if (s.a == 0.0 && s.mu.empty())
            throw ValidationError(
                "symbol: a = 0 with empty mu is the constant i*b, which maps onto the "
                "boundary and is not a self-map of the open half-plane");
        return Symbol(Node(std::move(s)));
    }
    static Symbol scaling(double a) {
        if (!(a > 0.0)) throw ValidationError("symbol: scaling factor must be positive");
        return Symbol(Node(ScalingSymbol{a}));
    }
    static Symbol shift(Cplx c) {
        if (!(c.real() >= 0.0))
            throw ValidationError("symbol: shift must have Re c >= 0 to stay in the half-plane");
        return Symbol(Node(ShiftSymbol{c}));
    }
    static Symbol sqrt() { return Symbol(Node(SqrtSymbol{})); }
    static Symbol constant(Cplx c) {
        if (!(c.real() > 0.0))
            throw ValidationError("symbol: constant must lie in the open half-plane");
        return Symbol(Node(ConstantSymbol{c}));
    }
    static Symbol compose(std::vector<Symbol> children) {
        if (children.empty()) throw ValidationError("symbol: empty composition");
        return Symbol(Node(ComposeSymbol{std::move(children)}));
    }

    Cplx operator()(Cplx z) const { return eval_checked(z); }

    /// Evaluate with domain/range checks; reports the offending point.
    Cplx eval_checked(Cplx z) const { return eval_impl(z, false); }

    /// Evaluate the continuous extension to the closed half-plane: points
    /// with Re z = 0 are admitted and images may touch the boundary. This is
    /// what measure-theoretic code needs, since the product measure charges
    /// the boundary line. Poles of the extension (a boundary mass of a
    /// nevanlinna map hit head-on) still throw DomainError.
    Cplx eval_boundary(Cplx z) const { return eval_impl(z, true); }

    /// Known-in-closed-form angular derivative at infinity; infinity encodes
    /// an unbounded ratio, nullopt means "estimate it".
    std::optional<double> exact_angular_derivative() const {
        const double inf = std::numeric_limits<double>::infinity();
        if (auto* n = std::get_if<NevanlinnaSymbol>(&node_))
            return n->a > 0.0 ? 1.0 / n->a : inf;
        if (auto* s = std::get_if<ScalingSymbol>(&node_)) return 1.0 / s->a;
        if (std::get_if<ShiftSymbol>(&node_)) return 1.0;
        if (std::get_if<SqrtSymbol>(&node_)) return inf;
        if (std::get_if<ConstantSymbol>(&node_)) return inf;
        return std::nullopt;
    }

    std::string describe() const {
        std::ostringstream os;
        if (auto* n = std::get_if<NevanlinnaSymbol>(&node_)) {
            os << "nevanlinna(a=" << n->a << ", b=" << n->b << ", |mu|=" << n->mu.size() << ")";
        } else if (auto* s = std::get_if<ScalingSymbol>(&node_)) {
            os << "scaling(" << s->a << ")";
        } else if (auto* s = std::get_if<ShiftSymbol>(&node_)) {
            os << "shift(" << s->c.real() << "+" << s->c.imag() << "i)";
        } else if (std::get_if<SqrtSymbol>(&node_)) {
            os << "sqrt";
        } else if (auto* s = std::get_if<ConstantSymbol>(&node_)) {
            os << "constant(" << s->c.real() << "+" << s->c.imag() << "i)";
        } else if (auto* c = std::get_if<ComposeSymbol>(&node_)) {
            os << "compose(";
            for (std::size_t i = 0; i < c->of.size(); ++i)
                os << (i ? " . " : "") << c->of[i].describe();
            os << ")";
        }
        return os.str();
    }

    const Node& node() const { return node_; }

private:
    explicit Symbol(Node n) : node_(std::move(n)) {}

    Cplx eval_impl(Cplx z, bool boundary) const {
        if (boundary) {
            if (!(z.real() >= 0.0))
                throw DomainError("symbol: point (" + std::to_string(z.real()) + ", " +
                                  std::to_string(z.imag()) +
                                  "i) is not in the closed right half-plane");
        } else {
            require_half_plane(z, "symbol");
        }
        Cplx v = eval_raw(z, boundary);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("symbol: singular at z = (" + std::to_string(z.real()) + ", " +
                              std::to_string(z.imag()) + "i)");
        bool ok = boundary ? v.real() >= 0.0 : v.real() > 0.0;
        if (!ok)
            throw DomainError("symbol: image Re = " + std::to_string(v.real()) + " at z = (" +
                              std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                              "i) left the half-plane");
        return v;
    }

    Cplx eval_raw(Cplx z, bool boundary) const {
        if (auto* n = std::get_if<NevanlinnaSymbol>(&node_)) {
            Cplx v = n->a * z + Cplx(0.0, n->b);
            for (const auto& at : n->mu)
                v += at.m * (1.0 / (Cplx(0.0, at.t) + z) +
                             Cplx(0.0, at.t) / (1.0 + at.t * at.t));
            return v;
        }
        if (auto* s = std::get_if<ScalingSymbol>(&node_)) return s->a * z;
        if (auto* s = std::get_if<ShiftSymbol>(&node_)) return z + s->c;
        if (std::get_if<SqrtSymbol>(&node_)) return std::sqrt(z);
        if (auto* s = std::get_if<ConstantSymbol>(&node_)) return s->c;
        const auto& c = std::get<ComposeSymbol>(node_);
        Cplx v = z;
        for (auto it = c.of.rbegin(); it != c.of.rend(); ++it) v = it->eval_impl(v, boundary);
        return v;
    }

    Node node_;
};

inline Cplx symbol_eval(const Symbol& phi, Cplx z) { return phi.eval_checked(z); }

} // namespace zen
