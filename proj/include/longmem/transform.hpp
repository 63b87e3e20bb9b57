// Pointwise (and finitely lagged) transformations of a noise series,
// described as a small expression tree with a canonical text form used by
// the CLI:
//
//   identity | square | absolute | cube
//   indicator:<t>          1{x <= t}
//   poly:<c0,c1,...>       c0 + c1 x + c2 x^2 + ...
//   hermite:<m>            probabilists' Hermite polynomial H_m
//   clipabs:<c>            min(|x|, c)
//   shift:<z>:<inner>      inner(x + z)
//   scale:<s>:<inner>      inner(s x)
//   compose:<outer>|<inner>
//   laglin:<w0,w1,...>     w0 x(n) + w1 x(n-1) + ...

#ifndef LONGMEM_TRANSFORM_HPP
#define LONGMEM_TRANSFORM_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace longmem {

// Probabilists' Hermite polynomial H_m by the three-term recurrence
// H_{m+1}(x) = x H_m(x) - m H_{m-1}(x), H_0 = 1, H_1 = x.
inline double hermite_poly(int m, double x) {
    if (m < 0) throw std::invalid_argument("hermite_poly: order must be >= 0");
    if (m == 0) return 1.0;
    double hm1 = 1.0;  // H_{j-1}
    double h = x;      // H_j
    for (int j = 1; j < m; ++j) {
        const double next = x * h - static_cast<double>(j) * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

struct TransformSpec {
    enum class Kind {
        identity,
        square,
        absolute,
        cube,
        indicator_below,
        polynomial,
        hermite_basis,
        clipped_absolute,
        shifted,
        scaled,
        composed,
        lagged_linear,
    };

    Kind kind = Kind::identity;
    double param = 0.0;           // threshold / shift / scale / clip bound
    int order = 0;                // hermite basis order
    std::vector<double> coeffs;   // polynomial coefficients or lag weights
    std::shared_ptr<const TransformSpec> inner;
    std::shared_ptr<const TransformSpec> outer;
    std::string description;

    // --- factories ---------------------------------------------------------

    static TransformSpec identity() { return make(Kind::identity, "identity"); }
    static TransformSpec square() { return make(Kind::square, "square"); }
    static TransformSpec absolute() { return make(Kind::absolute, "absolute"); }
    static TransformSpec cube() { return make(Kind::cube, "cube"); }

    static TransformSpec indicator_below(double t) {
        TransformSpec s = make(Kind::indicator_below, "indicator");
        s.param = t;
        return s;
    }

    static TransformSpec polynomial(std::vector<double> c) {
        if (c.empty() || c.back() == 0.0)
            throw std::invalid_argument("polynomial: need nonzero leading coefficient");
        TransformSpec s = make(Kind::polynomial, "poly");
        s.coeffs = std::move(c);
        return s;
    }

    static TransformSpec hermite_basis(int m) {
        if (m < 0) throw std::invalid_argument("hermite_basis: order must be >= 0");
        TransformSpec s = make(Kind::hermite_basis, "hermite");
        s.order = m;
        return s;
    }

    static TransformSpec clipped_absolute(double bound) {
        if (bound <= 0.0) throw std::invalid_argument("clipped_absolute: bound must be positive");
        TransformSpec s = make(Kind::clipped_absolute, "clipabs");
        s.param = bound;
        return s;
    }

    static TransformSpec shifted(TransformSpec g, double z) {
        TransformSpec s = make(Kind::shifted, "shift");
        s.param = z;
        s.inner = std::make_shared<TransformSpec>(std::move(g));
        return s;
    }

    static TransformSpec scaled(TransformSpec g, double factor) {
        if (factor == 0.0) throw std::invalid_argument("scaled: factor must be nonzero");
        TransformSpec s = make(Kind::scaled, "scale");
        s.param = factor;
        s.inner = std::make_shared<TransformSpec>(std::move(g));
        return s;
    }

    static TransformSpec composed(TransformSpec out, TransformSpec in) {
        if (!in.instantaneous() || !out.instantaneous())
            throw std::invalid_argument("composed: both parts must be instantaneous");
        TransformSpec s = make(Kind::composed, "compose");
        s.outer = std::make_shared<TransformSpec>(std::move(out));
        s.inner = std::make_shared<TransformSpec>(std::move(in));
        return s;
    }

    static TransformSpec lagged_linear(std::vector<double> weights) {
        if (weights.empty()) throw std::invalid_argument("lagged_linear: need weights");
        TransformSpec s = make(Kind::lagged_linear, "laglin");
        s.coeffs = std::move(weights);
        return s;
    }

    // --- evaluation ---------------------------------------------------------

    double operator()(double x) const {
        switch (kind) {
            case Kind::identity: return x;
            case Kind::square: return x * x;
            case Kind::absolute: return std::abs(x);
            case Kind::cube: return x * x * x;
            case Kind::indicator_below: return x <= param ? 1.0 : 0.0;
            case Kind::polynomial: {
                double v = 0.0;
                for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
                return v;
            }
            case Kind::hermite_basis: return hermite_poly(order, x);
            case Kind::clipped_absolute: return std::min(std::abs(x), param);
            case Kind::shifted: return (*inner)(x + param);
            case Kind::scaled: return (*inner)(param * x);
            case Kind::composed: return (*outer)((*inner)(x));
            case Kind::lagged_linear:
                throw std::logic_error("lagged transform requires a window");
        }
        throw std::logic_error("unreachable");
    }

    // window[0] = x(n), window[j] = x(n - j)
    double eval_window(const double* window, std::size_t len) const {
        if (kind == Kind::lagged_linear) {
            if (len < coeffs.size())
                throw std::invalid_argument("eval_window: window shorter than lag span");
            double v = 0.0;
            for (std::size_t j = 0; j < coeffs.size(); ++j) v += coeffs[j] * window[j];
            return v;
        }
        if (len == 0) throw std::invalid_argument("eval_window: empty window");
        return (*this)(window[0]);
    }

    std::size_t lag_count() const {
        switch (kind) {
            case Kind::lagged_linear: return coeffs.size() - 1;
            case Kind::shifted:
            case Kind::scaled: return inner->lag_count();
            case Kind::composed: return inner->lag_count();
            default: return 0;
        }
    }

    bool instantaneous() const { return lag_count() == 0; }

    // Jump/kink locations in x, for piecewise quadrature.
    std::vector<double> breakpoints() const {
        switch (kind) {
            case Kind::absolute: return {0.0};
            case Kind::indicator_below: return {param};
            case Kind::clipped_absolute: return {-param, 0.0, param};
            case Kind::shifted: {
                std::vector<double> b = inner->breakpoints();
                for (double& v : b) v -= param;
                return b;
            }
            case Kind::scaled: {
                std::vector<double> b = inner->breakpoints();
                for (double& v : b) v /= param;
                return b;
            }
            case Kind::composed: {
                // inner breakpoints only; an outer kink at a level crossed by
                // the inner is resolved by the dense panel subdivision
                std::vector<double> b = inner->breakpoints();
                if (!outer->smooth()) b.push_back(0.0);
                return b;
            }
            default: return {};
        }
    }

    bool smooth() const {
        switch (kind) {
            case Kind::absolute:
            case Kind::indicator_below:
            case Kind::clipped_absolute: return false;
            case Kind::shifted:
            case Kind::scaled: return inner->smooth();
            case Kind::composed: return inner->smooth() && outer->smooth();
            default: return true;
        }
    }

    bool lipschitz() const {
        switch (kind) {
            case Kind::identity:
            case Kind::absolute:
            case Kind::clipped_absolute:
            case Kind::lagged_linear: return true;
            case Kind::indicator_below:
            case Kind::square:
            case Kind::cube: return false;
            case Kind::polynomial: return coeffs.size() <= 2;
            case Kind::hermite_basis: return order <= 1;
            case Kind::shifted:
            case Kind::scaled: return inner->lipschitz();
            case Kind::composed: return inner->lipschitz() && outer->lipschitz();
        }
        return false;
    }

    // --- canonical text -----------------------------------------------------

    std::string str() const {
        std::ostringstream os;
        os.precision(12);
        switch (kind) {
            case Kind::identity: return "identity";
            case Kind::square: return "square";
            case Kind::absolute: return "absolute";
            case Kind::cube: return "cube";
            case Kind::indicator_below: os << "indicator:" << param; return os.str();
            case Kind::polynomial: os << "poly:" << join(coeffs); return os.str();
            case Kind::hermite_basis: os << "hermite:" << order; return os.str();
            case Kind::clipped_absolute: os << "clipabs:" << param; return os.str();
            case Kind::shifted: os << "shift:" << param << ":" << inner->str(); return os.str();
            case Kind::scaled: os << "scale:" << param << ":" << inner->str(); return os.str();
            case Kind::composed:
                os << "compose:" << outer->str() << "|" << inner->str();
                return os.str();
            case Kind::lagged_linear: os << "laglin:" << join(coeffs); return os.str();
        }
        return "";
    }

    static TransformSpec parse(const std::string& text) {
        const auto colon = text.find(':');
        const std::string head = text.substr(0, colon);
        const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
        if (head == "identity") return identity();
        if (head == "square") return square();
        if (head == "absolute") return absolute();
        if (head == "cube") return cube();
        if (head == "indicator") return indicator_below(parse_double(rest));
        if (head == "poly") return polynomial(parse_list(rest));
        if (head == "hermite") return hermite_basis(static_cast<int>(parse_double(rest)));
        if (head == "clipabs") return clipped_absolute(parse_double(rest));
        if (head == "laglin") return lagged_linear(parse_list(rest));
        if (head == "shift" || head == "scale") {
            const auto c2 = rest.find(':');
            if (c2 == std::string::npos)
                throw std::invalid_argument("transform parse: expected " + head + ":<v>:<inner>");
            const double v = parse_double(rest.substr(0, c2));
            TransformSpec in = parse(rest.substr(c2 + 1));
            return head == "shift" ? shifted(std::move(in), v) : scaled(std::move(in), v);
        }
        if (head == "compose") {
            const auto bar = rest.find('|');
            if (bar == std::string::npos)
                throw std::invalid_argument("transform parse: expected compose:<outer>|<inner>");
            return composed(parse(rest.substr(0, bar)), parse(rest.substr(bar + 1)));
        }
        throw std::invalid_argument("transform parse: unknown kind '" + head + "'");
    }

private:
    static TransformSpec make(Kind k, std::string desc) {
        TransformSpec s;
        s.kind = k;
        s.description = std::move(desc);
        return s;
    }

    static std::string join(const std::vector<double>& v) {
        std::ostringstream os;
        os.precision(12);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ",";
            os << v[i];
        }
        return os.str();
    }

    static double parse_double(const std::string& s) {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("transform parse: bad number '" + s + "'");
        return v;
    }

    static std::vector<double> parse_list(const std::string& s) {
        std::vector<double> out;
        std::string tok;
        std::istringstream is(s);
        while (std::getline(is, tok, ',')) out.push_back(parse_double(tok));
        return out;
    }
};

}  // namespace longmem

#endif
