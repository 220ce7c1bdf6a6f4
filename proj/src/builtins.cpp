#include "crosscap/builtins.hpp"

#include <cstdlib>

#include "crosscap/errors.hpp"

namespace crosscap {

namespace {

const std::vector<std::string> kSurfaceVars = {"u", "v"};

Immersion3 parse_immersion(const std::string& name, const std::string& x, const std::string& y,
                           const std::string& z, Box2 box) {
    return Immersion3{name, box, parse(x, kSurfaceVars), parse(y, kSurfaceVars),
                      parse(z, kSurfaceVars)};
}

// Accepts "west(a,b,c)" and fills the coefficients.
bool parse_west_name(const std::string& name, double out[3]) {
    if (name.rfind("west(", 0) != 0 || name.back() != ')') return false;
    const std::string inner = name.substr(5, name.size() - 6);
    const char* s = inner.c_str();
    for (int i = 0; i < 3; ++i) {
        char* end = nullptr;
        out[i] = std::strtod(s, &end);
        if (end == s) return false;
        s = end;
        if (i < 2) {
            while (*s == ' ') ++s;
            if (*s != ',') return false;
            ++s;
        }
    }
    while (*s == ' ') ++s;
    return *s == '\0';
}

} // namespace

Immersion3 west_immersion(double a02, double a11, double a20, Box2 box) {
    if (a02 <= 0.0) {
        throw ConfigError("west", "normal form needs a02 > 0, got " + fmt17(a02));
    }
    auto uvar = [] { return Expr::make_var(0); };
    auto vvar = [] { return Expr::make_var(1); };
    auto times = [](ExprPtr a, ExprPtr b) { return Expr::make_binary('*', a, b); };
    auto plus = [](ExprPtr a, ExprPtr b) { return Expr::make_binary('+', a, b); };
    // z = a02/2 v^2 + a11 u v + a20/2 u^2
    ExprPtr z = plus(plus(times(Expr::make_number(0.5 * a02), times(vvar(), vvar())),
                          times(Expr::make_number(a11), times(uvar(), vvar()))),
                     times(Expr::make_number(0.5 * a20), times(uvar(), uvar())));
    const std::string name =
        "west(" + fmt17(a02) + "," + fmt17(a11) + "," + fmt17(a20) + ")";
    return Immersion3{name, box, uvar(), times(uvar(), vvar()), z};
}

bool is_builtin_surface(const std::string& name) {
    double w[3];
    return name == "plane" || name == "sphere" || name == "crosscap" || parse_west_name(name, w);
}

BuiltinSurface builtin_surface(const std::string& name) {
    Immersion3 im;
    if (name == "plane") {
        im = parse_immersion(name, "u", "v", "0", {-2, 2, -2, 2});
    } else if (name == "sphere") {
        im = parse_immersion(name, "cos(u)*cos(v)", "sin(u)*cos(v)", "sin(v)",
                             {-1.2, 1.2, -1.2, 1.2});
    } else if (name == "crosscap") {
        im = parse_immersion(name, "u", "u*v", "v^2", {-1, 1, -1, 1});
    } else {
        double w[3];
        if (!parse_west_name(name, w)) {
            throw ConfigError("surface", "unknown builtin surface '" + name + "'");
        }
        im = west_immersion(w[0], w[1], w[2]);
    }
    MetricField metric = MetricField::pullback(im);
    return {std::move(im), std::move(metric)};
}

} // namespace crosscap
