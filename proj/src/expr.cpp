#include "crosscap/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "crosscap/errors.hpp"

namespace crosscap {

ExprPtr Expr::make_number(double x) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = x;
    return e;
}

ExprPtr Expr::make_var(int index) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->var = index;
    return e;
}

ExprPtr Expr::make_unary(ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->op = '-';
    e->lhs = std::move(operand);
    return e;
}

ExprPtr Expr::make_binary(char op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::make_call(ExprFunc f, ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->func = f;
    e->lhs = std::move(operand);
    return e;
}

namespace {

const char* func_name(ExprFunc f) {
    switch (f) {
        case ExprFunc::Sin: return "sin";
        case ExprFunc::Cos: return "cos";
        case ExprFunc::Exp: return "exp";
        case ExprFunc::Sqrt: return "sqrt";
    }
    return "?";
}

std::optional<ExprFunc> func_by_name(const std::string& name) {
    if (name == "sin") return ExprFunc::Sin;
    if (name == "cos") return ExprFunc::Cos;
    if (name == "exp") return ExprFunc::Exp;
    if (name == "sqrt") return ExprFunc::Sqrt;
    return std::nullopt;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    ExprPtr run() {
        auto e = parse_additive();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
        }
        return e;
    }

private:
    const std::string& text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_additive() {
        auto lhs = parse_multiplicative();
        for (;;) {
            if (eat('+')) lhs = Expr::make_binary('+', lhs, parse_multiplicative());
            else if (eat('-')) lhs = Expr::make_binary('-', lhs, parse_multiplicative());
            else return lhs;
        }
    }

    ExprPtr parse_multiplicative() {
        auto lhs = parse_unary();
        for (;;) {
            if (eat('*')) lhs = Expr::make_binary('*', lhs, parse_unary());
            else if (eat('/')) lhs = Expr::make_binary('/', lhs, parse_unary());
            else return lhs;
        }
    }

    ExprPtr parse_unary() {
        if (eat('-')) {
            auto operand = parse_unary();
            // Fold a negated literal so "^-2" sees an integer exponent.
            if (operand->kind == Expr::Kind::Number) return Expr::make_number(-operand->number);
            return Expr::make_unary(operand);
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        auto base = parse_primary();
        if (eat('^')) {
            // Right associative; exponent may carry a unary minus.
            return Expr::make_binary('^', base, parse_unary());
        }
        return base;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_additive();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) throw ParseError(pos_, "malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return Expr::make_number(value);
    }

    ExprPtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        if (auto f = func_by_name(name)) {
            if (!eat('(')) throw ParseError(pos_, "expected '(' after function " + name);
            auto arg = parse_additive();
            if (!eat(')')) throw ParseError(pos_, "expected ')' closing call to " + name);
            return Expr::make_call(*f, arg);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) return Expr::make_var(static_cast<int>(i));
        }
        throw ParseError(Error::Kind::UnknownIdentifier, start, "unknown identifier '" + name + "'");
    }
};

int precedence_of(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number:
        case Expr::Kind::Var:
        case Expr::Kind::Call: return 5;
        case Expr::Kind::Unary: return 3;
        case Expr::Kind::Binary:
            if (e.op == '^') return 4;
            if (e.op == '*' || e.op == '/') return 2;
            return 1;
    }
    return 0;
}

void print_rec(const Expr& e, std::string& out, const std::vector<std::string>* names);

void print_child(const ExprPtr& child, int parent_prec, bool tighter, std::string& out,
                 const std::vector<std::string>* names) {
    const int child_prec = precedence_of(*child);
    const bool need = tighter ? child_prec <= parent_prec : child_prec < parent_prec;
    if (need) out += '(';
    print_rec(*child, out, names);
    if (need) out += ')';
}

void print_rec(const Expr& e, std::string& out, const std::vector<std::string>* names) {
    switch (e.kind) {
        case Expr::Kind::Number:
            if (e.number < 0) {
                out += '(' + fmt17(e.number) + ')';
            } else {
                out += fmt17(e.number);
            }
            break;
        case Expr::Kind::Var:
            if (names && e.var < static_cast<int>(names->size())) out += (*names)[e.var];
            else out += "v" + std::to_string(e.var);
            break;
        case Expr::Kind::Unary:
            out += '-';
            print_child(e.lhs, precedence_of(e), true, out, names);
            break;
        case Expr::Kind::Binary: {
            const int p = precedence_of(e);
            // ^ is right associative, the rest left associative.
            print_child(e.lhs, p, e.op == '^', out, names);
            out += e.op;
            print_child(e.rhs, p, e.op != '^', out, names);
            break;
        }
        case Expr::Kind::Call:
            out += func_name(e.func);
            out += '(';
            print_rec(*e.lhs, out, names);
            out += ')';
            break;
    }
}

// Shared recursive evaluator; J is Jet1 or Jet2.
template <class J>
J eval_rec(const ExprPtr& e, const std::vector<J>& vars, int order, decltype(J().base()) base);

template <class J>
bool jet_is_constant(const J& j) {
    const auto& c = j.coeffs();
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (std::abs(c[k]) > 1e-12) return false;
    }
    return true;
}

template <class J>
J eval_power(const ExprPtr& e, const std::vector<J>& vars, int order,
             decltype(J().base()) base) {
    const J b = eval_rec(e->lhs, vars, order, base);
    double r;
    if (e->rhs->kind == Expr::Kind::Number) {
        r = e->rhs->number;
    } else {
        const J rj = eval_rec(e->rhs, vars, order, base);
        if (!jet_is_constant(rj)) {
            throw Error(Error::Kind::JetDomain,
                        "non-constant exponent in " + pretty_print(*e));
        }
        r = rj.value();
    }
    const double rounded = std::round(r);
    if (std::abs(r - rounded) < kIntegerExponentTol) {
        return ipow(b, static_cast<long long>(rounded));
    }
    return pow(b, r);
}

template <class J>
J eval_rec(const ExprPtr& e, const std::vector<J>& vars, int order,
           decltype(J().base()) base) {
    try {
        switch (e->kind) {
            case Expr::Kind::Number:
                return J::constant(e->number, order, base);
            case Expr::Kind::Var:
                return vars[static_cast<std::size_t>(e->var)];
            case Expr::Kind::Unary:
                return -eval_rec(e->lhs, vars, order, base);
            case Expr::Kind::Binary: {
                if (e->op == '^') return eval_power(e, vars, order, base);
                const J a = eval_rec(e->lhs, vars, order, base);
                const J b = eval_rec(e->rhs, vars, order, base);
                switch (e->op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/': return a / b;
                }
                throw Error(Error::Kind::Internal, "bad operator");
            }
            case Expr::Kind::Call: {
                const J a = eval_rec(e->lhs, vars, order, base);
                switch (e->func) {
                    case ExprFunc::Sin: return sin(a);
                    case ExprFunc::Cos: return cos(a);
                    case ExprFunc::Exp: return exp(a);
                    case ExprFunc::Sqrt: return sqrt(a);
                }
                throw Error(Error::Kind::Internal, "bad function");
            }
        }
        throw Error(Error::Kind::Internal, "bad expression node");
    } catch (const Error& err) {
        if (err.kind() == Error::Kind::JetDomain || err.kind() == Error::Kind::SingularDivision) {
            throw Error(err.kind(), std::string(err.what()) + " in " + pretty_print(*e));
        }
        throw;
    }
}

} // namespace

ExprPtr parse(const std::string& text, const std::vector<std::string>& allowed_vars) {
    return Parser(text, allowed_vars).run();
}

std::string pretty_print(const Expr& e) {
    std::string out;
    print_rec(e, out, nullptr);
    return out;
}

std::string pretty_print(const ExprPtr& e) { return pretty_print(*e); }

Jet2 eval_jet(const ExprPtr& e, const std::vector<Jet2>& vars) {
    if (vars.empty()) throw Error(Error::Kind::Internal, "eval_jet needs at least one variable jet");
    return eval_rec(e, vars, vars[0].order(), vars[0].base());
}

Jet1 eval_jet(const ExprPtr& e, const std::vector<Jet1>& vars) {
    if (vars.empty()) throw Error(Error::Kind::Internal, "eval_jet needs at least one variable jet");
    return eval_rec(e, vars, vars[0].order(), vars[0].base());
}

double eval_scalar(const ExprPtr& e, const std::vector<double>& vars) {
    switch (e->kind) {
        case Expr::Kind::Number: return e->number;
        case Expr::Kind::Var: return vars[static_cast<std::size_t>(e->var)];
        case Expr::Kind::Unary: return -eval_scalar(e->lhs, vars);
        case Expr::Kind::Binary: {
            const double a = eval_scalar(e->lhs, vars);
            const double b = eval_scalar(e->rhs, vars);
            switch (e->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            throw Error(Error::Kind::Internal, "bad operator");
        }
        case Expr::Kind::Call: {
            const double a = eval_scalar(e->lhs, vars);
            switch (e->func) {
                case ExprFunc::Sin: return std::sin(a);
                case ExprFunc::Cos: return std::cos(a);
                case ExprFunc::Exp: return std::exp(a);
                case ExprFunc::Sqrt: return std::sqrt(a);
            }
            throw Error(Error::Kind::Internal, "bad function");
        }
    }
    throw Error(Error::Kind::Internal, "bad expression node");
}

Jet2 eval_jet_uv(const ExprPtr& e, Vec2 base, int order) {
    const std::vector<Jet2> vars = {Jet2::variable_u(base, order), Jet2::variable_v(base, order)};
    return eval_jet(e, vars);
}

Jet1 eval_jet_t(const ExprPtr& e, double base, int order) {
    const std::vector<Jet1> vars = {Jet1::variable(base, order)};
    return eval_jet(e, vars);
}

} // namespace crosscap
