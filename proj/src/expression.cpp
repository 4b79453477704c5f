#include "fracdi/expression.hpp"

#include <charconv>
#include <cmath>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

Expression leaf(cplx v) { return std::make_shared<ExprNode>(ExprNode{ExprKind::Number, v, {}}); }
Expression node(ExprKind k, std::vector<Expression> args) {
    return std::make_shared<ExprNode>(ExprNode{k, 0.0, std::move(args)});
}

const std::vector<std::string> kOperand{"number", "x", "exp", "(", "-"};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expression parse() {
        Expression e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'", {"+", "-", "*", "/", "^", "end"});
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw SyntaxError(msg + " at offset " + std::to_string(pos_), pos_, std::move(expected));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expression expr() {
        Expression lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = node(ExprKind::Add, {lhs, term()});
            else if (accept('-'))
                lhs = node(ExprKind::Sub, {lhs, term()});
            else
                return lhs;
        }
    }

    Expression term() {
        Expression lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = node(ExprKind::Mul, {lhs, factor()});
            else if (accept('/'))
                lhs = node(ExprKind::Div, {lhs, factor()});
            else
                return lhs;
        }
    }

    Expression factor() {
        Expression b = base();
        if (accept('^')) return node(ExprKind::Pow, {b, factor()});
        return b;
    }

    Expression base() {
        skip();
        if (pos_ >= s_.size()) fail("expected operand, found end of input", kOperand);
        const char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            return node(ExprKind::Neg, {base()});
        }
        if (c == '(') {
            ++pos_;
            Expression e = expr();
            if (!accept(')')) {
                skip();
                fail("expected ')'", {")"});
            }
            return e;
        }
        if (s_.compare(pos_, 3, "exp") == 0) {
            pos_ += 3;
            if (!accept('(')) {
                skip();
                fail("expected '(' after exp", {"("});
            }
            Expression e = expr();
            if (!accept(')')) {
                skip();
                fail("expected ')'", {")"});
            }
            return node(ExprKind::Exp, {e});
        }
        if (c == 'x') {
            ++pos_;
            return node(ExprKind::Var, {});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        fail("expected operand", kOperand);
    }

    Expression number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t nd = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            nd += digits();
        }
        if (nd == 0) {
            pos_ = start;
            fail("malformed number", {"number"});
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && s_.compare(pos_, 3, "exp") != 0) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc{} || ptr != s_.data() + pos_) {
            pos_ = start;
            fail("malformed number", {"number"});
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return leaf(cplx{0.0, v});
        }
        return leaf(cplx{v, 0.0});
    }
};

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

Expression parse_expression(const std::string& text) { return Parser(text).parse(); }

std::string print_expression(const Expression& e) {
    switch (e->kind) {
        case ExprKind::Number: {
            const cplx v = e->number;
            if (v.imag() == 0.0) return v.real() < 0 ? "(-" + fmt(-v.real()) + ")" : fmt(v.real());
            if (v.real() == 0.0 && v.imag() > 0) return fmt(v.imag()) + "i";
            // general complex constant
            std::string re = v.real() < 0 ? "(-" + fmt(-v.real()) + ")" : fmt(v.real());
            std::string im = fmt(std::abs(v.imag())) + "i";
            return "(" + re + (v.imag() < 0 ? "-" : "+") + im + ")";
        }
        case ExprKind::Var: return "x";
        case ExprKind::Neg: return "(-" + print_expression(e->args[0]) + ")";
        case ExprKind::Exp: return "exp(" + print_expression(e->args[0]) + ")";
        default: break;
    }
    const char* op = "+";
    switch (e->kind) {
        case ExprKind::Sub: op = "-"; break;
        case ExprKind::Mul: op = "*"; break;
        case ExprKind::Div: op = "/"; break;
        case ExprKind::Pow: op = "^"; break;
        default: break;
    }
    return "(" + print_expression(e->args[0]) + op + print_expression(e->args[1]) + ")";
}

cplx evaluate(const Expression& e, cplx x) {
    switch (e->kind) {
        case ExprKind::Number: return e->number;
        case ExprKind::Var: return x;
        case ExprKind::Neg: return -evaluate(e->args[0], x);
        case ExprKind::Exp: return std::exp(evaluate(e->args[0], x));
        case ExprKind::Add: return evaluate(e->args[0], x) + evaluate(e->args[1], x);
        case ExprKind::Sub: return evaluate(e->args[0], x) - evaluate(e->args[1], x);
        case ExprKind::Mul: return evaluate(e->args[0], x) * evaluate(e->args[1], x);
        case ExprKind::Div: return evaluate(e->args[0], x) / evaluate(e->args[1], x);
        case ExprKind::Pow: {
            const cplx b = evaluate(e->args[0], x);
            const cplx p = evaluate(e->args[1], x);
            if (p.imag() == 0.0 && p.real() == std::round(p.real()) && std::abs(p.real()) <= 1024) {
                const int n = static_cast<int>(p.real());
                return n >= 0 ? std::pow(b, n) : 1.0 / std::pow(b, -n);
            }
            return std::pow(b, p);
        }
    }
    return 0.0;
}

bool structurally_equal(const Expression& a, const Expression& b) {
    if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
    if (a->kind == ExprKind::Number && a->number != b->number) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!structurally_equal(a->args[i], b->args[i])) return false;
    return true;
}

RealFunction from_expression(const std::string& text) {
    Expression e = parse_expression(text);
    RealFunction f;
    f.name = "expr:" + print_expression(e);
    f.value = [e](cplx z) { return evaluate(e, z); };
    return f;
}

}  // namespace fracdi
