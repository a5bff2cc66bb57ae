#include "crinv/parser.hpp"

#include <cctype>

namespace crinv {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = k;
    e.args = {std::move(a), std::move(b)};
    return make(std::move(e));
}

bool is_function(const std::string& s) { return s == "Re" || s == "Im" || s == "conj" || s == "abs2" || s == "flat"; }

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return s_.substr(start, pos_ - start);
    }

    ExprPtr expr() {
        ExprPtr a = term();
        for (;;) {
            if (accept('+')) a = binary(Expr::Kind::add, a, term());
            else if (accept('-')) a = binary(Expr::Kind::sub, a, term());
            else return a;
        }
    }

    ExprPtr term() {
        ExprPtr a = unary();
        while (accept('*')) a = binary(Expr::Kind::mul, a, unary());
        return a;
    }

    ExprPtr unary() {
        if (accept('-')) {
            Expr e;
            e.kind = Expr::Kind::neg;
            e.args = {unary()};
            return make(std::move(e));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (!accept('^')) return base;
        std::string digits = integer();
        if (digits.size() > 4) fail("exponent too large");
        Expr e;
        e.kind = Expr::Kind::pow;
        e.exponent = std::stoi(digits);
        e.args = {base};
        return make(std::move(e));
    }

    ExprPtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string p = integer();
            std::string q = "1";
            if (accept('/')) q = integer();
            if (mpz_class(q) == 0) fail("zero denominator");
            Expr e;
            e.kind = Expr::Kind::number;
            e.value = mpq_class(mpz_class(p), mpz_class(q));
            e.value.canonicalize();
            return make(std::move(e));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (is_function(id)) {
                expect('(');
                Expr e;
                e.kind = Expr::Kind::call;
                e.name = id;
                if (id == "flat") {
                    e.args = {};
                    Expr raw;
                    raw.kind = Expr::Kind::variable;
                    raw.name = balanced();
                    e.args.push_back(make(std::move(raw)));
                } else {
                    e.args = {expr()};
                }
                expect(')');
                return make(std::move(e));
            }
            Expr e;
            e.kind = id == "i" ? Expr::Kind::imaginary_unit : Expr::Kind::variable;
            e.name = id;
            return make(std::move(e));
        }
        if (accept('(')) {
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    // Raw text up to the matching ')', which is left unconsumed.
    std::string balanced() {
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            ++pos_;
        }
        if (pos_ >= s_.size()) fail("unterminated flat(");
        std::string t = s_.substr(start, pos_ - start);
        auto a = t.find_first_not_of(' ');
        auto b = t.find_last_not_of(' ');
        return a == std::string::npos ? "" : t.substr(a, b - a + 1);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul: return 2;
        case Expr::Kind::neg: return 3;
        case Expr::Kind::pow: return 4;
        default: return 5;
    }
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + print(e) + ")" : print(e); }

Series re_of(const Series& f) { return (f + f.conjugate()) * Gaussian::frac(1, 2); }

}  // namespace

bool same_ast(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
        case Expr::Kind::number:
            if (a.value != b.value) return false;
            break;
        case Expr::Kind::variable:
        case Expr::Kind::call:
            if (a.name != b.name) return false;
            break;
        case Expr::Kind::pow:
            if (a.exponent != b.exponent) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_ast(*a.args[i], *b.args[i])) return false;
    return true;
}

std::string print(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number:
            return e.value.get_den() == 1 ? e.value.get_num().get_str() : e.value.get_str();
        case Expr::Kind::imaginary_unit: return "i";
        case Expr::Kind::variable: return e.name;
        case Expr::Kind::neg: return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
        case Expr::Kind::add:
        case Expr::Kind::sub:
            return print(*e.args[0]) + (e.kind == Expr::Kind::add ? " + " : " - ") +
                   wrap(*e.args[1], precedence(*e.args[1]) <= 1);
        case Expr::Kind::mul:
            return wrap(*e.args[0], precedence(*e.args[0]) < 2) + "*" + wrap(*e.args[1], precedence(*e.args[1]) <= 2);
        case Expr::Kind::pow: {
            const Expr& b = *e.args[0];
            bool plain = precedence(b) == 5 && !(b.kind == Expr::Kind::number && b.value.get_den() != 1);
            return wrap(b, !plain) + "^" + std::to_string(e.exponent);
        }
        case Expr::Kind::call: return e.name + "(" + print(*e.args[0]) + ")";
    }
    return "";
}

ExprPtr parse_expression(const std::string& text) { return Parser(text).run(); }

int max_z_index(const Expr& e) {
    int m = 0;
    if (e.kind == Expr::Kind::variable && e.name.size() > 1 && e.name[0] == 'z' &&
        e.name.find_first_not_of("0123456789", 1) == std::string::npos)
        m = std::stoi(e.name.substr(1));
    if (e.kind == Expr::Kind::call && e.name == "flat") return 0;
    for (const auto& a : e.args) m = std::max(m, max_z_index(*a));
    return m;
}

CtxPtr ambient_context(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    std::vector<std::string> names;
    for (int k = 1; k < n; ++k) names.push_back("z" + std::to_string(k));
    names.push_back("w");
    return VariableContext::complexified(names);
}

Series elaborate(const Expr& e, const CtxPtr& ctx, std::vector<std::string>* notes) {
    auto arg = [&](std::size_t i) { return elaborate(*e.args[i], ctx, notes); };
    switch (e.kind) {
        case Expr::Kind::number: return Series::constant(ctx, Gaussian(e.value));
        case Expr::Kind::imaginary_unit: return Series::constant(ctx, Gaussian::i());
        case Expr::Kind::variable: {
            int idx = ctx->index(e.name);
            if (idx < 0 || (ctx->has_conjugation() && !ctx->is_holomorphic(idx)))
                throw std::invalid_argument("unknown identifier '" + e.name + "'");
            return Series::var(ctx, idx);
        }
        case Expr::Kind::neg: return -arg(0);
        case Expr::Kind::add: return arg(0) + arg(1);
        case Expr::Kind::sub: return arg(0) - arg(1);
        case Expr::Kind::mul: return arg(0) * arg(1);
        case Expr::Kind::pow: return pow(arg(0), e.exponent);
        case Expr::Kind::call: {
            if (e.name == "flat") {
                if (notes) notes->push_back("flat(" + e.args[0]->name + ") elaborated to its zero jet");
                return Series::zero(ctx);
            }
            if (!ctx->has_conjugation()) throw std::invalid_argument(e.name + "() needs conjugate coordinates");
            Series f = arg(0);
            if (e.name == "conj") return f.conjugate();
            if (e.name == "Re") return re_of(f);
            if (e.name == "Im") return re_of(-Gaussian::i() * f);
            return f * f.conjugate();
        }
    }
    throw std::logic_error("elaborate: bad node");
}

DefiningExpression parse_defining_function(const std::string& text, int n) {
    DefiningExpression d;
    d.source = text;
    d.ast = parse_expression(text);
    d.dimension = n > 0 ? n : std::max(2, max_z_index(*d.ast) + 1);
    auto ctx = ambient_context(d.dimension);
    d.series = elaborate(*d.ast, ctx, &d.notes);
    if (!d.series.is_real()) throw std::invalid_argument("defining expression is not real");
    return d;
}

Series parse_series(const std::string& text, const CtxPtr& ctx) { return elaborate(*parse_expression(text), ctx); }

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        auto a = s.find_first_not_of(" \t");
        auto b = s.find_last_not_of(" \t");
        s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

Gaussian parse_constant(const std::string& text) {
    auto ctx = VariableContext::holomorphic({"_"});
    Series s = parse_series(text, ctx);
    if (s.degree() > 0) throw std::invalid_argument("not a constant: " + text);
    return s.constant_term();
}

}  // namespace crinv
