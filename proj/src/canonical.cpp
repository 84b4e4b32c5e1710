#include "fractool/canonical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>

namespace fractool {

namespace {

constexpr double kDropTol = 1e-14;   // coefficients below this are discarded
constexpr double kExpKeyTol = 1e-12; // exponent keys closer than this merge

bool same_key(const CanonicalTerm& a, const CanonicalTerm& b) {
    return a.xpow == b.xpow && a.tpow == b.tpow &&
           std::abs(a.expx - b.expx) <= kExpKeyTol &&
           std::abs(a.expt - b.expt) <= kExpKeyTol;
}

bool key_less(const CanonicalTerm& a, const CanonicalTerm& b) {
    return std::tie(a.xpow, a.tpow, a.expx, a.expt) <
           std::tie(b.xpow, b.tpow, b.expx, b.expt);
}

}  // namespace

void CanonicalExpr::normalize() {
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coeff) || !std::isfinite(t.expx) || !std::isfinite(t.expt))
            throw std::invalid_argument("non-finite term");
        if (t.xpow < 0 || t.tpow < 0)
            throw std::invalid_argument("negative monomial power");
    }
    std::sort(terms_.begin(), terms_.end(), key_less);
    std::vector<CanonicalTerm> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() && same_key(merged.back(), t))
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const CanonicalTerm& t) {
                                    return std::abs(t.coeff) < kDropTol;
                                }),
                 merged.end());
    terms_ = std::move(merged);
}

CanonicalExpr::CanonicalExpr(std::vector<CanonicalTerm> terms) : terms_(std::move(terms)) {
    normalize();
}

CanonicalExpr CanonicalExpr::constant(double c) { return monomial(c, 0, 0); }

CanonicalExpr CanonicalExpr::monomial(double coeff, int xpow, int tpow,
                                      double expx, double expt) {
    return CanonicalExpr({CanonicalTerm{coeff, xpow, tpow, expx, expt}});
}

CanonicalExpr CanonicalExpr::var_x() { return monomial(1.0, 1, 0); }
CanonicalExpr CanonicalExpr::var_t() { return monomial(1.0, 0, 1); }

bool CanonicalExpr::is_zero(double tol) const {
    for (const auto& t : terms_)
        if (std::abs(t.coeff) >= tol) return false;
    return true;
}

double CanonicalExpr::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

CanonicalExpr CanonicalExpr::operator+(const CanonicalExpr& o) const {
    std::vector<CanonicalTerm> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return CanonicalExpr(std::move(ts));
}

CanonicalExpr CanonicalExpr::operator-(const CanonicalExpr& o) const {
    return *this + o.scaled(-1.0);
}

CanonicalExpr CanonicalExpr::operator*(const CanonicalExpr& o) const {
    std::vector<CanonicalTerm> ts;
    ts.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            ts.push_back(CanonicalTerm{a.coeff * b.coeff, a.xpow + b.xpow,
                                       a.tpow + b.tpow, a.expx + b.expx,
                                       a.expt + b.expt});
    return CanonicalExpr(std::move(ts));
}

CanonicalExpr CanonicalExpr::scaled(double c) const {
    std::vector<CanonicalTerm> ts = terms_;
    for (auto& t : ts) t.coeff *= c;
    return CanonicalExpr(std::move(ts));
}

CanonicalExpr CanonicalExpr::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power");
    CanonicalExpr r = constant(1.0);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

CanonicalExpr CanonicalExpr::substitute_linear(double ax, double bx, double cx,
                                               double at, double bt, double ct) const {
    const CanonicalExpr new_x = monomial(ax, 1, 0) + monomial(bx, 0, 1) + constant(cx);
    const CanonicalExpr new_t = monomial(at, 1, 0) + monomial(bt, 0, 1) + constant(ct);
    CanonicalExpr out;
    for (const auto& t : terms_) {
        CanonicalExpr piece = new_x.pow(t.xpow) * new_t.pow(t.tpow);
        // exp(p X + q T) -> exp(p cx + q ct) exp((p ax + q at) X + (p bx + q bt) T)
        const double c = t.coeff * std::exp(t.expx * cx + t.expt * ct);
        piece = piece * monomial(c, 0, 0, t.expx * ax + t.expt * at,
                                 t.expx * bx + t.expt * bt);
        out = out + piece;
    }
    return out;
}

double CanonicalExpr::evaluate_xt(double X, double T) const {
    double s = 0.0;
    for (const auto& t : terms_)
        s += t.coeff * std::pow(X, t.xpow) * std::pow(T, t.tpow) *
             std::exp(t.expx * X + t.expt * T);
    return s;
}

double CanonicalExpr::evaluate(double x, double t, FractionalOrder alpha,
                               FractionalOrder beta) const {
    auto [X, T] = to_canonical(x, t, alpha, beta);
    return evaluate_xt(X, T);
}

std::pair<double, double> to_canonical(double x, double t, FractionalOrder alpha,
                                       FractionalOrder beta) {
    if (x < 0.0 || t < 0.0) throw std::domain_error("to_canonical requires x, t >= 0");
    return {std::pow(x, beta.value()) / gamma_fn(1.0 + beta.value()),
            std::pow(t, alpha.value()) / gamma_fn(1.0 + alpha.value())};
}

CanonicalExpr formal_dX(const CanonicalExpr& e) {
    std::vector<CanonicalTerm> ts;
    for (const auto& t : e.terms()) {
        if (t.xpow > 0)
            ts.push_back(CanonicalTerm{t.coeff * t.xpow, t.xpow - 1, t.tpow, t.expx, t.expt});
        if (t.expx != 0.0)
            ts.push_back(CanonicalTerm{t.coeff * t.expx, t.xpow, t.tpow, t.expx, t.expt});
    }
    return CanonicalExpr(std::move(ts));
}

CanonicalExpr formal_dT(const CanonicalExpr& e) {
    std::vector<CanonicalTerm> ts;
    for (const auto& t : e.terms()) {
        if (t.tpow > 0)
            ts.push_back(CanonicalTerm{t.coeff * t.tpow, t.xpow, t.tpow - 1, t.expx, t.expt});
        if (t.expt != 0.0)
            ts.push_back(CanonicalTerm{t.coeff * t.expt, t.xpow, t.tpow, t.expx, t.expt});
    }
    return CanonicalExpr(std::move(ts));
}

CanonicalExpr power_rule_dT(const CanonicalExpr& e, FractionalOrder alpha) {
    const double a = alpha.value();
    std::vector<CanonicalTerm> ts;
    for (const auto& t : e.terms()) {
        if (t.expt != 0.0)
            throw std::invalid_argument(
                "power-rule convention undefined on exponential T factors");
        if (t.tpow == 0) continue;
        const int n = t.tpow;
        const double c = gamma_fn(1.0 + n * a) /
                         (gamma_fn(1.0 + (n - 1) * a) * gamma_fn(1.0 + a));
        ts.push_back(CanonicalTerm{t.coeff * c, t.xpow, n - 1, t.expx, 0.0});
    }
    return CanonicalExpr(std::move(ts));
}

CanonicalExpr power_rule_dX(const CanonicalExpr& e, FractionalOrder beta) {
    const double b = beta.value();
    std::vector<CanonicalTerm> ts;
    for (const auto& t : e.terms()) {
        if (t.expx != 0.0)
            throw std::invalid_argument(
                "power-rule convention undefined on exponential X factors");
        if (t.xpow == 0) continue;
        const int m = t.xpow;
        const double c = gamma_fn(1.0 + m * b) /
                         (gamma_fn(1.0 + (m - 1) * b) * gamma_fn(1.0 + b));
        ts.push_back(CanonicalTerm{t.coeff * c, m - 1, t.tpow, 0.0, t.expt});
    }
    return CanonicalExpr(std::move(ts));
}

double convention_gap(int m, FractionalOrder order) {
    if (m < 2) throw std::invalid_argument("convention_gap requires m >= 2");
    const double b = order.value();
    return gamma_fn(1.0 + m * b) /
           (m * gamma_fn(1.0 + (m - 1) * b) * gamma_fn(1.0 + b));
}

CanonicalExpr heat_residual(const CanonicalExpr& e) {
    return formal_dT(e) - formal_dX(formal_dX(e));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_num(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

// p*X + q*T inside exp(...)
std::string exp_arg(double p, double q, int prec) {
    std::string s;
    auto piece = [prec](double c, const char* var) {
        if (c == 1.0) return std::string(var);
        if (c == -1.0) return "-" + std::string(var);
        return fmt_num(c, prec) + "*" + var;
    };
    if (p != 0.0) s += piece(p, "X");
    if (q != 0.0) {
        if (!s.empty() && q > 0.0) s += "+";
        s += piece(q, "T");
    }
    return s;
}

std::string term_str(const CanonicalTerm& t, bool abs_coeff, int prec) {
    const double c = abs_coeff ? std::abs(t.coeff) : t.coeff;
    std::vector<std::string> factors;
    const bool has_body = t.xpow > 0 || t.tpow > 0 || t.expx != 0.0 || t.expt != 0.0;
    if (!has_body || c != 1.0) factors.push_back(fmt_num(c, prec));
    if (t.xpow == 1) factors.push_back("X");
    else if (t.xpow > 1) factors.push_back("X^" + std::to_string(t.xpow));
    if (t.tpow == 1) factors.push_back("T");
    else if (t.tpow > 1) factors.push_back("T^" + std::to_string(t.tpow));
    if (t.expx != 0.0 || t.expt != 0.0)
        factors.push_back("exp(" + exp_arg(t.expx, t.expt, prec) + ")");
    std::string s = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) s += "*" + factors[i];
    return s;
}

}  // namespace

std::string CanonicalExpr::str(int precision) const {
    if (terms_.empty()) return "0";
    std::string s = term_str(terms_[0], false, precision);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        s += terms_[i].coeff < 0.0 ? " - " : " + ";
        s += term_str(terms_[i], true, precision);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Parsing: expr := term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := '-' factor | primary ('^' integer)?
//          primary := number | 'X' | 'T' | 'exp' '(' expr ')' | '(' expr ')'

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }

    CanonicalExpr parse_expr() {
        CanonicalExpr e = parse_term();
        for (;;) {
            if (eat('+')) e = e + parse_term();
            else if (eat('-')) e = e - parse_term();
            else return e;
        }
    }

    CanonicalExpr parse_term() {
        CanonicalExpr e = parse_factor();
        while (eat('*')) e = e * parse_factor();
        return e;
    }

    CanonicalExpr parse_factor() {
        if (peek() == '-') { ++pos; return parse_factor().scaled(-1.0); }
        CanonicalExpr e = parse_primary();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent");
            e = e.pow(std::stoi(s.substr(start, pos - start)));
        }
        return e;
    }

    CanonicalExpr parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        const char c = s[pos];
        if (c == '(') {
            ++pos;
            CanonicalExpr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == 'X') { ++pos; return CanonicalExpr::var_x(); }
        if (c == 'T') { ++pos; return CanonicalExpr::var_t(); }
        if (s.compare(pos, 3, "exp") == 0) {
            pos += 3;
            if (!eat('(')) fail("expected '(' after exp");
            CanonicalExpr arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return exp_of(arg);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t consumed = 0;
            double v = std::stod(s.substr(pos), &consumed);
            pos += consumed;
            return CanonicalExpr::constant(v);
        }
        fail("unexpected character");
    }

    // exp of a linear combination c + pX + qT stays in the algebra
    static CanonicalExpr exp_of(const CanonicalExpr& arg) {
        double c = 0.0, p = 0.0, q = 0.0;
        for (const auto& t : arg.terms()) {
            if (t.expx != 0.0 || t.expt != 0.0 || t.xpow + t.tpow > 1)
                throw std::invalid_argument("exp argument must be linear in X, T");
            if (t.xpow == 1) p += t.coeff;
            else if (t.tpow == 1) q += t.coeff;
            else c += t.coeff;
        }
        return CanonicalExpr::monomial(std::exp(c), 0, 0, p, q);
    }
};

}  // namespace

CanonicalExpr parse_expr(const std::string& text) {
    Parser p{text};
    CanonicalExpr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

}  // namespace fractool
