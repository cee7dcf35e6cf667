#pragma once

#include <functional>

#include "hypdesc/quadfield.hpp"

namespace hypdesc {

// Invertible 2x2 matrix [[a, b], [c, d]] over a tower level.
struct Mat2 {
    QElem a, b, c, d;

    static Mat2 identity(const QuadTower& t) {
        return {QElem::one(t), QElem::zero(t), QElem::zero(t), QElem::one(t)};
    }
    static Mat2 diag(const QElem& x, const QElem& y) {
        return {x, QElem::zero(x.tower()), QElem::zero(x.tower()), y};
    }
    static Mat2 swap_xz(const QuadTower& t) {
        return {QElem::zero(t), QElem::one(t), QElem::one(t), QElem::zero(t)};
    }

    QElem det() const { return a * d - b * c; }

    Mat2 inverse() const {
        QElem dt = det();
        if (dt.is_zero()) throw std::domain_error("singular matrix");
        QElem idt = dt.inverse();
        return {d * idt, -(b * idt), -(c * idt), a * idt};
    }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 conj() const { return {a.conj(), b.conj(), c.conj(), d.conj()}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend Mat2 operator*(const QElem& s, const Mat2& m) {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }
    bool operator==(const Mat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }

    bool is_diagonal() const { return b.is_zero() && c.is_zero(); }
    bool is_scalar() const { return is_diagonal() && a == d; }

    // proportional as projective maps
    bool proportional_to(const Mat2& o) const {
        QElem x[4] = {a, b, c, d}, y[4] = {o.a, o.b, o.c, o.d};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (!(x[i] * y[j] == x[j] * y[i])) return false;
        return true;
    }

    std::string str() const {
        return "[" + a.str() + ", " + b.str() + "; " + c.str() + ", " + d.str() + "]";
    }
};

// Homogeneous binary form f = sum c_i x^i z^(N-i) over a tower level.
class BinForm {
public:
    BinForm() : tow_(), c_(1, QElem()) {}
    BinForm(const QuadTower& t, int degree)
        : tow_(t), c_(degree + 1, QElem::zero(t)) {}
    BinForm(const QuadTower& t, std::vector<QElem> coeffs) : tow_(t), c_(std::move(coeffs)) {
        for (auto& x : c_)
            if (!(x.tower() == t)) x = x.lift(t);
    }

    const QuadTower& tower() const { return tow_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const QElem& coeff(int i) const { return c_.at(i); }
    void set_coeff(int i, const QElem& v) { c_.at(i) = v.tower() == tow_ ? v : v.lift(tow_); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i <= degree(); ++i)
            if (!c_[i].is_zero()) s.push_back(i);
        return s;
    }

    BinForm lift(const QuadTower& t) const {
        std::vector<QElem> c;
        c.reserve(c_.size());
        for (const auto& x : c_) c.push_back(x.lift(t));
        return BinForm(t, std::move(c));
    }

    BinForm conj() const {
        std::vector<QElem> c;
        c.reserve(c_.size());
        for (const auto& x : c_) c.push_back(x.conj());
        return BinForm(tow_, std::move(c));
    }

    BinForm reversed() const {  // x <-> z
        std::vector<QElem> c(c_.rbegin(), c_.rend());
        return BinForm(tow_, std::move(c));
    }

    friend BinForm operator+(const BinForm& f, const BinForm& g) {
        if (f.degree() != g.degree()) throw std::invalid_argument("degree mismatch");
        BinForm h = f;
        for (int i = 0; i <= g.degree(); ++i) h.c_[i] = h.c_[i] + g.c_[i];
        return h;
    }
    friend BinForm operator*(const QElem& s, const BinForm& f) {
        BinForm h = f;
        for (auto& x : h.c_) x = s * x;
        return h;
    }
    friend BinForm operator*(const BinForm& f, const BinForm& g) {
        auto [a, b] = aligned(f, g);
        BinForm h(a.tow_, a.degree() + b.degree());
        for (int i = 0; i <= a.degree(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; j <= b.degree(); ++j)
                h.c_[i + j] = h.c_[i + j] + a.c_[i] * b.c_[j];
        }
        return h;
    }

    BinForm pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative form power");
        BinForm r(tow_, std::vector<QElem>{QElem::one(tow_)});
        BinForm b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // f(p, q) for binary forms p, q of a common degree.
    BinForm substitute(const BinForm& p, const BinForm& q) const {
        if (p.degree() != q.degree()) throw std::invalid_argument("substitute degree mismatch");
        QuadTower t = tow_;
        if (!p.tower().prefix_of(t)) {
            if (!t.prefix_of(p.tower())) throw std::invalid_argument("substitute tower mismatch");
            t = p.tower();
        }
        BinForm pl = p.lift(t), ql = q.lift(t);
        int N = degree();
        BinForm acc(t, N * p.degree());
        for (int i = 0; i <= N; ++i) {
            if (c_[i].is_zero()) continue;
            acc = acc + c_[i].lift(t) * (pl.pow(i) * ql.pow(N - i));
        }
        return acc;
    }

    bool operator==(const BinForm& o) const {
        if (degree() != o.degree()) return false;
        for (int i = 0; i <= degree(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }

    std::string str() const {
        std::string s;
        int N = degree();
        bool first = true;
        for (int i = N; i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!first) s += " + ";
            s += c_[i].str();
            if (i) s += "*x^" + std::to_string(i);
            if (N - i) s += "*z^" + std::to_string(N - i);
            first = false;
        }
        return first ? "0" : s;
    }

private:
    static std::pair<BinForm, BinForm> aligned(const BinForm& f, const BinForm& g) {
        if (f.tow_ == g.tow_) return {f, g};
        if (f.tow_.prefix_of(g.tow_)) return {f.lift(g.tow_), g};
        if (g.tow_.prefix_of(f.tow_)) return {f, g.lift(f.tow_)};
        throw std::invalid_argument("forms over unrelated towers");
    }

    QuadTower tow_;
    std::vector<QElem> c_;
};

// A.f: substitution (x, z) -> (x, z) A, i.e. f(a x + c z, b x + d z).
// Composition law under this convention: act(A, act(B, f)) = act(A * B, f).
inline BinForm act(const Mat2& A, const BinForm& f) {
    if (A.det().is_zero()) throw std::domain_error("act by singular matrix");
    const QuadTower& t = A.a.tower();
    BinForm fl = f.tower().prefix_of(t) ? f.lift(t) : f;
    const QuadTower& ft = fl.tower();
    Mat2 Al = {A.a.lift(ft), A.b.lift(ft), A.c.lift(ft), A.d.lift(ft)};
    int N = fl.degree();
    BinForm u(ft, std::vector<QElem>{Al.c, Al.a});  // a x + c z
    BinForm w(ft, std::vector<QElem>{Al.d, Al.b});  // b x + d z
    std::vector<BinForm> up(N + 1, BinForm(ft, std::vector<QElem>{QElem::one(ft)}));
    std::vector<BinForm> wp = up;
    for (int i = 1; i <= N; ++i) {
        up[i] = up[i - 1] * u;
        wp[i] = wp[i - 1] * w;
    }
    BinForm out(ft, N);
    for (int i = 0; i <= N; ++i) {
        if (fl.coeff(i).is_zero()) continue;
        out = out + fl.coeff(i) * (up[i] * wp[N - i]);
    }
    return out;
}

// Transforms a form so that its zero locus moves by the point map p -> M p
// (column convention).  With the act() convention that is act((M^T)^-1, .).
inline BinForm moebius_push(const Mat2& M, const BinForm& f) {
    return act(M.transpose().inverse(), f);
}

// Scalar c with f = c g, when one exists.
inline std::optional<QElem> proportional(const BinForm& f, const BinForm& g) {
    if (f.degree() != g.degree()) throw std::invalid_argument("degree mismatch");
    if (f.is_zero() || g.is_zero()) {
        if (f.is_zero() && g.is_zero()) return QElem::one(f.tower());
        return std::nullopt;
    }
    int pivot = -1;
    for (int i = 0; i <= g.degree(); ++i) {
        if (!g.coeff(i).is_zero() || !f.coeff(i).is_zero()) {
            pivot = i;
            break;
        }
    }
    if (g.coeff(pivot).is_zero()) return std::nullopt;
    QElem c = f.coeff(pivot) / g.coeff(pivot);
    for (int i = 0; i <= g.degree(); ++i)
        if (!(f.coeff(i) == c * g.coeff(i))) return std::nullopt;
    return c;
}

// --- univariate helpers over a tower level (dense, trailing-trimmed) ---

using UniPoly = std::vector<QElem>;  // p[i] * x^i

inline UniPoly trim(UniPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

inline UniPoly uni_from_form(const BinForm& f) {  // f(x, 1)
    UniPoly p;
    for (int i = 0; i <= f.degree(); ++i) p.push_back(f.coeff(i));
    return trim(std::move(p));
}

inline UniPoly uni_derivative(const UniPoly& p) {
    UniPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(Rat(long(i)) * p[i]);
    return trim(std::move(d));
}

inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    if (b.empty()) throw std::domain_error("poly division by zero");
    a = trim(std::move(a));
    QElem lead_inv = b.back().inverse();
    while (a.size() >= b.size()) {
        QElem q = a.back() * lead_inv;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i + 1 < b.size(); ++i) a[off + i] = a[off + i] - q * b[i];
        a.pop_back();  // leading term cancels exactly
        a = trim(std::move(a));
    }
    return a;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {  // monic for determinism
        QElem li = a.back().inverse();
        for (auto& x : a) x = li * x;
    }
    return a;
}

// No repeated roots, accounting for the root at infinity (z divides at most once).
inline bool is_squarefree(const BinForm& f) {
    if (f.degree() < 1) throw std::invalid_argument("is_squarefree needs degree >= 1");
    if (f.is_zero()) return false;
    UniPoly u = uni_from_form(f);
    int z_mult = f.degree() - (static_cast<int>(u.size()) - 1);
    if (z_mult > 1) return false;
    if (u.size() <= 1) return true;  // f = c z^N; the z_mult check above did the work
    return uni_gcd(u, uni_derivative(u)).size() == 1;
}

}  // namespace hypdesc
