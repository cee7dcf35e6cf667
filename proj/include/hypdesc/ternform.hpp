#pragma once

#include "hypdesc/binform.hpp"

namespace hypdesc {

// Dense homogeneous ternary form of fixed degree over a tower level.
// Coefficient of X^i Y^j Z^(deg-i-j) at index (i, j).
class TernForm {
public:
    TernForm() : deg_(0), tow_(), c_(1, QElem()) {}
    TernForm(const QuadTower& t, int deg)
        : deg_(deg), tow_(t), c_(count(deg), QElem::zero(t)) {}

    static size_t count(int deg) { return size_t(deg + 1) * size_t(deg + 2) / 2; }
    size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i + j > deg_) throw std::out_of_range("ternary index");
        // group by i: offset = sum_{a<i} (deg - a + 1)
        size_t off = size_t(i) * (2 * deg_ + 3 - i) / 2;
        return off + size_t(j);
    }

    int degree() const { return deg_; }
    const QuadTower& tower() const { return tow_; }
    const QElem& coeff(int i, int j) const { return c_[index(i, j)]; }
    void set_coeff(int i, int j, const QElem& v) {
        c_[index(i, j)] = v.tower() == tow_ ? v : v.lift(tow_);
    }
    const std::vector<QElem>& raw() const { return c_; }
    void set_raw(size_t k, const QElem& v) { c_.at(k) = v; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    TernForm lift(const QuadTower& t) const {
        TernForm f(t, deg_);
        for_each([&](int i, int j, const QElem& v) { f.set_coeff(i, j, v.lift(t)); });
        return f;
    }

    void for_each(const std::function<void(int, int, const QElem&)>& fn) const {
        for (int i = 0; i <= deg_; ++i)
            for (int j = 0; i + j <= deg_; ++j) fn(i, j, c_[index(i, j)]);
    }

    friend TernForm operator*(const TernForm& f, const TernForm& g) {
        TernForm h(f.tow_, f.deg_ + g.deg_);
        f.for_each([&](int i1, int j1, const QElem& v1) {
            if (v1.is_zero()) return;
            g.for_each([&](int i2, int j2, const QElem& v2) {
                if (v2.is_zero()) return;
                size_t k = h.index(i1 + i2, j1 + j2);
                h.c_[k] = h.c_[k] + v1 * v2;
            });
        });
        return h;
    }
    friend TernForm operator*(const QElem& s, const TernForm& f) {
        TernForm h = f;
        for (auto& x : h.c_) x = s * x;
        return h;
    }
    friend TernForm operator+(const TernForm& f, const TernForm& g) {
        if (f.deg_ != g.deg_) throw std::invalid_argument("ternary degree mismatch");
        TernForm h = f;
        for (size_t k = 0; k < h.c_.size(); ++k) h.c_[k] = h.c_[k] + g.c_[k];
        return h;
    }

    bool operator==(const TernForm& o) const {
        return deg_ == o.deg_ && c_ == o.c_;
    }

    // value as a binary form after substituting three binary forms of equal degree
    BinForm pullback(const BinForm& X, const BinForm& Y, const BinForm& Z) const {
        int d = X.degree();
        if (Y.degree() != d || Z.degree() != d)
            throw std::invalid_argument("pullback needs equal-degree components");
        BinForm acc(X.tower(), deg_ * d);
        for_each([&](int i, int j, const QElem& v) {
            if (v.is_zero()) return;
            BinForm term = X.pow(i) * Y.pow(j) * Z.pow(deg_ - i - j);
            acc = acc + v.lift(term.tower()) * term;
        });
        return acc;
    }

    // substitute three ternary forms of equal degree (self-maps of the plane)
    TernForm compose(const TernForm& X, const TernForm& Y, const TernForm& Z) const {
        int d = X.degree();
        TernForm acc(X.tower(), deg_ * d);
        for_each([&](int i, int j, const QElem& v) {
            if (v.is_zero()) return;
            TernForm term(X.tower(), 0);
            term.set_coeff(0, 0, QElem::one(X.tower()));
            for (int k = 0; k < i; ++k) term = term * X;
            for (int k = 0; k < j; ++k) term = term * Y;
            for (int k = 0; k < deg_ - i - j; ++k) term = term * Z;
            acc = acc + v.lift(acc.tower()) * term;
        });
        return acc;
    }

    // canonical representative modulo the conic X^2 + lam Y^2 + mu Z^2:
    // eliminates all X-degrees >= 2.
    TernForm reduce_mod_conic(const QElem& lam, const QElem& mu) const {
        TernForm out(tow_, deg_);
        bool again = false;
        for_each([&](int i, int j, const QElem& v) {
            if (v.is_zero()) return;
            if (i < 2) {
                size_t k = out.index(i, j);
                out.c_[k] = out.c_[k] + v;
                return;
            }
            // X^2 -> -lam Y^2 - mu Z^2
            size_t ky = out.index(i - 2, j + 2), kz = out.index(i - 2, j);
            out.c_[ky] = out.c_[ky] - lam * v;
            out.c_[kz] = out.c_[kz] - mu * v;
            again = true;
        });
        return again ? out.reduce_mod_conic(lam, mu) : out;
    }

    std::string str() const {
        std::string s;
        bool first = true;
        for_each([&](int i, int j, const QElem& v) {
            if (v.is_zero()) return;
            if (!first) s += " + ";
            s += v.str();
            if (i) s += "*X^" + std::to_string(i);
            if (j) s += "*Y^" + std::to_string(j);
            int k = deg_ - i - j;
            if (k) s += "*Z^" + std::to_string(k);
            first = false;
        });
        return first ? "0" : s;
    }

private:
    int deg_;
    QuadTower tow_;
    std::vector<QElem> c_;
};

}  // namespace hypdesc
