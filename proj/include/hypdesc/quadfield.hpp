#pragma once

#include <cassert>
#include <span>
#include <sstream>
#include <vector>

#include "hypdesc/intfactor.hpp"
#include "hypdesc/rational.hpp"

namespace hypdesc {

// Q, Q(sqrt d1) or Q(sqrt d1)(sqrt d2).  Discriminants are kept squarefree;
// extend() reduces its argument to the squarefree core first, so sqrt(12)
// lands in the tower of sqrt(3) (callers scale by the extracted square part).
class QuadTower {
public:
    QuadTower() = default;

    static QuadTower rationals() { return QuadTower(); }

    QuadTower extend(const Int& d) const {
        Int core = squarefree_core(d);
        if (core == 0 || core == 1)
            throw std::invalid_argument("tower disc must be a non-square");
        if (level() >= 2) throw std::invalid_argument("tower depth limited to 2");
        if (level() == 1 && core == discs_[0])
            throw std::invalid_argument("disc already a square in this tower");
        QuadTower t(*this);
        t.discs_.push_back(core);
        return t;
    }

    int level() const { return static_cast<int>(discs_.size()); }
    const Int& disc(int i) const { return discs_.at(i); }
    const Int& top_disc() const { return discs_.back(); }
    QuadTower base() const {
        QuadTower t(*this);
        t.discs_.pop_back();
        return t;
    }

    // true when other's disc list extends ours
    bool prefix_of(const QuadTower& other) const {
        if (level() > other.level()) return false;
        for (int i = 0; i < level(); ++i)
            if (discs_[i] != other.discs_[i]) return false;
        return true;
    }

    bool operator==(const QuadTower& o) const { return discs_ == o.discs_; }
    bool operator!=(const QuadTower& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = "Q";
        for (const Int& d : discs_) s += "(sqrt " + d.get_str() + ")";
        return s;
    }

private:
    std::vector<Int> discs_;
};

// Element of a tower level.  Coordinates over the basis
//   level 0: {1};  level 1: {1, s1};  level 2: {1, s1, s2, s1*s2}
// with s_i = sqrt(disc_i).
class QElem {
public:
    QElem() : tow_(), c_(1, Rat(0)) {}
    explicit QElem(const Rat& r) : tow_(), c_(1, r) {}
    QElem(const QuadTower& t, std::vector<Rat> coords) : tow_(t), c_(std::move(coords)) {
        if (c_.size() != dim(tow_.level()))
            throw std::invalid_argument("coordinate count does not match tower level");
        for (Rat& x : c_) x.canonicalize();  // raw pairs may arrive unreduced
    }

    static size_t dim(int level) { return size_t(1) << level; }

    static QElem from_rat(const QuadTower& t, const Rat& r) {
        std::vector<Rat> c(dim(t.level()), Rat(0));
        c[0] = r;
        return QElem(t, std::move(c));
    }
    static QElem zero(const QuadTower& t) { return from_rat(t, Rat(0)); }
    static QElem one(const QuadTower& t) { return from_rat(t, Rat(1)); }

    // sqrt(disc_i) as an element of the tower
    static QElem sqrt_gen(const QuadTower& t, int i) {
        if (i < 0 || i >= t.level()) throw std::invalid_argument("no such generator");
        std::vector<Rat> c(dim(t.level()), Rat(0));
        c[i == 0 ? 1 : 2] = 1;
        return QElem(t, std::move(c));
    }

    const QuadTower& tower() const { return tow_; }
    int level() const { return tow_.level(); }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (!hypdesc::is_zero(x)) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!hypdesc::is_zero(c_[i])) return false;
        return true;
    }
    const Rat& rat_part() const { return c_[0]; }
    Rat to_rational() const {
        if (!is_rational()) throw std::domain_error("value not rational: " + str());
        return c_[0];
    }

    QElem lift(const QuadTower& t) const {
        if (!tow_.prefix_of(t)) throw std::invalid_argument("incompatible towers");
        std::vector<Rat> c(dim(t.level()), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
        return QElem(t, std::move(c));
    }

    // Galois conjugation at the top level: flips the sign of the top generator.
    QElem conj() const {
        if (level() == 0) throw std::domain_error("no conjugation at base level");
        std::vector<Rat> c(c_);
        size_t half = c.size() / 2;
        for (size_t i = half; i < c.size(); ++i) c[i] = -c[i];
        return QElem(tow_, std::move(c));
    }

    // x * conj(x), returned one level down.
    QElem norm_to_base() const {
        QElem n = *this * conj();
        size_t half = n.c_.size() / 2;
        for (size_t i = half; i < n.c_.size(); ++i)
            if (!hypdesc::is_zero(n.c_[i])) throw std::logic_error("norm not in base field");
        std::vector<Rat> c(n.c_.begin(), n.c_.begin() + half);
        return QElem(tow_.base(), std::move(c));
    }

    QElem operator-() const {
        std::vector<Rat> c(c_);
        for (Rat& x : c) x = -x;
        return QElem(tow_, std::move(c));
    }

    friend QElem operator+(const QElem& a, const QElem& b) {
        auto [x, y] = QElem::aligned(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend QElem operator-(const QElem& a, const QElem& b) { return a + (-b); }

    friend QElem operator*(const QElem& a, const QElem& b) {
        auto [x, y] = QElem::aligned(a, b);
        std::vector<Rat> out(x.c_.size(), Rat(0));
        mul_rec(x.tow_, x.tow_.level(), std::span<const Rat>(x.c_),
                std::span<const Rat>(y.c_), std::span<Rat>(out));
        return QElem(x.tow_, std::move(out));
    }

    QElem inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (level() == 0) return QElem(tow_, {Rat(1) / c_[0]});
        // 1/(x + y s) = (x - y s) / (x^2 - d y^2), recursing into the base level
        QElem cj = conj();
        QElem n = (*this) * cj;  // lies in the base, but keep full width
        size_t half = c_.size() / 2;
        std::vector<Rat> base_c(n.c_.begin(), n.c_.begin() + half);
        QElem nb = QElem(tow_.base(), std::move(base_c)).inverse().lift(tow_);
        return cj * nb;
    }
    friend QElem operator/(const QElem& a, const QElem& b) { return a * b.inverse(); }

    QElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QElem r = one(tow_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend QElem operator*(const Rat& s, const QElem& a) {
        std::vector<Rat> c(a.c_);
        for (Rat& x : c) x *= s;
        return QElem(a.tow_, std::move(c));
    }

    bool operator==(const QElem& o) const {
        auto [x, y] = aligned(*this, o);
        return x.c_ == y.c_;
    }
    bool operator!=(const QElem& o) const { return !(*this == o); }

    std::string str() const {
        if (level() == 0) return rat_str(c_[0]);
        std::ostringstream os;
        os << "(";
        static const char* names01[] = {"", "*s1", "*s2", "*s1*s2"};
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (hypdesc::is_zero(c_[i])) continue;
            if (!first) os << " + ";
            os << rat_str(c_[i]) << names01[i];
            first = false;
        }
        if (first) os << "0";
        os << ")";
        return os.str();
    }

private:
    static std::pair<QElem, QElem> aligned(const QElem& a, const QElem& b) {
        if (a.tow_ == b.tow_) return {a, b};
        if (a.tow_.prefix_of(b.tow_)) return {a.lift(b.tow_), b};
        if (b.tow_.prefix_of(a.tow_)) return {a, b.lift(a.tow_)};
        throw std::invalid_argument("elements of unrelated towers: " + a.tow_.str() +
                                    " vs " + b.tow_.str());
    }

    static void mul_rec(const QuadTower& t, int lvl, std::span<const Rat> a,
                        std::span<const Rat> b, std::span<Rat> out) {
        if (lvl == 0) {
            out[0] += a[0] * b[0];
            return;
        }
        size_t h = a.size() / 2;
        Rat d(t.disc(lvl - 1));
        auto a0 = a.first(h), a1 = a.last(h);
        auto b0 = b.first(h), b1 = b.last(h);
        // (a0 + a1 s)(b0 + b1 s) = (a0 b0 + d a1 b1) + (a0 b1 + a1 b0) s
        mul_rec(t, lvl - 1, a0, b0, out.first(h));
        std::vector<Rat> tmp(h, Rat(0));
        mul_rec(t, lvl - 1, a1, b1, std::span<Rat>(tmp));
        for (size_t i = 0; i < h; ++i) out[i] += d * tmp[i];
        mul_rec(t, lvl - 1, a0, b1, out.last(h));
        mul_rec(t, lvl - 1, a1, b0, out.last(h));
    }

    QuadTower tow_;
    std::vector<Rat> c_;
};

// --- spec-facing wrappers ---

inline QElem conj(const QElem& x) { return x.conj(); }

inline QElem field_norm(const QElem& x) {
    if (x.level() < 1) throw std::domain_error("field_norm needs level >= 1");
    return x.norm_to_base();
}

// is_square on rationals returns the nonnegative root, absent otherwise.
inline std::optional<Rat> is_square(const Rat& q) { return rat_sqrt_exact(q); }

// Level-1 convenience: a + b*sqrt(d) over Q(sqrt d).
inline QElem quad(const Int& d, const Rat& a, const Rat& b) {
    QuadTower t = QuadTower::rationals().extend(d);
    return QElem(t, {a, b});
}

}  // namespace hypdesc
