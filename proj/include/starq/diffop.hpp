#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "starq/poly.hpp"

namespace starq {

namespace detail {

/// Visits every multi-index delta <= beta (componentwise over all 2n slots).
template <typename F>
void for_each_sub_index(const Exponent& beta, F&& visit) {
    const int n = beta.n();
    Exponent delta(n);
    // Odometer over the 2n coordinates.
    std::function<void(int)> rec = [&](int coord) {
        if (coord == 2 * n) {
            visit(delta);
            return;
        }
        const bool is_xi = coord >= n;
        const int i = (is_xi ? coord - n : coord) + 1;
        const std::uint32_t top = is_xi ? beta.xi(i) : beta.u(i);
        for (std::uint32_t v = 0; v <= top; ++v) {
            rec(coord + 1);
            if (is_xi) delta.bump_xi(i); else delta.bump_u(i);
        }
        if (is_xi) delta.bump_xi(i, -static_cast<int>(top) - 1);
        else delta.bump_u(i, -static_cast<int>(top) - 1);
    };
    rec(0);
}

inline Rational sub_index_binomial(const Exponent& beta, const Exponent& delta) {
    BigInt r = 1;
    for (int i = 1; i <= beta.n(); ++i) {
        r *= binomial(beta.u(i), delta.u(i));
        r *= binomial(beta.xi(i), delta.xi(i));
    }
    return Rational(r, BigInt(1));
}

/// beta! / (delta! gamma! rest!) for a three-way split of beta.
inline Rational trinomial(const Exponent& beta, const Exponent& delta, const Exponent& gamma) {
    Exponent rest(beta.n());
    Exponent mid(beta.n());
    beta.minus(delta, mid);
    mid.minus(gamma, rest);
    BigInt r = beta.factorial_product();
    r /= delta.factorial_product();
    r /= gamma.factorial_product();
    r /= rest.factorial_product();
    return Rational(r, BigInt(1));
}

} // namespace detail

/// Differential operator in normal form: sum of c_beta(u,xi) d^beta with all
/// coefficients standing left of all derivatives. Element of the chart Weyl
/// algebra C[u, xi, d/du, d/dxi].
class DiffOp {
public:
    explicit DiffOp(int n) : n_(n) {
        if (n < 1) throw dimension_mismatch("DiffOp: dimension must be >= 1");
    }

    static DiffOp zero(int n) { return DiffOp(n); }
    static DiffOp identity(int n) {
        DiffOp op(n);
        op.add_term(Exponent(n), Poly::constant(n, 1));
        return op;
    }
    /// Multiplication operator by a fixed polynomial.
    static DiffOp mult(const Poly& p) {
        DiffOp op(p.n());
        op.add_term(Exponent(p.n()), p);
        return op;
    }
    /// Bare mixed partial d^beta.
    static DiffOp partial(const Exponent& beta) {
        DiffOp op(beta.n());
        op.add_term(beta, Poly::constant(beta.n(), 1));
        return op;
    }
    static DiffOp d_u(int n, int i) { return partial(Exponent(n).bump_u(i)); }
    static DiffOp d_xi(int n, int i) { return partial(Exponent(n).bump_xi(i)); }

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponent, Poly>& terms() const { return terms_; }

    void add_term(const Exponent& beta, const Poly& coeff) {
        if (beta.n() != n_ || coeff.n() != n_)
            throw dimension_mismatch("DiffOp: term dimension mismatch");
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.emplace(beta, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Max total derivative order over stored terms.
    int order() const {
        int m = 0;
        for (const auto& [beta, c] : terms_) m = std::max(m, beta.total_degree());
        return m;
    }

    int coefficient_degree() const {
        int m = 0;
        for (const auto& [beta, c] : terms_) m = std::max(m, c.total_degree());
        return m;
    }

    Poly apply(const Poly& a) const {
        if (a.n() != n_) throw dimension_mismatch("DiffOp: argument dimension mismatch");
        Poly r(n_);
        for (const auto& [beta, c] : terms_) {
            Poly d = a.differentiate(beta);
            if (!d.is_zero()) r += c * d;
        }
        return r;
    }

    DiffOp& operator+=(const DiffOp& o) {
        check_same_n(o);
        for (const auto& [beta, c] : o.terms_) add_term(beta, c);
        return *this;
    }
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a += scale(-1, b); }

    static DiffOp scale(const Rational& c, const DiffOp& op) {
        DiffOp r(op.n_);
        if (c.is_zero()) return r;
        for (const auto& [beta, k] : op.terms_) r.terms_.emplace(beta, Poly::scale(c, k));
        return r;
    }
    friend DiffOp operator*(const Rational& c, const DiffOp& op) { return scale(c, op); }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += term_str(it->second, it->first);
        }
        return out;
    }

    /// "c * d3/du1^2dxi1" with the coefficient parenthesized when it has
    /// more than one term; a bare coefficient for the identity index.
    static std::string term_str(const Poly& coeff, const Exponent& beta) {
        std::string c = coeff.term_count() > 1 ? "(" + coeff.str() + ")" : coeff.str();
        if (beta.is_zero()) return c;
        return c + " * " + derivative_str(beta);
    }

    static std::string derivative_str(const Exponent& beta) {
        const int total = beta.total_degree();
        std::string out = "d";
        if (total > 1) out += std::to_string(total);
        out += "/";
        auto emit = [&out](const std::string& base, std::uint32_t e) {
            if (e == 0) return;
            out += "d" + base;
            if (e > 1) out += "^" + std::to_string(e);
        };
        for (int i = 1; i <= beta.n(); ++i) emit("u" + std::to_string(i), beta.u(i));
        for (int i = 1; i <= beta.n(); ++i) emit("xi" + std::to_string(i), beta.xi(i));
        return out;
    }

private:
    void check_same_n(const DiffOp& o) const {
        if (n_ != o.n_) throw dimension_mismatch("DiffOp: dimension mismatch");
    }
    int n_;
    std::map<Exponent, Poly> terms_;
};

/// Normal form of f . g via Leibniz reordering: apply(compose(f,g), a) ==
/// apply(f, apply(g, a)) for every a.
inline DiffOp compose(const DiffOp& f, const DiffOp& g) {
    if (f.n() != g.n()) throw dimension_mismatch("compose: dimension mismatch");
    DiffOp r(f.n());
    for (const auto& [bf, cf] : f.terms()) {
        for (const auto& [bg, cg] : g.terms()) {
            // d^bf (cg d^bg .) = sum_{delta <= bf} (bf choose delta) (d^delta cg) d^{bf-delta+bg}
            detail::for_each_sub_index(bf, [&](const Exponent& delta) {
                Poly dcg = cg.differentiate(delta);
                if (dcg.is_zero()) return;
                Exponent rest(f.n());
                bf.minus(delta, rest);
                r.add_term(rest.plus(bg), detail::sub_index_binomial(bf, delta) * (cf * dcg));
            });
        }
    }
    return r;
}

inline DiffOp pow(const DiffOp& op, int k) {
    DiffOp r = DiffOp::identity(op.n());
    for (int i = 0; i < k; ++i) r = compose(r, op);
    return r;
}

/// Fiberwise Euler vector field E = sum_i xi_i d/dxi_i.
inline DiffOp euler(int n) {
    DiffOp op(n);
    for (int i = 1; i <= n; ++i)
        op.add_term(Exponent(n).bump_xi(i), Poly::variable_xi(n, i));
    return op;
}

/// Divergence-type operator D = sum_i d^2/du_i dxi_i.
inline DiffOp divergence(int n) {
    DiffOp op(n);
    for (int i = 1; i <= n; ++i)
        op.add_term(Exponent(n).bump_u(i).bump_xi(i), Poly::constant(n, 1));
    return op;
}

/// Bidifferential operator in normal form: finite sum of
/// c(u,xi) (d^a phi)(d^b psi).
class BiDiffOp {
public:
    using Key = std::pair<Exponent, Exponent>;

    explicit BiDiffOp(int n) : n_(n) {
        if (n < 1) throw dimension_mismatch("BiDiffOp: dimension must be >= 1");
    }

    static BiDiffOp zero(int n) { return BiDiffOp(n); }

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Poly>& terms() const { return terms_; }

    void add_term(const Exponent& left, const Exponent& right, const Poly& coeff) {
        if (left.n() != n_ || right.n() != n_ || coeff.n() != n_)
            throw dimension_mismatch("BiDiffOp: term dimension mismatch");
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.emplace(Key{left, right}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly apply(const Poly& a, const Poly& b) const {
        if (a.n() != n_ || b.n() != n_)
            throw dimension_mismatch("BiDiffOp: argument dimension mismatch");
        // Derivatives of the arguments recur across terms; memoize them.
        std::map<Exponent, Poly> da, db;
        auto diff = [](std::map<Exponent, Poly>& memo, const Poly& p, const Exponent& e) -> const Poly& {
            auto it = memo.find(e);
            if (it == memo.end()) it = memo.emplace(e, p.differentiate(e)).first;
            return it->second;
        };
        Poly r(n_);
        for (const auto& [key, c] : terms_) {
            const Poly& left = diff(da, a, key.first);
            if (left.is_zero()) continue;
            const Poly& right = diff(db, b, key.second);
            if (right.is_zero()) continue;
            r += c * (left * right);
        }
        return r;
    }

    BiDiffOp& operator+=(const BiDiffOp& o) {
        if (n_ != o.n_) throw dimension_mismatch("BiDiffOp: dimension mismatch");
        for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
        return *this;
    }
    friend BiDiffOp operator+(BiDiffOp a, const BiDiffOp& b) { return a += b; }
    friend BiDiffOp operator-(BiDiffOp a, const BiDiffOp& b) { return a += scale(-1, b); }

    static BiDiffOp scale(const Rational& c, const BiDiffOp& op) {
        BiDiffOp r(op.n_);
        if (c.is_zero()) return r;
        for (const auto& [key, k] : op.terms_) r.terms_.emplace(key, Poly::scale(c, k));
        return r;
    }
    friend BiDiffOp operator*(const Rational& c, const BiDiffOp& op) { return scale(c, op); }

    friend bool operator==(const BiDiffOp& a, const BiDiffOp& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// Max of |a|+|b| over stored terms.
    int total_order() const {
        int m = 0;
        for (const auto& [key, c] : terms_)
            m = std::max(m, key.first.total_degree() + key.second.total_degree());
        return m;
    }
    int left_order() const {
        int m = 0;
        for (const auto& [key, c] : terms_) m = std::max(m, key.first.total_degree());
        return m;
    }
    int right_order() const {
        int m = 0;
        for (const auto& [key, c] : terms_) m = std::max(m, key.second.total_degree());
        return m;
    }
    int coefficient_degree() const {
        int m = 0;
        for (const auto& [key, c] : terms_) m = std::max(m, c.total_degree());
        return m;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            const auto& [key, c] = *it;
            std::string cs = c.term_count() > 1 ? "(" + c.str() + ")" : c.str();
            auto slot = [](const Exponent& e) {
                return e.is_zero() ? std::string("1") : DiffOp::derivative_str(e);
            };
            out += cs + " * " + slot(key.first) + " ⊗ " + slot(key.second);
        }
        return out;
    }

private:
    int n_;
    std::map<Key, Poly> terms_;
};

/// (phi, psi) -> (f phi)(g psi).
inline BiDiffOp tensor(const DiffOp& f, const DiffOp& g) {
    if (f.n() != g.n()) throw dimension_mismatch("tensor: dimension mismatch");
    BiDiffOp r(f.n());
    for (const auto& [bf, cf] : f.terms())
        for (const auto& [bg, cg] : g.terms()) r.add_term(bf, bg, cf * cg);
    return r;
}

/// Normal-ordering coefficient N_k = sum_{|m|=k} (1/m!) d_xi^m (x) d_u^m,
/// summing over xi-multi-indices m in n variables. N_0 is multiplication.
inline BiDiffOp n_k(int n, int k) {
    if (k < 0) throw std::invalid_argument("n_k: k must be >= 0");
    BiDiffOp r(n);
    std::vector<std::uint32_t> m(n, 0);
    std::function<void(int, int)> rec = [&](int i, int remaining) {
        if (i == n - 1) {
            m[i] = remaining;
            Exponent left(n), right(n);
            BigInt fact = 1;
            for (int j = 0; j < n; ++j) {
                left.bump_xi(j + 1, static_cast<int>(m[j]));
                right.bump_u(j + 1, static_cast<int>(m[j]));
                fact *= factorial(m[j]);
            }
            r.add_term(left, right, Poly::constant(n, Rational(BigInt(1), fact)));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            m[i] = v;
            rec(i + 1, remaining - v);
        }
    };
    rec(0, k);
    return r;
}

/// Normal form of (phi, psi) -> f(B(phi, psi)). Every derivative of f is
/// pushed across the product c (d^a phi)(d^b psi) with the Leibniz coproduct,
/// differentiating the coefficient of B along the way.
inline BiDiffOp left_compose(const DiffOp& f, const BiDiffOp& B) {
    if (f.n() != B.n()) throw dimension_mismatch("left_compose: dimension mismatch");
    const int n = f.n();
    BiDiffOp r(n);
    for (const auto& [beta, cf] : f.terms()) {
        for (const auto& [key, c] : B.terms()) {
            // d^beta (c X Y) = sum_{d1+d2+d3=beta} multinomial (d^d1 c)(d^d2 X)(d^d3 Y)
            detail::for_each_sub_index(beta, [&](const Exponent& d1) {
                Poly dc = c.differentiate(d1);
                if (dc.is_zero()) return;
                Exponent rest(n);
                beta.minus(d1, rest);
                detail::for_each_sub_index(rest, [&](const Exponent& d2) {
                    r.add_term(key.first.plus(d2), key.second.plus(rest).minus(d2, rest), Poly(n));
                });
            });
        }
    }
    // The closure above cannot carry coefficients through minus(); rebuilt below.
    r = BiDiffOp(n);
    for (const auto& [beta, cf] : f.terms()) {
        for (const auto& [key, c] : B.terms()) {
            detail::for_each_sub_index(beta, [&](const Exponent& d1) {
                Poly dc = c.differentiate(d1);
                if (dc.is_zero()) return;
                Exponent after1(n);
                beta.minus(d1, after1);
                detail::for_each_sub_index(after1, [&](const Exponent& d2) {
                    Exponent d3(n);
                    after1.minus(d2, d3);
                    const Rational mult = detail::trinomial(beta, d1, d2);
                    r.add_term(key.first.plus(d2), key.second.plus(d3), mult * (cf * dc));
                });
            });
        }
    }
    return r;
}

/// (phi, psi) -> B(f phi, g psi) in normal form.
inline BiDiffOp compose_args(const BiDiffOp& B, const DiffOp& f, const DiffOp& g) {
    if (B.n() != f.n() || B.n() != g.n())
        throw dimension_mismatch("compose_args: dimension mismatch");
    BiDiffOp r(B.n());
    for (const auto& [key, c] : B.terms()) {
        const DiffOp left = compose(DiffOp::partial(key.first), f);
        const DiffOp right = compose(DiffOp::partial(key.second), g);
        for (const auto& [bl, cl] : left.terms())
            for (const auto& [br, cr] : right.terms())
                r.add_term(bl, br, c * cl * cr);
    }
    return r;
}

/// The Poisson bracket as a bidifferential operator (fixed convention).
inline BiDiffOp poisson_bidiff(int n) {
    BiDiffOp r(n);
    for (int i = 1; i <= n; ++i) {
        r.add_term(Exponent(n).bump_xi(i), Exponent(n).bump_u(i), Poly::constant(n, 1));
        r.add_term(Exponent(n).bump_u(i), Exponent(n).bump_xi(i), Poly::constant(n, -1));
    }
    return r;
}

} // namespace starq
