#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "starq/rational.hpp"

namespace starq {

/// Monomial exponent in the Darboux chart: u_1..u_n positions and xi_1..xi_n
/// fiber momenta. The same type doubles as a derivative multi-index for the
/// operator algebra.
class Exponent {
public:
    explicit Exponent(int n) : u_(check_dim(n), 0), xi_(n, 0) {}
    Exponent(std::vector<std::uint32_t> u, std::vector<std::uint32_t> xi)
        : u_(std::move(u)), xi_(std::move(xi)) {
        if (u_.size() != xi_.size() || u_.empty())
            throw dimension_mismatch("Exponent: u/xi vectors must have equal positive length");
    }

    int n() const { return static_cast<int>(u_.size()); }
    std::uint32_t u(int i) const { return u_[idx(i)]; }
    std::uint32_t xi(int i) const { return xi_[idx(i)]; }
    const std::vector<std::uint32_t>& u_exponents() const { return u_; }
    const std::vector<std::uint32_t>& xi_exponents() const { return xi_; }

    Exponent& bump_u(int i, int by = 1) { u_[idx(i)] += by; return *this; }
    Exponent& bump_xi(int i, int by = 1) { xi_[idx(i)] += by; return *this; }

    int u_degree() const { return std::accumulate(u_.begin(), u_.end(), 0); }
    int xi_degree() const { return std::accumulate(xi_.begin(), xi_.end(), 0); }
    int total_degree() const { return u_degree() + xi_degree(); }
    bool is_zero() const { return total_degree() == 0; }

    Exponent plus(const Exponent& o) const {
        Exponent r = *this;
        for (std::size_t i = 0; i < u_.size(); ++i) { r.u_[i] += o.u_[i]; r.xi_[i] += o.xi_[i]; }
        return r;
    }

    /// Componentwise difference; false when any component would go negative.
    bool minus(const Exponent& o, Exponent& out) const {
        out = *this;
        for (std::size_t i = 0; i < u_.size(); ++i) {
            if (u_[i] < o.u_[i] || xi_[i] < o.xi_[i]) return false;
            out.u_[i] -= o.u_[i];
            out.xi_[i] -= o.xi_[i];
        }
        return true;
    }

    bool contains(const Exponent& o) const {
        for (std::size_t i = 0; i < u_.size(); ++i)
            if (u_[i] < o.u_[i] || xi_[i] < o.xi_[i]) return false;
        return true;
    }

    BigInt factorial_product() const {
        BigInt r = 1;
        for (auto e : u_) r *= factorial(e);
        for (auto e : xi_) r *= factorial(e);
        return r;
    }

    friend bool operator==(const Exponent& a, const Exponent& b) = default;

    /// Canonical term order: graded lexicographic on (total degree,
    /// u-exponents, xi-exponents). Fixed once so that printing, map
    /// iteration and golden tests are all deterministic.
    friend bool operator<(const Exponent& a, const Exponent& b) {
        const int ta = a.total_degree(), tb = b.total_degree();
        if (ta != tb) return ta < tb;
        if (a.u_ != b.u_) return a.u_ < b.u_;
        return a.xi_ < b.xi_;
    }

private:
    static int check_dim(int n) {
        if (n < 1) throw dimension_mismatch("Exponent: dimension must be >= 1");
        return n;
    }
    std::size_t idx(int i) const {
        if (i < 1 || i > n()) throw index_error("Exponent: variable index out of range");
        return static_cast<std::size_t>(i - 1);
    }
    std::vector<std::uint32_t> u_, xi_;
};

class GradedPoly;

/// Sparse multivariate polynomial over exact rationals in the 2n chart
/// variables. Immutable in spirit: all operations return new values.
class Poly {
public:
    explicit Poly(int n) : n_(n) {
        if (n < 1) throw dimension_mismatch("Poly: dimension must be >= 1");
    }

    static Poly zero(int n) { return Poly(n); }
    static Poly constant(int n, const Rational& c) {
        Poly p(n);
        p.add_term(Exponent(n), c);
        return p;
    }
    static Poly monomial(const Exponent& e, const Rational& c) {
        Poly p(e.n());
        p.add_term(e, c);
        return p;
    }
    static Poly variable_u(int n, int i) { return monomial(Exponent(n).bump_u(i), 1); }
    static Poly variable_xi(int n, int i) { return monomial(Exponent(n).bump_xi(i), 1); }

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponent, Rational>& terms() const { return terms_; }

    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Constant term; exact value of the polynomial at the origin.
    Rational constant_term() const { return coefficient(Exponent(n_)); }

    void add_term(const Exponent& e, const Rational& c) {
        if (e.n() != n_) throw dimension_mismatch("Poly: exponent dimension mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_same_n(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same_n(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r(n_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same_n(b);
        Poly r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea.plus(eb), ca * cb);
        return r;
    }

    friend Poly operator*(const Rational& c, const Poly& a) { return scale(c, a); }

    static Poly scale(const Rational& c, const Poly& a) {
        Poly r(a.n_);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : a.terms_) r.terms_.emplace(e, c * k);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    Poly partial_u(int i) const { return differentiate(Exponent(n_).bump_u(i)); }
    Poly partial_xi(int i) const { return differentiate(Exponent(n_).bump_xi(i)); }

    /// Mixed partial d^beta, with the usual falling-factorial coefficients.
    Poly differentiate(const Exponent& beta) const {
        if (beta.n() != n_) throw dimension_mismatch("Poly: derivative index dimension mismatch");
        Poly r(n_);
        Exponent reduced(n_);
        for (const auto& [e, c] : terms_) {
            if (!e.minus(beta, reduced)) continue;
            BigInt fall = 1;
            for (int i = 1; i <= n_; ++i) {
                for (std::uint32_t k = 0; k < beta.u(i); ++k) fall *= e.u(i) - k;
                for (std::uint32_t k = 0; k < beta.xi(i); ++k) fall *= e.xi(i) - k;
            }
            r.add_term(reduced, c * Rational(fall, BigInt(1)));
        }
        return r;
    }

    int u_degree() const { return max_over_terms([](const Exponent& e) { return e.u_degree(); }); }
    int xi_degree() const { return max_over_terms([](const Exponent& e) { return e.xi_degree(); }); }
    int total_degree() const { return max_over_terms([](const Exponent& e) { return e.total_degree(); }); }

    int min_xi_degree() const {
        int m = -1;
        for (const auto& [e, c] : terms_) {
            const int d = e.xi_degree();
            if (m < 0 || d < m) m = d;
        }
        return m; // -1 for the zero polynomial
    }

    bool is_xi_homogeneous(int d) const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& t) { return t.first.xi_degree() == d; });
    }

    /// Component of homogeneous xi-degree d.
    Poly xi_component(int d) const {
        Poly r(n_);
        for (const auto& [e, c] : terms_)
            if (e.xi_degree() == d) r.terms_.emplace(e, c);
        return r;
    }

    GradedPoly grade() const;

    /// Degree-parity involution: multiplies the xi-degree-d component by
    /// (-1)^d. An algebra automorphism that negates the Poisson bracket.
    Poly alpha() const {
        Poly r(n_);
        for (const auto& [e, c] : terms_)
            r.terms_.emplace(e, e.xi_degree() % 2 == 0 ? c : -c);
        return r;
    }

    /// Canonical rendering, highest term first: "5/3*u1^2*xi1 - xi2".
    /// Exact round trip with parse_poly.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            const bool first = out.empty();
            const Rational mag = c.abs();
            if (first)
                out += c.is_negative() ? "-" : "";
            else
                out += c.is_negative() ? " - " : " + ";
            std::string vars = monomial_str(e);
            if (vars.empty())
                out += mag.str();
            else if (mag.is_one())
                out += vars;
            else
                out += mag.str() + "*" + vars;
        }
        return out;
    }

private:
    template <typename F>
    int max_over_terms(F&& degree) const {
        int m = 0;
        for (const auto& [e, c] : terms_) m = std::max(m, degree(e));
        return m;
    }

    static std::string monomial_str(const Exponent& e) {
        std::string out;
        auto emit = [&out](const std::string& base, std::uint32_t exp) {
            if (exp == 0) return;
            if (!out.empty()) out += "*";
            out += base;
            if (exp > 1) out += "^" + std::to_string(exp);
        };
        for (int i = 1; i <= e.n(); ++i) emit("u" + std::to_string(i), e.u(i));
        for (int i = 1; i <= e.n(); ++i) emit("xi" + std::to_string(i), e.xi(i));
        return out;
    }

    void check_same_n(const Poly& o) const {
        if (n_ != o.n_) throw dimension_mismatch("Poly: dimension mismatch");
    }

    int n_;
    std::map<Exponent, Rational> terms_;
};

/// Decomposition of a symbol by fiberwise (xi) degree.
class GradedPoly {
public:
    explicit GradedPoly(int n) : n_(n) {}

    int n() const { return n_; }
    const std::map<int, Poly>& components() const { return components_; }

    Poly component(int d) const {
        auto it = components_.find(d);
        return it == components_.end() ? Poly::zero(n_) : it->second;
    }

    void set_component(int d, Poly p) {
        if (p.is_zero()) return;
        if (!p.is_xi_homogeneous(d))
            throw std::logic_error("GradedPoly: component is not homogeneous of its degree");
        components_.insert_or_assign(d, std::move(p));
    }

    Poly reassemble() const {
        Poly r(n_);
        for (const auto& [d, p] : components_) r += p;
        return r;
    }

private:
    int n_;
    std::map<int, Poly> components_;
};

inline GradedPoly Poly::grade() const {
    GradedPoly g(n_);
    for (const auto& [e, c] : terms_) {
        const int d = e.xi_degree();
        Poly comp = g.component(d);
        comp.add_term(e, c);
        g.set_component(d, std::move(comp));
    }
    return g;
}

/// Canonical Poisson bracket of the chart, normalized so {xi_i, u_j} = delta_ij:
/// {a,b} = sum_i da/dxi_i db/du_i - da/du_i db/dxi_i.
inline Poly poisson(const Poly& a, const Poly& b) {
    if (a.n() != b.n()) throw dimension_mismatch("poisson: dimension mismatch");
    Poly r(a.n());
    for (int i = 1; i <= a.n(); ++i) {
        r += a.partial_xi(i) * b.partial_u(i);
        r -= a.partial_u(i) * b.partial_xi(i);
    }
    return r;
}

} // namespace starq
