#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>

#include "wlax/scalar.hpp"

namespace wlax {

/// Sentinel precision of an exact (finite, untruncated) series.
inline constexpr int kExact = std::numeric_limits<int>::min() / 4;
inline constexpr int kDefaultTrunc = -8;

template <class C>
struct coeff_traits {
    static bool is_zero(const C& c) { return c.is_zero(); }
    static std::optional<Scalar> as_scalar(const C& c) { return c.as_scalar(); }
    static std::string to_string(const C& c) { return c.to_string(); }
};

template <>
struct coeff_traits<Scalar> {
    static bool is_zero(const Scalar& c) { return c == 0; }
    static std::optional<Scalar> as_scalar(const Scalar& c) { return c; }
    static std::string to_string(const Scalar& c) { return wlax::to_string(c); }
};

/// The formal variable commutes with coefficients (z in U(g)((z^-1))).
struct CentralVariable {
    static constexpr const char* name = "z";
};
/// The formal variable is a derivation: d o a = a d + a' (pseudodifferential
/// operators). Coefficients must provide derivative().
struct DerivationVariable {
    static constexpr const char* name = "∂";
};

/// Truncated series sum_{k <= top} c_k t^k. Terms below trunc() are never
/// stored; coefficients of powers >= prec() are exact. An exact series
/// (prec() == kExact) is a finite Laurent polynomial.
template <class Coeff, class Var>
class SymbolSeries {
public:
    using coeff_type = Coeff;
    using Terms = std::map<int, Coeff, std::greater<>>;

    explicit SymbolSeries(int trunc = kDefaultTrunc) : trunc_(trunc) {}
    SymbolSeries(Terms terms, int trunc, int prec = kExact) : terms_(std::move(terms)), trunc_(trunc), prec_(prec)
    {
        normalize();
    }

    static SymbolSeries monomial(const Coeff& c, int power, int trunc = kDefaultTrunc)
    {
        Terms t;
        t.emplace(power, c);
        return SymbolSeries(std::move(t), trunc);
    }
    static SymbolSeries constant(const Coeff& c, int trunc = kDefaultTrunc) { return monomial(c, 0, trunc); }

    const Terms& terms() const { return terms_; }
    int trunc() const { return trunc_; }
    int prec() const { return prec_; }
    bool exact() const { return prec_ == kExact; }
    bool exact_zero() const { return exact() && terms_.empty(); }
    bool known_zero() const { return terms_.empty(); }

    /// Highest power that may carry a nonzero coefficient.
    int top_bound() const
    {
        int t = terms_.empty() ? kExact : terms_.begin()->first;
        if (!exact())
            t = std::max(t, prec_ - 1);
        return t;
    }
    std::optional<int> top() const
    {
        if (terms_.empty())
            return std::nullopt;
        return terms_.begin()->first;
    }

    Coeff coeff(int k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Coeff(Scalar(0)) : it->second;
    }

    /// Leading coefficient when it is a nonzero scalar at a known power.
    std::optional<std::pair<int, Scalar>> unit_leading() const
    {
        if (terms_.empty())
            return std::nullopt;
        auto [k, c] = *terms_.begin();
        if (k < prec_ || k < top_bound())
            return std::nullopt;
        auto s = coeff_traits<Coeff>::as_scalar(c);
        if (!s || *s == 0)
            return std::nullopt;
        return std::make_pair(k, *s);
    }

    SymbolSeries& operator+=(const SymbolSeries& o) { return accumulate(o, Scalar(1)); }
    SymbolSeries& operator-=(const SymbolSeries& o) { return accumulate(o, Scalar(-1)); }
    SymbolSeries& operator*=(const Scalar& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_)
            v = v * c;
        return *this;
    }
    friend SymbolSeries operator+(SymbolSeries a, const SymbolSeries& b) { return a += b; }
    friend SymbolSeries operator-(SymbolSeries a, const SymbolSeries& b) { return a -= b; }
    friend SymbolSeries operator-(SymbolSeries a) { return a *= Scalar(-1); }
    friend SymbolSeries operator*(SymbolSeries a, const Scalar& c) { return a *= c; }

    friend SymbolSeries operator*(const SymbolSeries& a, const SymbolSeries& b) { return multiply(a, b); }

    /// Drops powers below `order`; the precision degrades accordingly.
    SymbolSeries truncated(int order) const
    {
        SymbolSeries r = *this;
        r.trunc_ = order;
        r.normalize();
        return r;
    }
    SymbolSeries with_trunc(int order) const
    {
        SymbolSeries r = *this;
        r.trunc_ = order;
        r.normalize();
        return r;
    }

    /// Two-sided inverse down to power `floor`. Requires a unit scalar
    /// leading coefficient.
    SymbolSeries inverse(int floor) const
    {
        auto lead = unit_leading();
        if (!lead)
            throw ComputationError("series is not invertible: leading coefficient is not a nonzero scalar");
        auto [m, c] = *lead;
        // a = (1 + q) c t^m  with  q = r t^{-m} c^{-1}, r = a - c t^m.
        SymbolSeries r = *this;
        r.terms_.erase(m);
        Scalar cinv = 1 / c;
        SymbolSeries lead_inv = monomial(Coeff(cinv), -m, floor);
        SymbolSeries q = (r * monomial(Coeff(cinv), -m, floor + m)).with_trunc(floor + m);
        SymbolSeries sum = constant(Coeff(Scalar(1)), floor + m);
        if (!q.exact_zero()) {
            SymbolSeries power = sum;
            // q has order <= -1, so q^k only reaches down to -k.
            for (int k = 1; k <= -(floor + m); ++k) {
                power = -(power * q);
                if (power.exact_zero())
                    break;
                sum += power;
            }
            if (!(q.exact() && power.exact_zero()))
                sum.degrade_to(floor + m);
        }
        return (lead_inv * sum).with_trunc(floor);
    }

    std::string to_string() const
    {
        std::string s;
        for (const auto& [k, c] : terms_) {
            std::string cs = coeff_traits<Coeff>::to_string(c);
            std::string mono = k == 0 ? "" : (k == 1 ? std::string(Var::name) : std::string(Var::name) + "^" + std::to_string(k));
            std::string term;
            if (mono.empty())
                term = "(" + cs + ")";
            else if (cs == "1")
                term = mono;
            else if (cs == "-1")
                term = "-" + mono;
            else
                term = "(" + cs + ")*" + mono;
            if (!s.empty())
                s += " + ";
            s += term;
        }
        if (!exact())
            s += std::string(s.empty() ? "" : " + ") + "O(" + Var::name + "^" + std::to_string(prec_ - 1) + ")";
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const SymbolSeries& a, const SymbolSeries& b)
    {
        return a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

    /// Marks every power below `p` as unknown.
    void degrade_to(int p)
    {
        if (p > prec_)
            prec_ = p;
        normalize();
    }

private:
    void normalize()
    {
        int lower = std::max(trunc_, prec_);
        bool dropped = false;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (coeff_traits<Coeff>::is_zero(it->second)) {
                it = terms_.erase(it);
            } else if (it->first < lower) {
                if (it->first < trunc_)
                    dropped = true;
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        if (dropped)
            prec_ = std::max(prec_, trunc_);
    }

    SymbolSeries& accumulate(const SymbolSeries& o, const Scalar& sign)
    {
        trunc_ = std::min(trunc_, o.trunc_);
        prec_ = std::max(prec_, o.prec_);
        for (const auto& [k, c] : o.terms_) {
            auto it = terms_.find(k);
            if (it == terms_.end())
                terms_.emplace(k, c * sign);
            else
                it->second = it->second + c * sign;
        }
        normalize();
        return *this;
    }

    static SymbolSeries multiply(const SymbolSeries& a, const SymbolSeries& b)
    {
        int trunc = std::min(a.trunc_, b.trunc_);
        if (a.exact_zero() || b.exact_zero())
            return SymbolSeries(trunc);
        int prec = kExact;
        if (!a.exact() || !b.exact())
            prec = std::max(a.prec_ + b.top_bound(), b.prec_ + a.top_bound());
        int lower = std::max(prec, trunc);
        bool cut = false;
        Terms out;
        auto add = [&](int k, Coeff v) {
            if (coeff_traits<Coeff>::is_zero(v))
                return;
            auto it = out.find(k);
            if (it == out.end())
                out.emplace(k, std::move(v));
            else
                it->second = it->second + v;
        };
        for (const auto& [i, ca] : a.terms_) {
            for (const auto& [j, cb] : b.terms_) {
                if constexpr (std::is_same_v<Var, CentralVariable>) {
                    if (i + j < lower) {
                        if (i + j < trunc)
                            cut = true;
                        continue;
                    }
                    add(i + j, ca * cb);
                } else {
                    // a_i d^i o b_j d^j = sum_k C(i,k) a_i b_j^(k) d^{i+j-k}
                    Coeff deriv = cb;
                    for (long k = 0;; ++k) {
                        if (i >= 0 && k > i)
                            break;
                        if (coeff_traits<Coeff>::is_zero(deriv))
                            break;
                        int p = i + j - static_cast<int>(k);
                        if (p < lower) {
                            if (p < trunc)
                                cut = true;
                            break;
                        }
                        add(p, ca * deriv * binomial(i, k));
                        deriv = deriv.derivative();
                    }
                }
            }
        }
        SymbolSeries r(std::move(out), trunc, prec);
        if (cut)
            r.degrade_to(trunc);
        return r;
    }

    Terms terms_;
    int trunc_ = kDefaultTrunc;
    int prec_ = kExact;
};

template <class Coeff>
using LaurentSeries = SymbolSeries<Coeff, CentralVariable>;

} // namespace wlax
