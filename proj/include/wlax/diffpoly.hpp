#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlax/scalar.hpp"

namespace wlax {

/// The symbol u_gen^(order).
struct DVar {
    std::uint32_t gen = 0;
    std::uint32_t order = 0;
    auto operator<=>(const DVar&) const = default;
};

/// Sorted (variable, exponent) pairs with positive exponents.
using DMonomial = std::vector<std::pair<DVar, std::uint32_t>>;

/// Total degree first, then lexicographic in (generator, order).
struct DMonomialLess {
    bool operator()(const DMonomial& a, const DMonomial& b) const;
};

using NamesPtr = std::shared_ptr<const std::vector<std::string>>;

NamesPtr make_names(std::vector<std::string> names);

/// Polynomial in the commuting symbols u_i^(n). Generator names travel with
/// the value for printing; scalars carry none and adopt them on contact.
class DiffPoly {
public:
    using Terms = std::map<DMonomial, Scalar, DMonomialLess>;

    DiffPoly() = default;
    DiffPoly(const Scalar& c);
    DiffPoly(long c) : DiffPoly(Scalar(c)) {}
    DiffPoly(NamesPtr names, Terms terms);

    static DiffPoly variable(NamesPtr names, std::size_t gen, std::size_t order = 0);

    const Terms& terms() const { return terms_; }
    const NamesPtr& names() const { return names_; }

    bool is_zero() const { return terms_.empty(); }
    std::optional<Scalar> as_scalar() const;
    std::size_t degree() const;

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const Scalar& c);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator-(DiffPoly a) { return a *= Scalar(-1); }
    friend DiffPoly operator*(DiffPoly a, const Scalar& c) { return a *= c; }
    friend DiffPoly operator*(const Scalar& c, DiffPoly a) { return a *= c; }
    friend DiffPoly operator*(long c, DiffPoly a) { return a *= Scalar(c); }
    friend DiffPoly operator*(DiffPoly a, long c) { return a *= Scalar(c); }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

    /// Total derivative.
    DiffPoly derivative() const;
    DiffPoly derivative(std::size_t times) const;
    /// Partial derivative in u_gen^(order).
    DiffPoly partial(DVar v) const;

    /// Every variable that occurs.
    std::vector<DVar> variables() const;
    /// Highest derivative order of `gen`, or nullopt if absent.
    std::optional<std::uint32_t> max_order(std::uint32_t gen) const;

    /// Replaces each variable v with subst(v) when it returns a value.
    DiffPoly substitute(const std::function<std::optional<DiffPoly>(DVar)>& subst) const;

    DiffPoly with_names(NamesPtr names) const;

    std::string to_string() const;

private:
    void adopt(const NamesPtr& n);

    NamesPtr names_;
    Terms terms_;
};

std::string to_string(const DiffPoly& p);
std::string variable_name(const NamesPtr& names, DVar v);

/// Parses the text grammar of docs/grammar.md: sums of terms
/// `coeff*name^k*name'*name^(n)...` over the given generator names.
DiffPoly parse_diffpoly(const std::string& text, const NamesPtr& names);

/// Polynomial in lambda with DiffPoly coefficients; coeffs()[k] multiplies lambda^k.
class LambdaPoly {
public:
    LambdaPoly() = default;
    explicit LambdaPoly(std::vector<DiffPoly> coeffs);
    LambdaPoly(const DiffPoly& constant);

    static LambdaPoly monomial(const DiffPoly& c, std::size_t power);

    const std::vector<DiffPoly>& coeffs() const { return c_; }
    DiffPoly coeff(std::size_t k) const { return k < c_.size() ? c_[k] : DiffPoly(); }
    /// Degree in lambda; -1 for zero.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    LambdaPoly& operator+=(const LambdaPoly& o);
    LambdaPoly& operator-=(const LambdaPoly& o);
    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
    friend LambdaPoly operator-(LambdaPoly a);
    friend LambdaPoly operator*(const DiffPoly& d, const LambdaPoly& p);
    friend LambdaPoly operator*(const LambdaPoly& p, const Scalar& s);
    friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.c_ == b.c_; }

    /// Multiplies by lambda.
    LambdaPoly times_lambda() const;
    /// Total derivative of every coefficient.
    LambdaPoly derivative() const;
    /// (lambda + d)^n applied to this, d acting on the coefficients.
    LambdaPoly shift_power(std::size_t n) const;
    /// (-lambda - d)^n applied to this.
    LambdaPoly neg_shift_power(std::size_t n) const;

    /// sum_k c_k (lambda + d)^k x, d acting on x.
    LambdaPoly apply_shifted(const LambdaPoly& x) const;
    /// sum_k (-lambda - d)^k c_k, d acting on c_k.
    LambdaPoly skew_substitute() const;

    LambdaPoly map(const std::function<DiffPoly(const DiffPoly&)>& f) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<DiffPoly> c_;
};

std::string to_string(const LambdaPoly& p);

} // namespace wlax
