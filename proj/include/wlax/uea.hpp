#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlax/liealg.hpp"

namespace wlax {

/// A PBW monomial: weakly increasing basis indices.
using Word = std::vector<std::uint16_t>;

/// Degree first, then lexicographic. Constants sort first.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

using WordTerms = std::map<Word, Scalar, WordLess>;

inline constexpr std::size_t kDefaultDegreeCap = 24;

/// U(g) for a fixed algebra. The PBW order is the basis index order.
/// Caches straightening results; the cache is internally synchronised.
class Enveloping {
public:
    explicit Enveloping(AlgebraPtr alg, std::size_t degree_cap = kDefaultDegreeCap);

    const LieAlgebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    std::size_t degree_cap() const { return cap_; }

    /// Normal form of (normally ordered word) * u_x.
    const WordTerms& times_letter(const Word& w, std::uint16_t x) const;

private:
    AlgebraPtr alg_;
    std::size_t cap_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<Word, std::uint16_t>, WordTerms> cache_;
};

using EnvelopingPtr = std::shared_ptr<const Enveloping>;

/// Element of U(g) in PBW normal form with exact coefficients. A
/// default-constructed or scalar PBWPoly carries no context; context is
/// picked up from the other operand in mixed operations.
class PBWPoly {
public:
    PBWPoly() = default;
    PBWPoly(const Scalar& c);
    PBWPoly(long c) : PBWPoly(Scalar(c)) {}
    PBWPoly(EnvelopingPtr env, WordTerms terms);

    static PBWPoly generator(EnvelopingPtr env, std::size_t i);

    const WordTerms& terms() const { return terms_; }
    const EnvelopingPtr& context() const { return env_; }

    bool is_zero() const { return terms_.empty(); }
    std::optional<Scalar> as_scalar() const;
    std::size_t degree() const;

    PBWPoly& operator+=(const PBWPoly& o);
    PBWPoly& operator-=(const PBWPoly& o);
    PBWPoly& operator*=(const Scalar& c);
    friend PBWPoly operator+(PBWPoly a, const PBWPoly& b) { return a += b; }
    friend PBWPoly operator-(PBWPoly a, const PBWPoly& b) { return a -= b; }
    friend PBWPoly operator-(PBWPoly a) { return a *= Scalar(-1); }
    friend PBWPoly operator*(PBWPoly a, const Scalar& c) { return a *= c; }
    friend PBWPoly operator*(const Scalar& c, PBWPoly a) { return a *= c; }
    friend PBWPoly operator*(const PBWPoly& a, const PBWPoly& b);
    friend bool operator==(const PBWPoly& a, const PBWPoly& b) { return a.terms_ == b.terms_; }

    /// Canonical text form, e.g. `1 - e11 - e22` or `-3/2*e11^2*e21`.
    std::string to_string() const;

private:
    void adopt(const EnvelopingPtr& env);
    EnvelopingPtr env_;
    WordTerms terms_;
};

std::string to_string(const PBWPoly& p);
std::string word_to_string(const LieAlgebra& alg, const Word& w);

/// Straightens coeff * u_{w_1} ... u_{w_k} for an arbitrary index sequence.
PBWPoly normal_form(const EnvelopingPtr& env, const std::vector<std::size_t>& word, const Scalar& coeff = 1);

PBWPoly multiply(const PBWPoly& a, const PBWPoly& b);
PBWPoly commutator(const PBWPoly& a, const PBWPoly& b);

/// Canonical representative in U(g) / U(g){m - (f|m) : m in g_{>=1}}:
/// a PBWPoly with no factor from I_{>=1}.
struct QuotientRep {
    PBWPoly value;
    friend bool operator==(const QuotientRep& a, const QuotientRep& b) { return a.value == b.value; }
};

/// Requires `a` to live in U(grading.algebra) (the degree-sorted basis).
QuotientRep reduce_mod_ideal(const PBWPoly& a, const GradingData& grading);

/// True iff reduce([b, a]) = 0 for every basis element b of g_{>0}.
bool ad_invariance_check(const QuotientRep& a, const GradingData& grading);

/// Fails with the first offending basis label, if any.
std::optional<std::string> ad_invariance_failure(const QuotientRep& a, const GradingData& grading);

} // namespace wlax
