#include "wlax/uea.hpp"

#include <sstream>

namespace wlax {

namespace {

void add_into(WordTerms& dst, const Word& w, const Scalar& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = dst.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            dst.erase(it);
    }
}

void add_scaled(WordTerms& dst, const WordTerms& src, const Scalar& c)
{
    for (const auto& [w, v] : src)
        add_into(dst, w, v * c);
}

} // namespace

Enveloping::Enveloping(AlgebraPtr alg, std::size_t degree_cap) : alg_(std::move(alg)), cap_(degree_cap)
{
    if (alg_->dim() > 0xFFFF)
        throw InvalidArgument("algebra too large for PBW words");
}

const WordTerms& Enveloping::times_letter(const Word& w, std::uint16_t x) const
{
    auto key = std::make_pair(w, x);
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    if (w.size() + 1 > cap_)
        throw ComputationError("PBW degree cap of " + std::to_string(cap_) + " exceeded");

    WordTerms out;
    if (w.empty() || w.back() <= x) {
        Word r = w;
        r.push_back(x);
        out.emplace(std::move(r), 1);
    } else {
        // w = w' a with a > x:  w' a x = (w' x) a + w' [a, x].
        std::uint16_t a = w.back();
        Word prefix(w.begin(), w.end() - 1);
        WordTerms left = times_letter(prefix, x);
        for (const auto& [t, c] : left)
            add_scaled(out, times_letter(t, a), c);
        for (const auto& [k, c] : alg_->bracket(a, x))
            add_scaled(out, times_letter(prefix, static_cast<std::uint16_t>(k)), c);
    }
    std::lock_guard lock(mu_);
    return cache_.try_emplace(std::move(key), std::move(out)).first->second;
}

PBWPoly::PBWPoly(const Scalar& c)
{
    if (c != 0)
        terms_.emplace(Word{}, c);
}

PBWPoly::PBWPoly(EnvelopingPtr env, WordTerms terms) : env_(std::move(env)), terms_(std::move(terms))
{
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

PBWPoly PBWPoly::generator(EnvelopingPtr env, std::size_t i)
{
    WordTerms t;
    t.emplace(Word{static_cast<std::uint16_t>(i)}, 1);
    return PBWPoly(std::move(env), std::move(t));
}

std::optional<Scalar> PBWPoly::as_scalar() const
{
    if (terms_.empty())
        return Scalar(0);
    if (terms_.size() == 1 && terms_.begin()->first.empty())
        return terms_.begin()->second;
    return std::nullopt;
}

std::size_t PBWPoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

void PBWPoly::adopt(const EnvelopingPtr& env)
{
    if (!env_)
        env_ = env;
}

PBWPoly& PBWPoly::operator+=(const PBWPoly& o)
{
    adopt(o.env_);
    for (const auto& [w, c] : o.terms_)
        add_into(terms_, w, c);
    return *this;
}

PBWPoly& PBWPoly::operator-=(const PBWPoly& o)
{
    adopt(o.env_);
    for (const auto& [w, c] : o.terms_)
        add_into(terms_, w, -c);
    return *this;
}

PBWPoly& PBWPoly::operator*=(const Scalar& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_)
        v *= c;
    return *this;
}

PBWPoly operator*(const PBWPoly& a, const PBWPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return PBWPoly(a.env_ ? a.env_ : b.env_, {});
    if (auto s = a.as_scalar())
        return b * *s;
    if (auto s = b.as_scalar())
        return a * *s;
    const EnvelopingPtr& env = a.env_ ? a.env_ : b.env_;
    WordTerms out;
    for (const auto& [wb, cb] : b.terms_) {
        for (const auto& [wa, ca] : a.terms_) {
            // Fold the letters of wb into wa one at a time.
            WordTerms cur;
            cur.emplace(wa, ca * cb);
            for (auto x : wb) {
                WordTerms next;
                for (const auto& [w, c] : cur)
                    add_scaled(next, env->times_letter(w, x), c);
                cur = std::move(next);
            }
            for (const auto& [w, c] : cur)
                add_into(out, w, c);
        }
    }
    return PBWPoly(env, std::move(out));
}

std::string word_to_string(const LieAlgebra& alg, const Word& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        if (!s.empty())
            s += "*";
        s += alg.label(w[i]);
        if (j - i > 1)
            s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

std::string PBWPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        Scalar mag = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (w.empty()) {
            s += wlax::to_string(mag);
            continue;
        }
        if (mag != 1)
            s += wlax::to_string(mag) + "*";
        s += env_ ? word_to_string(env_->algebra(), w) : "?";
    }
    return s;
}

std::string to_string(const PBWPoly& p) { return p.to_string(); }

PBWPoly normal_form(const EnvelopingPtr& env, const std::vector<std::size_t>& word, const Scalar& coeff)
{
    PBWPoly r(env, WordTerms{{Word{}, coeff}});
    for (auto i : word) {
        if (i >= env->algebra().dim())
            throw InvalidArgument("basis index out of range");
        r = r * PBWPoly::generator(env, i);
    }
    return r;
}

PBWPoly multiply(const PBWPoly& a, const PBWPoly& b) { return a * b; }

PBWPoly commutator(const PBWPoly& a, const PBWPoly& b) { return a * b - b * a; }

QuotientRep reduce_mod_ideal(const PBWPoly& a, const GradingData& grading)
{
    if (a.context() && a.context()->algebra_ptr() != grading.algebra)
        throw InvalidArgument("reduce_mod_ideal: element is not over the graded algebra");
    std::vector<bool> high(grading.degree.size());
    std::vector<Scalar> value(grading.degree.size());
    for (std::size_t i = 0; i < high.size(); ++i) {
        high[i] = grading.degree[i] >= 1;
        if (high[i])
            value[i] = grading.f_pairing(i);
    }
    WordTerms out;
    for (const auto& [w, c] : a.terms()) {
        // I_{>=1} letters sort last; substitute them right to left.
        std::size_t cut = w.size();
        Scalar coeff = c;
        while (cut > 0 && high[w[cut - 1]]) {
            coeff *= value[w[cut - 1]];
            --cut;
        }
        for (std::size_t k = 0; k < cut; ++k)
            if (high[w[k]])
                throw ComputationError("PBW order does not place I_{>=1} last");
        if (coeff != 0)
            add_into(out, Word(w.begin(), w.begin() + static_cast<long>(cut)), coeff);
    }
    return {PBWPoly(a.context(), std::move(out))};
}

std::optional<std::string> ad_invariance_failure(const QuotientRep& a, const GradingData& grading)
{
    auto env = a.value.context();
    if (!env)
        return std::nullopt; // scalars are invariant
    for (std::size_t b : grading.indices_positive()) {
        PBWPoly gen = PBWPoly::generator(env, b);
        if (!reduce_mod_ideal(commutator(gen, a.value), grading).value.is_zero())
            return grading.algebra->label(b);
    }
    return std::nullopt;
}

bool ad_invariance_check(const QuotientRep& a, const GradingData& grading)
{
    return !ad_invariance_failure(a, grading).has_value();
}

} // namespace wlax
