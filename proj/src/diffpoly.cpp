#include "wlax/diffpoly.hpp"

#include <algorithm>
#include <cctype>

namespace wlax {

namespace {

std::size_t monomial_degree(const DMonomial& m)
{
    std::size_t d = 0;
    for (const auto& [v, e] : m)
        d += e;
    return d;
}

DMonomial multiply_monomials(const DMonomial& a, const DMonomial& b)
{
    DMonomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

void add_term(DiffPoly::Terms& t, const DMonomial& m, const Scalar& c)
{
    if (c == 0)
        return;
    auto it = t.find(m);
    if (it == t.end()) {
        t.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        t.erase(it);
}

} // namespace

bool DMonomialLess::operator()(const DMonomial& a, const DMonomial& b) const
{
    std::size_t da = monomial_degree(a), db = monomial_degree(b);
    if (da != db)
        return da < db;
    // Expand to flat variable sequences and compare lexicographically.
    std::size_t i = 0, j = 0, ei = 0, ej = 0;
    while (i < a.size() && j < b.size()) {
        const DVar& va = a[i].first;
        const DVar& vb = b[j].first;
        if (va != vb)
            return va < vb;
        if (++ei == a[i].second) {
            ++i;
            ei = 0;
        }
        if (++ej == b[j].second) {
            ++j;
            ej = 0;
        }
    }
    return false;
}

NamesPtr make_names(std::vector<std::string> names)
{
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

DiffPoly::DiffPoly(const Scalar& c)
{
    if (c != 0)
        terms_.emplace(DMonomial{}, c);
}

DiffPoly::DiffPoly(NamesPtr names, Terms terms) : names_(std::move(names)), terms_(std::move(terms))
{
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

DiffPoly DiffPoly::variable(NamesPtr names, std::size_t gen, std::size_t order)
{
    if (names && gen >= names->size())
        throw InvalidArgument("generator index out of range");
    Terms t;
    t.emplace(DMonomial{{DVar{static_cast<std::uint32_t>(gen), static_cast<std::uint32_t>(order)}, 1}}, Scalar(1));
    return DiffPoly(std::move(names), std::move(t));
}

std::optional<Scalar> DiffPoly::as_scalar() const
{
    if (terms_.empty())
        return Scalar(0);
    if (terms_.size() == 1 && terms_.begin()->first.empty())
        return terms_.begin()->second;
    return std::nullopt;
}

std::size_t DiffPoly::degree() const
{
    std::size_t d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, monomial_degree(m));
    return d;
}

void DiffPoly::adopt(const NamesPtr& n)
{
    if (!names_)
        names_ = n;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o)
{
    adopt(o.names_);
    for (const auto& [m, c] : o.terms_)
        add_term(terms_, m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o)
{
    adopt(o.names_);
    for (const auto& [m, c] : o.terms_)
        add_term(terms_, m, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Scalar& c)
{
    if (c == 0)
        terms_.clear();
    else
        for (auto& [m, v] : terms_)
            v *= c;
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b)
{
    DiffPoly::Terms out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            add_term(out, multiply_monomials(ma, mb), ca * cb);
    return DiffPoly(a.names_ ? a.names_ : b.names_, std::move(out));
}

DiffPoly DiffPoly::derivative() const
{
    Terms out;
    for (const auto& [m, c] : terms_)
        for (std::size_t k = 0; k < m.size(); ++k) {
            // d(v^e) = e v^(e-1) v'
            DMonomial rest = m;
            Scalar coeff = c * Scalar(static_cast<long>(rest[k].second));
            DVar next{rest[k].first.gen, rest[k].first.order + 1};
            if (--rest[k].second == 0)
                rest.erase(rest.begin() + static_cast<long>(k));
            add_term(out, multiply_monomials(rest, DMonomial{{next, 1}}), coeff);
        }
    return DiffPoly(names_, std::move(out));
}

DiffPoly DiffPoly::derivative(std::size_t times) const
{
    DiffPoly r = *this;
    for (std::size_t k = 0; k < times && !r.is_zero(); ++k)
        r = r.derivative();
    return r;
}

DiffPoly DiffPoly::partial(DVar v) const
{
    Terms out;
    for (const auto& [m, c] : terms_) {
        auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == v; });
        if (it == m.end())
            continue;
        DMonomial rest = m;
        auto& slot = rest[static_cast<std::size_t>(it - m.begin())];
        Scalar coeff = c * Scalar(static_cast<long>(slot.second));
        if (--slot.second == 0)
            rest.erase(rest.begin() + (it - m.begin()));
        add_term(out, rest, coeff);
    }
    return DiffPoly(names_, std::move(out));
}

std::vector<DVar> DiffPoly::variables() const
{
    std::vector<DVar> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::optional<std::uint32_t> DiffPoly::max_order(std::uint32_t gen) const
{
    std::optional<std::uint32_t> best;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v.gen == gen && (!best || v.order > *best))
                best = v.order;
    return best;
}

DiffPoly DiffPoly::substitute(const std::function<std::optional<DiffPoly>(DVar)>& subst) const
{
    std::map<DVar, std::optional<DiffPoly>> cache;
    auto lookup = [&](DVar v) -> const std::optional<DiffPoly>& {
        auto it = cache.find(v);
        if (it == cache.end())
            it = cache.emplace(v, subst(v)).first;
        return it->second;
    };
    DiffPoly out;
    out.names_ = names_;
    for (const auto& [m, c] : terms_) {
        DiffPoly term(c);
        DMonomial kept;
        for (const auto& [v, e] : m) {
            const auto& r = lookup(v);
            if (!r) {
                kept.emplace_back(v, e);
                continue;
            }
            for (std::uint32_t k = 0; k < e; ++k)
                term = term * *r;
        }
        Terms kt;
        kt.emplace(std::move(kept), Scalar(1));
        out += term * DiffPoly(names_, std::move(kt));
    }
    return out;
}

DiffPoly DiffPoly::with_names(NamesPtr names) const
{
    DiffPoly r = *this;
    r.names_ = std::move(names);
    return r;
}

std::string variable_name(const NamesPtr& names, DVar v)
{
    std::string base = names && v.gen < names->size() ? (*names)[v.gen] : "x" + std::to_string(v.gen);
    if (v.order <= 3)
        return base + std::string(v.order, '\'');
    return base + "^(" + std::to_string(v.order) + ")";
}

std::string DiffPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Scalar mag = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (m.empty()) {
            s += wlax::to_string(mag);
            continue;
        }
        if (mag != 1)
            s += wlax::to_string(mag) + "*";
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k)
                s += "*";
            s += variable_name(names_, m[k].first);
            if (m[k].second > 1)
                s += "^" + std::to_string(m[k].second);
        }
    }
    return s;
}

std::string to_string(const DiffPoly& p) { return p.to_string(); }

namespace {

class Parser {
public:
    Parser(const std::string& text, const NamesPtr& names) : s_(text), names_(names)
    {
        std::vector<std::size_t> idx(names->size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        // Longest names first so that e.g. "e11" wins over "e1".
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return (*names)[a].size() > (*names)[b].size(); });
        order_ = idx;
    }

    DiffPoly parse()
    {
        DiffPoly r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw InvalidArgument("cannot parse differential polynomial at position " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    DiffPoly expr()
    {
        DiffPoly r(Scalar(0));
        r = r.with_names(names_);
        bool negate = false;
        skip();
        if (eat('-'))
            negate = true;
        else
            eat('+');
        for (;;) {
            DiffPoly t = term();
            r += negate ? -t : t;
            if (eat('+'))
                negate = false;
            else if (eat('-'))
                negate = true;
            else
                return r;
        }
    }

    DiffPoly term()
    {
        DiffPoly r = factor();
        for (;;) {
            if (eat('*'))
                r = r * factor();
            else if (eat('/')) {
                Scalar d = number();
                if (d == 0)
                    fail("division by zero");
                r *= 1 / d;
            } else
                return r;
        }
    }

    unsigned long integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return std::stoul(s_.substr(start, pos_ - start));
    }

    Scalar number() { return Scalar(static_cast<long>(integer())); }

    DiffPoly factor()
    {
        skip();
        DiffPoly base;
        if (eat('(')) {
            base = expr();
            if (!eat(')'))
                fail("expected ')'");
        } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            base = DiffPoly(number()).with_names(names_);
        } else {
            std::optional<std::size_t> gen;
            for (std::size_t i : order_) {
                const std::string& n = (*names_)[i];
                if (!n.empty() && s_.compare(pos_, n.size(), n) == 0) {
                    gen = i;
                    pos_ += n.size();
                    break;
                }
            }
            if (!gen)
                fail("unknown symbol");
            std::size_t order = 0;
            while (pos_ < s_.size() && s_[pos_] == '\'') {
                ++order;
                ++pos_;
            }
            if (order == 0 && s_.compare(pos_, 2, "^(") == 0) {
                pos_ += 2;
                order = integer();
                if (!eat(')'))
                    fail("expected ')'");
            }
            base = DiffPoly::variable(names_, *gen, order);
        }
        if (eat('^')) {
            unsigned long e = integer();
            DiffPoly r(Scalar(1));
            for (unsigned long k = 0; k < e; ++k)
                r = r * base;
            return r.with_names(names_);
        }
        return base;
    }

    const std::string& s_;
    NamesPtr names_;
    std::vector<std::size_t> order_;
    std::size_t pos_ = 0;
};

} // namespace

DiffPoly parse_diffpoly(const std::string& text, const NamesPtr& names)
{
    if (!names)
        throw InvalidArgument("parsing needs generator names");
    return Parser(text, names).parse();
}

LambdaPoly::LambdaPoly(std::vector<DiffPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

LambdaPoly::LambdaPoly(const DiffPoly& constant)
{
    if (!constant.is_zero())
        c_.push_back(constant);
}

LambdaPoly LambdaPoly::monomial(const DiffPoly& c, std::size_t power)
{
    std::vector<DiffPoly> v(power + 1);
    v[power] = c;
    return LambdaPoly(std::move(v));
}

void LambdaPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
        c_[k] += o.c_[k];
    trim();
    return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
        c_[k] -= o.c_[k];
    trim();
    return *this;
}

LambdaPoly operator-(LambdaPoly a)
{
    for (auto& c : a.c_)
        c *= Scalar(-1);
    return a;
}

LambdaPoly operator*(const DiffPoly& d, const LambdaPoly& p)
{
    std::vector<DiffPoly> v;
    v.reserve(p.c_.size());
    for (const auto& c : p.c_)
        v.push_back(d * c);
    return LambdaPoly(std::move(v));
}

LambdaPoly operator*(const LambdaPoly& p, const Scalar& s)
{
    LambdaPoly r = p;
    for (auto& c : r.c_)
        c *= s;
    r.trim();
    return r;
}

LambdaPoly LambdaPoly::times_lambda() const
{
    if (c_.empty())
        return *this;
    std::vector<DiffPoly> v;
    v.reserve(c_.size() + 1);
    v.emplace_back();
    v.insert(v.end(), c_.begin(), c_.end());
    return LambdaPoly(std::move(v));
}

LambdaPoly LambdaPoly::derivative() const
{
    std::vector<DiffPoly> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(c.derivative());
    return LambdaPoly(std::move(v));
}

LambdaPoly LambdaPoly::shift_power(std::size_t n) const
{
    LambdaPoly r = *this;
    for (std::size_t k = 0; k < n && !r.is_zero(); ++k)
        r = r.times_lambda() + r.derivative();
    return r;
}

LambdaPoly LambdaPoly::neg_shift_power(std::size_t n) const
{
    LambdaPoly r = *this;
    for (std::size_t k = 0; k < n && !r.is_zero(); ++k)
        r = -(r.times_lambda() + r.derivative());
    return r;
}

LambdaPoly LambdaPoly::apply_shifted(const LambdaPoly& x) const
{
    LambdaPoly out;
    LambdaPoly power = x;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (k > 0)
            power = power.times_lambda() + power.derivative();
        if (!c_[k].is_zero())
            out += c_[k] * power;
    }
    return out;
}

LambdaPoly LambdaPoly::skew_substitute() const
{
    LambdaPoly out;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero())
            out += LambdaPoly(c_[k]).neg_shift_power(k);
    return out;
}

LambdaPoly LambdaPoly::map(const std::function<DiffPoly(const DiffPoly&)>& f) const
{
    std::vector<DiffPoly> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(f(c));
    return LambdaPoly(std::move(v));
}

std::string LambdaPoly::to_string() const
{
    if (c_.empty())
        return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        std::string cs = c_[k].to_string();
        if (k == 0)
            s += "(" + cs + ")";
        else {
            std::string mono = k == 1 ? "λ" : "λ^" + std::to_string(k);
            s += cs == "1" ? mono : mono + " * (" + cs + ")";
        }
    }
    return s;
}

std::string to_string(const LambdaPoly& p) { return p.to_string(); }

} // namespace wlax
