#include "wlax/scalar.hpp"

#include <cctype>

namespace wlax {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(c);
    if (t.empty())
        throw InvalidArgument("empty rational literal");
    auto slash = t.find('/');
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InvalidArgument("malformed rational literal '" + std::string(text) + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class d(den);
    if (d == 0)
        throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    Scalar r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

Scalar binomial(long n, long k)
{
    if (k < 0)
        return 0;
    Scalar r = 1;
    for (long i = 0; i < k; ++i) {
        r *= Scalar(n - i);
        r /= Scalar(i + 1);
    }
    return r;
}

} // namespace wlax
