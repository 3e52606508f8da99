#include "tightree/rational.hpp"

#include "tightree/errors.hpp"

#include <cctype>

namespace tightree {

BigInt floor(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num)
        quot -= 1;
    return quot;
}

std::string to_string(const Rational& q) {
    return q.str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty())
            throw PreconditionError("malformed rational '" + text + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size())
            throw PreconditionError("malformed rational '" + text + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw PreconditionError("malformed rational '" + text + "'");
        return BigInt(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos)
        return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw PreconditionError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

} // namespace tightree
