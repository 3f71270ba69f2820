#include "ptamc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ptamc {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
            throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    }

    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("bad integer literal: " + text);
        q.canonicalize();
        return q;
    }

    // Decimal literal: digits '.' digits, optional sign.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || dot == 0 || (dot == 1 && (s[0] == '-' || s[0] == '+')))
        throw std::invalid_argument("bad decimal literal: " + text);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        char c = digits[i];
        if (i == 0 && (c == '-' || c == '+')) continue;
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad decimal literal: " + text);
    }
    mpz_class num(digits, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    if (den == 1) return num.get_str();

    // Try a short exact decimal: works iff den = 2^a * 5^b.
    mpz_class d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d == 1) {
        int digits = twos > fives ? twos : fives;
        if (digits <= 12) {
            mpz_class scale = 1;
            for (int i = 0; i < digits; ++i) scale *= 10;
            mpz_class scaled = num * scale / den;
            bool neg = scaled < 0;
            if (neg) scaled = -scaled;
            std::string body = scaled.get_str();
            while (static_cast<int>(body.size()) <= digits)
                body.insert(body.begin(), '0');
            body.insert(body.size() - digits, ".");
            while (body.back() == '0') body.pop_back();
            if (body.back() == '.') body.pop_back();
            return neg ? "-" + body : body;
        }
    }
    return num.get_str() + "/" + den.get_str();
}

}  // namespace ptamc
