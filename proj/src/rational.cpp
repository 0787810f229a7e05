#include "treeprod/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace treeprod {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// The string constructor reads a leading 0 as octal, so strip leading zeros first.
boost::multiprecision::mpz_int decimal(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return boost::multiprecision::mpz_int(std::string(digits.empty() ? "0" : digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty number");

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("bad fraction: " + std::string(text));
        const auto n = decimal(num), d = decimal(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
        value = Rational(n, d);
    } else {
        auto dot = body.find('.');
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw std::invalid_argument("bad number: " + std::string(text));
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("bad number: " + std::string(text));
        const auto n = decimal(std::string(whole) + std::string(frac));
        boost::multiprecision::mpz_int d = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                                      static_cast<unsigned>(frac.size()));
        value = Rational(n, d);
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
    auto n = boost::multiprecision::numerator(q);
    auto d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rational power(const Rational& r, int k) {
    if (k < 0) {
        if (r == 0) throw std::domain_error("zero to a negative power");
        return power(Rational(1) / r, -k);
    }
    Rational out = 1;
    Rational base = r;
    for (unsigned e = static_cast<unsigned>(k); e; e >>= 1) {
        if (e & 1u) out *= base;
        base *= base;
    }
    return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace treeprod
