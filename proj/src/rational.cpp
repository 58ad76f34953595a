#include "qfi/rational.hpp"

#include <cctype>

namespace qfi {

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (sgn(q.get_den()) == 0)
            throw std::invalid_argument("zero denominator in literal: " + text);
        q.canonicalize();
        return q;
    }
    // Finite decimal: digits '.' digits, optionally signed. Exact conversion.
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
        negative = head[0] == '-';
        head.erase(head.begin());
    }
    if (tail.empty() && head.empty())
        throw std::invalid_argument("bad decimal literal: " + text);
    for (char ch : head + tail)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("bad decimal literal: " + text);
    Integer numerator(head.empty() ? "0" : head);
    Integer scale = 1;
    for (char ch : tail) {
        numerator = numerator * 10 + (ch - '0');
        scale *= 10;
    }
    Rational q(numerator, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

bool rational_sqrt(const Rational& q, Rational& root) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        root = 0;
        return true;
    }
    Integer num_root, den_root;
    if (!mpz_perfect_square_p(q.get_num().get_mpz_t())) return false;
    if (!mpz_perfect_square_p(q.get_den().get_mpz_t())) return false;
    mpz_sqrt(num_root.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), q.get_den().get_mpz_t());
    root = Rational(num_root, den_root);
    root.canonicalize();
    return true;
}

void squarefree_decompose(const Rational& q, Rational& c, long& m) {
    if (sgn(q) == 0) {
        c = 0;
        m = 1;
        return;
    }
    // q = num/den = (num*den)/den^2, so sqrt(q) = sqrt(num*den)/den.
    Integer w = q.get_num() * q.get_den();
    const bool negative = sgn(w) < 0;
    if (negative) w = -w;
    Integer square = 1;
    Integer rest = 1;
    // Trial division; operands here are small (cleared constraint coefficients).
    for (Integer p = 2; p * p <= w; ++p) {
        int count = 0;
        while (mpz_divisible_p(w.get_mpz_t(), p.get_mpz_t())) {
            w /= p;
            ++count;
        }
        for (int i = 0; i + 1 < count; i += 2) square *= p;
        if (count % 2 == 1) rest *= p;
    }
    rest *= w;  // leftover prime
    if (!rest.fits_slong_p())
        throw std::overflow_error("square-free part does not fit a machine word");
    c = Rational(square, q.get_den());
    c.canonicalize();
    m = rest.get_si() * (negative ? -1 : 1);
    if (m == 0) m = 1;
}

}  // namespace qfi
