#include "perron/rational.hpp"

#include <cctype>
#include <cstdio>

namespace perron {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char ch : text) {
        if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/' && ch != '-' && ch != '+')
            throw std::invalid_argument("bad rational literal: " + text);
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

BigInt floor_rat(const Rat& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil_rat(const Rat& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int floor_rat_int(const Rat& q) {
    BigInt r = floor_rat(q);
    if (!r.fits_slong_p()) throw std::overflow_error("floor out of Int range");
    return static_cast<Int>(r.get_si());
}

Int ceil_rat_int(const Rat& q) {
    BigInt r = ceil_rat(q);
    if (!r.fits_slong_p()) throw std::overflow_error("ceil out of Int range");
    return static_cast<Int>(r.get_si());
}

namespace {

// log2 of a positive mpz via mantissa/exponent split; exact to double
// precision regardless of magnitude.
double log2_mpz(const mpz_class& z) {
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace

double log_rat(const Rat& q) {
    if (q <= 0) throw std::domain_error("log of nonpositive rational");
    static const double kLn2 = std::log(2.0);
    return (log2_mpz(q.get_num()) - log2_mpz(q.get_den())) * kLn2;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    Rat q;
    mpq_set_d(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
}

std::string real_to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace perron
