#include "numrange/hilbert.hpp"

#include <set>

#include "numrange/fields.hpp"

namespace numrange {

namespace {

mpz_class pollard_rho(const mpz_class& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xbead5eedUL);
    while (true) {
        mpz_class x = rng.get_z_range(n - 2) + 2;
        mpz_class y = x;
        mpz_class c = rng.get_z_range(n - 1) + 1;
        mpz_class d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

// (u/p) for odd prime p and u a p-unit
int legendre(const mpz_class& u, const mpz_class& p) {
    return mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
}

}  // namespace

std::map<mpz_class, unsigned> factorize(const mpz_class& n) {
    if (n == 0) throw Error("factorize(0)");
    mpz_class a = abs(n);
    std::map<mpz_class, unsigned> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            a /= p;
        }
    }
    mpz_class f = 41;
    while (f * f <= a && f < 100000) {
        while (mpz_divisible_p(a.get_mpz_t(), f.get_mpz_t())) {
            ++out[f];
            a /= f;
        }
        f += 2;
    }
    if (a > 1) factor_into(a, out);
    return out;
}

int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
    if (a == 0 || b == 0) throw Error("hilbert symbol of zero");
    // strip p-adic valuations: a = p^alpha u, b = p^beta v
    mpz_class u = a, v = b;
    unsigned long alpha = mpz_remove(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
    unsigned long beta = mpz_remove(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    if (p == 2) {
        auto eps = [](const mpz_class& z) {  // (z-1)/2 mod 2
            mpz_class t = (z - 1) / 2;
            return static_cast<int>(mpz_tstbit(t.get_mpz_t(), 0));
        };
        auto omega = [](const mpz_class& z) {  // (z^2-1)/8 mod 2
            mpz_class t = (z * z - 1) / 8;
            return static_cast<int>(mpz_tstbit(t.get_mpz_t(), 0));
        };
        int e = eps(u) * eps(v) + static_cast<int>(alpha % 2) * omega(v) +
                static_cast<int>(beta % 2) * omega(u);
        return (e % 2 == 0) ? 1 : -1;
    }
    int sym = 1;
    if ((alpha % 2) && (beta % 2)) {
        // (-1)^{(p-1)/2}
        mpz_class t = (p - 1) / 2;
        if (mpz_tstbit(t.get_mpz_t(), 0)) sym = -sym;
    }
    if (beta % 2) sym *= legendre(u, p);
    if (alpha % 2) sym *= legendre(v, p);
    return sym;
}

int hilbert_symbol_real(const mpz_class& a, const mpz_class& b) {
    return (a < 0 && b < 0) ? -1 : 1;
}

bool norm_equation_solvable(const mpz_class& d, const mpq_class& k, std::string* obstruction) {
    // k and num(k)*den(k) lie in the same square class
    mpz_class ksc = k.get_num() * k.get_den();
    if (ksc == 0) throw Error("norm_equation_solvable with k = 0");
    if (hilbert_symbol_real(d, ksc) != 1) {
        if (obstruction) *obstruction = "infinity";
        return false;
    }
    std::set<mpz_class> places{mpz_class(2)};
    for (const auto& [p, e] : factorize(d))
        if (p != 2) places.insert(p);
    for (const auto& [p, e] : factorize(ksc))
        if (p != 2) places.insert(p);
    for (const auto& p : places) {
        if (hilbert_symbol(d, ksc, p) != 1) {
            if (obstruction) *obstruction = "p=" + p.get_str();
            return false;
        }
    }
    return true;
}

}  // namespace numrange
