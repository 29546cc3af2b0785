#pragma once

#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace numrange {

/// Prime factorization by trial division plus Pollard rho.  Input may be
/// negative (sign handled by callers); 0 is rejected.
std::map<mpz_class, unsigned> factorize(const mpz_class& n);

/// The Hilbert symbol (a,b)_p for a finite prime p: +1 if z^2 = a x^2 + b y^2
/// has a nontrivial Q_p-point, -1 otherwise.  a, b nonzero integers.
int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p);

/// The Hilbert symbol at the real place: -1 iff a < 0 and b < 0.
int hilbert_symbol_real(const mpz_class& a, const mpz_class& b);

/// Decides solvability of x^2 - d y^2 = k over Q (d squarefree non-square,
/// k nonzero) by checking (d, k)_v over the real place, 2, and all odd primes
/// dividing d or the square class of k.  Returns the obstructing place when
/// unsolvable ("infinity" or "p=<prime>").
bool norm_equation_solvable(const mpz_class& d, const mpq_class& k,
                            std::string* obstruction = nullptr);

}  // namespace numrange
