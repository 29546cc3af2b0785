#include "numrange/fields.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>
#include <sstream>

namespace numrange {

namespace {

constexpr unsigned kMaxDegree = 16;

bool u64_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomial helpers over F_p, coefficient arrays of fixed working size.
struct Poly {
    std::array<std::uint64_t, 2 * kMaxDegree + 1> c{};
    unsigned deg = 0;  // index of highest possibly-nonzero coefficient

    void trim() {
        while (deg > 0 && c[deg] == 0) --deg;
    }
    bool is_zero() const { return deg == 0 && c[0] == 0; }
};

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    Poly r;
    r.deg = a.deg + b.deg;
    for (unsigned i = 0; i <= a.deg; ++i) {
        if (a.c[i] == 0) continue;
        for (unsigned j = 0; j <= b.deg; ++j)
            r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p;
    }
    // reduce mod monic f
    for (unsigned i = r.deg + 1; i-- > f.deg;) {
        std::uint64_t coef = r.c[i];
        if (coef == 0) continue;
        r.c[i] = 0;
        for (unsigned j = 0; j < f.deg; ++j) {
            std::uint64_t sub = (coef * f.c[j]) % p;
            unsigned pos = i - f.deg + j;
            r.c[pos] = (r.c[pos] + p - sub) % p;
        }
    }
    r.deg = f.deg > 0 ? f.deg - 1 : 0;
    r.trim();
    return r;
}

Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
    Poly r;
    r.c[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    auto mod_inv = [&](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2, base = x % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        // a mod b
        std::uint64_t lead_inv = mod_inv(b.c[b.deg]);
        while (!a.is_zero() && a.deg >= b.deg) {
            std::uint64_t coef = a.c[a.deg] * lead_inv % p;
            unsigned shift = a.deg - b.deg;
            for (unsigned j = 0; j <= b.deg; ++j) {
                std::uint64_t sub = coef * b.c[j] % p;
                a.c[shift + j] = (a.c[shift + j] + p - sub) % p;
            }
            a.trim();
            if (a.deg == 0 && a.c[0] == 0) break;
            if (a.c[a.deg] == 0) a.trim();
        }
        std::swap(a, b);
        b.trim();
    }
    return a;
}

bool poly_is_irreducible(const Poly& f, std::uint64_t p, unsigned m) {
    // Rabin's test: x^(p^m) == x mod f, and gcd(x^(p^(m/r)) - x, f) = 1 for
    // every prime r dividing m.
    Poly x;
    x.c[1] = 1;
    x.deg = 1;
    auto frobenius_power = [&](unsigned k) {
        Poly r = x;
        for (unsigned i = 0; i < k; ++i) r = poly_pow_mod(r, p, f, p);
        return r;
    };
    Poly xqm = frobenius_power(m);
    if (!(xqm.deg == 1 && xqm.c[0] == 0 && xqm.c[1] == 1)) return false;
    for (unsigned r = 2; r <= m; ++r) {
        if (m % r != 0) continue;
        bool prime = true;
        for (unsigned d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        Poly h = frobenius_power(m / r);
        // h - x
        Poly diff = h;
        diff.c[1] = (diff.c[1] + p - 1) % p;
        diff.deg = std::max(diff.deg, 1u);
        diff.trim();
        if (diff.is_zero()) return false;
        Poly g = poly_gcd(f, diff, p);
        if (g.deg != 0) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroundField

GroundFieldPtr GroundField::rationals() {
    static GroundFieldPtr instance = [] {
        auto f = std::shared_ptr<GroundField>(new GroundField());
        f->kind_ = GroundKind::Rationals;
        return GroundFieldPtr(f);
    }();
    return instance;
}

GroundFieldPtr GroundField::finite(std::uint64_t p, unsigned m,
                                   std::vector<std::uint64_t> modulus) {
    if (!u64_is_prime(p)) throw ParseError("finite field characteristic must be prime");
    if (m == 0 || m > kMaxDegree) throw ParseError("finite field degree out of range");
    // guard encodings and digit products against overflow
    long double qd = 1;
    for (unsigned i = 0; i < m; ++i) qd *= static_cast<long double>(p);
    if (qd > 9.0e17L || static_cast<long double>(m) * p * p > 9.0e17L)
        throw ParseError("finite field too large");

    auto f = std::shared_ptr<GroundField>(new GroundField());
    f->kind_ = GroundKind::Finite;
    f->p_ = p;
    f->m_ = m;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    f->q_ = q;

    if (m == 1) {
        f->modulus_ = {0, 1};  // t
        return GroundFieldPtr(f);
    }
    auto check = [&](const std::vector<std::uint64_t>& mod) {
        Poly fp;
        fp.deg = m;
        for (unsigned i = 0; i <= m; ++i) fp.c[i] = mod[i] % p;
        return poly_is_irreducible(fp, p, m);
    };
    if (!modulus.empty()) {
        if (modulus.size() != m + 1 || modulus[m] % p != 1)
            throw ParseError("modulus must be monic of degree m");
        for (auto& c : modulus) c %= p;
        if (!check(modulus)) throw ParseError("modulus polynomial is reducible");
        f->modulus_ = std::move(modulus);
        return GroundFieldPtr(f);
    }
    // smallest monic irreducible by encoding of the lower coefficients
    std::uint64_t lower_count = 1;
    for (unsigned i = 0; i < m; ++i) lower_count *= p;
    for (std::uint64_t e = 0; e < lower_count; ++e) {
        std::vector<std::uint64_t> mod(m + 1, 0);
        std::uint64_t t = e;
        for (unsigned i = 0; i < m; ++i) {
            mod[i] = t % p;
            t /= p;
        }
        mod[m] = 1;
        if (check(mod)) {
            f->modulus_ = std::move(mod);
            return GroundFieldPtr(f);
        }
    }
    throw Error("no irreducible polynomial found");  // unreachable
}

std::uint64_t GroundField::order() const {
    if (!is_finite()) throw Error("order() on Q");
    return q_;
}

bool GroundField::same_as(const GroundField& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == GroundKind::Rationals) return true;
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
}

std::string GroundField::describe() const {
    if (is_rationals()) return "Q";
    std::ostringstream os;
    os << "F[" << p_;
    if (m_ > 1) os << "^" << m_;
    os << "]";
    return os.str();
}

void GroundField::decode(std::uint64_t enc, std::uint64_t* digits) const {
    for (unsigned i = 0; i < m_; ++i) {
        digits[i] = enc % p_;
        enc /= p_;
    }
}

std::uint64_t GroundField::encode(const std::uint64_t* digits) const {
    std::uint64_t e = 0;
    for (unsigned i = m_; i-- > 0;) e = e * p_ + digits[i];
    return e;
}

std::uint64_t GroundField::ff_add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t da[kMaxDegree], db[kMaxDegree];
    decode(a, da);
    decode(b, db);
    for (unsigned i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
    return encode(da);
}

std::uint64_t GroundField::ff_neg(std::uint64_t a) const {
    std::uint64_t da[kMaxDegree];
    decode(a, da);
    for (unsigned i = 0; i < m_; ++i) da[i] = (p_ - da[i]) % p_;
    return encode(da);
}

std::uint64_t GroundField::ff_sub(std::uint64_t a, std::uint64_t b) const {
    return ff_add(a, ff_neg(b));
}

std::uint64_t GroundField::ff_mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t da[kMaxDegree], db[kMaxDegree];
    std::uint64_t prod[2 * kMaxDegree] = {0};
    decode(a, da);
    decode(b, db);
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (unsigned i = 2 * m_ - 1; i-- > m_;) {
        std::uint64_t coef = prod[i];
        if (coef == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < m_; ++j) {
            std::uint64_t sub = coef * modulus_[j] % p_;
            prod[i - m_ + j] = (prod[i - m_ + j] + p_ - sub) % p_;
        }
    }
    return encode(prod);
}

std::uint64_t GroundField::ff_pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    std::uint64_t base = a;
    while (e > 0) {
        if (e & 1) r = ff_mul(r, base);
        base = ff_mul(base, base);
        e >>= 1;
    }
    return r;
}

std::uint64_t GroundField::ff_inv(std::uint64_t a) const {
    if (a == 0) throw Error("division by zero in finite field");
    return ff_pow(a, q_ - 2);
}

bool GroundField::ff_is_square(std::uint64_t a) const {
    if (p_ == 2) return true;  // Frobenius is bijective
    if (a == 0) return true;
    return ff_pow(a, (q_ - 1) / 2) == 1;
}

std::optional<std::uint64_t> GroundField::ff_sqrt(std::uint64_t a) const {
    if (a == 0) return 0;
    if (p_ == 2) {
        // squaring is the Frobenius; invert by q/2 more squarings
        std::uint64_t r = a;
        for (unsigned i = 0; i + 1 < m_; ++i) r = ff_mul(r, r);
        // r = a^(2^(m-1)); r^2 = a^(2^m) = a
        return r;
    }
    if (!ff_is_square(a)) return std::nullopt;
    if (q_ % 4 == 3) {
        std::uint64_t r = ff_pow(a, (q_ + 1) / 4);
        return r;
    }
    // Tonelli-Shanks in the cyclic group of order q-1
    std::uint64_t s = q_ - 1;
    unsigned e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    std::uint64_t n = 2;
    while (ff_is_square(n)) ++n;
    std::uint64_t x = ff_pow(a, (s + 1) / 2);
    std::uint64_t b = ff_pow(a, s);
    std::uint64_t g = ff_pow(n, s);
    unsigned r = e;
    while (true) {
        std::uint64_t t = b;
        unsigned mexp = 0;
        while (t != 1) {
            t = ff_mul(t, t);
            ++mexp;
            if (mexp == r) return std::nullopt;
        }
        if (mexp == 0) return x;
        std::uint64_t gs = g;
        for (unsigned i = 0; i + 1 < r - mexp; ++i) gs = ff_mul(gs, gs);
        g = ff_mul(gs, gs);
        x = ff_mul(x, gs);
        b = ff_mul(b, g);
        r = mexp;
    }
}

std::uint64_t GroundField::ff_abs_trace(std::uint64_t a) const {
    std::uint64_t acc = 0;
    std::uint64_t cur = a;
    for (unsigned i = 0; i < m_; ++i) {
        acc = ff_add(acc, cur);
        cur = ff_pow(cur, p_);
    }
    return acc;  // lies in F_p, i.e. encoding < p
}

// ---------------------------------------------------------------------------
// Ground

Ground::Ground(GroundFieldPtr field, mpq_class value) : field_(std::move(field)) {
    if (!field_->is_rationals()) throw Error("rational value for finite field");
    value.canonicalize();
    v_ = std::move(value);
}

Ground::Ground(GroundFieldPtr field, std::uint64_t encoding) : field_(std::move(field)) {
    if (!field_->is_finite()) throw Error("encoding value for Q");
    if (encoding >= field_->order()) throw Error("encoding out of range");
    v_ = encoding;
}

Ground Ground::from_int(const GroundFieldPtr& field, long v) {
    if (field->is_rationals()) return Ground(field, mpq_class(v));
    std::uint64_t p = field->characteristic();
    long r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return Ground(field, static_cast<std::uint64_t>(r));
}

Ground Ground::parse(const GroundFieldPtr& field, const std::string& text) {
    if (text.empty()) throw ParseError("empty scalar");
    try {
        if (field->is_rationals()) {
            mpq_class v(text);
            v.canonicalize();
            return Ground(field, v);
        }
        mpz_class e(text);
        mpz_class q(static_cast<unsigned long>(field->order()));
        mpz_class r = e % q;
        if (r < 0) r += q;
        return Ground(field, r.get_ui());
    } catch (const std::invalid_argument&) {
        throw ParseError("bad scalar: " + text);
    }
}

std::string Ground::str() const {
    if (field_->is_rationals()) return rat().get_str();
    return std::to_string(enc());
}

bool Ground::is_zero() const {
    return field_->is_rationals() ? rat() == 0 : enc() == 0;
}

bool Ground::is_one() const {
    return field_->is_rationals() ? rat() == 1 : enc() == 1;
}

const mpq_class& Ground::rat() const { return std::get<mpq_class>(v_); }
std::uint64_t Ground::enc() const { return std::get<std::uint64_t>(v_); }

int Ground::sign() const {
    if (!field_->is_rationals()) throw Error("sign() on finite field element");
    return sgn(rat());
}

void Ground::check_same(const Ground& other) const {
    if (field_.get() == other.field_.get()) return;
    if (!field_ || !other.field_ || !field_->same_as(*other.field_))
        throw Error("ground field mismatch");
}

Ground Ground::operator-() const {
    if (field_->is_rationals()) return Ground(field_, mpq_class(-rat()));
    return Ground(field_, field_->ff_neg(enc()));
}

Ground Ground::inv() const {
    if (is_zero()) throw Error("division by zero");
    if (field_->is_rationals()) return Ground(field_, mpq_class(1 / rat()));
    return Ground(field_, field_->ff_inv(enc()));
}

Ground operator+(const Ground& a, const Ground& b) {
    a.check_same(b);
    if (a.field_->is_rationals()) return Ground(a.field_, mpq_class(a.rat() + b.rat()));
    return Ground(a.field_, a.field_->ff_add(a.enc(), b.enc()));
}

Ground operator-(const Ground& a, const Ground& b) {
    a.check_same(b);
    if (a.field_->is_rationals()) return Ground(a.field_, mpq_class(a.rat() - b.rat()));
    return Ground(a.field_, a.field_->ff_sub(a.enc(), b.enc()));
}

Ground operator*(const Ground& a, const Ground& b) {
    a.check_same(b);
    if (a.field_->is_rationals()) return Ground(a.field_, mpq_class(a.rat() * b.rat()));
    return Ground(a.field_, a.field_->ff_mul(a.enc(), b.enc()));
}

Ground operator/(const Ground& a, const Ground& b) {
    if (b.is_zero()) throw Error("division by zero");
    a.check_same(b);
    if (a.field_->is_rationals()) return Ground(a.field_, mpq_class(a.rat() / b.rat()));
    return Ground(a.field_, a.field_->ff_mul(a.enc(), a.field_->ff_inv(b.enc())));
}

bool operator==(const Ground& a, const Ground& b) {
    a.check_same(b);
    if (a.field_->is_rationals()) return a.rat() == b.rat();
    return a.enc() == b.enc();
}

bool operator<(const Ground& a, const Ground& b) {
    a.check_same(b);
    if (a.field_->is_rationals()) return a.rat() < b.rat();
    return a.enc() < b.enc();
}

Ground Ground::pow(std::uint64_t e) const {
    if (field_->is_finite()) return Ground(field_, field_->ff_pow(enc(), e));
    mpq_class r = 1;
    mpq_class base = rat();
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return Ground(field_, r);
}

bool Ground::is_square_in_ground() const {
    return sqrt_in_ground().has_value();
}

std::optional<Ground> Ground::sqrt_in_ground() const {
    if (field_->is_finite()) {
        auto r = field_->ff_sqrt(enc());
        if (!r) return std::nullopt;
        return Ground(field_, *r);
    }
    const mpq_class& v = rat();
    if (v < 0) return std::nullopt;
    mpz_class num = v.get_num(), den = v.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Ground(field_, mpq_class(rn) / mpq_class(rd));
}

// ---------------------------------------------------------------------------
// ExtField

namespace {

// squarefree decomposition of a nonzero rational: value = scale^2 * d with d
// a squarefree integer
void squarefree_normalize(const mpq_class& value, mpz_class& d_out, mpq_class& scale_out) {
    mpz_class a = value.get_num() * value.get_den();  // same square class
    int sign = sgn(a) < 0 ? -1 : 1;
    a = abs(a);
    mpz_class squarefree = 1;
    mpz_class f = 2;
    while (f * f <= a) {
        unsigned e = 0;
        while (mpz_divisible_p(a.get_mpz_t(), f.get_mpz_t())) {
            a /= f;
            ++e;
        }
        if (e % 2 == 1) squarefree *= f;
        ++f;
    }
    squarefree *= a;  // leftover is 1 or prime
    d_out = sign * squarefree;
    // value = scale^2 * d  =>  scale^2 = value / d
    mpq_class s2 = value / mpq_class(d_out);
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), mpq_class(s2).get_num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), mpq_class(s2).get_den().get_mpz_t());
    scale_out = mpq_class(rn) / mpq_class(rd);
}

}  // namespace

ExtFieldPtr ExtField::make_square_root(GroundFieldPtr ground, Ground alpha) {
    if (ground->characteristic() == 2)
        throw ParseError("SquareRoot extension rejected in characteristic 2; use ArtinSchreier");
    auto f = std::shared_ptr<ExtField>(new ExtField());
    f->ground_ = ground;
    f->kind_ = ExtKind::SquareRoot;
    f->requested_param_ = alpha;
    if (ground->is_rationals()) {
        if (alpha.is_zero()) throw ParseError("alpha must be nonzero");
        mpz_class d;
        mpq_class scale;
        squarefree_normalize(alpha.rat(), d, scale);
        if (d == 1) throw ParseError("alpha is a square in Q");
        f->param_ = Ground(ground, mpq_class(d));
        f->scale_ = Ground(ground, scale);
    } else {
        if (ground->ff_is_square(alpha.enc()))
            throw ParseError("alpha is a square in " + ground->describe());
        f->param_ = alpha;
        f->scale_ = Ground::one(ground);
    }
    return ExtFieldPtr(f);
}

ExtFieldPtr ExtField::make_artin_schreier(GroundFieldPtr ground, Ground eps) {
    if (ground->characteristic() != 2)
        throw ParseError("ArtinSchreier extension requires characteristic 2");
    if (ground->ff_abs_trace(eps.enc()) != 1)
        throw ParseError("t^2+t+eps is reducible (absolute trace of eps is 0)");
    auto f = std::shared_ptr<ExtField>(new ExtField());
    f->ground_ = ground;
    f->kind_ = ExtKind::ArtinSchreier;
    f->param_ = eps;
    f->requested_param_ = eps;
    f->scale_ = Ground::one(ground);
    return ExtFieldPtr(f);
}

ExtFieldPtr ExtField::parse(const std::string& spec) {
    // Grammar: Q[sqrt=<int>] | F[<p>] | F[<p>^<m>] with optional [sqrt=<enc>]
    // or [as=<enc>] suffix.
    auto fail = [&]() -> ExtFieldPtr { throw ParseError("bad field spec: " + spec); };
    if (spec.empty()) return fail();
    size_t pos = 0;
    auto read_bracket = [&]() -> std::optional<std::string> {
        if (pos >= spec.size() || spec[pos] != '[') return std::nullopt;
        size_t close = spec.find(']', pos);
        if (close == std::string::npos) throw ParseError("unbalanced '[' in field spec");
        std::string inner = spec.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        return inner;
    };
    if (spec[0] == 'Q') {
        pos = 1;
        auto b = read_bracket();
        if (!b || pos != spec.size()) return fail();
        if (b->rfind("sqrt=", 0) != 0) return fail();
        mpq_class alpha(b->substr(5));
        alpha.canonicalize();
        return make_square_root(GroundField::rationals(), Ground(GroundField::rationals(), alpha));
    }
    if (spec[0] != 'F') return fail();
    pos = 1;
    auto sizepart = read_bracket();
    if (!sizepart) return fail();
    std::uint64_t p = 0;
    unsigned m = 1;
    size_t caret = sizepart->find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stoull(*sizepart);
        } else {
            p = std::stoull(sizepart->substr(0, caret));
            m = static_cast<unsigned>(std::stoul(sizepart->substr(caret + 1)));
        }
    } catch (const std::exception&) {
        return fail();
    }
    auto ground = GroundField::finite(p, m);
    std::optional<std::string> extpart = read_bracket();
    if (pos != spec.size()) return fail();
    if (p == 2) {
        std::uint64_t eps_enc = 0;
        bool given = false;
        if (extpart) {
            if (extpart->rfind("as=", 0) != 0)
                throw ParseError("characteristic-2 ground fields take [as=<elt>]");
            eps_enc = std::stoull(extpart->substr(3));
            given = true;
        }
        if (!given) {
            // least element with absolute trace 1
            for (std::uint64_t e = 0; e < ground->order(); ++e)
                if (ground->ff_abs_trace(e) == 1) {
                    eps_enc = e;
                    break;
                }
        }
        return make_artin_schreier(ground, Ground(ground, eps_enc % ground->order()));
    }
    std::uint64_t alpha_enc = 0;
    bool given = false;
    if (extpart) {
        if (extpart->rfind("sqrt=", 0) != 0)
            throw ParseError("odd-characteristic ground fields take [sqrt=<elt>]");
        alpha_enc = std::stoull(extpart->substr(5));
        given = true;
    }
    if (!given) {
        // least non-residue
        for (std::uint64_t e = 2; e < ground->order(); ++e)
            if (!ground->ff_is_square(e)) {
                alpha_enc = e;
                break;
            }
        if (alpha_enc == 0) throw ParseError("no non-residue found");
    }
    return make_square_root(ground, Ground(ground, alpha_enc % ground->order()));
}

std::string ExtField::spec_string() const {
    std::ostringstream os;
    if (ground_->is_rationals()) {
        os << "Q[sqrt=" << param_.str() << "]";
    } else {
        os << ground_->describe();
        os << (kind_ == ExtKind::SquareRoot ? "[sqrt=" : "[as=") << param_.str() << "]";
    }
    return os.str();
}

std::uint64_t ExtField::ext_order() const {
    if (!is_finite()) throw Error("ext_order() on Q");
    return ground_->order() * ground_->order();
}

bool ExtField::same_as(const ExtField& other) const {
    return kind_ == other.kind_ && ground_->same_as(*other.ground_) &&
           ((param_.field()->is_rationals() && param_.rat() == other.param_.rat()) ||
            (param_.field()->is_finite() && param_.enc() == other.param_.enc()));
}

// ---------------------------------------------------------------------------
// Ext

Ext::Ext(ExtFieldPtr field, Ground x, Ground y)
    : field_(std::move(field)), x_(std::move(x)), y_(std::move(y)) {}

Ext Ext::from_ground(const ExtFieldPtr& field, const Ground& x) {
    return Ext(field, x, Ground::zero(field->ground()));
}

Ext Ext::from_int(const ExtFieldPtr& field, long v) {
    return Ext(field, Ground::from_int(field->ground(), v), Ground::zero(field->ground()));
}

Ext Ext::beta(const ExtFieldPtr& field) {
    return Ext(field, Ground::zero(field->ground()), Ground::one(field->ground()));
}

Ext Ext::from_encoding(const ExtFieldPtr& field, std::uint64_t e) {
    std::uint64_t q = field->ground()->order();
    return Ext(field, Ground(field->ground(), e % q), Ground(field->ground(), e / q));
}

std::uint64_t Ext::encoding() const {
    return x_.enc() + field_->ground()->order() * y_.enc();
}

void Ext::check_same(const Ext& other) const {
    if (field_.get() == other.field_.get()) return;
    if (!field_ || !other.field_ || !field_->same_as(*other.field_))
        throw Error("extension field mismatch");
}

Ext Ext::operator-() const { return Ext(field_, -x_, -y_); }

Ext operator+(const Ext& a, const Ext& b) {
    a.check_same(b);
    return Ext(a.field_, a.x_ + b.x_, a.y_ + b.y_);
}

Ext operator-(const Ext& a, const Ext& b) {
    a.check_same(b);
    return Ext(a.field_, a.x_ - b.x_, a.y_ - b.y_);
}

Ext operator*(const Ext& a, const Ext& b) {
    a.check_same(b);
    // SquareRoot: beta^2 = alpha.  ArtinSchreier: beta^2 = beta + eps.
    Ground xx = a.x_ * b.x_;
    Ground xy = a.x_ * b.y_ + a.y_ * b.x_;
    Ground yy = a.y_ * b.y_;
    if (a.field_->kind() == ExtKind::SquareRoot)
        return Ext(a.field_, xx + yy * a.field_->param(), xy);
    return Ext(a.field_, xx + yy * a.field_->param(), xy + yy);
}

Ext operator*(const Ground& c, const Ext& z) {
    return Ext(z.field(), c * z.coeff0(), c * z.coeff1());
}

Ext Ext::inv() const {
    Ground n = norm(*this);
    if (n.is_zero()) throw Error("division by zero");
    Ground ninv = n.inv();
    Ext c = conj(*this);
    return Ext(field_, c.coeff0() * ninv, c.coeff1() * ninv);
}

Ext operator/(const Ext& a, const Ext& b) { return a * b.inv(); }

bool operator==(const Ext& a, const Ext& b) {
    a.check_same(b);
    return a.x_ == b.x_ && a.y_ == b.y_;
}

bool operator<(const Ext& a, const Ext& b) {
    a.check_same(b);
    if (a.x_ != b.x_) return a.x_ < b.x_;
    return a.y_ < b.y_;
}

Ext Ext::pow(std::uint64_t e) const {
    Ext r = Ext::one(field_);
    Ext base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::string Ext::str() const {
    return "[" + x_.str() + ", " + y_.str() + "]";
}

Ext conj(const Ext& z) {
    if (z.field()->kind() == ExtKind::SquareRoot)
        return Ext(z.field(), z.coeff0(), -z.coeff1());
    return Ext(z.field(), z.coeff0() + z.coeff1(), z.coeff1());
}

Ground norm(const Ext& z) {
    const Ground& x = z.coeff0();
    const Ground& y = z.coeff1();
    if (z.field()->kind() == ExtKind::SquareRoot)
        return x * x - y * y * z.field()->param();
    return x * (x + y) + y * y * z.field()->param();
}

Ground trace(const Ext& z) {
    if (z.field()->kind() == ExtKind::SquareRoot) return z.coeff0() + z.coeff0();
    return z.coeff1();
}

std::optional<Ext> sqrt_in_ext(const Ext& z) {
    const ExtFieldPtr& F = z.field();
    const GroundFieldPtr& K = F->ground();
    if (F->characteristic() == 2) {
        // Frobenius is bijective on L; invert by repeated squaring.
        unsigned bits = 2 * K->degree();  // [L : F_2]
        Ext r = z;
        for (unsigned i = 0; i + 1 < bits; ++i) r = r * r;
        if (r * r == z) return r;
        return std::nullopt;  // unreachable
    }
    if (z.is_zero()) return Ext::zero(F);
    const Ground& x = z.coeff0();
    const Ground& y = z.coeff1();
    Ground two = Ground::from_int(K, 2);
    if (y.is_zero()) {
        if (auto r = x.sqrt_in_ground()) return Ext::from_ground(F, *r);
        if (auto r = (x / F->param()).sqrt_in_ground())
            return Ext(F, Ground::zero(K), *r);
        return std::nullopt;
    }
    // (a+b*beta)^2 = z needs norm(z) = (a^2 - alpha b^2)^2 to be a square.
    auto s = norm(z).sqrt_in_ground();
    if (!s) return std::nullopt;
    for (const Ground& sg : {*s, -*s}) {
        Ground a2 = (x + sg) / two;
        if (auto a = a2.sqrt_in_ground()) {
            if (a->is_zero()) continue;
            Ground b = y / (two * *a);
            Ext w(F, *a, b);
            if (w * w == z) return w;
        }
    }
    return std::nullopt;
}

std::optional<Ext> solve_artin_schreier(const Ext& a) {
    const ExtFieldPtr& F = a.field();
    if (F->characteristic() != 2) throw Error("solve_artin_schreier needs characteristic 2");
    const GroundFieldPtr& K = F->ground();
    unsigned m = K->degree();
    unsigned dim = 2 * m;  // F_2-dimension of L
    // phi(s) = s^2 + s is F_2-linear; solve phi(s) = a by Gaussian elimination
    // over the basis t^i, t^i * beta.
    auto basis_elt = [&](unsigned i) {
        std::uint64_t enc = 1;
        for (unsigned k = 0; k < i % m; ++k) enc *= 2;
        Ground g(K, enc);
        if (i < m) return Ext(F, g, Ground::zero(K));
        return Ext(F, Ground::zero(K), g);
    };
    auto to_bits = [&](const Ext& z) {
        std::vector<int> bits(dim, 0);
        std::uint64_t dx[16], dy[16];
        std::uint64_t ex = z.coeff0().enc(), ey = z.coeff1().enc();
        for (unsigned i = 0; i < m; ++i) {
            dx[i] = ex & 1;
            ex >>= 1;
            dy[i] = ey & 1;
            ey >>= 1;
        }
        for (unsigned i = 0; i < m; ++i) {
            bits[i] = static_cast<int>(dx[i]);
            bits[m + i] = static_cast<int>(dy[i]);
        }
        return bits;
    };
    // columns of the matrix: phi(basis_elt(j))
    std::vector<std::vector<int>> M(dim, std::vector<int>(dim + 1, 0));
    for (unsigned j = 0; j < dim; ++j) {
        Ext b = basis_elt(j);
        Ext img = b * b + b;
        auto bits = to_bits(img);
        for (unsigned i = 0; i < dim; ++i) M[i][j] = bits[i];
    }
    auto rhs = to_bits(a);
    for (unsigned i = 0; i < dim; ++i) M[i][dim] = rhs[i];
    // Gaussian elimination over F_2
    std::vector<int> pivot_col(dim, -1);
    unsigned row = 0;
    for (unsigned col = 0; col < dim && row < dim; ++col) {
        unsigned pr = row;
        while (pr < dim && M[pr][col] == 0) ++pr;
        if (pr == dim) continue;
        std::swap(M[pr], M[row]);
        for (unsigned r = 0; r < dim; ++r) {
            if (r != row && M[r][col] == 1)
                for (unsigned c = col; c <= dim; ++c) M[r][c] ^= M[row][c];
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    std::vector<int> sol(dim, 0);
    for (unsigned r = 0; r < dim; ++r) {
        if (pivot_col[r] < 0) continue;
        if (M[r][dim] == 1) sol[pivot_col[r]] = 1;
    }
    for (unsigned r = row; r < dim; ++r)
        if (M[r][dim] == 1) return std::nullopt;  // inconsistent beyond pivots
    Ext s = Ext::zero(F);
    for (unsigned j = 0; j < dim; ++j)
        if (sol[j] == 1) s = s + basis_elt(j);
    if (s * s + s == a) return s;
    return std::nullopt;
}

std::vector<Ground> ground_quadratic_roots(const Ground& A, const Ground& B, const Ground& C) {
    const GroundFieldPtr& K = A.field();
    std::vector<Ground> roots;
    if (A.is_zero()) {
        if (B.is_zero()) throw Error("degenerate quadratic");
        roots.push_back(-C / B);
        return roots;
    }
    if (K->characteristic() == 2) {
        if (B.is_zero()) {
            if (auto r = (C / A).sqrt_in_ground()) roots.push_back(-*r);
            return roots;
        }
        // A x^2 + B x + C = 0, x = (B/A) e:  e^2 + e + AC/B^2 = 0
        Ground c = A * C / (B * B);
        // solve e^2 + e = c in K by scanning trace-0 structure: use the
        // additive map e -> e^2 + e over F_2-basis of K
        std::uint64_t q = K->order();
        for (std::uint64_t e = 0; e < q; ++e) {
            Ground ge(K, e);
            if (ge * ge + ge + c == Ground::zero(K)) roots.push_back(B / A * ge);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }
    Ground disc = B * B - Ground::from_int(K, 4) * A * C;
    auto s = disc.sqrt_in_ground();
    if (!s) return roots;
    Ground two_a = Ground::from_int(K, 2) * A;
    roots.push_back((-B + *s) / two_a);
    if (!s->is_zero()) roots.push_back((-B - *s) / two_a);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// enumeration

void RationalSeq::refill() {
    ++height_;
    pending_.clear();
    idx_ = 0;
    long h = height_;
    if (h == 1) {
        if (!nonneg_) pending_.push_back(mpq_class(-1));
        pending_.push_back(mpq_class(0));
        pending_.push_back(mpq_class(1));
        return;
    }
    for (long den = 1; den <= h; ++den) {
        for (long num = nonneg_ ? 0 : -h; num <= h; ++num) {
            if (std::max(std::labs(num), den) != h) continue;
            if (std::gcd(std::labs(num), den) != 1) continue;
            pending_.push_back(mpq_class(num, den));
        }
    }
}

mpq_class RationalSeq::next() {
    while (idx_ >= pending_.size()) refill();
    return pending_[idx_++];
}

GroundSeq::GroundSeq(GroundFieldPtr field, bool nonnegative)
    : field_(std::move(field)), rseq_(nonnegative), finite_(field_->is_finite()) {}

std::optional<Ground> GroundSeq::next() {
    if (finite_) {
        if (enc_ >= field_->order()) return std::nullopt;
        return Ground(field_, enc_++);
    }
    return Ground(field_, rseq_.next());
}

}  // namespace numrange
