#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace numrange {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input (field spec strings, scalars, matrix files).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structurally valid input the library cannot process (eigenvalues outside L,
/// undecided guards, hypothesis violations).
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

/// Enumeration would exceed the configured budget.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

enum class GroundKind { Rationals, Finite };

class GroundField;
using GroundFieldPtr = std::shared_ptr<const GroundField>;

/// The ground field K: either Q (arbitrary-precision rationals) or
/// F_{p^m} = F_p[t]/(modulus).  Finite-field elements are handled as integer
/// encodings c_0 + c_1 p + ... + c_{m-1} p^{m-1}; all digit arithmetic is done
/// on the stack.
class GroundField : public std::enable_shared_from_this<GroundField> {
public:
    static GroundFieldPtr rationals();

    /// Builds F_{p^m}.  `modulus` lists coefficients c_0..c_m of a monic
    /// irreducible polynomial over F_p (c_m = 1); when empty the smallest
    /// monic irreducible of degree m (by encoding of its lower coefficients)
    /// is selected.  Throws ParseError if p is not prime or the polynomial is
    /// reducible.
    static GroundFieldPtr finite(std::uint64_t p, unsigned m,
                                 std::vector<std::uint64_t> modulus = {});

    GroundKind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == GroundKind::Rationals; }
    bool is_finite() const { return kind_ == GroundKind::Finite; }

    /// 0 for Q.
    std::uint64_t characteristic() const { return p_; }
    /// q = p^m; finite fields only.
    std::uint64_t order() const;
    unsigned degree() const { return m_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    bool same_as(const GroundField& other) const;
    std::string describe() const;

    // --- arithmetic on finite-field encodings -------------------------------
    std::uint64_t ff_add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t ff_sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t ff_neg(std::uint64_t a) const;
    std::uint64_t ff_mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t ff_inv(std::uint64_t a) const;
    std::uint64_t ff_pow(std::uint64_t a, std::uint64_t e) const;
    /// a^((q-1)/2) == 1; odd characteristic only.
    bool ff_is_square(std::uint64_t a) const;
    std::optional<std::uint64_t> ff_sqrt(std::uint64_t a) const;
    /// Absolute trace to F_p (sum of Frobenius powers).
    std::uint64_t ff_abs_trace(std::uint64_t a) const;

private:
    GroundField() = default;

    GroundKind kind_ = GroundKind::Rationals;
    std::uint64_t p_ = 0;  // 0 for Q
    unsigned m_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> modulus_;  // c_0..c_m, monic

    void decode(std::uint64_t enc, std::uint64_t* digits) const;
    std::uint64_t encode(const std::uint64_t* digits) const;
};

/// An element of the ground field K, tagged with its field.
class Ground {
public:
    Ground() = default;
    Ground(GroundFieldPtr field, mpq_class value);
    Ground(GroundFieldPtr field, std::uint64_t encoding);
    static Ground from_int(const GroundFieldPtr& field, long v);
    static Ground zero(const GroundFieldPtr& field) { return from_int(field, 0); }
    static Ground one(const GroundFieldPtr& field) { return from_int(field, 1); }

    /// Accepts "a", "a/b" for Q, a decimal encoding for finite fields.
    static Ground parse(const GroundFieldPtr& field, const std::string& text);
    std::string str() const;

    const GroundFieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    const mpq_class& rat() const;
    std::uint64_t enc() const;
    /// Sign of the rational value (Q only).
    int sign() const;

    Ground operator-() const;
    Ground inv() const;
    friend Ground operator+(const Ground&, const Ground&);
    friend Ground operator-(const Ground&, const Ground&);
    friend Ground operator*(const Ground&, const Ground&);
    friend Ground operator/(const Ground&, const Ground&);
    friend bool operator==(const Ground&, const Ground&);
    friend bool operator!=(const Ground& a, const Ground& b) { return !(a == b); }
    /// Canonical total order: numeric for Q, encoding order for finite fields.
    friend bool operator<(const Ground&, const Ground&);

    Ground pow(std::uint64_t e) const;
    bool is_square_in_ground() const;
    std::optional<Ground> sqrt_in_ground() const;

private:
    GroundFieldPtr field_;
    std::variant<mpq_class, std::uint64_t> v_ = std::uint64_t{0};

    void check_same(const Ground& other) const;
};

enum class ExtKind { SquareRoot, ArtinSchreier };

class ExtField;
using ExtFieldPtr = std::shared_ptr<const ExtField>;

/// The quadratic Galois extension L = K(beta).  SquareRoot: beta^2 = alpha
/// with alpha a non-square (characteristic != 2).  ArtinSchreier: beta^2 =
/// beta + eps with t^2+t+eps irreducible (characteristic 2).
class ExtField : public std::enable_shared_from_this<ExtField> {
public:
    static ExtFieldPtr make_square_root(GroundFieldPtr ground, Ground alpha);
    static ExtFieldPtr make_artin_schreier(GroundFieldPtr ground, Ground eps);

    /// Spec strings: Q[sqrt=<int>], F[<p>] / F[<p>^<m>] with optional
    /// [sqrt=<enc>] or [as=<enc>].  Omitted extension parameters are
    /// auto-selected (least non-residue / least trace-one element).
    static ExtFieldPtr parse(const std::string& spec);
    std::string spec_string() const;

    const GroundFieldPtr& ground() const { return ground_; }
    ExtKind kind() const { return kind_; }
    /// alpha for SquareRoot, eps for ArtinSchreier (normalized).
    const Ground& param() const { return param_; }
    /// For K = Q the input alpha is reduced to a squarefree integer d with
    /// alpha = scale^2 * d; these record the adjustment.
    const Ground& requested_param() const { return requested_param_; }
    const Ground& normalization_scale() const { return scale_; }

    std::uint64_t characteristic() const { return ground_->characteristic(); }
    bool is_rational() const { return ground_->is_rationals(); }
    bool is_finite() const { return ground_->is_finite(); }
    /// |L| = q^2; finite only.
    std::uint64_t ext_order() const;
    bool same_as(const ExtField& other) const;

private:
    ExtField() = default;
    GroundFieldPtr ground_;
    ExtKind kind_ = ExtKind::SquareRoot;
    Ground param_;
    Ground requested_param_;
    Ground scale_;
};

/// An element x + y*beta of L.
class Ext {
public:
    Ext() = default;
    Ext(ExtFieldPtr field, Ground x, Ground y);
    static Ext from_ground(const ExtFieldPtr& field, const Ground& x);
    static Ext from_int(const ExtFieldPtr& field, long v);
    static Ext zero(const ExtFieldPtr& field) { return from_int(field, 0); }
    static Ext one(const ExtFieldPtr& field) { return from_int(field, 1); }
    static Ext beta(const ExtFieldPtr& field);
    /// Finite fields: element with encoding enc(x) + q * enc(y).
    static Ext from_encoding(const ExtFieldPtr& field, std::uint64_t e);

    const ExtFieldPtr& field() const { return field_; }
    const Ground& coeff0() const { return x_; }
    const Ground& coeff1() const { return y_; }
    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
    bool in_ground() const { return y_.is_zero(); }
    std::uint64_t encoding() const;

    Ext operator-() const;
    Ext inv() const;
    friend Ext operator+(const Ext&, const Ext&);
    friend Ext operator-(const Ext&, const Ext&);
    friend Ext operator*(const Ext&, const Ext&);
    friend Ext operator/(const Ext&, const Ext&);
    friend bool operator==(const Ext&, const Ext&);
    friend bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }
    /// Lexicographic on (coeff0, coeff1); the canonical set order.
    friend bool operator<(const Ext&, const Ext&);

    Ext pow(std::uint64_t e) const;
    std::string str() const;

private:
    ExtFieldPtr field_;
    Ground x_, y_;
    void check_same(const Ext& other) const;
};

Ext operator*(const Ground& c, const Ext& z);

/// The Galois conjugate: x - y*beta (SquareRoot), (x+y) + y*beta (ArtinSchreier).
Ext conj(const Ext& z);
/// sigma(z) * z as an element of K.
Ground norm(const Ext& z);
/// z + sigma(z) as an element of K.
Ground trace(const Ext& z);
/// Exact square root in L when one exists.
std::optional<Ext> sqrt_in_ext(const Ext& z);
/// Characteristic 2: a solution of s^2 + s = a in L, via F_2-linear algebra.
std::optional<Ext> solve_artin_schreier(const Ext& a);

/// Roots in K of A*x^2 + B*x + C (A, B, C in K, not all of A,B zero).
std::vector<Ground> ground_quadratic_roots(const Ground& A, const Ground& B,
                                           const Ground& C);

/// Enumerates Q by ascending height max(|num|, den), denominator-major within
/// a height, numerators ascending.  `nonnegative` restricts to >= 0.
class RationalSeq {
public:
    explicit RationalSeq(bool nonnegative = false) : nonneg_(nonnegative) {}
    mpq_class next();
    /// Height of the most recently returned value.
    long last_height() const { return height_; }

private:
    bool nonneg_;
    long height_ = 0;
    std::size_t idx_ = 0;
    std::vector<mpq_class> pending_;
    void refill();
};

/// Enumerates K: all encodings for finite fields (then exhausts), rationals
/// by height for Q.
class GroundSeq {
public:
    explicit GroundSeq(GroundFieldPtr field, bool nonnegative = false);
    std::optional<Ground> next();

private:
    GroundFieldPtr field_;
    RationalSeq rseq_;
    std::uint64_t enc_ = 0;
    bool finite_;
};

}  // namespace numrange
