#include <doctest.h>

#include <random>

#include "numrange/fields.hpp"

using namespace numrange;

namespace {

Ext qi_elt(const ExtFieldPtr& F, long xn, long xd, long yn, long yd) {
    auto K = F->ground();
    return Ext(F, Ground(K, mpq_class(xn, xd)), Ground(K, mpq_class(yn, yd)));
}

Ext random_qi(const ExtFieldPtr& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    return qi_elt(F, num(rng), den(rng), num(rng), den(rng));
}

}  // namespace

TEST_CASE("field spec parsing and normalization") {
    auto qi = ExtField::parse("Q[sqrt=-1]");
    CHECK(qi->ground()->is_rationals());
    CHECK(qi->param().rat() == -1);

    auto q8 = ExtField::parse("Q[sqrt=8]");
    CHECK(q8->param().rat() == 2);
    CHECK(q8->normalization_scale().rat() == 2);

    auto qm4 = ExtField::parse("Q[sqrt=-4]");
    CHECK(qm4->param().rat() == -1);
    CHECK(qm4->normalization_scale().rat() == 2);

    CHECK_THROWS_AS(ExtField::parse("Q[sqrt=9]"), ParseError);
    CHECK_THROWS_AS(ExtField::parse("Q[sqrt=0]"), ParseError);
    CHECK_THROWS_AS(ExtField::parse("F[4][sqrt=2]"), ParseError);  // 4 not prime
    CHECK_THROWS_AS(ExtField::parse("F[3][sqrt=1]"), ParseError);  // 1 is a square
    CHECK_THROWS_AS(ExtField::parse("F[2][sqrt=1]"), ParseError);  // char 2

    auto f9 = ExtField::parse("F[3][sqrt=2]");
    CHECK(f9->ground()->order() == 3);
    CHECK(f9->ext_order() == 9);
    CHECK(f9->kind() == ExtKind::SquareRoot);

    // auto-selected least non-residue mod 5 is 2
    auto f5 = ExtField::parse("F[5]");
    CHECK(f5->param().enc() == 2);

    auto f4 = ExtField::parse("F[2^2][as=2]");
    CHECK(f4->ground()->order() == 4);
    CHECK(f4->kind() == ExtKind::ArtinSchreier);
    // F[2] auto-picks eps = 1 (the only trace-one element)
    auto f2 = ExtField::parse("F[2]");
    CHECK(f2->param().enc() == 1);

    CHECK(ExtField::parse(f9->spec_string())->same_as(*f9));
}

TEST_CASE("finite field digit arithmetic") {
    auto f4 = GroundField::finite(2, 2);
    // smallest irreducible over F_2 is t^2+t+1, so t*t = t+1
    CHECK(f4->modulus() == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(f4->ff_mul(2, 2) == 3);
    CHECK(f4->ff_inv(2) == 3);  // t*(t+1) = t^2+t = 1

    auto f9 = GroundField::finite(3, 2);
    CHECK(f9->modulus() == std::vector<std::uint64_t>{1, 0, 1});  // t^2+1
    for (std::uint64_t a = 0; a < 9; ++a) {
        if (a != 0) CHECK(f9->ff_mul(a, f9->ff_inv(a)) == 1);
        CHECK(f9->ff_add(a, f9->ff_neg(a)) == 0);
    }

    auto f3 = GroundField::finite(3, 1);
    Ground two(f3, std::uint64_t{2});
    CHECK(two.inv() == two);  // 2*2 = 4 = 1

    CHECK_THROWS_AS(GroundField::finite(3, 2, {2, 0, 1}), ParseError);  // t^2+2 = t^2-1 reducible
    auto f9b = GroundField::finite(3, 2, {2, 2, 1});                    // t^2+2t+2 irreducible
    CHECK(f9b->order() == 9);
}

TEST_CASE("ground sqrt") {
    auto f9 = GroundField::finite(3, 2);
    for (std::uint64_t a = 0; a < 9; ++a) {
        // brute-force square set
        bool has = false;
        for (std::uint64_t w = 0; w < 9; ++w)
            if (f9->ff_mul(w, w) == a) has = true;
        auto r = f9->ff_sqrt(a);
        CHECK(r.has_value() == has);
        if (r) CHECK(f9->ff_mul(*r, *r) == a);
    }
    auto f25 = GroundField::finite(5, 2);
    for (std::uint64_t a = 0; a < 25; ++a) {
        bool has = false;
        for (std::uint64_t w = 0; w < 25; ++w)
            if (f25->ff_mul(w, w) == a) has = true;
        auto r = f25->ff_sqrt(a);
        CHECK(r.has_value() == has);
        if (r) CHECK(f25->ff_mul(*r, *r) == a);
    }
    // q = 13: q % 4 == 1 exercises Tonelli-Shanks
    auto f13 = GroundField::finite(13, 1);
    for (std::uint64_t a = 0; a < 13; ++a) {
        auto r = f13->ff_sqrt(a);
        bool has = false;
        for (std::uint64_t w = 0; w < 13; ++w)
            if (w * w % 13 == a) has = true;
        CHECK(r.has_value() == has);
        if (r) CHECK(*r * *r % 13 == a);
    }

    auto Q = GroundField::rationals();
    CHECK(Ground(Q, mpq_class(9, 25)).sqrt_in_ground()->rat() == mpq_class(3, 5));
    CHECK(!Ground(Q, mpq_class(2)).sqrt_in_ground());
    CHECK(!Ground(Q, mpq_class(-4)).sqrt_in_ground());
}

TEST_CASE("conjugation, norm, trace over Q(i)") {
    auto F = ExtField::parse("Q[sqrt=-1]");
    Ext z = qi_elt(F, 3, 1, 4, 1);
    CHECK(conj(z) == qi_elt(F, 3, 1, -4, 1));
    CHECK(norm(z).rat() == 25);
    CHECK(trace(z).rat() == 6);
    CHECK(norm(Ext::zero(F)).is_zero());
    CHECK(trace(Ext::zero(F)).is_zero());

    // (1+beta)(1-beta) = 2 for d = -1
    CHECK(qi_elt(F, 1, 1, 1, 1) * qi_elt(F, 1, 1, -1, 1) == Ext::from_int(F, 2));
    // inv(beta) = -beta
    CHECK(Ext::beta(F).inv() == -Ext::beta(F));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Ext a = random_qi(F, rng), b = random_qi(F, rng);
        CHECK(conj(conj(a)) == a);
        CHECK(conj(a * b) == conj(a) * conj(b));
        CHECK(norm(a * b) == norm(a) * norm(b));
        CHECK((norm(a).is_zero()) == a.is_zero());
        if (!a.is_zero()) CHECK(norm(a).rat() > 0);  // d < 0: definite
        CHECK(trace(a) + trace(b) == trace(a + b));
        // sigma fixes exactly the ground field
        CHECK((conj(a) == a) == a.coeff1().is_zero());
    }
}

TEST_CASE("norm witness values from the paper") {
    auto f5 = ExtField::parse("Q[sqrt=5]");
    CHECK(norm(qi_elt(f5, 2, 1, 1, 1)).rat() == -1);
}

TEST_CASE("characteristic-2 extension") {
    auto F = ExtField::parse("F[2^2][as=2]");
    auto K = F->ground();
    CHECK(conj(Ext::beta(F)) == Ext(F, Ground::one(K), Ground::one(K)));
    CHECK(trace(Ext::beta(F)).enc() == 1);
    // sigma(z)z = x(x+y) + y^2 eps, exhaustively
    for (std::uint64_t e = 0; e < 16; ++e) {
        Ext z = Ext::from_encoding(F, e);
        Ground x = z.coeff0(), y = z.coeff1();
        CHECK(norm(z) == x * (x + y) + y * y * F->param());
        CHECK(conj(conj(z)) == z);
        CHECK(norm(z) == norm(conj(z)));
        CHECK((conj(z) == z) == z.coeff1().is_zero());
        if (!z.is_zero()) CHECK(z * z.inv() == Ext::one(F));
    }
}

TEST_CASE("sqrt_in_ext") {
    auto F = ExtField::parse("Q[sqrt=-1]");
    CHECK(*sqrt_in_ext(Ext::from_int(F, -1)) == Ext::beta(F));
    Ext twobeta = qi_elt(F, 0, 1, 2, 1);
    auto r = sqrt_in_ext(twobeta);
    REQUIRE(r.has_value());
    CHECK(*r * *r == twobeta);
    CHECK(*r == qi_elt(F, 1, 1, 1, 1));

    // oracle for sqrt(2) not existing in Q(i): a^2-b^2=2 with 2ab=0 has no
    // rational solution (b=0 needs a^2=2; a=0 needs -b^2=2)
    for (long n = -40; n <= 40; ++n)
        for (long d = 1; d <= 20; ++d) {
            mpq_class a(n, d);
            CHECK(a * a != 2);
            CHECK(-(a * a) != 2);
        }
    CHECK(!sqrt_in_ext(Ext::from_int(F, 2)));

    // exhaustive agreement with brute-force squaring over F_9 and F_25
    for (const char* spec : {"F[3][sqrt=2]", "F[5][sqrt=2]"}) {
        auto G = ExtField::parse(spec);
        std::uint64_t n = G->ext_order();
        for (std::uint64_t e = 0; e < n; ++e) {
            Ext z = Ext::from_encoding(G, e);
            bool has = false;
            for (std::uint64_t w = 0; w < n; ++w) {
                Ext c = Ext::from_encoding(G, w);
                if (c * c == z) has = true;
            }
            auto s = sqrt_in_ext(z);
            CHECK(s.has_value() == has);
            if (s) CHECK(*s * *s == z);
        }
    }
    // characteristic 2: squaring is bijective, sqrt always exists
    auto F4 = ExtField::parse("F[2][as=1]");
    for (std::uint64_t e = 0; e < 4; ++e) {
        Ext z = Ext::from_encoding(F4, e);
        auto s = sqrt_in_ext(z);
        REQUIRE(s.has_value());
        CHECK(*s * *s == z);
    }
}

TEST_CASE("solve_artin_schreier") {
    for (const char* spec : {"F[2][as=1]", "F[2^2][as=2]", "F[2^3][as=1]"}) {
        auto F = ExtField::parse(spec);
        std::uint64_t n = F->ext_order();
        for (std::uint64_t e = 0; e < n; ++e) {
            Ext a = Ext::from_encoding(F, e);
            bool has = false;
            for (std::uint64_t w = 0; w < n; ++w) {
                Ext s = Ext::from_encoding(F, w);
                if (s * s + s == a) has = true;
            }
            auto sol = solve_artin_schreier(a);
            CHECK(sol.has_value() == has);
            if (sol) CHECK(*sol * *sol + *sol == a);
        }
    }
}

TEST_CASE("ground quadratic roots") {
    auto Q = GroundField::rationals();
    auto g = [&](long n, long d = 1) { return Ground(Q, mpq_class(n, d)); };
    auto roots = ground_quadratic_roots(g(1), g(-3), g(2));  // x^2-3x+2
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].rat() == 1);
    CHECK(roots[1].rat() == 2);
    CHECK(ground_quadratic_roots(g(1), g(0), g(1)).empty());
    CHECK(ground_quadratic_roots(g(0), g(2), g(-4))[0].rat() == 2);

    auto f9 = GroundField::finite(3, 2);
    for (std::uint64_t a = 1; a < 9; ++a)
        for (std::uint64_t b = 0; b < 9; ++b)
            for (std::uint64_t c = 0; c < 9; ++c) {
                Ground A(f9, a), B(f9, b), C(f9, c);
                auto rs = ground_quadratic_roots(A, B, C);
                std::size_t expect = 0;
                for (std::uint64_t x = 0; x < 9; ++x) {
                    Ground X(f9, x);
                    if (A * X * X + B * X + C == Ground::zero(f9)) ++expect;
                }
                CHECK(rs.size() == expect);
                for (const auto& r : rs)
                    CHECK(A * r * r + B * r + C == Ground::zero(f9));
            }
}

TEST_CASE("rational enumeration order") {
    RationalSeq seq;
    std::vector<mpq_class> got;
    for (int i = 0; i < 7; ++i) got.push_back(seq.next());
    std::vector<mpq_class> want = {mpq_class(-1), mpq_class(0),     mpq_class(1),
                                   mpq_class(-2), mpq_class(2),     mpq_class(-1, 2),
                                   mpq_class(1, 2)};
    CHECK(got == want);

    RationalSeq nn(true);
    std::vector<mpq_class> got2;
    for (int i = 0; i < 5; ++i) got2.push_back(nn.next());
    std::vector<mpq_class> want2 = {mpq_class(0), mpq_class(1), mpq_class(2), mpq_class(1, 2),
                                    mpq_class(3)};
    CHECK(got2 == want2);
}

TEST_CASE("scalar serialization round-trips") {
    auto Q = GroundField::rationals();
    for (const char* s : {"3", "-7/2", "0", "22/7"}) {
        Ground g = Ground::parse(Q, s);
        CHECK(Ground::parse(Q, g.str()) == g);
    }
    auto f9 = GroundField::finite(3, 2);
    for (std::uint64_t e = 0; e < 9; ++e) {
        Ground g(f9, e);
        CHECK(Ground::parse(f9, g.str()) == g);
    }
    CHECK_THROWS_AS(Ground::parse(Q, "x"), ParseError);
}
