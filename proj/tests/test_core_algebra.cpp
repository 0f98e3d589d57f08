#include "jetsec/laurent.hpp"
#include "jetsec/polynomial.hpp"
#include "jetsec/text.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace jetsec;

namespace {

JetPolynomial P(const char* s) { return parse_poly(s); }

JetPolynomial random_poly(std::mt19937& rng, unsigned max_order, unsigned max_deg, unsigned terms) {
    std::uniform_int_distribution<unsigned> order(0, max_order);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    JetPolynomial p;
    for (unsigned t = 0; t < terms; ++t) {
        JetMonomial m;
        const unsigned k = deg(rng);
        for (unsigned i = 0; i < k; ++i) {
            m = m * JetMonomial::variable(order(rng));
        }
        p.add_term(m, make_rational(num(rng), den(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("rationals are canonical and reject zero denominators") {
    CHECK(make_rational(6, -4) == Rational(-3, 2));
    CHECK(make_rational(6, -4).get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
    CHECK(factorial(21) == Integer("51090942171709440000"));
    CHECK(binomial(10, 3) == 120);
}

TEST_CASE("monomial degree and order of derivatives") {
    const auto m = JetMonomial::variable(3) * JetMonomial::variable(1, 2) * JetMonomial::variable(0);
    CHECK(m.degree() == 4);
    CHECK(m.order_of_derivatives() == 5);
    CHECK(JetMonomial(std::vector<JetMonomial::Exponent>{1, 0, 0}) == JetMonomial::variable(0));
    CHECK(JetMonomial{}.is_one());
}

TEST_CASE("term order: degree, then sd, then reverse lex from the highest order") {
    const auto x2x0 = JetMonomial::variable(2) * JetMonomial::variable(0);
    const auto x1sq = JetMonomial::variable(1, 2);
    const auto x0 = JetMonomial::variable(0);
    const auto x1 = JetMonomial::variable(1);
    CHECK(JetMonomial{} < x0);
    CHECK(x0 < x1);
    CHECK(x1 < x2x0);
    CHECK(x2x0 < x1sq);
    CHECK(format_poly(P("x1^2 + x2*x0")) == "x2*x0 + x1^2");
}

TEST_CASE("ring operations") {
    CHECK(P("x1") * P("x1") == P("x1^2"));
    CHECK(P("x2*x0 - 2*x1^2") + P("2*x1^2") == P("x2*x0"));
    CHECK((P("x2*x0 - 2*x1^2") + P("2*x1^2")).size() == 1);
    CHECK(poly_scale(P("x1"), Rational(3, 2)) == P("3/2*x1"));
    CHECK(poly_mul(P("x0 + x1"), P("x0 - x1")) == P("x0^2 - x1^2"));
    CHECK(poly_add(P("x1"), P("-x1")).is_zero());
    CHECK((P("x1") * Rational(0)).is_zero());
}

TEST_CASE("homogeneous and sd components") {
    CHECK(homogeneous_component(P("x0^2 + x1"), 2) == P("x0^2"));
    CHECK(homogeneous_component(P("x0^2 + x1"), 1) == P("x1"));
    CHECK(homogeneous_component(P("x0^2"), 3).is_zero());
    CHECK(sd_component(P("x2*x0 - 2*x1^2"), 2) == P("x2*x0 - 2*x1^2"));
    CHECK(sd_component(P("x0^2 + x1*x0"), 0) == P("x0^2"));
    CHECK(sd_component(P("x1"), 5).is_zero());
}

TEST_CASE("degree and sd of zero are rejected") {
    JetPolynomial zero;
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(zero.degree(), std::domain_error);
    CHECK_THROWS_AS(zero.order_of_derivatives(), std::domain_error);
}

TEST_CASE("components partition every polynomial") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_poly(rng, 5, 5, 8);
        JetPolynomial by_degree;
        JetPolynomial by_sd;
        for (unsigned d = 0; d <= 5; ++d) {
            by_degree += homogeneous_component(p, d);
        }
        for (unsigned l = 0; l <= 25; ++l) {
            by_sd += sd_component(p, l);
        }
        CHECK(by_degree == p);
        CHECK(by_sd == p);
    }
}

TEST_CASE("gradings are additive on monomials and subadditive on polynomials") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_poly(rng, 4, 4, 4);
        const auto b = random_poly(rng, 4, 4, 4);
        for (const auto& [ma, ca] : a.terms()) {
            for (const auto& [mb, cb] : b.terms()) {
                const auto m = ma * mb;
                CHECK(m.degree() == ma.degree() + mb.degree());
                CHECK(m.order_of_derivatives() == ma.order_of_derivatives() + mb.order_of_derivatives());
            }
        }
        const auto prod = a * b;
        if (!a.is_zero() && !b.is_zero() && !prod.is_zero()) {
            CHECK(prod.order_of_derivatives() <= a.order_of_derivatives() + b.order_of_derivatives());
        }
    }
}

TEST_CASE("canonicalization is idempotent") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_poly(rng, 4, 3, 10);
        JetPolynomial q;
        for (const auto& [m, c] : p.terms()) {
            q.add_term(m, c);
        }
        CHECK(q == p);
        for (const auto& [m, c] : p.terms()) {
            CHECK(c != 0);
        }
    }
}

TEST_CASE("Laurent expansions: keys, minimum power, products") {
    LaurentExpansion e;
    CHECK_FALSE(e.min_x0_power().has_value());
    e.add_term(LaurentKey{JetMonomial::variable(1), -2}, -1);
    e.add_term(LaurentKey{JetMonomial{}, -1}, 3);
    CHECK(*e.min_x0_power() == -2);
    CHECK_THROWS_AS(e.add_term(LaurentKey{JetMonomial::variable(0), -1}, 1), std::invalid_argument);
    const auto sq = e * e;
    CHECK(sq.coefficient(LaurentKey{JetMonomial::variable(1, 2), -4}) == 1);
    CHECK(sq.coefficient(LaurentKey{JetMonomial::variable(1), -3}) == -6);
    CHECK(sq.coefficient(LaurentKey{JetMonomial{}, -2}) == 9);
    e.add_term(LaurentKey{JetMonomial::variable(1), -2}, 1);
    CHECK(*e.min_x0_power() == -1);
}
