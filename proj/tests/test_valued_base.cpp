#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "valkey/errors.hpp"
#include "valkey/ext_value.hpp"
#include "valkey/field.hpp"
#include "valkey/parse.hpp"

using namespace valkey;

TEST_CASE("ext values order rationals below infinity")
{
    CHECK(ExtValue(mpq_class(3, 2)) < ExtValue(2));
    CHECK(ExtValue::inf() > ExtValue(1000000000L));
    CHECK(ExtValue::inf() == ExtValue::inf());
    CHECK(ExtValue(mpq_class(2, 4)) == ExtValue(mpq_class(1, 2)));
}

TEST_CASE("ext value arithmetic")
{
    CHECK((ExtValue(mpq_class(1, 2)) + ExtValue(mpq_class(1, 3))).str() == "5/6");
    CHECK(ExtValue(3).divided(2).str() == "3/2");
    CHECK((ExtValue::inf() + ExtValue(-7)).is_inf());
    CHECK(ExtValue::inf().divided(4).is_inf());
    CHECK(ExtValue::inf().scaled(3).is_inf());
    CHECK(ExtValue(mpq_class(-3, 4)).scaled(4) == ExtValue(-3));
    CHECK_THROWS_AS(ExtValue(1) - ExtValue::inf(), MathError);
    CHECK_THROWS_AS(ExtValue::inf().rational(), MathError);
}

TEST_CASE("ratio drops infinite denominators")
{
    CHECK_FALSE(ratio(ExtValue(1), ExtValue::inf(), 1).has_value());
    CHECK(ratio(ExtValue::inf(), ExtValue(0), 2)->is_inf());
    CHECK(*ratio(ExtValue(3), ExtValue(0), 2) == ExtValue(mpq_class(3, 2)));
}

TEST_CASE("p-adic field")
{
    const auto F = ValuedField::padic(3);
    CHECK(F.exponent_characteristic() == 1);
    CHECK((parse_elem(F, "1/2") + parse_elem(F, "1/3")).str() == "5/6");
    CHECK(F.val(parse_elem(F, "9/2")) == ExtValue(2));
    CHECK(ValuedField::padic(7).val(ValuedField::padic(7).zero()).is_inf());
    const auto F5 = ValuedField::padic(5);
    CHECK_THROWS_AS(F5.one() / F5.zero(), MathError);
    CHECK_THROWS_AS(ValuedField::padic(4), InputError);
}

TEST_CASE("t-adic field")
{
    const auto F = ValuedField::tseries(2);
    CHECK(F.exponent_characteristic() == 2);
    const auto t = parse_elem(F, "t");
    CHECK(t * t == parse_elem(F, "t^2"));
    const auto F5 = ValuedField::tseries(5);
    CHECK(F5.val(parse_elem(F5, "t^2/(t+1)")) == ExtValue(2));
    CHECK(F5.val(parse_elem(F5, "(t+1)/t^3")) == ExtValue(-3));
    // 1 + 1 = 0 in characteristic 2
    CHECK((F.one() + F.one()).is_zero());
}

TEST_CASE("parse errors carry positions")
{
    CHECK_THROWS_AS(parse_field("qp:9"), InputError);
    CHECK_THROWS_AS(parse_field("zz:3"), ParseError);
    CHECK_THROWS_AS(parse_value("1/0"), ParseError);
    CHECK(parse_value("-3/6") == ExtValue(mpq_class(-1, 2)));
    CHECK(parse_value("inf").is_inf());
    try {
        parse_poly(ValuedField::padic(3), "x^2+?");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("base valuation agrees with repeated division")
{
    std::mt19937_64 rng(11);
    for (unsigned p : {2u, 3u, 7u}) {
        const auto F = ValuedField::padic(p);
        for (int s = 0; s < 100; ++s) {
            const long n = static_cast<long>(rng() % 100000) - 50000, d = 1 + static_cast<long>(rng() % 5000);
            const mpq_class q(n, d);
            const auto want = oracle::vp(mpq_class(q), p);
            const ExtValue got = F.val(FieldElem(q));
            if (want)
                CHECK(got == ExtValue(*want));
            else
                CHECK(got.is_inf());
        }
    }
}
