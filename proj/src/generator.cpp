#include "valkey/generator.hpp"

#include <mutex>

#include "valkey/errors.hpp"
#include "valkey/parse.hpp"

namespace valkey {

struct PcsGenerator::State {
    ValuedField field;
    bool hensel = false;
    // hensel
    std::optional<Poly> g;
    FieldElem a0;
    long d0 = 0; // ν(g(a0)) = ν(z - a0)
    // series
    SeriesRule rule = SeriesRule::Geom;

    mutable std::mutex mu;
    mutable std::vector<FieldElem> cache;
    mutable mpz_class root_mod; // z mod p^root_prec
    mutable unsigned long root_prec = 0;

    explicit State(ValuedField F) : field(F) {}

    mpz_class pk(unsigned long k) const
    {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), field.prime(), k);
        return r;
    }

    mpz_class reduce(const mpq_class &q, const mpz_class &m) const
    {
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), m.get_mpz_t()))
            throw MathError("denominator not invertible mod p^k");
        mpz_class r = (mpz_class(q.get_num()) * inv) % m;
        if (r < 0)
            r += m;
        return r;
    }

    // z mod p^N via Newton iteration; caller holds the mutex.
    const mpz_class &root_to(unsigned long N) const
    {
        if (root_prec >= N)
            return root_mod;
        unsigned long target = std::max(N, 2 * root_prec);
        const mpz_class m = pk(target);
        std::vector<mpz_class> c, dc;
        const Poly dg = hasse_derivative(*g, 1);
        for (const auto &x : g->coeffs())
            c.push_back(reduce(x.rational(), m));
        for (const auto &x : dg.coeffs())
            dc.push_back(reduce(x.rational(), m));
        auto horner = [&](const std::vector<mpz_class> &co, const mpz_class &a) {
            mpz_class acc = 0;
            for (auto it = co.rbegin(); it != co.rend(); ++it)
                acc = (acc * a + *it) % m;
            if (acc < 0)
                acc += m;
            return acc;
        };
        mpz_class a = root_prec ? root_mod : reduce(a0.rational(), m);
        for (int iter = 0; iter < 256; ++iter) {
            mpz_class ga = horner(c, a);
            if (ga == 0)
                break;
            mpz_class da = horner(dc, a), inv;
            if (!mpz_invert(inv.get_mpz_t(), da.get_mpz_t(), m.get_mpz_t()))
                throw MathError("Hensel derivative is not a unit");
            a = (a - ga * inv) % m;
            if (a < 0)
                a += m;
        }
        root_mod = a;
        root_prec = target;
        return root_mod;
    }

    FieldElem compute(std::size_t rho) const
    {
        if (hensel) {
            if (rho == 0)
                return a0;
            // canonical truncation of z, nudged so that ν(a_ρ - z) = ρ + d0 exactly
            const unsigned long N = rho + d0;
            const mpz_class z = root_to(N + 1);
            const mpz_class pN = pk(N);
            mpz_class t = z % pN;
            if ((z - t) % pk(N + 1) == 0)
                t += pN;
            return FieldElem(mpq_class(t));
        }
        FieldElem acc = field.zero();
        for (std::size_t i = 0; i <= rho; ++i)
            acc += field.uniformizer_power(static_cast<long>(exponent(i)));
        return acc;
    }

    unsigned long exponent(std::size_t i) const
    {
        return rule == SeriesRule::Geom ? i : i * i;
    }
};

std::string to_string(SeriesRule r) { return r == SeriesRule::Geom ? "geom" : "geom-squares"; }

SeriesRule parse_series_rule(std::string_view id)
{
    if (id == "geom")
        return SeriesRule::Geom;
    if (id == "geom-squares")
        return SeriesRule::GeomSquares;
    throw InputError("unknown series rule '" + std::string(id) + "' (expected geom or geom-squares)");
}

PcsGenerator PcsGenerator::hensel(const ValuedField &F, const Poly &g, const FieldElem &a0)
{
    if (F.kind() != FieldKind::PAdic)
        throw Unsupported("Hensel generators are only available over qp fields");
    if (!(g.field() == F) || !F.contains(a0))
        throw InputError("Hensel data not over " + F.str());
    if (g.degree() < 1 || !g.is_monic())
        throw InputError("Hensel polynomial must be monic of degree >= 1");
    for (const auto &c : g.coeffs())
        if (F.val(c) < ExtValue(0))
            throw InputError("Hensel polynomial must have p-integral coefficients");
    if (F.val(a0) < ExtValue(0))
        throw InputError("initial approximation must be p-integral");
    const ExtValue vg = F.val(eval(g, a0));
    if (vg.is_inf())
        throw InputError("a0 is an exact root of g in K");
    if (vg < ExtValue(1))
        throw InputError("g(a0) is not divisible by p");
    if (F.val(eval(hasse_derivative(g, 1), a0)) != ExtValue(0))
        throw MathError("non-simple root: the derivative of g at a0 is not a unit");
    auto st = std::make_shared<State>(F);
    st->hensel = true;
    st->g = g;
    st->a0 = a0;
    st->d0 = vg.rational().get_num().get_si();
    return PcsGenerator(std::move(st));
}

PcsGenerator PcsGenerator::series(const ValuedField &F, SeriesRule rule)
{
    auto st = std::make_shared<State>(F);
    st->rule = rule;
    return PcsGenerator(std::move(st));
}

const ValuedField &PcsGenerator::field() const { return st_->field; }
bool PcsGenerator::is_hensel() const { return st_->hensel; }

const Poly &PcsGenerator::hensel_poly() const
{
    if (!st_->hensel)
        throw Unsupported("series generators have no defining polynomial");
    return *st_->g;
}

std::optional<SeriesRule> PcsGenerator::rule() const
{
    if (st_->hensel)
        return std::nullopt;
    return st_->rule;
}

FieldElem PcsGenerator::element(std::size_t rho) const
{
    std::lock_guard lock(st_->mu);
    while (st_->cache.size() <= rho)
        st_->cache.push_back(st_->compute(st_->cache.size()));
    return st_->cache[rho];
}

std::vector<FieldElem> PcsGenerator::prefix(std::size_t m) const
{
    std::vector<FieldElem> out;
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(element(i));
    return out;
}

ExtValue PcsGenerator::gamma(std::size_t rho) const
{
    if (st_->hensel)
        return ExtValue(static_cast<long>(rho) + st_->d0);
    return ExtValue(static_cast<long>(st_->exponent(rho + 1)));
}

std::optional<FieldElem> PcsGenerator::declared_limit() const
{
    if (st_->hensel || st_->rule != SeriesRule::Geom)
        return std::nullopt;
    const ValuedField &F = st_->field;
    return F.one() / (F.one() - F.uniformizer_power(1));
}

std::string PcsGenerator::descriptor() const
{
    if (st_->hensel)
        return "hensel:" + st_->field.str() + ";g=" + st_->g->str() + ";a0=" + st_->a0.str();
    return "series:" + st_->field.str() + ";expr=" + to_string(st_->rule);
}

PcsGenerator parse_generator(std::string_view s)
{
    auto parts = split_top_level(s, ';');
    auto head = parts[0];
    auto colon = head.find(':');
    if (colon == std::string::npos)
        throw ParseError(s, 0, "expected hensel:<field>;... or series:<field>;...");
    const std::string kind = head.substr(0, colon);
    const ValuedField F = parse_field(head.substr(colon + 1));
    auto field_value = [&](std::size_t i, std::string_view key) {
        if (i >= parts.size() || parts[i].rfind(std::string(key) + "=", 0) != 0)
            throw ParseError(s, 0, "expected '" + std::string(key) + "=' component");
        return parts[i].substr(key.size() + 1);
    };
    if (kind == "hensel") {
        if (parts.size() != 3)
            throw ParseError(s, 0, "hensel descriptor needs g= and a0=");
        Poly g = parse_poly(F, field_value(1, "g"));
        FieldElem a0 = parse_elem(F, field_value(2, "a0"));
        return PcsGenerator::hensel(F, g, a0);
    }
    if (kind == "series") {
        if (parts.size() != 2)
            throw ParseError(s, 0, "series descriptor needs expr=");
        return PcsGenerator::series(F, parse_series_rule(field_value(1, "expr")));
    }
    throw ParseError(s, 0, "unknown generator kind '" + kind + "'");
}

} // namespace valkey
