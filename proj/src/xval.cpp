#include "valkey/xval.hpp"

#include "valkey/errors.hpp"
#include "valkey/parse.hpp"
#include "valkey/search.hpp"

namespace valkey {

struct XValuation::Node {
    Kind kind;
    ValuedField field;
    ExtValue gamma;
    std::optional<XValuation> pred;
    std::optional<Poly> Q;
    std::optional<PcsGenerator> gen;
    unsigned cap = default_precision_cap;

    Node(Kind k, ValuedField F) : kind(k), field(F) {}
};

XValuation XValuation::gauss(const ValuedField &F, const ExtValue &gamma_x)
{
    if (gamma_x.is_inf())
        throw InputError("gauss valuation needs a finite value for x");
    auto n = std::make_shared<Node>(Kind::Gauss, F);
    n->gamma = gamma_x;
    return XValuation(std::move(n));
}

XValuation XValuation::augmented(const XValuation &pred, const Poly &Q, const ExtValue &gamma)
{
    if (!(Q.field() == pred.field()))
        throw InputError("augmentation key is over " + Q.field().str() + ", valuation over " +
                         pred.field().str());
    if (Q.degree() < 1 || !Q.is_monic())
        throw InputError("augmentation key must be monic of degree >= 1");
    if (pred.kind() != Kind::Gauss && pred.kind() != Kind::Augmented)
        throw Unsupported("augmentations are only defined over gauss or aug valuations");
    if (gamma.is_inf())
        throw InputError("augmentation value must be finite");
    auto n = std::make_shared<Node>(Kind::Augmented, pred.field());
    n->pred = pred;
    n->Q = Q;
    n->gamma = gamma;
    return XValuation(std::move(n));
}

XValuation XValuation::root(const ValuedField &F, const Poly &g, const FieldElem &a0, unsigned cap)
{
    auto n = std::make_shared<Node>(Kind::Root, F);
    n->gen = PcsGenerator::hensel(F, g, a0);
    n->Q = g;
    n->cap = cap;
    return XValuation(std::move(n));
}

XValuation XValuation::limit(const PcsGenerator &gen, unsigned cap)
{
    auto n = std::make_shared<Node>(Kind::Limit, gen.field());
    n->gen = gen;
    n->cap = cap;
    return XValuation(std::move(n));
}

XValuation::Kind XValuation::kind() const { return n_->kind; }
const ValuedField &XValuation::field() const { return n_->field; }

const ExtValue &XValuation::gamma() const
{
    if (n_->kind != Kind::Gauss && n_->kind != Kind::Augmented)
        throw Unsupported("only gauss and aug valuations carry a gamma");
    return n_->gamma;
}

const XValuation &XValuation::predecessor() const
{
    if (!n_->pred)
        throw Unsupported("only aug valuations have a predecessor");
    return *n_->pred;
}

const Poly &XValuation::key() const
{
    if (!n_->Q)
        throw Unsupported("this valuation has no distinguished key");
    return *n_->Q;
}

const std::optional<PcsGenerator> &XValuation::generator() const { return n_->gen; }
unsigned XValuation::precision_cap() const { return n_->cap; }

namespace {

// ν(f(z)) from Taylor data at a_ρ: certified when ν(f(a_ρ)) is strictly below
// every other term ν(∂_i f(a_ρ)) + i·ν(z - a_ρ).
std::optional<ExtValue> certified_at(const PcsGenerator &gen, const Poly &f, std::size_t rho)
{
    const ValuedField &F = gen.field();
    const auto T = taylor_expansion(f, gen.element(rho));
    const ExtValue v0 = F.val(T[0]);
    const ExtValue g = gen.gamma(rho);
    for (std::size_t i = 1; i < T.size(); ++i)
        if (!(v0 < F.val(T[i]) + g.scaled(static_cast<long>(i))))
            return std::nullopt;
    return v0;
}

ExtValue eval_limit(const PcsGenerator &gen, const Poly &f, unsigned cap, const char *what)
{
    std::optional<ExtValue> prev;
    for (std::size_t rho = 0; rho <= cap; ++rho) {
        auto cur = certified_at(gen, f, rho);
        if (cur && prev && *cur == *prev)
            return *cur;
        prev = cur;
    }
    throw BudgetExhausted(std::string(what) + " value of " + f.str() + " not certified within " +
                          std::to_string(cap) + " steps");
}

} // namespace

ExtValue XValuation::operator()(const Poly &f) const
{
    if (!(f.field() == n_->field))
        throw InputError("polynomial over " + f.field().str() + " evaluated by a valuation over " +
                         n_->field.str());
    if (f.is_zero())
        return ExtValue::inf();
    if (f.is_constant())
        return n_->field.val(f.coeff(0));
    switch (n_->kind) {
    case Kind::Gauss: {
        ExtValue best = ExtValue::inf();
        const auto c = f.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero())
                best = min(best, n_->field.val(c[i]) + n_->gamma.scaled(static_cast<long>(i)));
        return best;
    }
    case Kind::Augmented: {
        const auto parts = q_expansion(f, *n_->Q);
        ExtValue best = ExtValue::inf();
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (!parts[i].is_zero())
                best = min(best, (*n_->pred)(parts[i]) + n_->gamma.scaled(static_cast<long>(i)));
        return best;
    }
    case Kind::Root: {
        // only the remainder mod g matters: f(z) = r(z)
        const Poly r = divmod(f, *n_->Q).remainder;
        if (r.is_zero())
            return ExtValue::inf();
        if (r.is_constant())
            return n_->field.val(r.coeff(0));
        return eval_limit(*n_->gen, r, n_->cap, "root");
    }
    case Kind::Limit:
        if (auto L = n_->gen->declared_limit())
            return n_->field.val(eval(f, *L));
        return eval_limit(*n_->gen, f, n_->cap, "limit");
    }
    throw MathError("unreachable valuation kind");
}

ExtValue XValuation::operator()(const FieldElem &a) const { return n_->field.val(a); }

std::vector<std::pair<Poly, ExtValue>> XValuation::chain() const
{
    switch (n_->kind) {
    case Kind::Gauss:
        return {{Poly::x(n_->field), n_->gamma}};
    case Kind::Augmented: {
        auto out = n_->pred->chain();
        out.emplace_back(*n_->Q, n_->gamma);
        return out;
    }
    default:
        throw Unsupported("chain description is only available for gauss and aug valuations");
    }
}

std::string XValuation::descriptor() const
{
    switch (n_->kind) {
    case Kind::Gauss:
        return "gauss:" + n_->field.str() + ":" + n_->gamma.str();
    case Kind::Augmented:
        return "aug:(" + n_->pred->descriptor() + ");Q=" + n_->Q->str() + ";g=" + n_->gamma.str();
    case Kind::Root: {
        // generator descriptor is hensel:<field>;g=...;a0=...
        const std::string d = n_->gen->descriptor();
        return "root:" + d.substr(std::string_view("hensel:").size());
    }
    case Kind::Limit:
        return "limit:(" + n_->gen->descriptor() + ")";
    }
    return {};
}

std::optional<std::pair<Poly, Poly>> multiplicativity_probe(const XValuation &V, int degree, std::size_t budget)
{
    const ValuedField &F = V.field();
    std::vector<FieldElem> coeffs = make_grid(F).coeffs;
    for (std::uint32_t d = 1; d < F.prime(); ++d)
        coeffs.push_back(F.from_int(d));
    const Grid probe = make_grid(F, coeffs);
    for (int d1 = 1; 2 * d1 <= degree; ++d1) {
        const auto A = monic_grid_polys(probe, d1, budget);
        const auto B = d1 == degree - d1 ? A : monic_grid_polys(probe, degree - d1, budget);
        if (A.size() * B.size() > budget * 8)
            continue;
        std::vector<ExtValue> vb;
        for (const auto &g : B)
            vb.push_back(V(g));
        for (const auto &f : A) {
            const ExtValue vf = V(f);
            for (std::size_t j = 0; j < B.size(); ++j)
                if (!(V(f * B[j]) == vf + vb[j]))
                    return std::make_pair(f, B[j]);
        }
    }
    return std::nullopt;
}

std::vector<std::string> validate_structure(const XValuation &V)
{
    std::vector<std::string> out;
    switch (V.kind()) {
    case XValuation::Kind::Gauss:
        if (V.gamma() < ExtValue(0))
            out.push_back("ν(x) >= 0 required (got " + V.gamma().str() + ")");
        break;
    case XValuation::Kind::Augmented: {
        out = validate_structure(V.predecessor());
        const ExtValue before = V.predecessor()(V.key());
        if (!(before < V.gamma()))
            out.push_back("non-increasing augmentation: value " + V.gamma().str() + " for " +
                          V.key().str() + " does not exceed " + before.str());
        const auto ch = V.predecessor().chain();
        if (ch.size() > 1 && V.key().degree() < ch.back().first.degree())
            out.push_back("key degrees must be non-decreasing along the chain");
        if (auto pair = multiplicativity_probe(V, V.key().degree()))
            out.push_back("augmentation is not multiplicative: ν(f·g) != ν(f) + ν(g) for f = " + pair->first.str() +
                          ", g = " + pair->second.str());
        break;
    }
    case XValuation::Kind::Root: {
        const auto irr = irreducible_bounded(V.key());
        if (irr.verdict == Irreducibility::Verdict::Factor)
            out.push_back("root polynomial " + V.key().str() + " is reducible (factor " +
                          irr.factor->str() + ")");
        break;
    }
    case XValuation::Kind::Limit:
        break;
    }
    return out;
}

XValuation parse_valuation(std::string_view s)
{
    auto strip_parens = [&](const std::string &part) {
        if (part.size() < 2 || part.front() != '(' || part.back() != ')')
            throw ParseError(s, 0, "expected a parenthesized descriptor in '" + part + "'");
        return part.substr(1, part.size() - 2);
    };
    if (s.rfind("gauss:", 0) == 0) {
        const std::string rest(s.substr(6));
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos)
            throw ParseError(s, 6, "expected gauss:<field>:<gamma>");
        return XValuation::gauss(parse_field(rest.substr(0, colon)), parse_value(rest.substr(colon + 1)));
    }
    if (s.rfind("aug:", 0) == 0) {
        const auto parts = split_top_level(s.substr(4), ';');
        if (parts.size() != 3 || parts[1].rfind("Q=", 0) != 0 || parts[2].rfind("g=", 0) != 0)
            throw ParseError(s, 4, "expected aug:(<descriptor>);Q=<poly>;g=<value>");
        const XValuation pred = parse_valuation(strip_parens(parts[0]));
        return XValuation::augmented(pred, parse_poly(pred.field(), parts[1].substr(2)),
                                     parse_value(parts[2].substr(2)));
    }
    if (s.rfind("root:", 0) == 0) {
        const auto parts = split_top_level(s.substr(5), ';');
        if (parts.size() != 3 || parts[1].rfind("g=", 0) != 0 || parts[2].rfind("a0=", 0) != 0)
            throw ParseError(s, 5, "expected root:<field>;g=<poly>;a0=<elem>");
        const ValuedField F = parse_field(parts[0]);
        return XValuation::root(F, parse_poly(F, parts[1].substr(2)), parse_elem(F, parts[2].substr(3)));
    }
    if (s.rfind("limit:", 0) == 0)
        return XValuation::limit(parse_generator(strip_parens(std::string(s.substr(6)))));
    throw ParseError(s, 0, "unknown valuation kind (expected gauss, aug, root or limit)");
}

} // namespace valkey
