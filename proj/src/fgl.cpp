#include "flagops/fgl.hpp"

#include <algorithm>

namespace flagops {

namespace {

TruncatedSeries embed_univariate(const TruncatedSeries& uni, const TruncatedSeries& arg) {
    return substitute(uni, {arg});
}

} // namespace

// --- FGL ----------------------------------------------------------------------

FGL::FGL(std::string name, SeriesCtxPtr bivariate_ctx, TruncatedSeries F, bool check_associativity)
    : name_(std::move(name)), ctx_(std::move(bivariate_ctx)), F_(std::move(F)) {
    if (ctx_->nvars() != 2) throw ConfigError("FGL: bivariate context required");
    check_law_axioms(ctx_, F_, check_associativity);
}

RingElement FGL::coefficient(int i, int j) const { return F_.coefficient({i, j}); }

const SeriesCtxPtr& FGL::univariate_ctx() const {
    if (!uni_ctx_) uni_ctx_ = make_series_ctx({ctx_->names()[0]}, ctx_->order(), ctx_->ring());
    return uni_ctx_;
}

const TruncatedSeries& FGL::formal_inverse() const {
    if (inverse_) return *inverse_;
    const SeriesCtxPtr& uctx = univariate_ctx();
    TruncatedSeries x = TruncatedSeries::variable(uctx, 0);
    TruncatedSeries iota = TruncatedSeries::zero(uctx);
    // greedy coefficient solve: the x^k coefficient of F(x, iota) is killed by
    // adding c_k x^k, since dF/dy = 1 + higher
    for (int k = 1; k <= uctx->order(); ++k) {
        TruncatedSeries val = sum(x, iota);
        RingElement err = val.coefficient({k});
        if (err.is_zero()) continue;
        iota += TruncatedSeries::variable(uctx, 0, k).scaled(-err);
    }
    inverse_ = iota;
    return *inverse_;
}

TruncatedSeries FGL::sum(const TruncatedSeries& s1, const TruncatedSeries& s2) const {
    if (!(*s1.ctx() == *s2.ctx())) throw ContextMismatch("FGL::sum: operand contexts differ");
    if (!s1.constant_term().is_zero() || !s2.constant_term().is_zero())
        throw NotTopologicallyNilpotent("FGL::sum: operands must have zero constant term");
    return substitute(F_, {s1, s2});
}

TruncatedSeries FGL::int_multiple(long n, const TruncatedSeries& s) const {
    if (!s.constant_term().is_zero())
        throw NotTopologicallyNilpotent("FGL::int_multiple: operand must have zero constant term");
    if (n == 0) return TruncatedSeries::zero(s.ctx(), s.precision());
    TruncatedSeries base = s;
    if (n < 0) {
        base = embed_univariate(formal_inverse(), s);
        n = -n;
    }
    TruncatedSeries acc = base;
    for (long i = 1; i < n; ++i) acc = sum(acc, base);
    return acc;
}

bool FGL::is_additive_type() const {
    const TruncatedSeries& iota = formal_inverse();
    TruncatedSeries minus_x = -TruncatedSeries::variable(univariate_ctx(), 0).truncated(iota.precision());
    return equal_up_to(iota, minus_x, std::min(iota.precision(), minus_x.precision()));
}

// --- axioms -------------------------------------------------------------------

void check_law_axioms(const SeriesCtxPtr& ctx, const TruncatedSeries& F, bool check_associativity) {
    const auto& ring = ctx->ring();
    int N = ctx->order();
    // shape: x + y + sum_{i,j>0} a_ij x^i y^j
    for (const auto& [e, c] : F.terms()) {
        bool linear = (e[0] == 1 && e[1] == 0) || (e[0] == 0 && e[1] == 1);
        if (linear) {
            if (!c.is_one()) throw NotAGroupLaw("FGL: linear part is not x + y");
            continue;
        }
        if (e[0] < 1 || e[1] < 1)
            throw NotAGroupLaw("FGL: pure power term x^" + std::to_string(e[0]) + "y^" +
                               std::to_string(e[1]));
    }
    if (!F.coefficient({1, 0}).is_one() || !F.coefficient({0, 1}).is_one())
        throw NotAGroupLaw("FGL: linear part is not x + y");
    // symmetry
    for (const auto& [e, c] : F.terms()) {
        if (F.coefficient({e[1], e[0]}) != c) throw NotAGroupLaw("FGL: not commutative");
    }
    if (check_associativity) {
        auto tri = make_series_ctx({"x", "y", "z"}, N, ring);
        TruncatedSeries X = TruncatedSeries::variable(tri, 0);
        TruncatedSeries Y = TruncatedSeries::variable(tri, 1);
        TruncatedSeries Z = TruncatedSeries::variable(tri, 2);
        TruncatedSeries xy = substitute(F, {X, Y});
        TruncatedSeries yz = substitute(F, {Y, Z});
        TruncatedSeries lhs = substitute(F, {xy, Z});
        TruncatedSeries rhs = substitute(F, {X, yz});
        if (!equal_up_to(lhs, rhs, std::min(lhs.precision(), rhs.precision())))
            throw NotAGroupLaw("FGL: not associative to precision");
    }
}

// --- catalogue ------------------------------------------------------------------

FGL additive_law(RingSpecPtr base, int order) {
    auto ctx = make_series_ctx({"x", "y"}, order, std::move(base));
    TruncatedSeries F = TruncatedSeries::variable(ctx, 0) + TruncatedSeries::variable(ctx, 1);
    return FGL("additive", ctx, F, true);
}

FGL multiplicative_law(int order) {
    auto ring = RingSpec::integers({{"beta", -1, false}});
    auto ctx = make_series_ctx({"x", "y"}, order, ring);
    TruncatedSeries F = TruncatedSeries::variable(ctx, 0) + TruncatedSeries::variable(ctx, 1) +
                        TruncatedSeries::make(ctx, order,
                                              {{{1, 1}, -RingElement::generator(ring, "beta")}});
    return FGL("multiplicative", ctx, F, true);
}

FGL multiplicative_periodic_law(int order) {
    auto ring = RingSpec::integers({{"beta", -1, true}});
    auto ctx = make_series_ctx({"x", "y"}, order, ring);
    TruncatedSeries F = TruncatedSeries::variable(ctx, 0) + TruncatedSeries::variable(ctx, 1) +
                        TruncatedSeries::make(ctx, order,
                                              {{{1, 1}, -RingElement::generator(ring, "beta")}});
    return FGL("multiplicative_periodic", ctx, F, true);
}

FGL generic_law(int order, RingSpecPtr base) {
    std::vector<Generator> gens;
    if (base) gens = base->generators();
    for (int i = 1; i <= order; ++i)
        for (int j = i; i + j <= order; ++j)
            gens.push_back({"a" + std::to_string(i) + std::to_string(j), 1 - i - j, false});
    BaseRing b = base ? base->base() : BaseRing::Integers;
    unsigned p = base ? base->characteristic() : 0;
    auto ring = std::make_shared<RingSpec>(b, p, std::move(gens));
    auto ctx = make_series_ctx({"x", "y"}, order, ring);
    TruncatedSeries F = TruncatedSeries::variable(ctx, 0) + TruncatedSeries::variable(ctx, 1);
    std::vector<std::pair<TruncatedSeries::Expo, RingElement>> terms;
    for (int i = 1; i <= order; ++i)
        for (int j = i; i + j <= order; ++j) {
            auto a = RingElement::generator(ring, "a" + std::to_string(i) + std::to_string(j));
            terms.push_back({{i, j}, a});
            if (i != j) terms.push_back({{j, i}, a});
        }
    F += TruncatedSeries::make(ctx, order, std::move(terms));
    return FGL("generic", ctx, F, false);
}

TruncatedSeries twist_series(SeriesCtxPtr uni_ctx,
                             const std::vector<std::pair<std::string, int>>& vars) {
    TruncatedSeries lambda = TruncatedSeries::variable(uni_ctx, 0);
    for (const auto& [name, i] : vars) {
        if (i + 1 > uni_ctx->order()) continue;
        lambda += TruncatedSeries::variable(uni_ctx, 0, i + 1)
                      .scaled(RingElement::generator(uni_ctx->ring(), name));
    }
    return lambda;
}

FGL twisted_law(const FGL& base, const TruncatedSeries& lambda, bool check_associativity) {
    const SeriesCtxPtr& lctx = lambda.ctx();
    if (lctx->nvars() != 1) throw ConfigError("twisted_law: lambda must be univariate");
    if (!base.coefficients()->extends_to(*lctx->ring()))
        throw ContextMismatch("twisted_law: lambda ring does not extend the base ring");
    if (!lambda.constant_term().is_zero() || !lambda.coefficient({1}).is_one())
        throw NotAGroupLaw("twisted_law: lambda must be x + higher order terms");

    int N = std::min(base.order(), lctx->order());
    auto ring = lctx->ring();
    auto bctx = make_series_ctx({"x", "y"}, N, ring);
    RingHom incl = RingHom::inclusion(base.coefficients(), ring);
    TruncatedSeries Fb =
        base.series().map_coefficients(bctx, [&](const RingElement& c) { return incl.apply(c); });

    TruncatedSeries mu = reversion(lambda);
    TruncatedSeries mux = substitute(mu, {TruncatedSeries::variable(bctx, 0)});
    TruncatedSeries muy = substitute(mu, {TruncatedSeries::variable(bctx, 1)});
    TruncatedSeries inner = substitute(Fb, {mux, muy});
    TruncatedSeries twisted = substitute(lambda, {inner});
    return FGL("twisted(" + base.name() + ")", bctx, twisted, check_associativity);
}

// --- morphisms -------------------------------------------------------------------

FGLMorphism::FGLMorphism(FGL source, FGL target, RingHom phi, TruncatedSeries gamma)
    : source_(std::move(source)), target_(std::move(target)), phi_(std::move(phi)),
      gamma_(std::move(gamma)) {
    if (!(*phi_.source() == *source_.coefficients()) || !(*phi_.target() == *target_.coefficients()))
        throw ContextMismatch("FGLMorphism: phi does not match the coefficient rings");
    if (gamma_.ctx()->nvars() != 1 || !(*gamma_.ctx()->ring() == *target_.coefficients()))
        throw ContextMismatch("FGLMorphism: gamma must be univariate over the target ring");
    if (!gamma_.constant_term().is_zero())
        throw NotTopologicallyNilpotent("FGLMorphism: gamma must have zero constant term");
}

TruncatedSeries FGLMorphism::inverse_todd() const {
    auto x = TruncatedSeries::variable(gamma_.ctx(), 0);
    // gamma(x)/x; defined since gamma(0) = 0
    return exact_divide(gamma_, x);
}

MorphismCheck FGLMorphism::verify() const {
    const SeriesCtxPtr& bctx = target_.bivariate_ctx();
    TruncatedSeries gx = substitute(gamma_, {TruncatedSeries::variable(bctx, 0)});
    TruncatedSeries gy = substitute(gamma_, {TruncatedSeries::variable(bctx, 1)});
    TruncatedSeries lhs = substitute(source_.series(), {gx, gy}, &phi_);
    TruncatedSeries rhs = substitute(gamma_, {target_.series()});
    int d = std::min(lhs.precision(), rhs.precision());
    TruncatedSeries diff = (lhs - rhs).truncated(d);
    if (diff.is_zero()) return {true, std::nullopt};
    const auto& e = diff.terms().begin()->first;
    return {false, std::make_pair(e[0], e[1])};
}

FGLMorphism identity_morphism(const FGL& law) {
    return FGLMorphism(law, law, RingHom::identity(law.coefficients()),
                       TruncatedSeries::variable(law.univariate_ctx(), 0));
}

} // namespace flagops
