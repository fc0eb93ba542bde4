#ifndef FLAGOPS_FGL_HPP
#define FLAGOPS_FGL_HPP

#include <optional>
#include <string>
#include <utility>

#include "flagops/series.hpp"

namespace flagops {

/// A (one-dimensional, commutative) formal group law x +_F y over a coefficient
/// ring, held as a bivariate series to the context's truncation order.
class FGL {
public:
    FGL(std::string name, SeriesCtxPtr bivariate_ctx, TruncatedSeries F, bool check_associativity);

    const std::string& name() const { return name_; }
    const RingSpecPtr& coefficients() const { return ctx_->ring(); }
    const SeriesCtxPtr& bivariate_ctx() const { return ctx_; }
    const TruncatedSeries& series() const { return F_; }
    int order() const { return ctx_->order(); }

    /// Coefficient a_{ij} of x^i y^j.
    RingElement coefficient(int i, int j) const;

    /// iota with F(x, iota(x)) = 0 up to precision (univariate, memoized).
    const TruncatedSeries& formal_inverse() const;
    const SeriesCtxPtr& univariate_ctx() const;

    /// s1 +_F s2 for series with zero constant term over any context whose
    /// coefficient ring matches.
    TruncatedSeries sum(const TruncatedSeries& s1, const TruncatedSeries& s2) const;
    /// n-fold formal sum of s (negative n via the formal inverse).
    TruncatedSeries int_multiple(long n, const TruncatedSeries& s) const;

    bool is_additive_type() const;

private:
    std::string name_;
    SeriesCtxPtr ctx_;
    TruncatedSeries F_;
    mutable std::optional<TruncatedSeries> inverse_;
    mutable SeriesCtxPtr uni_ctx_;
};

/// Catalogue laws. Each takes the truncation order N.
FGL additive_law(RingSpecPtr base, int order);
FGL multiplicative_law(int order);          // x + y - beta*x*y over Z[beta]
FGL multiplicative_periodic_law(int order); // same over Z[beta^{+-1}]
/// Symmetric law with free symbolic coefficients a_ij (i+j <= order); the
/// associativity axiom is not imposed, so this is only a carrier for twist
/// coefficient computations.
FGL generic_law(int order, RingSpecPtr base = nullptr);

/// lambda = x + sum_i t_i x^{i+1} over ring (which must contain the named
/// variables); indices lists which t_i appear, names[i] gives each variable.
TruncatedSeries twist_series(SeriesCtxPtr uni_ctx, const std::vector<std::pair<std::string, int>>& vars);

/// The law lambda(F(lambda^{-1}(x), lambda^{-1}(y))) over lambda's ring.
FGL twisted_law(const FGL& base, const TruncatedSeries& lambda, bool check_associativity = false);

/// Axioms: F = x + y + sum_{i,j>0} a_ij x^i y^j, symmetric, neutral element,
/// and (optionally) associative up to precision. Throws NotAGroupLaw.
void check_law_axioms(const SeriesCtxPtr& ctx, const TruncatedSeries& F, bool check_associativity);

struct MorphismCheck {
    bool ok = false;
    std::optional<std::pair<int, int>> first_bad_bidegree;
};

/// A pair (phi, gamma): F1/R1 -> F2/R2 with phi(F1)(gamma(x),gamma(y)) = gamma(F2(x,y)).
class FGLMorphism {
public:
    FGLMorphism(FGL source, FGL target, RingHom phi, TruncatedSeries gamma);

    const FGL& source() const { return source_; }
    const FGL& target() const { return target_; }
    const RingHom& phi() const { return phi_; }
    const TruncatedSeries& gamma() const { return gamma_; }

    /// gamma(x)/x, the inverse Todd genus, as a univariate series.
    TruncatedSeries inverse_todd() const;

    MorphismCheck verify() const;

private:
    FGL source_;
    FGL target_;
    RingHom phi_;
    TruncatedSeries gamma_;
};

FGLMorphism identity_morphism(const FGL& law);

} // namespace flagops

#endif
