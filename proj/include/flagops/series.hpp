#ifndef FLAGOPS_SERIES_HPP
#define FLAGOPS_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flagops/ring.hpp"

namespace flagops {

/// Ambient data for truncated power series: variables and a truncation order N.
/// Series are exact modulo total x-degree > precision, precision <= N.
class SeriesCtx {
public:
    SeriesCtx(std::vector<std::string> names, int order, RingSpecPtr ring);

    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    int order() const { return order_; }
    const RingSpecPtr& ring() const { return ring_; }

    bool operator==(const SeriesCtx& other) const;

private:
    std::vector<std::string> names_;
    int order_;
    RingSpecPtr ring_;
};

using SeriesCtxPtr = std::shared_ptr<const SeriesCtx>;

SeriesCtxPtr make_series_ctx(std::vector<std::string> names, int order, RingSpecPtr ring);

/// Graded-lexicographic order on exponent vectors (total degree, then lex).
struct GradedLexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Sparse multivariate power series, exact modulo total degree > precision.
class TruncatedSeries {
public:
    using Expo = std::vector<int>;
    using TermMap = std::map<Expo, RingElement, GradedLexLess>;

    TruncatedSeries() = default;

    static TruncatedSeries zero(SeriesCtxPtr ctx);
    static TruncatedSeries zero(SeriesCtxPtr ctx, int precision);
    static TruncatedSeries constant(SeriesCtxPtr ctx, const RingElement& c);
    static TruncatedSeries constant(SeriesCtxPtr ctx, const Rat& c);
    static TruncatedSeries variable(SeriesCtxPtr ctx, std::size_t index, int power = 1);
    static TruncatedSeries make(SeriesCtxPtr ctx, int precision,
                                std::vector<std::pair<Expo, RingElement>> terms);

    const SeriesCtxPtr& ctx() const { return ctx_; }
    int precision() const { return precision_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Lowest stored total degree; precision()+1 when no terms are stored.
    int valuation() const;
    RingElement coefficient(const Expo& e) const;
    RingElement constant_term() const;

    TruncatedSeries operator+(const TruncatedSeries& rhs) const;
    TruncatedSeries operator-(const TruncatedSeries& rhs) const;
    TruncatedSeries operator-() const;
    TruncatedSeries operator*(const TruncatedSeries& rhs) const;
    TruncatedSeries& operator+=(const TruncatedSeries& rhs);

    TruncatedSeries scaled(const RingElement& c) const;
    TruncatedSeries scaled(const Rat& c) const;
    TruncatedSeries pow(unsigned e) const;

    /// Exact term-and-precision equality (canonical forms).
    bool operator==(const TruncatedSeries& rhs) const;
    bool operator!=(const TruncatedSeries& rhs) const { return !(*this == rhs); }

    /// Drop terms above degree d and lower the precision claim to d.
    TruncatedSeries truncated(int d) const;
    /// Homogeneous slice of total x-degree d.
    TruncatedSeries x_slice(int d) const;

    /// Part of total graded degree d, counting x-degrees (1 each) plus
    /// coefficient-ring degrees.
    TruncatedSeries graded_component(int d) const;
    /// True if every term has graded degree d (zero counts as homogeneous).
    bool homogeneous_of(int d) const;

    /// Apply fn to every coefficient; the result lives over new_ctx.
    TruncatedSeries map_coefficients(const SeriesCtxPtr& new_ctx,
                                     const std::function<RingElement(const RingElement&)>& fn) const;

    std::string render() const;

private:
    SeriesCtxPtr ctx_;
    int precision_ = 0;
    TermMap terms_;

    void insert_term(const Expo& e, const RingElement& c);
    void check_same_ctx(const TruncatedSeries& rhs) const;

    friend TruncatedSeries substitute(const TruncatedSeries&, const std::vector<TruncatedSeries>&,
                                      const RingHom*);
};

/// Composite p(images...): one image per variable of p, all images over a
/// common context and with zero constant term. coeff_hom, when given, maps
/// the coefficients of p into the image ring first.
TruncatedSeries substitute(const TruncatedSeries& p, const std::vector<TruncatedSeries>& images,
                           const RingHom* coeff_hom = nullptr);

/// Compositional inverse of a univariate series u*x + ... with u invertible.
TruncatedSeries reversion(const TruncatedSeries& lambda);

/// Quotient q with u*q = p, coefficients staying in the coefficient ring.
/// Throws NotDivisible when no such q exists. q.precision = p.precision - val(u).
TruncatedSeries exact_divide(const TruncatedSeries& p, const TruncatedSeries& u);

/// Compare the degree-<=d parts; d must not exceed either precision.
bool equal_up_to(const TruncatedSeries& a, const TruncatedSeries& b, int d);

} // namespace flagops

#endif
