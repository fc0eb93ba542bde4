#ifndef FLAGOPS_FORMAL_GROUP_RING_HPP
#define FLAGOPS_FORMAL_GROUP_RING_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "flagops/fgl.hpp"
#include "flagops/root_datum.hpp"

namespace flagops {

using LawFactory = std::function<FGL(int order)>;

struct BasisBundle; // equivariant.hpp

/// Working context for the formal group ring S = S_F(T*): a root datum, a law,
/// and series in rank-many variables x_i bound to the chosen lattice basis.
/// x_lambda, kappa_alpha and x_Pi are memoized at full context precision.
class SCtx {
public:
    SCtx(RootDatum datum, LawFactory make_law, int precision);
    SCtx(const SCtx&) = delete;
    SCtx& operator=(const SCtx&) = delete;

    const RootDatum& datum() const { return *datum_; }
    const WeylGroup& weyl() const { return *weyl_; }
    const FGL& law() const { return law_; }
    const LawFactory& law_factory() const { return make_law_; }
    const SeriesCtxPtr& series_ctx() const { return sctx_; }
    const RingSpecPtr& ring() const { return sctx_->ring(); }
    int precision() const { return precision_; }

    /// x_lambda for lambda in lattice coordinates; exact to the full precision.
    TruncatedSeries x_of_weight(const Weight& lambda) const;
    /// x_alpha for a signed root (positive index, sign).
    TruncatedSeries x_of_root(std::size_t positive_index, int sign) const;

    /// Substitution x_i -> x_{w(e_i)}; a ring automorphism.
    TruncatedSeries weyl_act(std::size_t w, const TruncatedSeries& p) const;

    /// Constant term, a ring homomorphism S -> R.
    RingElement augment(const TruncatedSeries& p) const;

    /// (s_alpha(p) - p)/x_alpha; precision drops by 1.
    TruncatedSeries delta_op(std::size_t positive_index, int sign, const TruncatedSeries& p) const;

    /// kappa_alpha = 1/x_{-alpha} + 1/x_alpha as an element of S.
    TruncatedSeries kappa(std::size_t positive_index) const;

    /// x_Pi = prod_{alpha in Sigma^-} x_alpha.
    TruncatedSeries x_Pi() const;

    /// Every x_alpha must be nonzero; throws RegularityFailure naming the root.
    void regularity_check() const;

private:
    std::unique_ptr<RootDatum> datum_;
    std::unique_ptr<WeylGroup> weyl_;
    LawFactory make_law_;
    int precision_;
    FGL law_;
    SeriesCtxPtr sctx_;

    mutable std::mutex memo_mutex_;
    mutable std::map<Weight, TruncatedSeries> x_memo_;
    mutable std::map<std::size_t, TruncatedSeries> kappa_memo_;
    mutable std::map<std::size_t, std::vector<TruncatedSeries>> weyl_images_;
    mutable std::shared_ptr<TruncatedSeries> x_pi_;

    friend struct BundleAccess;
    mutable std::shared_ptr<const BasisBundle> bundle_;

    TruncatedSeries x_of_weight_nolock(const Weight& lambda) const;
};

using SCtxPtr = std::shared_ptr<SCtx>;

SCtxPtr make_sctx(const RootDatum& datum, LawFactory make_law, int precision);

/// Rebuild a series over a context that differs only in truncation order.
TruncatedSeries rebase_series(const TruncatedSeries& s, const SeriesCtxPtr& target);

} // namespace flagops

#endif
