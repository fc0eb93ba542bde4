#include "flagops/formal_group_ring.hpp"

#include <algorithm>

namespace flagops {

SCtx::SCtx(RootDatum datum, LawFactory make_law, int precision)
    : datum_(std::make_unique<RootDatum>(std::move(datum))),
      weyl_(std::make_unique<WeylGroup>(*datum_)), make_law_(std::move(make_law)),
      precision_(precision), law_(make_law_(precision)) {
    if (precision_ < 1) throw ConfigError("SCtx: precision must be >= 1");
    std::vector<std::string> names;
    for (int i = 0; i < datum_->rank(); ++i) names.push_back("x" + std::to_string(i + 1));
    sctx_ = make_series_ctx(std::move(names), precision_, law_.coefficients());
}

SCtxPtr make_sctx(const RootDatum& datum, LawFactory make_law, int precision) {
    return std::make_shared<SCtx>(datum, std::move(make_law), precision);
}

TruncatedSeries rebase_series(const TruncatedSeries& s, const SeriesCtxPtr& target) {
    if (s.ctx()->names() != target->names() || !(*s.ctx()->ring() == *target->ring()))
        throw ContextMismatch("rebase_series: contexts differ in more than the order");
    std::vector<std::pair<TruncatedSeries::Expo, RingElement>> terms(s.terms().begin(),
                                                                     s.terms().end());
    return TruncatedSeries::make(target, std::min(s.precision(), target->order()),
                                 std::move(terms));
}

TruncatedSeries SCtx::x_of_weight_nolock(const Weight& lambda) const {
    auto it = x_memo_.find(lambda);
    if (it != x_memo_.end()) return it->second;

    TruncatedSeries result = TruncatedSeries::zero(sctx_);
    bool started = false;
    for (int i = 0; i < datum_->rank(); ++i) {
        if (lambda[i] == 0) continue;
        TruncatedSeries xi = TruncatedSeries::variable(sctx_, static_cast<std::size_t>(i));
        TruncatedSeries part = law_.int_multiple(lambda[i], xi);
        result = started ? law_.sum(result, part) : part;
        started = true;
    }
    x_memo_.emplace(lambda, result);
    return result;
}

TruncatedSeries SCtx::x_of_weight(const Weight& lambda) const {
    if (static_cast<int>(lambda.size()) != datum_->rank())
        throw ConfigError("x_of_weight: weight has wrong rank");
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return x_of_weight_nolock(lambda);
}

TruncatedSeries SCtx::x_of_root(std::size_t k, int sign) const {
    Weight v = datum_->positive_roots().at(k);
    if (sign < 0)
        for (int& c : v) c = -c;
    return x_of_weight(v);
}

TruncatedSeries SCtx::weyl_act(std::size_t w, const TruncatedSeries& p) const {
    if (w == weyl_->identity()) return p;
    std::vector<TruncatedSeries> images;
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = weyl_images_.find(w);
        if (it == weyl_images_.end()) {
            std::vector<TruncatedSeries> imgs;
            for (int i = 0; i < datum_->rank(); ++i) {
                Weight e(datum_->rank(), 0);
                e[i] = 1;
                imgs.push_back(x_of_weight_nolock(weyl_->act(w, e)));
            }
            it = weyl_images_.emplace(w, std::move(imgs)).first;
        }
        images = it->second;
    }
    return substitute(p, images);
}

RingElement SCtx::augment(const TruncatedSeries& p) const { return p.constant_term(); }

TruncatedSeries SCtx::delta_op(std::size_t k, int sign, const TruncatedSeries& p) const {
    std::size_t s_alpha = weyl_->reflection(k);
    TruncatedSeries num = weyl_act(s_alpha, p) - p;
    return exact_divide(num, x_of_root(k, sign));
}

TruncatedSeries SCtx::kappa(std::size_t k) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = kappa_memo_.find(k);
        if (it != kappa_memo_.end()) return it->second;
    }
    // computed two orders higher so the result is exact to full precision
    SCtx lifted(*datum_, make_law_, precision_ + 2);
    TruncatedSeries a = lifted.x_of_root(k, +1);
    TruncatedSeries b = lifted.x_of_root(k, -1);
    TruncatedSeries q = exact_divide(a + b, a * b);
    TruncatedSeries result = rebase_series(q, sctx_).truncated(precision_);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    kappa_memo_.emplace(k, result);
    return result;
}

TruncatedSeries SCtx::x_Pi() const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        if (x_pi_) return *x_pi_;
    }
    TruncatedSeries prod = TruncatedSeries::constant(sctx_, Rat(1));
    for (std::size_t k = 0; k < datum_->num_positive(); ++k) prod = prod * x_of_root(k, -1);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    x_pi_ = std::make_shared<TruncatedSeries>(prod);
    return *x_pi_;
}

void SCtx::regularity_check() const {
    for (std::size_t k = 0; k < datum_->num_positive(); ++k) {
        if (x_of_root(k, +1).is_zero() || x_of_root(k, -1).is_zero())
            throw RegularityFailure("x_alpha vanishes for root " + datum_->root_name(k) +
                                        " over " + ring()->describe(),
                                    datum_->root_name(k));
    }
}

} // namespace flagops
