#include "flagops/equivariant.hpp"

#include <algorithm>

namespace flagops {

namespace {

SignedRoot negate(const SignedRoot& r) { return {r.index, -r.sign}; }

SignedRoot classify_image(const SCtx& ctx, std::size_t w, std::size_t k, int sign) {
    Weight img = ctx.weyl().act(w, ctx.datum().positive_roots()[k]);
    auto cls = ctx.datum().classify_root(img);
    if (!cls) throw Error("Weyl image of a root is not a root");
    return {cls->first, sign * cls->second};
}

/// Multiset { v(beta) : beta in Sigma^- }.
QElement::Denominator v_xpi_denominator(const SCtx& ctx, std::size_t v) {
    QElement::Denominator den;
    for (std::size_t k = 0; k < ctx.datum().num_positive(); ++k)
        den[classify_image(ctx, v, k, -1)] += 1;
    return den;
}

TruncatedSeries root_series(const SCtx& ctx, const SignedRoot& r) {
    return ctx.x_of_root(r.index, r.sign);
}

TruncatedSeries denominator_series(const SCtx& ctx, const QElement::Denominator& den) {
    TruncatedSeries prod = TruncatedSeries::constant(ctx.series_ctx(), Rat(1));
    for (const auto& [r, mult] : den)
        for (int i = 0; i < mult; ++i) prod = prod * root_series(ctx, r);
    return prod;
}

} // namespace

// --- QElement -------------------------------------------------------------------

QElement::QElement(SCtxPtr ctx, TruncatedSeries num, Denominator den)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
    for (const auto& [r, mult] : den_) {
        if (mult < 1) throw Error("QElement: nonpositive denominator multiplicity");
        if (r.index >= ctx_->datum().num_positive())
            throw Error("QElement: denominator entry is not a root of the datum");
    }
}

QElement QElement::scalar(SCtxPtr ctx, const Rat& c) {
    auto s = TruncatedSeries::constant(ctx->series_ctx(), c);
    return QElement(std::move(ctx), std::move(s));
}

QElement QElement::operator+(const QElement& rhs) const {
    if (ctx_.get() != rhs.ctx_.get()) throw ContextMismatch("QElement: mixed contexts");
    Denominator target = den_;
    for (const auto& [r, mult] : rhs.den_) {
        auto& m = target[r];
        m = std::max(m, mult);
    }
    TruncatedSeries a = num_, b = rhs.num_;
    for (const auto& [r, mult] : target) {
        auto ita = den_.find(r);
        int have_a = ita == den_.end() ? 0 : ita->second;
        for (int i = 0; i < mult - have_a; ++i) a = a * root_series(*ctx_, r);
        auto itb = rhs.den_.find(r);
        int have_b = itb == rhs.den_.end() ? 0 : itb->second;
        for (int i = 0; i < mult - have_b; ++i) b = b * root_series(*ctx_, r);
    }
    return QElement(ctx_, a + b, std::move(target));
}

QElement QElement::operator-() const { return QElement(ctx_, -num_, den_); }

QElement QElement::operator-(const QElement& rhs) const { return *this + (-rhs); }

QElement QElement::operator*(const QElement& rhs) const {
    if (ctx_.get() != rhs.ctx_.get()) throw ContextMismatch("QElement: mixed contexts");
    Denominator den = den_;
    for (const auto& [r, mult] : rhs.den_) den[r] += mult;
    return QElement(ctx_, num_ * rhs.num_, std::move(den));
}

QElement QElement::scaled(const TruncatedSeries& s) const {
    return QElement(ctx_, num_ * s, den_);
}

QElement QElement::over_root(const SignedRoot& r, int mult) const {
    Denominator den = den_;
    den[r] += mult;
    return QElement(ctx_, num_, std::move(den));
}

bool QElement::equals(const QElement& rhs) const {
    if (ctx_.get() != rhs.ctx_.get()) throw ContextMismatch("QElement: mixed contexts");
    TruncatedSeries lhs_num = num_ * denominator_series(*ctx_, rhs.den_);
    TruncatedSeries rhs_num = rhs.num_ * denominator_series(*ctx_, den_);
    int d = std::min(lhs_num.precision(), rhs_num.precision());
    return flagops::equal_up_to(lhs_num, rhs_num, d);
}

QElement QElement::with_denominator(const Denominator& target) const {
    TruncatedSeries num = num_;
    // multiply the missing target factors in first, then clear the extras
    for (const auto& [r, mult] : target) {
        auto it = den_.find(r);
        int have = it == den_.end() ? 0 : it->second;
        for (int i = 0; i < mult - have; ++i) num = num * root_series(*ctx_, r);
    }
    for (const auto& [r, mult] : den_) {
        auto it = target.find(r);
        int want = it == target.end() ? 0 : it->second;
        for (int i = 0; i < mult - want; ++i) num = exact_divide(num, root_series(*ctx_, r));
    }
    return QElement(ctx_, std::move(num), target);
}

TruncatedSeries QElement::to_series() const {
    TruncatedSeries num = num_;
    for (const auto& [r, mult] : den_)
        for (int i = 0; i < mult; ++i) num = exact_divide(num, root_series(*ctx_, r));
    return num;
}

// --- FixedLocusClass --------------------------------------------------------------

FixedLocusClass::FixedLocusClass(SCtxPtr ctx, std::vector<int> theta,
                                 std::vector<TruncatedSeries> coords)
    : ctx_(std::move(ctx)), theta_(std::move(theta)) {
    std::sort(theta_.begin(), theta_.end());
    theta_.erase(std::unique(theta_.begin(), theta_.end()), theta_.end());
    reps_ = ctx_->weyl().coset_min_reps(theta_);
    if (coords.size() != reps_.size())
        throw ConfigError("FixedLocusClass: expected " + std::to_string(reps_.size()) +
                          " coordinates, got " + std::to_string(coords.size()));
    for (const auto& c : coords)
        if (!(*c.ctx() == *ctx_->series_ctx()))
            throw ContextMismatch("FixedLocusClass: coordinate over wrong series context");
    coords_ = std::move(coords);
}

FixedLocusClass FixedLocusClass::zero(SCtxPtr ctx, std::vector<int> theta) {
    auto reps = ctx->weyl().coset_min_reps(theta);
    std::vector<TruncatedSeries> coords(reps.size(), TruncatedSeries::zero(ctx->series_ctx()));
    return FixedLocusClass(std::move(ctx), std::move(theta), std::move(coords));
}

FixedLocusClass FixedLocusClass::unit(SCtxPtr ctx, std::vector<int> theta) {
    auto reps = ctx->weyl().coset_min_reps(theta);
    std::vector<TruncatedSeries> coords(reps.size(),
                                        TruncatedSeries::constant(ctx->series_ctx(), Rat(1)));
    return FixedLocusClass(std::move(ctx), std::move(theta), std::move(coords));
}

FixedLocusClass FixedLocusClass::point(SCtxPtr ctx) {
    FixedLocusClass z = zero(ctx);
    z.coords_[0] = ctx->x_Pi();
    return z;
}

std::size_t FixedLocusClass::position_of(std::size_t w) const {
    auto it = std::lower_bound(reps_.begin(), reps_.end(), w);
    if (it == reps_.end() || *it != w)
        throw Error("FixedLocusClass: element is not a coset representative");
    return static_cast<std::size_t>(it - reps_.begin());
}

int FixedLocusClass::precision() const {
    int p = ctx_->precision();
    for (const auto& c : coords_) p = std::min(p, c.precision());
    return p;
}

void FixedLocusClass::check_compatible(const FixedLocusClass& rhs) const {
    if (ctx_.get() != rhs.ctx_.get() || theta_ != rhs.theta_)
        throw ContextMismatch("FixedLocusClass: mixed contexts or parabolic types");
}

FixedLocusClass FixedLocusClass::operator+(const FixedLocusClass& rhs) const {
    check_compatible(rhs);
    std::vector<TruncatedSeries> coords;
    coords.reserve(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords.push_back(coords_[i] + rhs.coords_[i]);
    return FixedLocusClass(ctx_, theta_, std::move(coords));
}

FixedLocusClass FixedLocusClass::operator-(const FixedLocusClass& rhs) const {
    return *this + (-rhs);
}

FixedLocusClass FixedLocusClass::operator-() const {
    std::vector<TruncatedSeries> coords;
    coords.reserve(coords_.size());
    for (const auto& c : coords_) coords.push_back(-c);
    return FixedLocusClass(ctx_, theta_, std::move(coords));
}

FixedLocusClass FixedLocusClass::operator*(const FixedLocusClass& rhs) const {
    check_compatible(rhs);
    std::vector<TruncatedSeries> coords;
    coords.reserve(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords.push_back(coords_[i] * rhs.coords_[i]);
    return FixedLocusClass(ctx_, theta_, std::move(coords));
}

FixedLocusClass FixedLocusClass::scaled(const TruncatedSeries& q) const {
    std::vector<TruncatedSeries> coords;
    coords.reserve(coords_.size());
    for (const auto& c : coords_) coords.push_back(c * q);
    return FixedLocusClass(ctx_, theta_, std::move(coords));
}

bool FixedLocusClass::equal_up_to(const FixedLocusClass& rhs, int d) const {
    check_compatible(rhs);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!flagops::equal_up_to(coords_[i], rhs.coords_[i], d)) return false;
    return true;
}

// --- Hecke action -----------------------------------------------------------------

FixedLocusClass hecke_apply_Y(const FixedLocusClass& z, int simple) {
    if (!z.theta().empty()) throw ConfigError("hecke_apply_Y: requires Theta = {}");
    const SCtxPtr& ctx = z.ctx();
    const WeylGroup& W = ctx->weyl();
    std::vector<TruncatedSeries> coords;
    coords.reserve(z.size());
    for (std::size_t v = 0; v < z.size(); ++v) {
        SignedRoot va = classify_image(*ctx, v, static_cast<std::size_t>(simple), +1);
        std::size_t vs = W.mult_right(v, simple);
        TruncatedSeries diff = z.coord(vs) - z.coord(v);
        TruncatedSeries delta = exact_divide(diff, root_series(*ctx, va));
        TruncatedSeries kap = ctx->kappa(va.index);
        coords.push_back(kap * z.coord(v) + delta);
    }
    return FixedLocusClass(ctx, {}, std::move(coords));
}

FixedLocusClass hecke_scalar(const TruncatedSeries& q, const FixedLocusClass& z) {
    const SCtxPtr& ctx = z.ctx();
    std::vector<TruncatedSeries> coords;
    coords.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::size_t w = z.reps()[i];
        coords.push_back(z.coord(i) * ctx->weyl_act(w, q));
    }
    return FixedLocusClass(ctx, z.theta(), std::move(coords));
}

FixedLocusClass schubert_class_for_word(const SCtxPtr& ctx, const std::vector<int>& word) {
    FixedLocusClass z = FixedLocusClass::point(ctx);
    for (int i : word) z = hecke_apply_Y(z, i);
    return z;
}

FixedLocusClass schubert_class(const SCtxPtr& ctx, std::size_t w) {
    return schubert_class_for_word(ctx, ctx->weyl().word(w));
}

// --- GKM and pairing ----------------------------------------------------------------

GkmWitness gkm_membership(const FixedLocusClass& z) {
    if (!z.theta().empty()) throw ConfigError("gkm_membership: requires Theta = {}");
    const SCtxPtr& ctx = z.ctx();
    const WeylGroup& W = ctx->weyl();
    for (std::size_t k = 0; k < ctx->datum().num_positive(); ++k) {
        std::size_t refl = W.reflection(k);
        TruncatedSeries xa = ctx->x_of_root(k, +1);
        for (std::size_t w = 0; w < z.size(); ++w) {
            std::size_t sw = W.mult(refl, w);
            try {
                exact_divide(z.coord(w) - z.coord(sw), xa);
            } catch (const NotDivisible&) {
                return {false, k, w};
            }
        }
    }
    return {true, 0, 0};
}

QElement pairing_A_Pi(const FixedLocusClass& z) {
    if (!z.theta().empty()) throw ConfigError("pairing_A_Pi: requires Theta = {}");
    const SCtxPtr& ctx = z.ctx();
    QElement acc(ctx, TruncatedSeries::zero(ctx->series_ctx()));
    for (std::size_t v = 0; v < z.size(); ++v)
        acc = acc + QElement(ctx, z.coord(v), v_xpi_denominator(*ctx, v));
    return acc;
}

// --- BasisMatrix / bundle --------------------------------------------------------------

BasisMatrix::BasisMatrix(Kind kind, std::size_t n) : kind_(kind), n_(n) {
    if (kind_ == Kind::Dinv)
        q_entries_.resize(n_ * n_);
    else
        s_entries_.resize(n_ * n_);
}

const TruncatedSeries& BasisMatrix::s_at(std::size_t row, std::size_t col) const {
    if (kind_ == Kind::Dinv) throw Error("BasisMatrix: Dinv entries live over Q");
    return s_entries_.at(row * n_ + col);
}

const QElement& BasisMatrix::q_at(std::size_t row, std::size_t col) const {
    if (kind_ != Kind::Dinv) throw Error("BasisMatrix: series matrix has no Q entries");
    return q_entries_.at(row * n_ + col);
}

void BasisMatrix::set(std::size_t row, std::size_t col, TruncatedSeries s) {
    s_entries_.at(row * n_ + col) = std::move(s);
}

void BasisMatrix::set(std::size_t row, std::size_t col, QElement q) {
    q_entries_.at(row * n_ + col) = std::move(q);
}

namespace {

TruncatedSeries b_diagonal(const SCtx& ctx, std::size_t w) {
    TruncatedSeries prod = TruncatedSeries::constant(ctx.series_ctx(), Rat(1));
    for (std::size_t k : ctx.weyl().inversion_set(w)) prod = prod * ctx.x_of_root(k, +1);
    return prod;
}

struct BundleBuild {
    SCtxPtr twin;
    std::size_t n = 0;
    std::vector<FixedLocusClass> schubert;
    std::vector<QElement> dinv; // row-major
    std::vector<TruncatedSeries> cmat;

    void run() {
        const WeylGroup& W = twin->weyl();
        n = W.size();

        // Schubert classes along canonical-word prefixes
        schubert.reserve(n);
        schubert.push_back(FixedLocusClass::point(twin));
        for (std::size_t w = 1; w < n; ++w) {
            const auto& word = W.word(w);
            std::vector<int> prefix(word.begin(), word.end() - 1);
            std::size_t parent = W.element_of_word(prefix);
            schubert.push_back(hecke_apply_Y(schubert[parent], word.back()));
        }

        std::vector<TruncatedSeries> bdiag;
        std::vector<QElement::Denominator> xpi_den;
        for (std::size_t w = 0; w < n; ++w) {
            bdiag.push_back(b_diagonal(*twin, w));
            xpi_den.push_back(v_xpi_denominator(*twin, w));
        }

        // D * Dinv = I by forward substitution over Q, column by column;
        // every entry is renormalized onto the denominator w(x_Pi).
        dinv.assign(n * n, QElement(twin, TruncatedSeries::zero(twin->series_ctx())));
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t w = u; w < n; ++w) {
                QElement rhs = w == u ? QElement::scalar(twin, Rat(1))
                                      : QElement(twin, TruncatedSeries::zero(twin->series_ctx()));
                for (std::size_t v = u; v < w; ++v) {
                    const QElement& y = dinv[v * n + u];
                    if (y.is_zero()) continue;
                    const TruncatedSeries& dwv = schubert[w].coord(v);
                    if (dwv.is_zero()) continue;
                    rhs = rhs - y.scaled(dwv);
                }
                if (rhs.is_zero()) continue;
                QElement y = rhs.scaled(bdiag[w]);
                for (const auto& [r, mult] : xpi_den[w]) y = y.over_root(r, mult);
                dinv[w * n + u] = y.with_denominator(xpi_den[w]);
            }
        }

        // C = diag(v(x_Pi)) * Dinv, entries asserted to lie in S
        cmat.assign(n * n, TruncatedSeries::zero(twin->series_ctx()));
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t w = 0; w <= v; ++w) {
                const QElement& q = dinv[v * n + w];
                if (q.is_zero()) continue;
                QElement cleared = q.with_denominator({});
                cmat[v * n + w] = cleared.numerator();
            }
    }
};

BasisBundle truncate_bundle(const BundleBuild& hi, const SCtxPtr& ctx) {
    int N = ctx->precision();
    auto down = [&](const TruncatedSeries& s) {
        if (s.precision() < N)
            throw PrecisionExhausted("basis bundle entry below requested precision");
        return rebase_series(s, ctx->series_ctx()).truncated(N);
    };

    BasisBundle out;
    std::size_t n = hi.n;
    out.D = BasisMatrix(BasisMatrix::Kind::D, n);
    out.Dinv = BasisMatrix(BasisMatrix::Kind::Dinv, n);
    out.C = BasisMatrix(BasisMatrix::Kind::C, n);
    for (std::size_t w = 0; w < n; ++w) {
        std::vector<TruncatedSeries> coords;
        for (std::size_t v = 0; v < n; ++v) {
            TruncatedSeries entry = down(hi.schubert[w].coord(v));
            out.D.set(w, v, entry);
            coords.push_back(std::move(entry));
        }
        out.schubert.push_back(FixedLocusClass(ctx, {}, std::move(coords)));
    }
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
            const QElement& q = hi.dinv[v * n + w];
            if (q.is_zero()) {
                out.Dinv.set(v, w, QElement(ctx, TruncatedSeries::zero(ctx->series_ctx())));
            } else {
                out.Dinv.set(v, w, QElement(ctx, down(q.numerator()), q.denominator()));
            }
            out.C.set(v, w, down(hi.cmat[v * n + w]));
        }
    for (std::size_t w = 0; w < n; ++w) {
        std::vector<TruncatedSeries> coords;
        for (std::size_t v = 0; v < n; ++v) coords.push_back(out.C.s_at(v, w));
        out.qdual.push_back(FixedLocusClass(ctx, {}, std::move(coords)));
    }
    return out;
}

} // namespace

struct BundleAccess {
    static std::shared_ptr<const BasisBundle>& slot(const SCtxPtr& ctx) { return ctx->bundle_; }
};

const BasisBundle& basis_bundle(const SCtxPtr& ctx) {
    auto& slot = BundleAccess::slot(ctx);
    if (slot) return *slot;
    ctx->regularity_check();

    int m = static_cast<int>(ctx->datum().num_positive());
    int base_pad = 2 * m + 2;
    std::exception_ptr last;
    for (int attempt = 0; attempt < 3; ++attempt) {
        int pad = base_pad << attempt;
        try {
            BundleBuild build;
            build.twin = make_sctx(ctx->datum(), ctx->law_factory(), ctx->precision() + pad);
            build.run();
            slot = std::make_shared<BasisBundle>(truncate_bundle(build, ctx));
            return *slot;
        } catch (const PrecisionExhausted&) {
            last = std::current_exception();
        }
    }
    std::rethrow_exception(last);
}

const BasisMatrix& matrix_D(const SCtxPtr& ctx) { return basis_bundle(ctx).D; }
const BasisMatrix& matrix_Dinv(const SCtxPtr& ctx) { return basis_bundle(ctx).Dinv; }
const BasisMatrix& matrix_C(const SCtxPtr& ctx) { return basis_bundle(ctx).C; }

const FixedLocusClass& qdual_class(const SCtxPtr& ctx, std::size_t w) {
    return basis_bundle(ctx).qdual.at(w);
}

// --- elimination -----------------------------------------------------------------------

std::vector<TruncatedSeries> elimination(const FixedLocusClass& z) {
    if (!z.theta().empty()) throw ConfigError("elimination: requires Theta = {}");
    const SCtxPtr& ctx = z.ctx();
    const BasisBundle& bundle = basis_bundle(ctx);
    std::size_t n = z.size();

    std::vector<TruncatedSeries> coeffs(n, TruncatedSeries::zero(ctx->series_ctx()));
    FixedLocusClass work = z;
    for (std::size_t u = 0; u < n; ++u) {
        const TruncatedSeries& pu = work.coord(u);
        if (pu.is_zero()) continue;
        const TruncatedSeries& bu = bundle.C.s_at(u, u);
        TruncatedSeries a;
        if (ctx->weyl().length(u) == 0) {
            a = pu;
        } else {
            try {
                a = exact_divide(pu, bu);
            } catch (const NotDivisible& e) {
                throw NotDivisible("elimination: coordinate at " + ctx->weyl().word_name(u) +
                                       " is not divisible by its diagonal monomial (" +
                                       std::string(e.what()) + ")",
                                   ctx->weyl().word_name(u));
            }
        }
        coeffs[u] = a;
        work = work - bundle.qdual[u].scaled(a);
    }
    return coeffs;
}

// --- characteristic / Borel / forgetful ----------------------------------------------------

FixedLocusClass char_map(const SCtxPtr& ctx, const TruncatedSeries& p,
                         const std::vector<int>& theta) {
    for (int j : theta) {
        std::size_t sj = ctx->weyl().mult_right(ctx->weyl().identity(), j);
        TruncatedSeries moved = ctx->weyl_act(sj, p);
        if (!flagops::equal_up_to(moved, p, std::min(moved.precision(), p.precision())))
            throw NotInvariant("char_map: input is not W_Theta-invariant (s" +
                               std::to_string(j + 1) + ")");
    }
    auto reps = ctx->weyl().coset_min_reps(theta);
    std::vector<TruncatedSeries> coords;
    coords.reserve(reps.size());
    for (std::size_t w : reps) coords.push_back(ctx->weyl_act(w, p));
    return FixedLocusClass(ctx, theta, std::move(coords));
}

FixedLocusClass borel_map(const SCtxPtr& ctx, const TruncatedSeries& p1, const TruncatedSeries& p2,
                          const std::vector<int>& theta) {
    return char_map(ctx, p2, theta).scaled(p1);
}

std::vector<RingElement> forgetful(const SCtxPtr& ctx, const std::vector<TruncatedSeries>& coeffs) {
    std::vector<RingElement> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(ctx->augment(c));
    return out;
}

} // namespace flagops
