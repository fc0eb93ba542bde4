#include "flagops/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flagops {

namespace {

int total_degree(const std::vector<int>& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

} // namespace

// --- SeriesCtx ---------------------------------------------------------------

SeriesCtx::SeriesCtx(std::vector<std::string> names, int order, RingSpecPtr ring)
    : names_(std::move(names)), order_(order), ring_(std::move(ring)) {
    if (names_.empty()) throw ConfigError("SeriesCtx: need at least one variable");
    if (order_ < 1) throw ConfigError("SeriesCtx: truncation order must be >= 1");
}

bool SeriesCtx::operator==(const SeriesCtx& other) const {
    return names_ == other.names_ && order_ == other.order_ && *ring_ == *other.ring_;
}

SeriesCtxPtr make_series_ctx(std::vector<std::string> names, int order, RingSpecPtr ring) {
    return std::make_shared<SeriesCtx>(std::move(names), order, std::move(ring));
}

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

// --- TruncatedSeries ---------------------------------------------------------

void TruncatedSeries::insert_term(const Expo& e, const RingElement& c) {
    if (e.size() != ctx_->nvars()) throw Error("TruncatedSeries: exponent arity mismatch");
    for (int k : e)
        if (k < 0) throw InvalidExponent("negative exponent in series variable");
    if (total_degree(e) > precision_) return;
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TruncatedSeries::check_same_ctx(const TruncatedSeries& rhs) const {
    if (!ctx_ || !rhs.ctx_ || !(*ctx_ == *rhs.ctx_))
        throw ContextMismatch("series operands over different contexts");
}

TruncatedSeries TruncatedSeries::zero(SeriesCtxPtr ctx) {
    int n = ctx->order();
    return zero(std::move(ctx), n);
}

TruncatedSeries TruncatedSeries::zero(SeriesCtxPtr ctx, int precision) {
    TruncatedSeries s;
    s.ctx_ = std::move(ctx);
    s.precision_ = std::min(precision, s.ctx_->order());
    if (s.precision_ < 0) throw Error("TruncatedSeries: negative precision");
    return s;
}

TruncatedSeries TruncatedSeries::constant(SeriesCtxPtr ctx, const RingElement& c) {
    TruncatedSeries s = zero(std::move(ctx));
    if (!(*c.spec() == *s.ctx_->ring()))
        throw ContextMismatch("constant coefficient over wrong ring");
    s.insert_term(Expo(s.ctx_->nvars(), 0), c);
    return s;
}

TruncatedSeries TruncatedSeries::constant(SeriesCtxPtr ctx, const Rat& c) {
    auto ring = ctx->ring();
    return constant(std::move(ctx), RingElement::constant(ring, c));
}

TruncatedSeries TruncatedSeries::variable(SeriesCtxPtr ctx, std::size_t index, int power) {
    TruncatedSeries s = zero(std::move(ctx));
    if (index >= s.ctx_->nvars()) throw Error("TruncatedSeries: variable index out of range");
    if (power < 1) throw InvalidExponent("variable power must be positive");
    Expo e(s.ctx_->nvars(), 0);
    e[index] = power;
    s.insert_term(e, RingElement::one(s.ctx_->ring()));
    return s;
}

TruncatedSeries TruncatedSeries::make(SeriesCtxPtr ctx, int precision,
                                      std::vector<std::pair<Expo, RingElement>> terms) {
    TruncatedSeries s = zero(std::move(ctx), precision);
    for (auto& [e, c] : terms) {
        if (!(*c.spec() == *s.ctx_->ring())) throw ContextMismatch("series term over wrong ring");
        s.insert_term(e, c);
    }
    return s;
}

int TruncatedSeries::valuation() const {
    if (terms_.empty()) return precision_ + 1;
    return total_degree(terms_.begin()->first);
}

RingElement TruncatedSeries::coefficient(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? RingElement::zero(ctx_->ring()) : it->second;
}

RingElement TruncatedSeries::constant_term() const {
    return coefficient(Expo(ctx_->nvars(), 0));
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& rhs) const {
    check_same_ctx(rhs);
    TruncatedSeries out = zero(ctx_, std::min(precision_, rhs.precision_));
    for (const auto& [e, c] : terms_) out.insert_term(e, c);
    for (const auto& [e, c] : rhs.terms_) out.insert_term(e, c);
    return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    *this = *this + rhs;
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& rhs) const {
    return *this + (-rhs);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& rhs) const {
    check_same_ctx(rhs);
    // error(a)*b enters at degree > prec(a) + val(b); symmetrically for b.
    int prec = std::min(precision_ + rhs.valuation(), rhs.precision_ + valuation());
    TruncatedSeries out = zero(ctx_, prec);
    Expo e(ctx_->nvars());
    for (const auto& [ea, ca] : terms_) {
        int da = total_degree(ea);
        for (const auto& [eb, cb] : rhs.terms_) {
            if (da + total_degree(eb) > out.precision_) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.insert_term(e, ca * cb);
        }
    }
    return out;
}

TruncatedSeries TruncatedSeries::scaled(const RingElement& c) const {
    TruncatedSeries out = zero(ctx_, precision_);
    for (const auto& [e, v] : terms_) out.insert_term(e, v * c);
    return out;
}

TruncatedSeries TruncatedSeries::scaled(const Rat& c) const {
    return scaled(RingElement::constant(ctx_->ring(), c));
}

TruncatedSeries TruncatedSeries::pow(unsigned e) const {
    TruncatedSeries acc = constant(ctx_, Rat(1));
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

bool TruncatedSeries::operator==(const TruncatedSeries& rhs) const {
    if (!ctx_ || !rhs.ctx_) return terms_.empty() && rhs.terms_.empty();
    if (!(*ctx_ == *rhs.ctx_) || precision_ != rhs.precision_) return false;
    return terms_ == rhs.terms_;
}

TruncatedSeries TruncatedSeries::truncated(int d) const {
    TruncatedSeries out = zero(ctx_, std::min(d, precision_));
    for (const auto& [e, c] : terms_) out.insert_term(e, c);
    return out;
}

TruncatedSeries TruncatedSeries::x_slice(int d) const {
    TruncatedSeries out = zero(ctx_, precision_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == d) out.insert_term(e, c);
    return out;
}

TruncatedSeries TruncatedSeries::graded_component(int d) const {
    TruncatedSeries out = zero(ctx_, precision_);
    for (const auto& [e, c] : terms_) {
        int xdeg = total_degree(e);
        for (const auto& [cdeg, part] : c.homogeneous_components())
            if (xdeg + cdeg == d) out.insert_term(e, part);
    }
    return out;
}

bool TruncatedSeries::homogeneous_of(int d) const {
    for (const auto& [e, c] : terms_) {
        int xdeg = total_degree(e);
        auto info = c.degree();
        if (info.kind == DegreeInfo::Kind::Inhomogeneous) return false;
        if (info.kind == DegreeInfo::Kind::Homogeneous && xdeg + info.value != d) return false;
    }
    return true;
}

TruncatedSeries TruncatedSeries::map_coefficients(
    const SeriesCtxPtr& new_ctx, const std::function<RingElement(const RingElement&)>& fn) const {
    if (new_ctx->nvars() != ctx_->nvars())
        throw ContextMismatch("map_coefficients: variable count mismatch");
    TruncatedSeries out = zero(new_ctx, precision_);
    for (const auto& [e, c] : terms_) out.insert_term(e, fn(c));
    return out;
}

std::string TruncatedSeries::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ctx_->names()[i];
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        std::string coeff = c.render();
        bool simple = c.terms().size() == 1 && coeff.find('-') == std::string::npos;
        if (mono.empty()) {
            os << (simple ? coeff : "(" + coeff + ")");
        } else if (c.is_one()) {
            os << mono;
        } else {
            os << (simple ? coeff : "(" + coeff + ")") << "*" << mono;
        }
    }
    return os.str();
}

// --- substitute ---------------------------------------------------------------

TruncatedSeries substitute(const TruncatedSeries& p, const std::vector<TruncatedSeries>& images,
                           const RingHom* coeff_hom) {
    if (images.size() != p.ctx()->nvars())
        throw ContextMismatch("substitute: need one image per variable");
    const SeriesCtxPtr& tctx = images.front().ctx();
    int prec = p.precision();
    for (const auto& img : images) {
        if (!(*img.ctx() == *tctx)) throw ContextMismatch("substitute: images over mixed contexts");
        if (!img.constant_term().is_zero())
            throw NotTopologicallyNilpotent("substitute: image has nonzero constant term");
        prec = std::min(prec, img.precision());
    }
    if (coeff_hom) {
        if (!(*coeff_hom->source() == *p.ctx()->ring()) || !(*coeff_hom->target() == *tctx->ring()))
            throw ContextMismatch("substitute: coefficient hom does not match contexts");
    } else if (!(*p.ctx()->ring() == *tctx->ring())) {
        throw ContextMismatch("substitute: coefficient rings differ (no hom given)");
    }

    // power tables per variable, up to the largest exponent that can matter
    std::vector<std::vector<TruncatedSeries>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(TruncatedSeries::constant(tctx, Rat(1)));

    TruncatedSeries out = TruncatedSeries::zero(tctx, prec);
    for (const auto& [e, c] : p.terms()) {
        if (total_degree(e) > prec) continue; // image valuations >= 1
        RingElement cc = coeff_hom ? coeff_hom->apply(c) : c;
        TruncatedSeries term = TruncatedSeries::constant(tctx, cc);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto& pw = powers[i];
            while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
            term = term * pw[e[i]];
        }
        out += term.truncated(prec);
    }
    return out.truncated(prec);
}

// --- reversion ----------------------------------------------------------------

TruncatedSeries reversion(const TruncatedSeries& lambda) {
    const SeriesCtxPtr& ctx = lambda.ctx();
    if (ctx->nvars() != 1) throw ContextMismatch("reversion: univariate series required");
    if (!lambda.constant_term().is_zero())
        throw NotReversible("reversion: nonzero constant term");
    RingElement u = lambda.coefficient({1});
    if (!u.is_unit_monomial())
        throw NotReversible("reversion: linear coefficient is not invertible");
    RingElement uinv = u.unit_inverse();

    int prec = lambda.precision();
    TruncatedSeries mu = TruncatedSeries::variable(ctx, 0).truncated(prec).scaled(uinv);
    for (int k = 2; k <= prec; ++k) {
        TruncatedSeries comp = substitute(lambda, {mu});
        RingElement err = comp.coefficient({k});
        if (err.is_zero()) continue;
        TruncatedSeries corr = TruncatedSeries::variable(ctx, 0, k).truncated(prec).scaled(-(err * uinv));
        mu += corr;
    }
    return mu;
}

// --- exact division -----------------------------------------------------------

namespace {

// Exact division of x-homogeneous polynomials whose coefficients live in the
// (possibly graded-extended) coefficient ring. Works on flattened exponent
// vectors (x-part then generator part) by leading-term elimination; over Z the
// division runs in Q and integrality of the quotient is asserted afterwards.
struct FlatPoly {
    // lex order on flattened exponents; multiplicative, hence admissible here
    std::map<std::vector<int>, Rat, std::greater<std::vector<int>>> terms;
};

FlatPoly flatten(const TruncatedSeries& s, int slice_degree) {
    FlatPoly out;
    for (const auto& [e, c] : s.terms()) {
        if (total_degree(e) != slice_degree) continue;
        for (const auto& [ge, gc] : c.terms()) {
            std::vector<int> key = e;
            key.insert(key.end(), ge.begin(), ge.end());
            out.terms[key] = gc;
        }
    }
    return out;
}

bool base_div(BaseRing base, unsigned p, const Rat& a, const Rat& b, Rat& q) {
    if (base == BaseRing::PrimeField) {
        Int P(p);
        Int bn = mod_reduce(rat_num(b), P);
        if (bn == 0) return false;
        q = Rat(mod_reduce(rat_num(a) * mod_inverse(bn, P), P));
        return true;
    }
    q = a / b; // Z is handled via the Q lift; integrality checked by caller
    return true;
}

// quotient terms must fit in the exponent box [h_min-g_max, h_max-g_min]
struct ExpoBox {
    std::vector<int> lo, hi;
    bool contains(const std::vector<int>& e) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < lo[i] || e[i] > hi[i]) return false;
        return true;
    }
};

ExpoBox quotient_box(const FlatPoly& h, const FlatPoly& g) {
    std::size_t n = h.terms.begin()->first.size();
    std::vector<int> hmin(n, INT32_MAX), hmax(n, INT32_MIN), gmin(n, INT32_MAX), gmax(n, INT32_MIN);
    for (const auto& [e, c] : h.terms)
        for (std::size_t i = 0; i < n; ++i) {
            hmin[i] = std::min(hmin[i], e[i]);
            hmax[i] = std::max(hmax[i], e[i]);
        }
    for (const auto& [e, c] : g.terms)
        for (std::size_t i = 0; i < n; ++i) {
            gmin[i] = std::min(gmin[i], e[i]);
            gmax[i] = std::max(gmax[i], e[i]);
        }
    ExpoBox box;
    box.lo.resize(n);
    box.hi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        box.lo[i] = hmin[i] - gmax[i];
        box.hi[i] = hmax[i] - gmin[i];
    }
    return box;
}

// h / g with h, g x-homogeneous (degrees d+k and d); returns the homogeneous
// quotient or nullopt.
std::optional<TruncatedSeries> homogeneous_divide(const TruncatedSeries& h, int hdeg,
                                                  const TruncatedSeries& g, int gdeg) {
    const SeriesCtxPtr& ctx = h.ctx();
    const RingSpec& ring = *ctx->ring();
    std::size_t nx = ctx->nvars();
    std::size_t ng = ring.generators().size();

    FlatPoly H = flatten(h, hdeg), G = flatten(g, gdeg);
    if (H.terms.empty()) return TruncatedSeries::zero(ctx, h.precision());
    if (G.terms.empty()) return std::nullopt;

    BaseRing base = ring.base();
    BaseRing lifted = base == BaseRing::Integers ? BaseRing::Rationals : base;
    ExpoBox box = quotient_box(H, G);

    const auto& [lt_g, lc_g] = *G.terms.begin();
    FlatPoly Q;
    while (!H.terms.empty()) {
        const auto& [lt_h, lc_h] = *H.terms.begin();
        std::vector<int> qe(lt_h.size());
        for (std::size_t i = 0; i < qe.size(); ++i) qe[i] = lt_h[i] - lt_g[i];
        for (std::size_t i = 0; i < nx; ++i)
            if (qe[i] < 0) return std::nullopt;
        for (std::size_t i = 0; i < ng; ++i)
            if (qe[nx + i] < 0 && !ring.generators()[i].invertible) return std::nullopt;
        if (!box.contains(qe)) return std::nullopt;
        Rat qc;
        if (!base_div(lifted, ring.characteristic(), lc_h, lc_g, qc)) return std::nullopt;
        Q.terms[qe] = qc;
        // H -= qc * qe * G
        for (const auto& [ge, gc] : G.terms) {
            std::vector<int> e(ge.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = qe[i] + ge[i];
            Rat v = qc * gc;
            auto it = H.terms.find(e);
            Rat merged = (it == H.terms.end() ? Rat(0) : it->second) - v;
            if (base == BaseRing::PrimeField) {
                Int P(ring.characteristic());
                Int den = rat_den(merged);
                merged = Rat(mod_reduce(rat_num(merged) * (den == 1 ? Int(1) : mod_inverse(den, P)), P));
            }
            if (merged == 0) {
                if (it != H.terms.end()) H.terms.erase(it);
            } else if (it != H.terms.end()) {
                it->second = merged;
            } else {
                H.terms.emplace(e, merged);
            }
        }
    }

    // reassemble; integrality over Z is enforced by RingElement normalization
    std::map<TruncatedSeries::Expo, RingElement::TermMap, GradedLexLess> grouped;
    for (const auto& [e, c] : Q.terms) {
        if (base == BaseRing::Integers && !is_integral(c)) return std::nullopt;
        TruncatedSeries::Expo xe(e.begin(), e.begin() + nx);
        RingElement::Expo ge(e.begin() + nx, e.end());
        grouped[xe].emplace(std::move(ge), c);
    }
    std::vector<std::pair<TruncatedSeries::Expo, RingElement>> terms;
    for (auto& [xe, tm] : grouped)
        terms.emplace_back(xe, RingElement::make(ctx->ring(), std::move(tm)));
    return TruncatedSeries::make(ctx, h.precision(), std::move(terms));
}

} // namespace

TruncatedSeries exact_divide(const TruncatedSeries& p, const TruncatedSeries& u) {
    p.ctx(); // ensure initialized
    if (!(*p.ctx() == *u.ctx())) throw ContextMismatch("exact_divide: context mismatch");
    if (u.is_zero()) throw NotDivisible("exact_divide: zero divisor");
    if (!u.constant_term().is_zero())
        throw NotDivisible("exact_divide: divisor must have zero constant term");

    int d = u.valuation();
    int out_prec = std::min(p.precision(), u.precision()) - d;
    if (out_prec < 0) throw PrecisionExhausted("exact_divide: precision exhausted");
    TruncatedSeries q = TruncatedSeries::zero(p.ctx(), out_prec);
    TruncatedSeries rem = p.truncated(p.precision());
    TruncatedSeries u_low = u.x_slice(d);

    while (!rem.is_zero()) {
        int v = rem.valuation();
        if (v > p.precision()) break;
        if (v < d) throw NotDivisible("exact_divide: remainder below divisor valuation");
        int k = v - d;
        if (k > out_prec) break;
        auto qk = homogeneous_divide(rem.truncated(p.precision()), v, u_low, d);
        if (!qk)
            throw NotDivisible("exact_divide: leading form not divisible at degree " +
                               std::to_string(v));
        TruncatedSeries qk_fixed = qk->truncated(out_prec);
        if (qk_fixed.is_zero())
            throw NotDivisible("exact_divide: zero quotient slice for nonzero remainder");
        q += qk_fixed;
        rem = rem - (u * qk_fixed).truncated(p.precision());
        if (!rem.is_zero() && rem.valuation() <= v)
            throw NotDivisible("exact_divide: no progress at degree " + std::to_string(v));
    }
    return q.truncated(out_prec);
}

bool equal_up_to(const TruncatedSeries& a, const TruncatedSeries& b, int d) {
    if (!(*a.ctx() == *b.ctx())) throw ContextMismatch("equal_up_to: context mismatch");
    if (a.precision() < d || b.precision() < d)
        throw Error("equal_up_to: comparing beyond tracked precision");
    return a.truncated(d).terms() == b.truncated(d).terms();
}

} // namespace flagops
