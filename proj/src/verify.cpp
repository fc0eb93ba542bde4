#include "flagops/verify.hpp"

#include <random>
#include <sstream>

namespace flagops {

namespace {

void push(std::vector<CheckResult>& out, const std::string& name, bool pass,
          const std::string& detail = {}) {
    out.push_back({name, pass, detail});
}

TruncatedSeries random_polynomial(std::mt19937_64& rng, const SeriesCtxPtr& ctx, int max_deg) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    TruncatedSeries out = TruncatedSeries::zero(ctx);
    std::size_t r = ctx->nvars();
    std::vector<int> e(r, 0);
    // a handful of random monomials of degree <= max_deg
    for (int t = 0; t < 5; ++t) {
        std::fill(e.begin(), e.end(), 0);
        int deg = pick(rng);
        deg = std::min(deg, max_deg);
        for (int d = 0; d < deg; ++d) e[rng() % r] += 1;
        int c = coeff(rng);
        if (c == 0) continue;
        out += TruncatedSeries::make(ctx, ctx->order(),
                                     {{e, RingElement::constant(ctx->ring(), Rat(c))}});
    }
    return out;
}

} // namespace

std::vector<CheckResult> verify_structure(const RootDatum& datum, const std::string& law_name,
                                          const LawFactory& law, int precision) {
    std::vector<CheckResult> out;
    std::string tag = datum.describe() + ", " + law_name + ": ";

    SCtxPtr ctx;
    try {
        ctx = make_sctx(datum, law, precision);
        ctx->regularity_check();
        push(out, tag + "Sigma-regularity", true);
    } catch (const RegularityFailure& e) {
        push(out, tag + "Sigma-regularity", false, e.what());
        return out;
    }

    const WeylGroup& W = ctx->weyl();
    std::size_t n = W.size();

    // law axioms (associativity included) at the working precision
    try {
        FGL F = law(precision);
        check_law_axioms(F.bivariate_ctx(), F.series(), true);
        push(out, tag + "law axioms", true);
    } catch (const NotAGroupLaw& e) {
        push(out, tag + "law axioms", false, e.what());
    }

    const BasisBundle* bundle = nullptr;
    try {
        bundle = &basis_bundle(ctx);
        push(out, tag + "basis matrices", true);
    } catch (const Error& e) {
        push(out, tag + "basis matrices", false, e.what());
        return out;
    }

    // triangularity and diagonals
    bool tri_ok = true;
    std::string tri_detail;
    for (std::size_t w = 0; w < n && tri_ok; ++w)
        for (std::size_t v = 0; v < n && tri_ok; ++v) {
            bool bruhat = W.bruhat_leq(v, w);
            if (!bruhat && !bundle->D.s_at(w, v).is_zero()) {
                tri_ok = false;
                tri_detail = "D nonzero at (" + W.word_name(w) + "," + W.word_name(v) + ")";
            }
            if (!W.bruhat_leq(w, v) && !bundle->C.s_at(v, w).is_zero()) {
                tri_ok = false;
                tri_detail = "C nonzero at (" + W.word_name(v) + "," + W.word_name(w) + ")";
            }
        }
    for (std::size_t w = 0; w < n && tri_ok; ++w) {
        TruncatedSeries b = TruncatedSeries::constant(ctx->series_ctx(), Rat(1));
        for (std::size_t k : W.inversion_set(w)) b = b * ctx->x_of_root(k, +1);
        int d = std::min(b.precision(), bundle->C.s_at(w, w).precision());
        if (!equal_up_to(bundle->C.s_at(w, w), b, d)) {
            tri_ok = false;
            tri_detail = "C diagonal at " + W.word_name(w);
        }
        TruncatedSeries wxpi = TruncatedSeries::constant(ctx->series_ctx(), Rat(1));
        for (std::size_t k = 0; k < datum.num_positive(); ++k) {
            Weight img = W.act(w, datum.positive_roots()[k]);
            for (int& c : img) c = -c; // w(-alpha_k)
            wxpi = wxpi * ctx->x_of_weight(img);
        }
        TruncatedSeries expect = exact_divide(wxpi, b);
        int dd = std::min(expect.precision(), bundle->D.s_at(w, w).precision());
        if (!equal_up_to(bundle->D.s_at(w, w), expect, dd)) {
            tri_ok = false;
            tri_detail = "D diagonal at " + W.word_name(w);
        }
    }
    push(out, tag + "triangularity and diagonals", tri_ok, tri_detail);

    // duality pairing A_Pi(Y*_w . zeta_v) = delta
    bool dual_ok = true;
    std::string dual_detail;
    for (std::size_t w = 0; w < n && dual_ok; ++w)
        for (std::size_t v = 0; v < n && dual_ok; ++v) {
            QElement val = pairing_A_Pi(bundle->qdual[w] * bundle->schubert[v]);
            QElement expect = QElement::scalar(ctx, Rat(w == v ? 1 : 0));
            if (!val.equals(expect)) {
                dual_ok = false;
                dual_detail = "pairing (" + W.word_name(w) + "," + W.word_name(v) + ")";
            }
        }
    push(out, tag + "duality pairing", dual_ok, dual_detail);

    // GKM membership of all basis classes
    bool gkm_ok = true;
    std::string gkm_detail;
    for (std::size_t w = 0; w < n && gkm_ok; ++w) {
        for (const auto* z : {&bundle->schubert[w], &bundle->qdual[w]}) {
            GkmWitness g = gkm_membership(*z);
            if (!g.ok) {
                gkm_ok = false;
                gkm_detail = "class at " + W.word_name(w) + " fails at root " +
                             datum.root_name(g.root_index);
                break;
            }
        }
    }
    push(out, tag + "GKM membership of basis classes", gkm_ok, gkm_detail);

    // elimination round trip on random S-combinations
    std::mt19937_64 rng(20240817);
    bool elim_ok = true;
    std::string elim_detail;
    for (int trial = 0; trial < 5 && elim_ok; ++trial) {
        std::vector<TruncatedSeries> coeffs;
        FixedLocusClass z = FixedLocusClass::zero(ctx);
        for (std::size_t w = 0; w < n; ++w) {
            TruncatedSeries a = random_polynomial(rng, ctx->series_ctx(), 2);
            coeffs.push_back(a);
            z = z + bundle->qdual[w].scaled(a);
        }
        std::vector<TruncatedSeries> back = elimination(z);
        for (std::size_t w = 0; w < n; ++w) {
            int d = std::min(coeffs[w].precision(), back[w].precision());
            if (!equal_up_to(coeffs[w], back[w], d)) {
                elim_ok = false;
                elim_detail = "trial " + std::to_string(trial) + " at " + W.word_name(w);
                break;
            }
        }
    }
    push(out, tag + "elimination round trip", elim_ok, elim_detail);

    return out;
}

std::vector<CheckResult> verify_operation(const OperationSpec& spec) {
    std::vector<CheckResult> out;
    std::string tag = spec.family().name + " on " + spec.source_ctx()->datum().describe() + ": ";

    MorphismCheck mc = spec.morphism().verify();
    push(out, tag + "morphism identity", mc.ok,
         mc.ok ? ""
               : "fails at bidegree (" + std::to_string(mc.first_bad_bidegree->first) + "," +
                     std::to_string(mc.first_bad_bidegree->second) + ")");

    const SCtxPtr& src = spec.source_ctx();
    const BasisBundle& sb = basis_bundle(src);
    std::size_t n = src->weyl().size();

    bool gkm_ok = true;
    for (std::size_t w = 0; w < n && gkm_ok; ++w)
        gkm_ok = gkm_membership(op_on_fixed_loci(spec, sb.schubert[w])).ok;
    push(out, tag + "GKM preservation", gkm_ok);

    // unit goes to unit
    FixedLocusClass unit_img = op_on_fixed_loci(spec, FixedLocusClass::unit(src));
    FixedLocusClass unit_tgt = FixedLocusClass::unit(spec.target_ctx());
    push(out, tag + "unit preservation", unit_img.equal_up_to(unit_tgt, unit_img.precision()));

    // multiplicativity on sampled GKM classes
    std::mt19937_64 rng(911);
    bool mult_ok = true;
    for (int trial = 0; trial < 5 && mult_ok; ++trial) {
        FixedLocusClass a = sb.schubert[rng() % n] * sb.qdual[rng() % n];
        FixedLocusClass b = sb.qdual[rng() % n];
        FixedLocusClass lhs = op_on_fixed_loci(spec, a * b);
        FixedLocusClass rhs = op_on_fixed_loci(spec, a) * op_on_fixed_loci(spec, b);
        mult_ok = lhs.equal_up_to(rhs, std::min(lhs.precision(), rhs.precision()));
    }
    push(out, tag + "multiplicativity", mult_ok);

    return out;
}

} // namespace flagops
