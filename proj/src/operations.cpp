#include "flagops/operations.hpp"

#include <algorithm>
#include <set>

namespace flagops {

namespace {

std::vector<Generator> twist_generators(const std::string& prefix, int count) {
    std::vector<Generator> gens;
    for (int i = 1; i <= count; ++i)
        gens.push_back({prefix + std::to_string(i), -i, false});
    return gens;
}

RingSpecPtr extend_ring(const RingSpecPtr& base, std::vector<Generator> extra) {
    std::vector<Generator> gens = base->generators();
    for (auto& g : extra) gens.push_back(std::move(g));
    return std::make_shared<RingSpec>(base->base(), base->characteristic(), std::move(gens));
}

} // namespace

// --- operation families -------------------------------------------------------------

OperationFamily identity_family(const std::string& law_name, LawFactory law) {
    OperationFamily fam;
    fam.name = "identity(" + law_name + ")";
    fam.source_law = law;
    fam.target_law = law;
    fam.morphism = [law](int order) { return identity_morphism(law(order)); };
    return fam;
}

OperationFamily steenrod_family(unsigned p) {
    if (!is_prime(p)) throw ConfigError("steenrod: p must be prime");
    auto src_ring = RingSpec::prime_field(p);
    auto tgt_ring = RingSpec::prime_field(p, {{"t", 1, false}});
    OperationFamily fam;
    fam.name = "steenrod(p=" + std::to_string(p) + ")";
    fam.source_law = [src_ring](int order) { return additive_law(src_ring, order); };
    fam.target_law = [tgt_ring](int order) { return additive_law(tgt_ring, order); };
    fam.morphism = [src_ring, tgt_ring, p](int order) {
        FGL src = additive_law(src_ring, order);
        FGL tgt = additive_law(tgt_ring, order);
        auto uni = tgt.univariate_ctx();
        // gamma = -t^{p-1} x + x^p
        TruncatedSeries gamma =
            TruncatedSeries::variable(uni, 0)
                .scaled(-RingElement::generator(tgt_ring, "t", static_cast<int>(p) - 1));
        if (static_cast<int>(p) <= order)
            gamma += TruncatedSeries::variable(uni, 0, static_cast<int>(p));
        return FGLMorphism(std::move(src), std::move(tgt),
                           RingHom::inclusion(src_ring, tgt_ring), std::move(gamma));
    };
    return fam;
}

OperationFamily chow_trace_family(unsigned p) {
    if (!is_prime(p)) throw ConfigError("chow_trace: p must be prime");
    auto src_ring = RingSpec::prime_field(p);
    OperationFamily fam;
    fam.name = "chow_trace(p=" + std::to_string(p) + ")";
    fam.source_law = [src_ring](int order) { return additive_law(src_ring, order); };
    // generators t_{p-1}, t_{p^2-1}, ... that can reach the largest order used;
    // the ring must not depend on the order, so fix a generous horizon
    std::vector<Generator> gens;
    std::vector<std::pair<std::string, int>> vars;
    for (long q = p; q <= 4096; q *= p) {
        int idx = static_cast<int>(q - 1);
        gens.push_back({"t" + std::to_string(idx), -idx, false});
        vars.push_back({"t" + std::to_string(idx), idx});
    }
    auto tgt_ring = RingSpec::prime_field(p, gens);
    fam.target_law = [tgt_ring](int order) { return additive_law(tgt_ring, order); };
    fam.morphism = [src_ring, tgt_ring, vars](int order) {
        FGL src = additive_law(src_ring, order);
        FGL tgt = additive_law(tgt_ring, order);
        TruncatedSeries gamma = twist_series(tgt.univariate_ctx(), vars);
        return FGLMorphism(std::move(src), std::move(tgt),
                           RingHom::inclusion(src_ring, tgt_ring), std::move(gamma));
    };
    return fam;
}

OperationFamily chern_character_family() {
    auto src_ring = RingSpec::integers({{"beta", -1, true}});
    auto tgt_ring = RingSpec::rationals();
    OperationFamily fam;
    fam.name = "chern_character";
    fam.source_law = [](int order) { return multiplicative_periodic_law(order); };
    fam.target_law = [tgt_ring](int order) { return additive_law(tgt_ring, order); };
    fam.morphism = [src_ring, tgt_ring](int order) {
        FGL src = multiplicative_periodic_law(order);
        FGL tgt = additive_law(tgt_ring, order);
        auto uni = tgt.univariate_ctx();
        // gamma_ch = 1 - e^{-x} = sum_{k>=1} (-1)^{k+1} x^k / k!
        TruncatedSeries gamma = TruncatedSeries::zero(uni);
        Rat factorial(1);
        for (int k = 1; k <= order; ++k) {
            factorial *= k;
            Rat c = Rat((k % 2) ? 1 : -1) / factorial;
            gamma += TruncatedSeries::variable(uni, 0, k).scaled(c);
        }
        std::map<std::string, RingElement> images;
        images.emplace("beta", RingElement::one(tgt_ring));
        RingHom phi(src_ring, tgt_ring, RingHom::BaseMap::IntToRational, std::move(images));
        return FGLMorphism(std::move(src), std::move(tgt), std::move(phi), std::move(gamma));
    };
    return fam;
}

OperationFamily twist_family(const std::string& base_name, LawFactory base_law, int K) {
    if (K < 1) throw ConfigError("twist: K must be >= 1");
    FGL probe = base_law(2);
    RingSpecPtr base_ring = probe.coefficients();
    RingSpecPtr s_ring = extend_ring(base_ring, twist_generators("s", K));
    RingSpecPtr st_ring = extend_ring(s_ring, twist_generators("t", K));

    std::vector<std::pair<std::string, int>> s_vars, t_vars;
    for (int i = 1; i <= K; ++i) {
        s_vars.push_back({"s" + std::to_string(i), i});
        t_vars.push_back({"t" + std::to_string(i), i});
    }

    auto source_law = [base_law, s_ring, s_vars](int order) {
        auto uni = make_series_ctx({"x"}, order, s_ring);
        return twisted_law(base_law(order), twist_series(uni, s_vars));
    };
    auto target_law = [base_law, st_ring, s_vars](int order) {
        auto uni = make_series_ctx({"x"}, order, st_ring);
        return twisted_law(base_law(order), twist_series(uni, s_vars));
    };

    OperationFamily fam;
    fam.name = "twist(" + base_name + ",K=" + std::to_string(K) + ")";
    fam.source_law = source_law;
    fam.target_law = target_law;
    fam.morphism = [source_law, target_law, s_ring, st_ring, s_vars, t_vars, K](int order) {
        FGL src = source_law(order);
        FGL tgt = target_law(order);
        // phi: s_k -> [x^{k+1}] lambda_t(lambda_s(x)), so that phi sends the
        // twisted coefficients to their re-twisted expansions
        int comp_order = std::max(order, K + 1);
        auto uni = make_series_ctx({"x"}, comp_order, st_ring);
        TruncatedSeries ls = twist_series(uni, s_vars);
        TruncatedSeries lt = twist_series(uni, t_vars);
        TruncatedSeries comp = substitute(lt, {ls});
        std::map<std::string, RingElement> images;
        for (int k = 1; k <= K; ++k)
            images.emplace("s" + std::to_string(k), comp.coefficient({k + 1}));
        for (const auto& g : s_ring->generators())
            if (images.find(g.name) == images.end())
                images.emplace(g.name, RingElement::generator(st_ring, g.name));
        RingHom phi(s_ring, st_ring, RingHom::BaseMap::Identity, std::move(images));
        auto guni = make_series_ctx({"x"}, order, st_ring);
        return FGLMorphism(std::move(src), std::move(tgt), std::move(phi),
                           twist_series(guni, t_vars));
    };
    return fam;
}

// --- OperationSpec --------------------------------------------------------------------

OperationSpec::OperationSpec(OperationFamily family, const RootDatum& datum, int precision,
                             ExtractionDescriptor extract)
    : family_(std::move(family)), precision_(precision), morphism_(family_.morphism(precision)),
      source_(make_sctx(datum, family_.source_law, precision)),
      target_(make_sctx(datum, family_.target_law, precision)), extract_(std::move(extract)) {
    if (extract_.kind == ExtractionDescriptor::Kind::Steenrod) {
        if (!target_->ring()->index_of("t"))
            throw ConfigError("steenrod extraction: target ring has no generator t");
    }
    if (extract_.kind == ExtractionDescriptor::Kind::Partition) {
        for (int i : extract_.partition)
            if (!target_->ring()->index_of("t" + std::to_string(i)))
                throw ConfigError("partition extraction: target ring has no generator t" +
                                  std::to_string(i));
    }
    if (extract_.kind == ExtractionDescriptor::Kind::TMonomial) {
        for (const auto& [name, k] : extract_.exponents)
            if (!target_->ring()->index_of(name))
                throw ConfigError("extraction: target ring has no generator " + name);
    }
}

// --- op application --------------------------------------------------------------------

namespace {

TruncatedSeries apply_morphism(const FGLMorphism& mor, const SeriesCtxPtr& target_sctx,
                               const TruncatedSeries& p) {
    std::vector<TruncatedSeries> images;
    images.reserve(target_sctx->nvars());
    for (std::size_t i = 0; i < target_sctx->nvars(); ++i)
        images.push_back(substitute(mor.gamma(), {TruncatedSeries::variable(target_sctx, i)}));
    return substitute(p, images, &mor.phi());
}

} // namespace

TruncatedSeries op_on_S(const OperationSpec& spec, const TruncatedSeries& p) {
    if (!(*p.ctx() == *spec.source_ctx()->series_ctx()))
        throw ContextMismatch("op_on_S: input over wrong context");
    return apply_morphism(spec.morphism(), spec.target_ctx()->series_ctx(), p);
}

FixedLocusClass op_on_fixed_loci(const OperationSpec& spec, const FixedLocusClass& z) {
    if (z.ctx().get() != spec.source_ctx().get())
        throw ContextMismatch("op_on_fixed_loci: class over wrong context");
    std::vector<TruncatedSeries> coords;
    coords.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        coords.push_back(apply_morphism(spec.morphism(), spec.target_ctx()->series_ctx(), z.coord(i)));
    return FixedLocusClass(spec.target_ctx(), z.theta(), std::move(coords));
}

// --- tables ------------------------------------------------------------------------------

OperationTable operation_table_qdual(const OperationSpec& spec) {
    const SCtxPtr& src = spec.source_ctx();
    const SCtxPtr& tgt = spec.target_ctx();
    const BasisBundle& sb = basis_bundle(src);
    std::size_t n = src->weyl().size();

    OperationTable table;
    table.basis = OperationTable::Basis::QDual;
    table.n = n;
    table.source_ctx = src;
    table.target_ctx = tgt;
    table.coeffs.reserve(n * n);
    for (std::size_t w = 0; w < n; ++w) {
        FixedLocusClass image = op_on_fixed_loci(spec, sb.qdual[w]);
        std::vector<TruncatedSeries> row;
        try {
            row = elimination(image);
        } catch (const NotDivisible& e) {
            throw NotDivisible("qdual table row " + src->weyl().word_name(w) + ": " + e.what(),
                               e.context);
        }
        for (auto& c : row) table.coeffs.push_back(std::move(c));
    }
    for (const auto& c : table.coeffs) table.restriction.push_back(tgt->augment(c));
    return table;
}

OperationTable operation_table_schubert(const OperationSpec& spec) {
    const RootDatum& datum = spec.source_ctx()->datum();
    int N = spec.precision();
    int m = static_cast<int>(datum.num_positive());
    int base_pad = 2 * m + 2;

    std::exception_ptr last;
    for (int attempt = 0; attempt < 3; ++attempt) {
        int pad = base_pad << attempt;
        try {
            int M = N + pad;
            FGLMorphism mor = spec.family().morphism(M);
            SCtxPtr src = make_sctx(datum, spec.family().source_law, M);
            SCtxPtr tgt = make_sctx(datum, spec.family().target_law, M);
            const BasisBundle& sb = basis_bundle(src);
            const BasisBundle& tb = basis_bundle(tgt);
            std::size_t n = src->weyl().size();

            OperationTable table;
            table.basis = OperationTable::Basis::Schubert;
            table.n = n;
            table.source_ctx = spec.source_ctx();
            table.target_ctx = spec.target_ctx();
            for (std::size_t w = 0; w < n; ++w) {
                std::vector<TruncatedSeries> p;
                p.reserve(n);
                for (std::size_t v = 0; v < n; ++v)
                    p.push_back(apply_morphism(mor, tgt->series_ctx(), sb.D.s_at(w, v)));
                for (std::size_t u = 0; u < n; ++u) {
                    QElement acc(tgt, TruncatedSeries::zero(tgt->series_ctx()));
                    for (std::size_t v = u; v < n; ++v) {
                        const QElement& dv = tb.Dinv.q_at(v, u);
                        if (dv.is_zero() || p[v].is_zero()) continue;
                        acc = acc + dv.scaled(p[v]);
                    }
                    TruncatedSeries coeff;
                    try {
                        coeff = acc.with_denominator({}).numerator();
                    } catch (const NotDivisible& e) {
                        throw NotDivisible("schubert table entry (" + src->weyl().word_name(w) +
                                               ", " + src->weyl().word_name(u) +
                                               ") does not clear its denominator: " + e.what(),
                                           e.context);
                    }
                    if (coeff.precision() < N)
                        throw PrecisionExhausted("schubert table entry below requested precision");
                    table.coeffs.push_back(
                        rebase_series(coeff, spec.target_ctx()->series_ctx()).truncated(N));
                }
            }
            for (const auto& c : table.coeffs)
                table.restriction.push_back(spec.target_ctx()->augment(c));
            return table;
        } catch (const PrecisionExhausted&) {
            last = std::current_exception();
        }
    }
    std::rethrow_exception(last);
}

// --- extraction ----------------------------------------------------------------------------

RingElement extract_t_monomial(const RingElement& r, const std::map<std::string, int>& exponents) {
    const RingSpecPtr& spec = r.spec();
    std::vector<std::pair<std::size_t, int>> targets;
    for (const auto& [name, k] : exponents) {
        auto idx = spec->index_of(name);
        if (!idx) throw ConfigError("extract: unknown generator " + name);
        targets.emplace_back(*idx, k);
    }
    RingElement::TermMap kept;
    for (const auto& [e, c] : r.terms()) {
        bool match = true;
        for (const auto& [idx, k] : targets)
            if (e[idx] != k) {
                match = false;
                break;
            }
        if (!match) continue;
        RingElement::Expo stripped = e;
        for (const auto& [idx, k] : targets) stripped[idx] = 0;
        kept[stripped] = c;
    }
    return RingElement::make(spec, std::move(kept));
}

TruncatedSeries extract_t_monomial(const TruncatedSeries& s,
                                   const std::map<std::string, int>& exponents) {
    return s.map_coefficients(s.ctx(),
                              [&](const RingElement& c) { return extract_t_monomial(c, exponents); });
}

TruncatedSeries extract_component(const OperationSpec& spec, const TruncatedSeries& s,
                                  std::optional<int> degree_m) {
    const ExtractionDescriptor& d = spec.descriptor();
    switch (d.kind) {
        case ExtractionDescriptor::Kind::None:
            return s;
        case ExtractionDescriptor::Kind::TMonomial:
            return extract_t_monomial(s, d.exponents);
        case ExtractionDescriptor::Kind::Partition: {
            std::map<std::string, int> expo;
            for (int i : d.partition) expo["t" + std::to_string(i)] += 1;
            // absent generators must appear with exponent zero
            for (const auto& g : spec.target_ctx()->ring()->generators())
                if (g.name.size() > 1 && g.name[0] == 't' && expo.find(g.name) == expo.end())
                    expo[g.name] = 0;
            return extract_t_monomial(s, expo);
        }
        case ExtractionDescriptor::Kind::Steenrod: {
            std::optional<int> m = degree_m ? degree_m : d.degree_m;
            if (!m) {
                // infer from homogeneity of the input
                std::set<int> degrees;
                for (const auto& [e, c] : s.terms()) {
                    int xdeg = 0;
                    for (int k : e) xdeg += k;
                    for (const auto& [cdeg, part] : c.homogeneous_components())
                        degrees.insert(xdeg + cdeg);
                }
                if (degrees.size() > 1)
                    throw AmbiguousDegree("steenrod extraction needs the source degree");
                if (degrees.empty()) return s; // zero input
                m = *degrees.begin();
            }
            unsigned p = spec.target_ctx()->ring()->characteristic();
            int k = (*m - d.steenrod_index) * (static_cast<int>(p) - 1);
            if (k < 0) return TruncatedSeries::zero(s.ctx(), s.precision());
            return extract_t_monomial(s, {{"t", k}});
        }
    }
    return s;
}

OperationTable extract_component(const OperationSpec& spec, const OperationTable& table) {
    const int dim = static_cast<int>(spec.source_ctx()->datum().num_positive());
    OperationTable out = table;
    for (std::size_t w = 0; w < table.n; ++w) {
        int l = spec.source_ctx()->weyl().length(w);
        int m = table.basis == OperationTable::Basis::Schubert ? dim - l : l;
        for (std::size_t v = 0; v < table.n; ++v)
            out.coeffs[w * table.n + v] =
                extract_component(spec, table.coeffs[w * table.n + v], m);
    }
    out.restriction.clear();
    for (const auto& c : out.coeffs) out.restriction.push_back(table.target_ctx->augment(c));
    return out;
}

// --- push-pull twist ------------------------------------------------------------------------

PushPullWitness pushpull_twist_verify(const OperationSpec& spec, int simple,
                                      const FixedLocusClass& z) {
    if (!spec.morphism().source().is_additive_type() || !spec.morphism().target().is_additive_type())
        throw NotAdditiveType("pushpull_twist_verify: both laws must be of additive type");
    const SCtxPtr& tgt = spec.target_ctx();

    auto cls = tgt->datum().classify_root(tgt->datum().simple_roots()[simple]);
    if (!cls || cls->second != 1) throw Error("simple root misclassified");
    TruncatedSeries x_alpha = tgt->x_of_root(cls->first, +1);
    TruncatedSeries gamma_x = substitute(spec.morphism().gamma(), {x_alpha});
    TruncatedSeries itd = exact_divide(gamma_x, x_alpha);

    FixedLocusClass left = hecke_scalar(itd, op_on_fixed_loci(spec, hecke_apply_Y(z, simple)));
    FixedLocusClass right = hecke_apply_Y(op_on_fixed_loci(spec, z), simple);

    int d = std::min(left.precision(), right.precision());
    for (std::size_t i = 0; i < left.size(); ++i)
        if (!equal_up_to(left.coord(i), right.coord(i), d)) return {false, i};
    return {true, 0};
}

} // namespace flagops
