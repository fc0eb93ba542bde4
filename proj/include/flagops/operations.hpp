#ifndef FLAGOPS_OPERATIONS_HPP
#define FLAGOPS_OPERATIONS_HPP

#include <functional>
#include <optional>
#include <string>

#include "flagops/equivariant.hpp"

namespace flagops {

/// What to project out of an operation's image.
struct ExtractionDescriptor {
    enum class Kind { None, Steenrod, Partition, TMonomial };
    Kind kind = Kind::None;
    int steenrod_index = 0;
    std::optional<int> degree_m;   // source degree, when the input is inhomogeneous
    std::vector<int> partition;    // for Partition: multiset of indices i of t_i
    std::map<std::string, int> exponents; // for TMonomial: explicit generator powers
};

/// An operation pinned down by order-parameterized factories, so the same
/// morphism can be rebuilt at boosted precision inside the table pipelines.
struct OperationFamily {
    std::string name;
    LawFactory source_law;
    LawFactory target_law;
    std::function<FGLMorphism(int order)> morphism;
};

OperationFamily identity_family(const std::string& law_name, LawFactory law);
OperationFamily steenrod_family(unsigned p);
OperationFamily chow_trace_family(unsigned p);
OperationFamily chern_character_family();
/// Landweber-Novikov style twist with K twist variables over the given base
/// law: source is the base twisted by lambda_s over R[s1..sK], the morphism is
/// (s_k -> coefficients of lambda_t o lambda_s, gamma = lambda_t).
OperationFamily twist_family(const std::string& base_name, LawFactory base_law, int K);

/// A localized multiplicative operation bound to a root datum: source and
/// target formal group rings over the same datum plus the FGL morphism.
class OperationSpec {
public:
    OperationSpec(OperationFamily family, const RootDatum& datum, int precision,
                  ExtractionDescriptor extract = {});

    const OperationFamily& family() const { return family_; }
    const SCtxPtr& source_ctx() const { return source_; }
    const SCtxPtr& target_ctx() const { return target_; }
    const FGLMorphism& morphism() const { return morphism_; }
    const ExtractionDescriptor& descriptor() const { return extract_; }
    int precision() const { return precision_; }

private:
    OperationFamily family_;
    int precision_;
    FGLMorphism morphism_;
    SCtxPtr source_;
    SCtxPtr target_;
    ExtractionDescriptor extract_;
};

/// The operation on formal group rings: coefficients through phi, x_i -> gamma(x_i).
TruncatedSeries op_on_S(const OperationSpec& spec, const TruncatedSeries& p);

/// Coordinate-wise application on fixed-locus classes (any Theta).
FixedLocusClass op_on_fixed_loci(const OperationSpec& spec, const FixedLocusClass& z);

struct OperationTable {
    enum class Basis { Schubert, QDual };
    Basis basis = Basis::Schubert;
    std::size_t n = 0;
    SCtxPtr source_ctx;
    SCtxPtr target_ctx;
    std::vector<TruncatedSeries> coeffs;   // row-major: c[w][v], over the target ring
    std::vector<RingElement> restriction;  // augmentations epsilon(c[w][v])

    const TruncatedSeries& at(std::size_t row, std::size_t col) const {
        return coeffs.at(row * n + col);
    }
    const RingElement& forgetful_at(std::size_t row, std::size_t col) const {
        return restriction.at(row * n + col);
    }
};

/// Rows: C_T(Y*_{I_w}) expanded through the elimination procedure.
OperationTable operation_table_qdual(const OperationSpec& spec);
/// Rows: C_T(zeta_{I_w}) expanded through the target D^{-1}.
OperationTable operation_table_schubert(const OperationSpec& spec);

/// Coefficient of the t-monomial given by exponents, with those powers stripped.
TruncatedSeries extract_t_monomial(const TruncatedSeries& s,
                                   const std::map<std::string, int>& exponents);
RingElement extract_t_monomial(const RingElement& r, const std::map<std::string, int>& exponents);

/// Apply the spec's descriptor to a series of pure degree m (Steenrod needs m).
TruncatedSeries extract_component(const OperationSpec& spec, const TruncatedSeries& s,
                                  std::optional<int> degree_m = std::nullopt);
/// Apply the descriptor to every table entry, inferring each row's source degree.
OperationTable extract_component(const OperationSpec& spec, const OperationTable& table);

struct PushPullWitness {
    bool ok = true;
    std::size_t position = 0; // offending coordinate, when !ok
};

/// itd(x_alpha) . C_T(Y_alpha . z) == Y_alpha . C_T(z); both laws must be of
/// additive type, else NotAdditiveType.
PushPullWitness pushpull_twist_verify(const OperationSpec& spec, int simple,
                                      const FixedLocusClass& z);

} // namespace flagops

#endif
