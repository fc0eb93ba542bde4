#ifndef FLAGOPS_EQUIVARIANT_HPP
#define FLAGOPS_EQUIVARIANT_HPP

#include <map>
#include <optional>
#include <vector>

#include "flagops/formal_group_ring.hpp"

namespace flagops {

/// A signed root: index into the positive roots plus a sign.
struct SignedRoot {
    std::size_t index = 0;
    int sign = +1;

    auto operator<=>(const SignedRoot&) const = default;
};

/// Element of the root-localized ring Q: a series numerator over a multiset of
/// roots, each entry standing for a factor 1/x_alpha.
class QElement {
public:
    using Denominator = std::map<SignedRoot, int>; // multiplicities >= 1

    QElement() = default;
    QElement(SCtxPtr ctx, TruncatedSeries num, Denominator den = {});

    static QElement scalar(SCtxPtr ctx, const Rat& c);

    const SCtxPtr& ctx() const { return ctx_; }
    const TruncatedSeries& numerator() const { return num_; }
    const Denominator& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    QElement operator+(const QElement& rhs) const;
    QElement operator-() const;
    QElement operator-(const QElement& rhs) const;
    QElement operator*(const QElement& rhs) const;
    QElement scaled(const TruncatedSeries& s) const;
    QElement over_root(const SignedRoot& r, int mult = 1) const; // divide by x_r

    /// Equality after cross-multiplication, to the common tracked precision.
    bool equals(const QElement& rhs) const;

    /// Re-express with the given denominator (exact divisions must succeed).
    QElement with_denominator(const Denominator& target) const;

    /// Clear the denominator entirely; throws NotDivisible if the value is not in S.
    TruncatedSeries to_series() const;

private:
    SCtxPtr ctx_;
    TruncatedSeries num_;
    Denominator den_;
};

/// An element sum_w p_w f_w of the fixed-locus algebra over W/W_Theta
/// (all of W when Theta is empty).
class FixedLocusClass {
public:
    FixedLocusClass(SCtxPtr ctx, std::vector<int> theta, std::vector<TruncatedSeries> coords);

    static FixedLocusClass zero(SCtxPtr ctx, std::vector<int> theta = {});
    static FixedLocusClass unit(SCtxPtr ctx, std::vector<int> theta = {});
    /// [pt] = x_Pi f_e (Theta must be empty).
    static FixedLocusClass point(SCtxPtr ctx);

    const SCtxPtr& ctx() const { return ctx_; }
    const std::vector<int>& theta() const { return theta_; }
    const std::vector<std::size_t>& reps() const { return reps_; }
    std::size_t size() const { return coords_.size(); }
    const TruncatedSeries& coord(std::size_t pos) const { return coords_[pos]; }
    const std::vector<TruncatedSeries>& coords() const { return coords_; }
    /// Position of a Weyl element in the rep list (identity for Theta = {}).
    std::size_t position_of(std::size_t w) const;

    int precision() const;

    FixedLocusClass operator+(const FixedLocusClass& rhs) const;
    FixedLocusClass operator-(const FixedLocusClass& rhs) const;
    FixedLocusClass operator-() const;
    /// Pointwise product (the ring structure).
    FixedLocusClass operator*(const FixedLocusClass& rhs) const;
    /// S-module scaling: every coordinate multiplied by q.
    FixedLocusClass scaled(const TruncatedSeries& q) const;

    bool equal_up_to(const FixedLocusClass& rhs, int d) const;

private:
    SCtxPtr ctx_;
    std::vector<int> theta_;
    std::vector<std::size_t> reps_;
    std::vector<TruncatedSeries> coords_;

    void check_compatible(const FixedLocusClass& rhs) const;
};

/// Hecke action of the push-pull element Y_alpha (alpha simple, Theta = {}):
/// coordinate v becomes kappa_{v(alpha)} p_v + (p_{v s_alpha} - p_v)/x_{v(alpha)}.
FixedLocusClass hecke_apply_Y(const FixedLocusClass& z, int simple);

/// q . f_w = w(q) f_w extended over the class.
FixedLocusClass hecke_scalar(const TruncatedSeries& q, const FixedLocusClass& z);

/// zeta_{I_w}: Y operators along the canonical reduced word applied to [pt].
FixedLocusClass schubert_class(const SCtxPtr& ctx, std::size_t w);
FixedLocusClass schubert_class_for_word(const SCtxPtr& ctx, const std::vector<int>& word);

struct GkmWitness {
    bool ok = true;
    std::size_t root_index = 0;
    std::size_t w = 0;
};

/// p_w - p_{s_alpha w} divisible by x_alpha for all alpha in Sigma^+, w in W.
GkmWitness gkm_membership(const FixedLocusClass& z);

/// A_Pi(sum p_v f_v) = sum_v p_v / v(x_Pi).
QElement pairing_A_Pi(const FixedLocusClass& z);

/// Triangular transformation matrices between the fixed-point basis and the
/// Schubert / Q-dual bases, all indexed by the linear order on W.
class BasisMatrix {
public:
    enum class Kind { D, Dinv, C };

    BasisMatrix(Kind kind, std::size_t n);

    Kind kind() const { return kind_; }
    std::size_t n() const { return n_; }

    const TruncatedSeries& s_at(std::size_t row, std::size_t col) const;
    const QElement& q_at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, TruncatedSeries s);
    void set(std::size_t row, std::size_t col, QElement q);

private:
    Kind kind_;
    std::size_t n_;
    std::vector<TruncatedSeries> s_entries_;
    std::vector<QElement> q_entries_;
};

struct BasisBundle {
    BasisMatrix D{BasisMatrix::Kind::D, 0};
    BasisMatrix Dinv{BasisMatrix::Kind::Dinv, 0};
    BasisMatrix C{BasisMatrix::Kind::C, 0};
    std::vector<FixedLocusClass> schubert; // rows of D
    std::vector<FixedLocusClass> qdual;    // columns of C
};

/// Cached per context; built at an internally boosted precision so that every
/// entry is exact to the context precision.
const BasisBundle& basis_bundle(const SCtxPtr& ctx);

const BasisMatrix& matrix_D(const SCtxPtr& ctx);
const BasisMatrix& matrix_Dinv(const SCtxPtr& ctx);
const BasisMatrix& matrix_C(const SCtxPtr& ctx);
const FixedLocusClass& qdual_class(const SCtxPtr& ctx, std::size_t w);

/// Coefficients a_w with z = sum_w a_w Y*_{I_w}, by the leading-coordinate scan.
std::vector<TruncatedSeries> elimination(const FixedLocusClass& z);

/// c(p) = (w(p))_w over coset representatives; p must be W_Theta-invariant.
FixedLocusClass char_map(const SCtxPtr& ctx, const TruncatedSeries& p,
                         const std::vector<int>& theta = {});
/// rho(p1 (x) p2) = p1 * c(p2); p2 must be W_Theta-invariant.
FixedLocusClass borel_map(const SCtxPtr& ctx, const TruncatedSeries& p1, const TruncatedSeries& p2,
                          const std::vector<int>& theta = {});

/// Augmentation of every coordinate / coefficient.
std::vector<RingElement> forgetful(const SCtxPtr& ctx, const std::vector<TruncatedSeries>& coeffs);

} // namespace flagops

#endif
