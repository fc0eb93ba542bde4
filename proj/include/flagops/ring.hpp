#ifndef FLAGOPS_RING_HPP
#define FLAGOPS_RING_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagops/errors.hpp"
#include "flagops/numeric.hpp"

namespace flagops {

enum class BaseRing { Integers, Rationals, PrimeField };

/// A named formal generator of the coefficient ring, e.g. t_1 with degree -1,
/// beta with degree -1 and negative powers allowed.
struct Generator {
    std::string name;
    int degree = 0;
    bool invertible = false;

    bool operator==(const Generator&) const = default;
};

/// Description of a graded coefficient ring: a base (Z, Q or F_p) extended by
/// formal polynomial (or Laurent, if invertible) generators.
class RingSpec {
public:
    RingSpec(BaseRing base, unsigned p, std::vector<Generator> gens);

    static std::shared_ptr<const RingSpec> integers(std::vector<Generator> gens = {});
    static std::shared_ptr<const RingSpec> rationals(std::vector<Generator> gens = {});
    static std::shared_ptr<const RingSpec> prime_field(unsigned p, std::vector<Generator> gens = {});

    BaseRing base() const { return base_; }
    unsigned characteristic() const { return p_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const RingSpec& other) const;

    /// Same base; other's generators contain ours (by name/degree/flag).
    bool extends_to(const RingSpec& larger) const;

    std::string describe() const;

private:
    BaseRing base_;
    unsigned p_;
    std::vector<Generator> gens_;
};

using RingSpecPtr = std::shared_ptr<const RingSpec>;

struct DegreeInfo {
    enum class Kind { Zero, Homogeneous, Inhomogeneous };
    Kind kind = Kind::Zero;
    int value = 0; // meaningful only when Homogeneous

    bool homogeneous_of(int d) const {
        return kind == Kind::Zero || (kind == Kind::Homogeneous && value == d);
    }
};

/// Element of a RingSpec ring: sparse sum of monomials in the generators with
/// base coefficients, kept in canonical form (no zero terms, sorted exponents,
/// coefficients normalized per base).
class RingElement {
public:
    using Expo = std::vector<int>;
    using TermMap = std::map<Expo, Rat>;

    RingElement() = default; // zero over no spec; usable only as placeholder

    static RingElement zero(RingSpecPtr spec);
    static RingElement one(RingSpecPtr spec);
    static RingElement constant(RingSpecPtr spec, const Rat& value);
    static RingElement generator(RingSpecPtr spec, std::string_view name, int power = 1);
    /// Build from raw terms (normalizes).
    static RingElement make(RingSpecPtr spec, TermMap terms);

    const RingSpecPtr& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const;
    /// Coefficient of the exponent-free monomial.
    Rat constant_coefficient() const;

    RingElement operator+(const RingElement& rhs) const;
    RingElement operator-(const RingElement& rhs) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& rhs) const;
    RingElement& operator+=(const RingElement& rhs);
    RingElement& operator*=(const RingElement& rhs);
    RingElement scaled(const Rat& c) const;
    RingElement pow(unsigned e) const;

    bool operator==(const RingElement& rhs) const;
    bool operator!=(const RingElement& rhs) const { return !(*this == rhs); }

    DegreeInfo degree() const;
    /// Split into homogeneous parts, keyed by degree.
    std::map<int, RingElement> homogeneous_components() const;

    /// Monomial with an invertible coefficient and only invertible generators?
    bool is_unit_monomial() const;
    /// Inverse of a unit monomial; throws NotReversible otherwise.
    RingElement unit_inverse() const;

    /// Coefficient of a single generator monomial gen^k (all other exponents 0).
    Rat coefficient_of(std::string_view gen, int k) const;

    std::string render() const;

private:
    RingSpecPtr spec_;
    TermMap terms_;

    void insert_term(const Expo& e, const Rat& c);
    void check_same_spec(const RingElement& rhs) const;
};

/// Ring homomorphism between two RingSpecs: a base map plus images of the
/// source generators.
class RingHom {
public:
    enum class BaseMap { Identity, IntToRational, IntReduceModP };

    RingHom(RingSpecPtr source, RingSpecPtr target, BaseMap base_map,
            std::map<std::string, RingElement> images);

    static RingHom identity(RingSpecPtr spec);
    /// Source generators map to the target generators with the same names.
    static RingHom inclusion(RingSpecPtr source, RingSpecPtr target);

    const RingSpecPtr& source() const { return source_; }
    const RingSpecPtr& target() const { return target_; }

    RingElement apply(const RingElement& r) const;
    Rat apply_base(const Rat& c) const;

private:
    RingSpecPtr source_;
    RingSpecPtr target_;
    BaseMap base_map_;
    std::map<std::string, RingElement> images_;
};

/// Normalize a base coefficient for the given spec (mod-p reduction, integrality check).
Rat normalize_coeff(const RingSpec& spec, const Rat& c);

} // namespace flagops

#endif
