#include "flagops/ring.hpp"

#include <algorithm>
#include <sstream>

namespace flagops {

// --- RingSpec ---------------------------------------------------------------

RingSpec::RingSpec(BaseRing base, unsigned p, std::vector<Generator> gens)
    : base_(base), p_(p), gens_(std::move(gens)) {
    if (base_ == BaseRing::PrimeField) {
        if (!is_prime(p_)) throw ConfigError("RingSpec: p must be prime, got " + std::to_string(p_));
    } else {
        p_ = 0;
    }
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (gens_[i].name == gens_[j].name)
                throw ConfigError("RingSpec: duplicate generator name '" + gens_[i].name + "'");
}

std::shared_ptr<const RingSpec> RingSpec::integers(std::vector<Generator> gens) {
    return std::make_shared<RingSpec>(BaseRing::Integers, 0, std::move(gens));
}

std::shared_ptr<const RingSpec> RingSpec::rationals(std::vector<Generator> gens) {
    return std::make_shared<RingSpec>(BaseRing::Rationals, 0, std::move(gens));
}

std::shared_ptr<const RingSpec> RingSpec::prime_field(unsigned p, std::vector<Generator> gens) {
    return std::make_shared<RingSpec>(BaseRing::PrimeField, p, std::move(gens));
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

bool RingSpec::operator==(const RingSpec& other) const {
    return base_ == other.base_ && p_ == other.p_ && gens_ == other.gens_;
}

bool RingSpec::extends_to(const RingSpec& larger) const {
    if (base_ != larger.base_ || p_ != larger.p_) return false;
    for (const auto& g : gens_) {
        auto idx = larger.index_of(g.name);
        if (!idx || !(larger.gens_[*idx] == g)) return false;
    }
    return true;
}

std::string RingSpec::describe() const {
    std::ostringstream os;
    switch (base_) {
        case BaseRing::Integers: os << "Z"; break;
        case BaseRing::Rationals: os << "Q"; break;
        case BaseRing::PrimeField: os << "F" << p_; break;
    }
    if (!gens_.empty()) {
        os << "[";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i) os << ",";
            os << gens_[i].name;
            if (gens_[i].invertible) os << "^+-1";
        }
        os << "]";
    }
    return os.str();
}

Rat normalize_coeff(const RingSpec& spec, const Rat& c) {
    switch (spec.base()) {
        case BaseRing::Rationals:
            return c;
        case BaseRing::Integers:
            if (!is_integral(c))
                throw Error("non-integral coefficient " + rat_to_string(c) + " over Z");
            return c;
        case BaseRing::PrimeField: {
            Int p(spec.characteristic());
            Int den = mod_reduce(rat_den(c), p);
            if (den == 0)
                throw Error("denominator divisible by p in F_" + std::to_string(spec.characteristic()));
            Int num = mod_reduce(rat_num(c), p);
            return Rat(mod_reduce(num * mod_inverse(den, p), p));
        }
    }
    return c;
}

// --- RingElement ------------------------------------------------------------

void RingElement::insert_term(const Expo& e, const Rat& c) {
    if (e.size() != spec_->generators().size())
        throw Error("RingElement: exponent vector length mismatch");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 && !spec_->generators()[i].invertible)
            throw InvalidExponent("negative exponent on non-invertible generator '" +
                                  spec_->generators()[i].name + "'");
    Rat v = normalize_coeff(*spec_, c);
    if (v == 0) return;
    auto [it, fresh] = terms_.emplace(e, v);
    if (!fresh) {
        it->second = normalize_coeff(*spec_, it->second + v);
        if (it->second == 0) terms_.erase(it);
    }
}

RingElement RingElement::zero(RingSpecPtr spec) {
    RingElement r;
    r.spec_ = std::move(spec);
    return r;
}

RingElement RingElement::one(RingSpecPtr spec) { return constant(std::move(spec), Rat(1)); }

RingElement RingElement::constant(RingSpecPtr spec, const Rat& value) {
    RingElement r = zero(std::move(spec));
    r.insert_term(Expo(r.spec_->generators().size(), 0), value);
    return r;
}

RingElement RingElement::generator(RingSpecPtr spec, std::string_view name, int power) {
    RingElement r = zero(std::move(spec));
    auto idx = r.spec_->index_of(name);
    if (!idx) throw UnmappedGenerator("unknown generator '" + std::string(name) + "'");
    Expo e(r.spec_->generators().size(), 0);
    e[*idx] = power;
    r.insert_term(e, Rat(1));
    return r;
}

RingElement RingElement::make(RingSpecPtr spec, TermMap terms) {
    RingElement r = zero(std::move(spec));
    for (const auto& [e, c] : terms) r.insert_term(e, c);
    return r;
}

bool RingElement::is_one() const {
    return terms_.size() == 1 && terms_.begin()->second == 1 &&
           std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                       [](int k) { return k == 0; });
}

bool RingElement::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 &&
           std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                       [](int k) { return k == 0; });
}

Rat RingElement::constant_coefficient() const {
    if (!spec_) return Rat(0);
    Expo zero_e(spec_->generators().size(), 0);
    auto it = terms_.find(zero_e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void RingElement::check_same_spec(const RingElement& rhs) const {
    if (!spec_ || !rhs.spec_ || !(*spec_ == *rhs.spec_))
        throw ContextMismatch("RingElement operands over different rings");
}

RingElement RingElement::operator+(const RingElement& rhs) const {
    check_same_spec(rhs);
    RingElement out = *this;
    for (const auto& [e, c] : rhs.terms_) out.insert_term(e, c);
    return out;
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
    check_same_spec(rhs);
    for (const auto& [e, c] : rhs.terms_) insert_term(e, c);
    return *this;
}

RingElement RingElement::operator-() const {
    RingElement out = *this;
    for (auto& [e, c] : out.terms_) c = normalize_coeff(*spec_, -c);
    // mod p negation can produce zero only from zero, so no term vanishes
    return out;
}

RingElement RingElement::operator-(const RingElement& rhs) const { return *this + (-rhs); }

RingElement RingElement::operator*(const RingElement& rhs) const {
    check_same_spec(rhs);
    RingElement out = zero(spec_);
    Expo e(spec_->generators().size());
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.insert_term(e, ca * cb);
        }
    return out;
}

RingElement& RingElement::operator*=(const RingElement& rhs) {
    *this = *this * rhs;
    return *this;
}

RingElement RingElement::scaled(const Rat& c) const {
    RingElement out = zero(spec_);
    for (const auto& [e, v] : terms_) out.insert_term(e, v * c);
    return out;
}

RingElement RingElement::pow(unsigned e) const {
    RingElement acc = one(spec_);
    RingElement base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool RingElement::operator==(const RingElement& rhs) const {
    if (!spec_ || !rhs.spec_) return terms_.empty() && rhs.terms_.empty();
    return *spec_ == *rhs.spec_ && terms_ == rhs.terms_;
}

DegreeInfo RingElement::degree() const {
    if (terms_.empty()) return {DegreeInfo::Kind::Zero, 0};
    const auto& gens = spec_->generators();
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * gens[i].degree;
        if (!deg)
            deg = d;
        else if (*deg != d)
            return {DegreeInfo::Kind::Inhomogeneous, 0};
    }
    return {DegreeInfo::Kind::Homogeneous, *deg};
}

std::map<int, RingElement> RingElement::homogeneous_components() const {
    std::map<int, RingElement> out;
    const auto& gens = spec_->generators();
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * gens[i].degree;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, zero(spec_)).first;
        it->second.insert_term(e, c);
    }
    return out;
}

bool RingElement::is_unit_monomial() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0 && !spec_->generators()[i].invertible) return false;
    switch (spec_->base()) {
        case BaseRing::Integers: return c == 1 || c == -1;
        case BaseRing::Rationals:
        case BaseRing::PrimeField: return c != 0;
    }
    return false;
}

RingElement RingElement::unit_inverse() const {
    if (!is_unit_monomial())
        throw NotReversible("ring element is not an invertible monomial: " + render());
    const auto& [e, c] = *terms_.begin();
    Expo inv_e(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv_e[i] = -e[i];
    Rat inv_c;
    if (spec_->base() == BaseRing::PrimeField) {
        Int p(spec_->characteristic());
        inv_c = Rat(mod_inverse(rat_num(c), p));
    } else {
        inv_c = Rat(1) / c;
    }
    RingElement out = zero(spec_);
    out.insert_term(inv_e, inv_c);
    return out;
}

Rat RingElement::coefficient_of(std::string_view gen, int k) const {
    auto idx = spec_->index_of(gen);
    if (!idx) throw UnmappedGenerator("unknown generator '" + std::string(gen) + "'");
    Expo e(spec_->generators().size(), 0);
    e[*idx] = k;
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

std::string RingElement::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += spec_->generators()[i].name;
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << mono;
        }
    }
    return os.str();
}

// --- RingHom ----------------------------------------------------------------

RingHom::RingHom(RingSpecPtr source, RingSpecPtr target, BaseMap base_map,
                 std::map<std::string, RingElement> images)
    : source_(std::move(source)), target_(std::move(target)), base_map_(base_map),
      images_(std::move(images)) {
    switch (base_map_) {
        case BaseMap::Identity:
            if (source_->base() != target_->base() ||
                source_->characteristic() != target_->characteristic())
                throw ConfigError("RingHom: identity base map between different bases");
            break;
        case BaseMap::IntToRational:
            if (source_->base() != BaseRing::Integers || target_->base() != BaseRing::Rationals)
                throw ConfigError("RingHom: Z->Q map requires Z source and Q target");
            break;
        case BaseMap::IntReduceModP:
            if (source_->base() != BaseRing::Integers || target_->base() != BaseRing::PrimeField)
                throw ConfigError("RingHom: Z->F_p map requires Z source and F_p target");
            break;
    }
    for (const auto& [name, img] : images_) {
        if (!(*img.spec() == *target_)) throw ContextMismatch("RingHom: image over wrong ring");
        auto idx = source_->index_of(name);
        if (!idx) throw UnmappedGenerator("RingHom: image given for unknown generator '" + name + "'");
        if (source_->generators()[*idx].invertible && !img.is_unit_monomial())
            throw ConfigError("RingHom: image of invertible generator '" + name +
                              "' is not an invertible monomial");
    }
}

RingHom RingHom::identity(RingSpecPtr spec) { return inclusion(spec, spec); }

RingHom RingHom::inclusion(RingSpecPtr source, RingSpecPtr target) {
    if (!source->extends_to(*target))
        throw ConfigError("RingHom::inclusion: " + source->describe() + " does not embed into " +
                          target->describe());
    std::map<std::string, RingElement> images;
    for (const auto& g : source->generators())
        images.emplace(g.name, RingElement::generator(target, g.name));
    return RingHom(source, target, BaseMap::Identity, std::move(images));
}

Rat RingHom::apply_base(const Rat& c) const {
    // reduction / inclusion are handled by target-side normalization
    return normalize_coeff(*target_, c);
}

RingElement RingHom::apply(const RingElement& r) const {
    if (!(*r.spec() == *source_)) throw ContextMismatch("RingHom::apply: element over wrong ring");
    RingElement out = RingElement::zero(target_);
    const auto& gens = source_->generators();
    for (const auto& [e, c] : r.terms()) {
        RingElement term = RingElement::constant(target_, apply_base(c));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = images_.find(gens[i].name);
            if (it == images_.end())
                throw UnmappedGenerator("RingHom: no image for generator '" + gens[i].name + "'");
            const RingElement& img = it->second;
            if (e[i] > 0)
                term *= img.pow(static_cast<unsigned>(e[i]));
            else
                term *= img.unit_inverse().pow(static_cast<unsigned>(-e[i]));
        }
        out += term;
    }
    return out;
}

} // namespace flagops
