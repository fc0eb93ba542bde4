#ifndef FLAGOPS_ROOT_DATUM_HPP
#define FLAGOPS_ROOT_DATUM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagops/errors.hpp"

namespace flagops {

enum class LatticeKind { SimplyConnected, Adjoint };

/// One irreducible Cartan factor, families A-D, rank <= 5.
struct CartanBlock {
    char family = 'A';
    int rank = 1;
};

using Weight = std::vector<int>; // coordinates in the chosen basis of the lattice

/// Crystallographic root datum: Cartan data for a (product of) type A-D
/// factor(s), with the character lattice realized either as the root lattice
/// (adjoint) or the weight lattice (simply connected).
class RootDatum {
public:
    RootDatum(std::vector<CartanBlock> type, LatticeKind lattice);

    /// Parse designators like "A2", "B3", "A1xA1".
    static RootDatum parse(const std::string& designator, LatticeKind lattice);

    int rank() const { return rank_; }
    LatticeKind lattice() const { return lattice_; }
    const std::vector<CartanBlock>& type() const { return type_; }
    /// Cartan matrix entries <alpha_i^vee, alpha_j>.
    const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

    /// Simple roots in lattice coordinates.
    const std::vector<Weight>& simple_roots() const { return simple_; }
    /// Positive roots in lattice coordinates, simple roots first.
    const std::vector<Weight>& positive_roots() const { return positive_; }
    std::size_t num_positive() const { return positive_.size(); }

    /// <alpha_i^vee, lambda> for lambda in lattice coordinates.
    int pairing(int i, const Weight& lambda) const;
    /// s_i(lambda).
    Weight reflect_simple(int i, const Weight& lambda) const;

    /// Signed-root lookup: returns (index into positive_roots, sign) if the
    /// vector is a root, nullopt otherwise.
    std::optional<std::pair<std::size_t, int>> classify_root(const Weight& v) const;

    std::string describe() const;
    std::string root_name(std::size_t positive_index) const;

private:
    std::vector<CartanBlock> type_;
    LatticeKind lattice_;
    int rank_;
    std::vector<std::vector<int>> cartan_;
    std::vector<Weight> simple_;
    std::vector<Weight> positive_;
    std::map<Weight, std::pair<std::size_t, int>> root_index_;
};

/// Enumerated Weyl group of a datum with canonical (lexicographically least)
/// reduced words, sorted by (length, word): the linear order refining Bruhat
/// order that the basis algorithms use.
class WeylGroup {
public:
    explicit WeylGroup(const RootDatum& datum, std::size_t bound = 10000);

    const RootDatum& datum() const { return datum_; }
    std::size_t size() const { return words_.size(); }
    std::size_t identity() const { return 0; }

    const std::vector<int>& word(std::size_t w) const { return words_[w]; }
    int length(std::size_t w) const { return static_cast<int>(words_[w].size()); }
    std::size_t inverse(std::size_t w) const { return inverse_[w]; }
    std::size_t mult_right(std::size_t w, int simple) const { return right_[w][simple]; }
    std::size_t mult_left(int simple, std::size_t w) const { return left_[w][simple]; }
    std::size_t mult(std::size_t a, std::size_t b) const;

    Weight act(std::size_t w, const Weight& lambda) const;
    /// Index of the reflection s_alpha for a positive root.
    std::size_t reflection(std::size_t positive_root_index) const;

    bool bruhat_leq(std::size_t v, std::size_t w) const;
    /// Sigma^+ intersected with w Sigma^-: indices into positive_roots().
    std::vector<std::size_t> inversion_set(std::size_t w) const;

    /// Minimal-length coset representatives of W/W_Theta, in the linear order.
    std::vector<std::size_t> coset_min_reps(const std::vector<int>& theta) const;

    /// All reduced words of w (small groups only; used by consistency checks).
    std::vector<std::vector<int>> reduced_words(std::size_t w) const;

    std::size_t element_of_word(const std::vector<int>& word) const;
    std::size_t longest_element() const { return words_.size() - 1; }

    std::string word_name(std::size_t w) const;
    std::optional<std::size_t> element_by_name(const std::string& name) const;

private:
    const RootDatum& datum_;
    std::vector<std::vector<int>> words_;
    std::vector<std::vector<std::vector<int>>> matrices_; // action on lattice coords
    std::vector<std::vector<std::size_t>> right_;
    std::vector<std::vector<std::size_t>> left_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> reflections_;

    std::size_t index_of_matrix(const std::vector<std::vector<int>>& m) const;
    std::map<std::vector<std::vector<int>>, std::size_t> matrix_index_;
};

} // namespace flagops

#endif
