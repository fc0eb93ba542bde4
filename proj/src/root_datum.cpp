#include "flagops/root_datum.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace flagops {

namespace {

std::vector<std::vector<int>> block_cartan(const std::vector<CartanBlock>& blocks) {
    int rank = 0;
    for (const auto& b : blocks) rank += b.rank;
    std::vector<std::vector<int>> A(rank, std::vector<int>(rank, 0));
    int off = 0;
    for (const auto& b : blocks) {
        int n = b.rank;
        for (int i = 0; i < n; ++i) A[off + i][off + i] = 2;
        for (int i = 0; i + 1 < n; ++i) {
            A[off + i][off + i + 1] = -1;
            A[off + i + 1][off + i] = -1;
        }
        switch (b.family) {
            case 'A':
                if (n < 1 || n > 5) throw ConfigError("type A rank out of range (1..5)");
                break;
            case 'B':
                if (n < 2 || n > 5) throw ConfigError("type B rank out of range (2..5)");
                A[n - 1 + off][n - 2 + off] = -2; // alpha_n short
                break;
            case 'C':
                if (n < 2 || n > 5) throw ConfigError("type C rank out of range (2..5)");
                A[n - 2 + off][n - 1 + off] = -2; // alpha_n long
                break;
            case 'D':
                if (n < 3 || n > 5) throw ConfigError("type D rank out of range (3..5)");
                A[off + n - 2][off + n - 1] = 0;
                A[off + n - 1][off + n - 2] = 0;
                A[off + n - 3][off + n - 1] = -1;
                A[off + n - 1][off + n - 3] = -1;
                break;
            default:
                throw ConfigError(std::string("unsupported Cartan family '") + b.family + "'");
        }
        off += n;
    }
    return A;
}

// scaled symmetrizers d_i with d_i * a_ij symmetric
std::vector<int> symmetrizers(const std::vector<CartanBlock>& blocks) {
    std::vector<int> d;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rank; ++i) {
            int di = 1;
            if (b.family == 'B') di = (i + 1 < b.rank) ? 2 : 1;
            if (b.family == 'C') di = (i + 1 < b.rank) ? 1 : 2;
            d.push_back(di);
        }
    }
    return d;
}

} // namespace

// --- RootDatum ----------------------------------------------------------------

RootDatum::RootDatum(std::vector<CartanBlock> type, LatticeKind lattice)
    : type_(std::move(type)), lattice_(lattice) {
    if (type_.empty()) throw ConfigError("RootDatum: empty type");
    cartan_ = block_cartan(type_);
    rank_ = static_cast<int>(cartan_.size());

    // simple roots in lattice coordinates
    simple_.resize(rank_);
    for (int j = 0; j < rank_; ++j) {
        Weight v(rank_, 0);
        if (lattice_ == LatticeKind::Adjoint) {
            v[j] = 1;
        } else {
            for (int i = 0; i < rank_; ++i) v[i] = cartan_[i][j]; // alpha_j in omega basis
        }
        simple_[j] = v;
    }

    // close { (lattice coords, root-basis coords) } under simple reflections
    std::map<Weight, Weight> seen; // root coords -> lattice coords
    std::vector<Weight> queue_rc, queue_lc;
    for (int j = 0; j < rank_; ++j) {
        Weight rc(rank_, 0);
        rc[j] = 1;
        seen.emplace(rc, simple_[j]);
        queue_rc.push_back(rc);
        queue_lc.push_back(simple_[j]);
    }
    for (std::size_t h = 0; h < queue_rc.size(); ++h) {
        for (int i = 0; i < rank_; ++i) {
            Weight lc = reflect_simple(i, queue_lc[h]);
            // same reflection on root-basis coordinates
            Weight rc = queue_rc[h];
            int pair = 0;
            for (int j = 0; j < rank_; ++j) pair += cartan_[i][j] * rc[j];
            rc[i] -= pair;
            if (seen.emplace(rc, lc).second) {
                queue_rc.push_back(rc);
                queue_lc.push_back(lc);
            }
        }
    }
    std::vector<std::pair<Weight, Weight>> positives; // (root coords, lattice coords)
    for (const auto& [rc, lc] : seen) {
        bool pos = std::all_of(rc.begin(), rc.end(), [](int c) { return c >= 0; });
        if (pos) positives.emplace_back(rc, lc);
    }
    // simple roots first, then by height and root coordinates
    std::sort(positives.begin(), positives.end(), [](const auto& a, const auto& b) {
        int ha = std::accumulate(a.first.begin(), a.first.end(), 0);
        int hb = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (ha != hb) return ha < hb;
        return a.first < b.first;
    });
    for (std::size_t k = 0; k < positives.size(); ++k) {
        positive_.push_back(positives[k].second);
        root_index_.emplace(positives[k].second, std::make_pair(k, +1));
        Weight neg = positives[k].second;
        for (int& c : neg) c = -c;
        root_index_.emplace(neg, std::make_pair(k, -1));
    }
}

RootDatum RootDatum::parse(const std::string& designator, LatticeKind lattice) {
    std::vector<CartanBlock> blocks;
    std::size_t pos = 0;
    while (pos < designator.size()) {
        char fam = static_cast<char>(std::toupper(designator[pos]));
        ++pos;
        std::size_t start = pos;
        while (pos < designator.size() && std::isdigit(designator[pos])) ++pos;
        if (start == pos) throw ConfigError("bad type designator '" + designator + "'");
        blocks.push_back({fam, std::stoi(designator.substr(start, pos - start))});
        if (pos < designator.size()) {
            if (designator[pos] != 'x' && designator[pos] != 'X')
                throw ConfigError("bad type designator '" + designator + "'");
            ++pos;
        }
    }
    return RootDatum(std::move(blocks), lattice);
}

int RootDatum::pairing(int i, const Weight& lambda) const {
    if (lattice_ == LatticeKind::SimplyConnected) return lambda[i];
    int s = 0;
    for (int j = 0; j < rank_; ++j) s += cartan_[i][j] * lambda[j];
    return s;
}

Weight RootDatum::reflect_simple(int i, const Weight& lambda) const {
    int c = pairing(i, lambda);
    Weight out = lambda;
    for (int j = 0; j < rank_; ++j) out[j] -= c * simple_[i][j];
    return out;
}

std::optional<std::pair<std::size_t, int>> RootDatum::classify_root(const Weight& v) const {
    auto it = root_index_.find(v);
    if (it == root_index_.end()) return std::nullopt;
    return it->second;
}

std::string RootDatum::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < type_.size(); ++i) {
        if (i) os << "x";
        os << type_[i].family << type_[i].rank;
    }
    os << (lattice_ == LatticeKind::Adjoint ? " (adjoint)" : " (simply connected)");
    return os.str();
}

std::string RootDatum::root_name(std::size_t k) const {
    std::ostringstream os;
    os << "alpha[";
    const Weight& lc = positive_[k];
    for (int j = 0; j < rank_; ++j) {
        if (j) os << ",";
        os << lc[j];
    }
    os << "]";
    return os.str();
}

// --- WeylGroup ------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> matmul(const std::vector<std::vector<int>>& a,
                                     const std::vector<std::vector<int>>& b) {
    std::size_t n = a.size();
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            int aik = a[i][k];
            if (!aik) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

} // namespace

WeylGroup::WeylGroup(const RootDatum& datum, std::size_t bound) : datum_(datum) {
    int r = datum.rank();
    std::vector<std::vector<std::vector<int>>> gen(r);
    for (int i = 0; i < r; ++i) {
        gen[i].assign(r, std::vector<int>(r, 0));
        for (int j = 0; j < r; ++j) {
            Weight e(r, 0);
            e[j] = 1;
            Weight img = datum.reflect_simple(i, e);
            for (int k = 0; k < r; ++k) gen[i][k][j] = img[k];
        }
    }

    std::vector<std::vector<int>> id(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;
    words_.push_back({});
    matrices_.push_back(id);
    matrix_index_.emplace(id, 0);

    std::size_t level_begin = 0;
    while (level_begin < words_.size()) {
        std::size_t level_end = words_.size();
        for (std::size_t w = level_begin; w < level_end; ++w) {
            for (int i = 0; i < r; ++i) {
                // length grows iff w(alpha_i) > 0
                Weight img = act(w, datum.simple_roots()[i]);
                auto cls = datum.classify_root(img);
                if (!cls || cls->second < 0) continue;
                auto m = matmul(matrices_[w], gen[i]);
                if (matrix_index_.count(m)) continue;
                if (words_.size() >= bound)
                    throw TooLarge("Weyl group exceeds the configured bound of " +
                                   std::to_string(bound));
                auto word = words_[w];
                word.push_back(i);
                matrix_index_.emplace(m, words_.size());
                words_.push_back(std::move(word));
                matrices_.push_back(std::move(m));
            }
        }
        if (words_.size() == level_end) break;
        level_begin = level_end;
    }

    // multiplication tables
    std::size_t n = words_.size();
    right_.assign(n, std::vector<std::size_t>(r));
    left_.assign(n, std::vector<std::size_t>(r));
    for (std::size_t w = 0; w < n; ++w)
        for (int i = 0; i < r; ++i) {
            right_[w][i] = index_of_matrix(matmul(matrices_[w], gen[i]));
            left_[w][i] = index_of_matrix(matmul(gen[i], matrices_[w]));
        }
    inverse_.resize(n);
    for (std::size_t w = 0; w < n; ++w) {
        std::size_t v = 0;
        const auto& word = words_[w];
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = right_[v][*it];
        inverse_[w] = v;
    }

    // reflections per positive root: s_alpha(lambda) = lambda - <alpha^vee,lambda> alpha
    std::vector<int> d = symmetrizers(datum.type());
    const auto& A = datum.cartan_matrix();
    auto bilinear = [&](const Weight& root_rc, const Weight& lambda) {
        // (alpha, lambda) in the scaled invariant form; lambda in lattice coords
        long s = 0;
        for (int i = 0; i < r; ++i) {
            if (!root_rc[i]) continue;
            long inner = 0;
            if (datum.lattice() == LatticeKind::SimplyConnected) {
                inner = static_cast<long>(d[i]) * lambda[i];
            } else {
                for (int j = 0; j < r; ++j) inner += static_cast<long>(d[i]) * A[i][j] * lambda[j];
            }
            s += static_cast<long>(root_rc[i]) * inner;
        }
        return s;
    };
    // recover root-basis coordinates of each positive root from the closure
    // (recompute: lattice coords of simple roots may coincide across lattices)
    std::map<Weight, Weight> rc_of_lc;
    {
        std::vector<Weight> rcs, lcs;
        for (int j = 0; j < r; ++j) {
            Weight rc(r, 0);
            rc[j] = 1;
            rcs.push_back(rc);
            lcs.push_back(datum.simple_roots()[j]);
            rc_of_lc[lcs.back()] = rcs.back();
        }
        for (std::size_t h = 0; h < rcs.size(); ++h)
            for (int i = 0; i < r; ++i) {
                Weight lc = datum.reflect_simple(i, lcs[h]);
                Weight rc = rcs[h];
                int pair = 0;
                for (int j = 0; j < r; ++j) pair += A[i][j] * rc[j];
                rc[i] -= pair;
                if (rc_of_lc.emplace(lc, rc).second) {
                    rcs.push_back(rc);
                    lcs.push_back(lc);
                }
            }
    }
    reflections_.resize(datum.num_positive());
    for (std::size_t k = 0; k < datum.num_positive(); ++k) {
        const Weight& alpha = datum.positive_roots()[k];
        Weight rc = rc_of_lc.at(alpha);
        long norm = bilinear(rc, alpha);
        std::vector<std::vector<int>> m(r, std::vector<int>(r));
        for (int j = 0; j < r; ++j) {
            Weight e(r, 0);
            e[j] = 1;
            long num = 2 * bilinear(rc, e);
            if (num % norm != 0) throw Error("reflection pairing is not integral");
            long c = num / norm;
            for (int i2 = 0; i2 < r; ++i2)
                m[i2][j] = (i2 == j ? 1 : 0) - static_cast<int>(c) * alpha[i2];
        }
        reflections_[k] = index_of_matrix(m);
    }
}

std::size_t WeylGroup::index_of_matrix(const std::vector<std::vector<int>>& m) const {
    auto it = matrix_index_.find(m);
    if (it == matrix_index_.end()) throw Error("matrix is not a Weyl group element");
    return it->second;
}

std::size_t WeylGroup::mult(std::size_t a, std::size_t b) const {
    std::size_t w = a;
    for (int i : words_[b]) w = right_[w][i];
    return w;
}

Weight WeylGroup::act(std::size_t w, const Weight& lambda) const {
    const auto& m = matrices_[w];
    int r = datum_.rank();
    Weight out(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) out[i] += m[i][j] * lambda[j];
    return out;
}

std::size_t WeylGroup::reflection(std::size_t k) const { return reflections_.at(k); }

bool WeylGroup::bruhat_leq(std::size_t v, std::size_t w) const {
    if (length(v) > length(w)) return false;
    if (v == identity()) return true;
    // lifting property along the first letter of the canonical word of w
    int s = words_[w][0];
    std::size_t sw = left_[w][s];
    std::size_t sv = left_[v][s];
    if (length(sv) < length(v)) return bruhat_leq(sv, sw);
    return bruhat_leq(v, sw);
}

std::vector<std::size_t> WeylGroup::inversion_set(std::size_t w) const {
    std::vector<std::size_t> out;
    std::size_t winv = inverse_[w];
    for (std::size_t k = 0; k < datum_.num_positive(); ++k) {
        Weight img = act(winv, datum_.positive_roots()[k]);
        auto cls = datum_.classify_root(img);
        if (!cls) throw Error("Weyl action does not preserve the root system");
        if (cls->second < 0) out.push_back(k);
    }
    return out;
}

std::vector<std::size_t> WeylGroup::coset_min_reps(const std::vector<int>& theta) const {
    for (int j : theta)
        if (j < 0 || j >= datum_.rank()) throw ConfigError("theta index out of range");
    std::vector<std::size_t> reps;
    for (std::size_t w = 0; w < size(); ++w) {
        bool minimal = true;
        for (int j : theta)
            if (length(right_[w][j]) < length(w)) {
                minimal = false;
                break;
            }
        if (minimal) reps.push_back(w);
    }
    return reps;
}

std::vector<std::vector<int>> WeylGroup::reduced_words(std::size_t w) const {
    if (w == identity()) return {{}};
    std::vector<std::vector<int>> out;
    for (int i = 0; i < datum_.rank(); ++i) {
        std::size_t ws = right_[w][i];
        if (length(ws) < length(w))
            for (auto head : reduced_words(ws)) {
                head.push_back(i);
                out.push_back(std::move(head));
            }
    }
    return out;
}

std::size_t WeylGroup::element_of_word(const std::vector<int>& word) const {
    std::size_t w = identity();
    for (int i : word) {
        if (i < 0 || i >= datum_.rank()) throw ConfigError("word letter out of range");
        w = right_[w][i];
    }
    return w;
}

std::string WeylGroup::word_name(std::size_t w) const {
    if (w == identity()) return "e";
    std::ostringstream os;
    const auto& word = words_[w];
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) os << ".";
        os << "s" << (word[i] + 1);
    }
    return os.str();
}

std::optional<std::size_t> WeylGroup::element_by_name(const std::string& name) const {
    if (name == "e") return identity();
    std::vector<int> word;
    std::size_t pos = 0;
    while (pos < name.size()) {
        if (name[pos] != 's') return std::nullopt;
        ++pos;
        std::size_t start = pos;
        while (pos < name.size() && std::isdigit(name[pos])) ++pos;
        if (start == pos) return std::nullopt;
        word.push_back(std::stoi(name.substr(start, pos - start)) - 1);
        if (pos < name.size()) {
            if (name[pos] != '.') return std::nullopt;
            ++pos;
        }
    }
    for (int i : word)
        if (i < 0 || i >= datum_.rank()) return std::nullopt;
    return element_of_word(word);
}

} // namespace flagops
