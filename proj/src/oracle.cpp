// Exhaustive exact oracle for extreme points.
//
// Translate so the candidate p sits at the origin; p is not extreme iff the
// origin lies in the convex hull of the other points, iff (Caratheodory) it lies
// in the hull of some affinely independent subset of at most d + 1 of them. All
// subsets are enumerated with integer arithmetic on the binary64 inputs scaled
// to a common power of two.

#include "peelkit/peeling.hpp"

#include "exact.hpp"

#include <functional>

namespace peelkit {
namespace {

using IntVec = std::vector<mpz_class>;

class Binomials {
public:
    explicit Binomials(std::size_t n) : n_(n + 1), table_((n + 1) * (n + 1), 0) {
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (std::size_t k = 1; k <= i; ++k) at(i, k) = at(i - 1, k - 1) + (k < i ? at(i - 1, k) : 0);
        }
    }
    std::size_t operator()(std::size_t n, std::size_t k) const { return k > n ? 0 : table_[n * n_ + k]; }

private:
    std::size_t& at(std::size_t n, std::size_t k) { return table_[n * n_ + k]; }
    std::size_t n_;
    std::vector<std::size_t> table_;
};

// Calls visit(subset) for every increasing k-subset of {0..m-1}; stops early
// when visit returns true and reports whether it did.
bool for_each_subset(std::size_t m, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    if (k > m) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (visit(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

class OriginInHull {
public:
    OriginInHull(const std::vector<IntVec>& vectors, std::size_t dim)
        : v_(vectors), dim_(dim), binom_(vectors.size()),
          det_cache_(binom_(vectors.size(), dim), kUnknown) {}

    bool operator()() {
        const std::size_t m = v_.size();
        if (m >= dim_ + 1 && full_simplices()) return true;
        for (std::size_t size = 2; size <= std::min(dim_, m); ++size) {
            if (for_each_subset(m, size, [&](const auto& s) { return low_simplex(s); })) return true;
        }
        return false;
    }

private:
    static constexpr signed char kUnknown = 2;

    // Sign of det[v_s0 ... v_s(d-1)] for an increasing d-subset, memoised by its
    // colexicographic rank.
    int det_sign(const std::vector<std::size_t>& s) {
        std::size_t r = 0;
        for (std::size_t i = 0; i < s.size(); ++i) r += binom_(s[i], i + 1);
        signed char& slot = det_cache_[r];
        if (slot == kUnknown) {
            std::vector<mpz_class> mat(dim_ * dim_);
            for (std::size_t c = 0; c < dim_; ++c) {
                for (std::size_t k = 0; k < dim_; ++k) mat[k * dim_ + c] = v_[s[c]][k];
            }
            slot = static_cast<signed char>(exact::determinant_sign(std::move(mat), dim_));
        }
        return slot;
    }

    bool full_simplices() {
        std::vector<std::size_t> face(dim_);
        return for_each_subset(v_.size(), dim_ + 1, [&](const std::vector<std::size_t>& t) {
            // Kernel of [v_t0 .. v_td] is ((-1)^i det(t without t_i))_i.
            int pos = 0;
            int neg = 0;
            for (std::size_t i = 0; i <= dim_; ++i) {
                std::size_t w = 0;
                for (std::size_t j = 0; j <= dim_; ++j) {
                    if (j != i) face[w++] = t[j];
                }
                const int s = (i % 2 == 0 ? 1 : -1) * det_sign(face);
                if (s > 0) ++pos;
                if (s < 0) ++neg;
                if (pos > 0 && neg > 0) return false;
            }
            return pos + neg > 0;
        });
    }

    // Origin in conv of an affinely independent subset of size < d + 1.
    bool low_simplex(const std::vector<std::size_t>& s) {
        const std::size_t cols = s.size();
        if (cols == dim_ && det_sign(s) != 0) return false;
        std::vector<mpz_class> mat(dim_ * cols);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t k = 0; k < dim_; ++k) mat[k * cols + c] = v_[s[c]][k];
        }
        if (exact::rank(mat, dim_, cols) != cols - 1) return false;

        // One-dimensional kernel: reduce to RREF and read off the kernel vector.
        std::vector<mpq_class> q(mat.begin(), mat.end());
        std::vector<std::size_t> pivot_of_row;
        std::vector<char> is_pivot(cols, 0);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < dim_; ++c) {
            std::size_t piv = r;
            while (piv < dim_ && sgn(q[piv * cols + c]) == 0) ++piv;
            if (piv == dim_) continue;
            for (std::size_t j = 0; j < cols; ++j) std::swap(q[r * cols + j], q[piv * cols + j]);
            const mpq_class lead = q[r * cols + c];
            for (std::size_t j = 0; j < cols; ++j) q[r * cols + j] /= lead;
            for (std::size_t i = 0; i < dim_; ++i) {
                if (i == r || sgn(q[i * cols + c]) == 0) continue;
                const mpq_class f = q[i * cols + c];
                for (std::size_t j = 0; j < cols; ++j) q[i * cols + j] -= f * q[r * cols + j];
            }
            pivot_of_row.push_back(c);
            is_pivot[c] = 1;
            ++r;
        }
        std::size_t free_col = cols;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!is_pivot[c]) free_col = c;
        }
        // kernel: x_free = 1, x_pivot(i) = -q[i][free]
        int pos = 1;
        int neg = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const int sg = -sgn(q[i * cols + free_col]);
            if (sg > 0) ++pos;
            if (sg < 0) ++neg;
        }
        return neg == 0;
    }

    const std::vector<IntVec>& v_;
    std::size_t dim_;
    Binomials binom_;
    std::vector<signed char> det_cache_;
};

} // namespace

std::vector<std::size_t> extreme_points_oracle(const PointSet& points) {
    if (points.empty()) throw InvalidArgument("extreme_points_oracle of an empty set");
    if (points.size() > kOracleMaxPoints || points.dim() > kOracleMaxDim) {
        throw InvalidArgument("extreme_points_oracle is limited to " +
                              std::to_string(kOracleMaxPoints) + " points in dimension <= " +
                              std::to_string(kOracleMaxDim));
    }
    const std::size_t n = points.size();
    const std::size_t dim = points.dim();
    const auto ints = exact::to_common_integers(points.coords());

    std::vector<std::size_t> result;
    for (std::size_t p = 0; p < n; ++p) {
        std::vector<IntVec> vectors;
        vectors.reserve(n - 1);
        for (std::size_t o = 0; o < n; ++o) {
            if (o == p) continue;
            IntVec v(dim);
            for (std::size_t k = 0; k < dim; ++k) v[k] = ints[o * dim + k] - ints[p * dim + k];
            vectors.push_back(std::move(v));
        }
        if (!OriginInHull(vectors, dim)()) result.push_back(p);
    }
    return result;
}

} // namespace peelkit
