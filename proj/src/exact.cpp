#include "exact.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>

namespace peelkit::exact {
namespace {

// Products below this magnitude may lose low-order bits to gradual underflow,
// which would break the error-free product.
constexpr double kProductFloor = 0x1p-968;

// Shewchuk's ccwerrboundA: (3 + 16 eps) eps with eps = 2^-53.
constexpr double kOrient2dBound = (3.0 + 16.0 * 0x1p-53) * 0x1p-53;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

// Adds b into a nonoverlapping expansion e[0..len) kept in increasing magnitude
// order, dropping zero components. e must have room for len + 1 entries.
std::size_t grow_expansion(double* e, std::size_t len, double b) {
    double q = b;
    std::size_t out = 0;
    for (std::size_t i = 0; i < len; ++i) {
        double sum = 0.0;
        double err = 0.0;
        two_sum(q, e[i], sum, err);
        q = sum;
        if (err != 0.0) e[out++] = err;
    }
    if (q != 0.0) e[out++] = q;
    return out;
}

int sign_of_dot_rational(std::span<const double> a, std::span<const double> b) {
    mpq_class sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += mpq_class(a[i]) * mpq_class(b[i]);
    return sgn(sum);
}

} // namespace

int sign_of_dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    constexpr std::size_t kStackTerms = 16;
    double stack[2 * kStackTerms + 1];
    std::vector<double> heap;
    double* e = stack;
    if (a.size() > kStackTerms) {
        heap.resize(2 * a.size() + 1);
        e = heap.data();
    }
    std::size_t len = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double hi = 0.0;
        double lo = 0.0;
        two_product(a[i], b[i], hi, lo);
        if (a[i] != 0.0 && b[i] != 0.0 && std::abs(hi) < kProductFloor) return sign_of_dot_rational(a, b);
        len = grow_expansion(e, len, lo);
        len = grow_expansion(e, len, hi);
    }
    if (len == 0) return 0;
    return e[len - 1] > 0.0 ? 1 : -1;
}

int orient2d(double px, double py, double qx, double qy, double rx, double ry) {
    const double left = (qx - px) * (ry - py);
    const double right = (qy - py) * (rx - px);
    const double det = left - right;
    const double magnitude = std::abs(left) + std::abs(right);
    const double bound = kOrient2dBound * magnitude;
    // The relative bound does not cover products in the gradual-underflow range.
    if (magnitude >= kProductFloor) {
        if (det > bound) return 1;
        if (-det > bound) return -1;
    }
    // det = qx ry - qx py - px ry - qy rx + qy px + py rx
    const double a[6] = {qx, -qx, -px, -qy, qy, py};
    const double b[6] = {ry, py, ry, rx, px, rx};
    return sign_of_dot(a, b);
}

bool in_closed_ball(std::span<const double> p, std::span<const double> c, double radius) {
    assert(p.size() == c.size());
    double d2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = p[k] - c[k];
        d2 += d * d;
    }
    const double r2 = radius * radius;
    const double scale = std::max(d2, r2);
    const double bound = static_cast<double>(p.size() + 4) * 0x1p-52 * scale;
    if (scale >= kProductFloor && std::abs(d2 - r2) > bound) return d2 < r2;
    mpq_class exact_d2 = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const mpq_class d = mpq_class(p[k]) - mpq_class(c[k]);
        exact_d2 += d * d;
    }
    const mpq_class r(radius);
    return exact_d2 <= r * r;
}

std::vector<mpz_class> to_common_integers(std::span<const double> values) {
    // x = mantissa * 2^exp with a 53-bit integer mantissa.
    int min_exp = 0;
    bool any = false;
    std::vector<std::pair<std::int64_t, int>> parts(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = values[i];
        if (x == 0.0) {
            parts[i] = {0, 0};
            continue;
        }
        int e = 0;
        const double frac = std::frexp(x, &e);
        const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
        parts[i] = {mant, e - 53};
        if (!any || e - 53 < min_exp) min_exp = e - 53;
        any = true;
    }
    std::vector<mpz_class> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (parts[i].first == 0) continue;
        mpz_class m(static_cast<long>(parts[i].first));
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(parts[i].second - min_exp));
        out[i] = std::move(m);
    }
    return out;
}

namespace {

// In-place Bareiss elimination; returns the rank and the sign of the row
// permutation applied. Entries below the pivots become garbage.
std::size_t bareiss(std::vector<mpz_class>& m, std::size_t rows, std::size_t cols,
                    int& perm_sign) {
    perm_sign = 1;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(m[pivot * cols + c]) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m[r * cols + j], m[pivot * cols + j]);
            perm_sign = -perm_sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class v = m[i * cols + j] * m[r * cols + c] - m[i * cols + c] * m[r * cols + j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i * cols + j] = std::move(v);
            }
            m[i * cols + c] = 0;
        }
        prev = m[r * cols + c];
        ++r;
    }
    return r;
}

} // namespace

int determinant_sign(std::vector<mpz_class> matrix, std::size_t n) {
    assert(matrix.size() == n * n);
    int perm_sign = 1;
    if (bareiss(matrix, n, n, perm_sign) < n) return 0;
    // After Bareiss on a full-rank square matrix the last pivot is the determinant.
    return perm_sign * sgn(matrix[n * n - 1]);
}

std::size_t rank(std::vector<mpz_class> matrix, std::size_t rows, std::size_t cols) {
    int perm_sign = 1;
    return bareiss(matrix, rows, cols, perm_sign);
}

} // namespace peelkit::exact
