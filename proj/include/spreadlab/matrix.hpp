#pragma once

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spreadlab {

/// Raised on malformed input, dimension mismatches and invalid entries.
class MatrixError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a floating-point computation leaves the finite range.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Square n-by-n matrix with row-major storage.
///
/// The entry type is double for numeric work and an exact integer type
/// for certificates; all arithmetic below is generic over both.
template <typename T>
class Matrix {
  public:
    Matrix() = default;

    explicit Matrix(std::size_t n) : n_(n), entries_(n * n) {}

    Matrix(std::size_t n, std::vector<T> entries) : n_(n), entries_(std::move(entries)) {
        if (entries_.size() != n_ * n_)
            throw MatrixError("entry count does not match matrix dimension");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
        entries_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_)
                throw MatrixError("rows of a square matrix must have length n");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t dim() const { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    const std::vector<T>& entries() const { return entries_; }

    T trace() const {
        T t{};
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero() const {
        for (const T& e : entries_)
            if (e != T{}) return false;
        return true;
    }

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<T> entries_;
};

namespace detail {

template <typename T>
void require_same_dim(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.dim() != y.dim()) throw MatrixError("matrix dimensions do not match");
}

} // namespace detail

template <typename T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
    detail::require_same_dim(x, y);
    const std::size_t n = x.dim();
    Matrix<T> r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const T& xik = x(i, k);
            if (xik == T{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
    detail::require_same_dim(x, y);
    const std::size_t n = x.dim();
    Matrix<T> r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = x(i, j) + y(i, j);
    return r;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y) {
    detail::require_same_dim(x, y);
    const std::size_t n = x.dim();
    Matrix<T> r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = x(i, j) - y(i, j);
    return r;
}

template <typename T>
Matrix<T> operator*(const T& s, const Matrix<T>& x) {
    Matrix<T> r(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) r(i, j) = s * x(i, j);
    return r;
}

using DenseMatrix = Matrix<double>;

template <std::floating_point T>
bool all_finite(const Matrix<T>& m) {
    for (const T& e : m.entries())
        if (!std::isfinite(e)) return false;
    return true;
}

/// tr(A^m) by repeated multiplication; m = 1 reads the diagonal directly.
template <typename T>
T trace_power(const Matrix<T>& a, int m) {
    if (m < 1) throw std::invalid_argument("trace_power requires m >= 1");
    if (m == 1) return a.trace();
    Matrix<T> p = a;
    for (int i = 1; i < m; ++i) p = p * a;
    T t = p.trace();
    if constexpr (std::floating_point<T>) {
        if (!std::isfinite(t)) throw NumericError("numeric overflow");
    }
    return t;
}

/// s_1, ..., s_M with s_m = tr(A^m), sharing the intermediate powers.
template <typename T>
std::vector<T> trace_sequence(const Matrix<T>& a, int m_max) {
    if (m_max < 1) throw std::invalid_argument("trace_sequence requires m_max >= 1");
    std::vector<T> s;
    s.reserve(static_cast<std::size_t>(m_max));
    s.push_back(a.trace());
    Matrix<T> p = a;
    for (int m = 2; m <= m_max; ++m) {
        p = p * a;
        s.push_back(p.trace());
    }
    if constexpr (std::floating_point<T>) {
        for (const T& v : s)
            if (!std::isfinite(v)) throw NumericError("numeric overflow");
    }
    return s;
}

/// Nonnegative real matrix. Entries are validated once on construction;
/// in_c_n records that entry (1,1) is exactly zero and the spectral radius
/// has been normalized to 1 (set by normalize_to_unit_radius).
class NonnegativeMatrix {
  public:
    explicit NonnegativeMatrix(DenseMatrix m, bool in_c_n = false)
        : m_(std::move(m)), in_c_n_(in_c_n) {
        for (double e : m_.entries())
            if (!(e >= 0.0) || !std::isfinite(e))
                throw MatrixError("nonnegative matrix has a negative or non-finite entry");
        if (in_c_n_ && (m_.dim() == 0 || m_(0, 0) != 0.0))
            throw MatrixError("in_c_n requires entry (1,1) to be exactly zero");
    }

    const DenseMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    bool in_c_n() const { return in_c_n_; }

  private:
    DenseMatrix m_;
    bool in_c_n_;
};

/// Number of exactly-zero diagonal entries. The zero pattern is compared
/// exactly, never with a tolerance: inputs are constructed, not measured.
inline int zero_diagonal_count(const NonnegativeMatrix& a) {
    int k = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a(i, i) == 0.0) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// Matrix text format: first line is n, then n lines of n whitespace-separated
// decimal numbers. Exact matrices use the same format with integer literals.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_entry_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

template <typename T>
std::string format_entry(const T& v) {
    if constexpr (std::floating_point<T>) {
        return detail::format_entry_double(static_cast<double>(v));
    } else {
        std::ostringstream os;
        os << v;
        return os.str();
    }
}

template <typename T>
T parse_entry(const std::string& tok) {
    if constexpr (std::floating_point<T>) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw MatrixError("malformed matrix entry '" + tok + "'");
        return static_cast<T>(v);
    } else {
        std::size_t digits_from = tok.size() > 0 && (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (tok.size() == digits_from)
            throw MatrixError("malformed integer entry '" + tok + "'");
        for (std::size_t i = digits_from; i < tok.size(); ++i)
            if (tok[i] < '0' || tok[i] > '9')
                throw MatrixError("malformed integer entry '" + tok + "'");
        return T(tok);
    }
}

template <typename T>
std::string to_text(const Matrix<T>& m) {
    std::string out = std::to_string(m.dim());
    out.push_back('\n');
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j > 0) out.push_back(' ');
            out += format_entry(m(i, j));
        }
        out.push_back('\n');
    }
    return out;
}

template <typename T>
Matrix<T> parse_matrix_text(std::istream& in) {
    std::size_t n = 0;
    if (!(in >> n)) throw MatrixError("matrix text must start with the dimension");
    if (n < 1 || n > 100000) throw MatrixError("matrix dimension out of range");
    Matrix<T> m(n);
    std::string tok;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!(in >> tok))
                throw MatrixError("matrix text ended before all entries were read");
            m(i, j) = parse_entry<T>(tok);
        }
    return m;
}

template <typename T>
Matrix<T> parse_matrix_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_matrix_text<T>(in);
}

} // namespace spreadlab
