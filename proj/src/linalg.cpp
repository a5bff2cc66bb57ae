#include "crinv/linalg.hpp"

#include <stdexcept>

namespace crinv {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Gaussian(1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vec Matrix::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<std::size_t> Matrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && (*this)(p, c).is_zero()) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
        Gaussian inv = (*this)(r, c).inverse();
        for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || (*this)(i, c).is_zero()) continue;
            Gaussian f = (*this)(i, c);
            for (std::size_t j = c; j < cols_; ++j) {
                if ((*this)(r, j).is_zero()) continue;
                (*this)(i, j) -= f * (*this)(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t Matrix::rank() const {
    Matrix m(*this);
    return m.rref().size();
}

std::vector<Vec> Matrix::kernel() const {
    Matrix m(*this);
    auto piv = m.rref();
    std::vector<bool> is_piv(cols_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_piv[f]) continue;
        Vec v(cols_);
        v[f] = Gaussian(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = Gaussian(1);
    }
    auto piv = aug.rref();
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
    Matrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    Vec x(cols_);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, cols_);
    return x;
}

Gaussian Matrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: not square");
    Matrix m(*this);
    const std::size_t n = rows_;
    Gaussian d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Gaussian();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        Gaussian inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Gaussian f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

Vec Matrix::operator*(const Vec& x) const {
    Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vectors, std::size_t dim) {
    if (vectors.empty()) return {};
    Matrix m = Matrix::from_rows(vectors, dim);
    auto piv = m.rref();
    std::vector<Vec> out;
    for (std::size_t r = 0; r < piv.size(); ++r) out.push_back(m.row(r));
    return out;
}

std::size_t rank_of(const std::vector<Vec>& vectors, std::size_t dim) { return span_basis(vectors, dim).size(); }

bool in_span(const std::vector<Vec>& basis, const Vec& v, std::size_t dim) {
    auto b = basis;
    std::size_t r = rank_of(b, dim);
    b.push_back(v);
    return rank_of(b, dim) == r;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim) {
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    std::size_t r = rank_of(ab, dim);
    return r == rank_of(a, dim) && r == rank_of(b, dim);
}

Vec normalized(Vec v) {
    for (auto& x : v) {
        if (x.is_zero()) continue;
        Gaussian inv = x.inverse();
        for (auto& y : v) y *= inv;
        break;
    }
    return v;
}

void axpy(SparseVec& y, const Gaussian& a, const SparseVec& x) {
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            y.emplace(k, a * v);
        } else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
    // Pivots of stored rows are leading entries; eliminating in increasing
    // pivot order never reintroduces an earlier pivot.
    auto it = v.begin();
    while (it != v.end()) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        std::size_t key = it->first;
        Gaussian f = -it->second;
        axpy(v, f, row->second);
        it = v.upper_bound(key);
    }
    return v;
}

bool EchelonBasis::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    std::size_t piv = v.begin()->first;
    Gaussian inv = v.begin()->second.inverse();
    for (auto& [k, x] : v) x *= inv;
    rows_.emplace(piv, std::move(v));
    return true;
}

std::vector<Vec> ProjectedKernel::projection() const {
    std::vector<Vec> rows;
    for (const auto& [piv, row] : basis_.rows()) {
        if (piv < split_) continue;
        Vec r(np_);
        for (const auto& [k, x] : row) r[k - split_] = x;
        rows.push_back(std::move(r));
    }
    if (rows.empty()) {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < np_; ++i) {
            Vec e(np_);
            e[i] = Gaussian(1);
            out.push_back(std::move(e));
        }
        return out;
    }
    return Matrix::from_rows(rows, np_).kernel();
}

SparseVec ProjectedKernel::lift(const Vec& p) const {
    SparseVec x;
    for (std::size_t i = 0; i < np_; ++i)
        if (!p[i].is_zero()) x[split_ + i] = p[i];
    const auto& rows = basis_.rows();
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (it->first >= split_) continue;
        Gaussian v;
        for (const auto& [k, a] : it->second) {
            if (k == it->first) continue;
            auto f = x.find(k);
            if (f != x.end()) v -= a * f->second;
        }
        if (!v.is_zero()) x[it->first] = v;
    }
    return x;
}

}  // namespace crinv
