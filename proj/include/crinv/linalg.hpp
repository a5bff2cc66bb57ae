#pragma once

#include "crinv/gaussian.hpp"

#include <map>
#include <optional>
#include <vector>

namespace crinv {

using Vec = std::vector<Gaussian>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Gaussian& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Gaussian& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;
    // Basis of {x : A x = 0}.
    std::vector<Vec> kernel() const;
    std::optional<Matrix> inverse() const;
    // Some x with A x = b, if any.
    std::optional<Vec> solve(const Vec& b) const;
    Gaussian det() const;
    Matrix transpose() const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Vec operator*(const Vec& x) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Gaussian> a_;
};

bool is_zero(const Vec& v);
std::size_t rank_of(const std::vector<Vec>& vectors, std::size_t dim);
// Pivot-normalized basis of span(vectors).
std::vector<Vec> span_basis(const std::vector<Vec>& vectors, std::size_t dim);
bool in_span(const std::vector<Vec>& basis, const Vec& v, std::size_t dim);
bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim);
// Scales v so that its first nonzero entry is 1.
Vec normalized(Vec v);

using SparseVec = std::map<std::size_t, Gaussian>;

// Incrementally maintained echelon basis for sparse vectors.  Every stored
// row has leading entry 1 at its pivot and the pivots are distinct.
class EchelonBasis {
public:
    // Reduces v against the basis; returns the residual.
    SparseVec reduce(SparseVec v) const;
    // Adds v if it is independent; returns true when the span grew.
    bool insert(SparseVec v);
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t size() const { return rows_.size(); }
    const std::map<std::size_t, SparseVec>& rows() const { return rows_; }

private:
    std::map<std::size_t, SparseVec> rows_;  // pivot -> row
};

void axpy(SparseVec& y, const Gaussian& a, const SparseVec& x);

// Solutions of a homogeneous sparse system projected onto the trailing
// coordinates [split, split + np).
class ProjectedKernel {
public:
    ProjectedKernel(std::size_t split, std::size_t np) : split_(split), np_(np) {}
    void add_equation(SparseVec row) { basis_.insert(std::move(row)); }
    // Basis of the projection of the solution space.
    std::vector<Vec> projection() const;
    // A full solution whose trailing coordinates equal p (p must lie in the projection).
    SparseVec lift(const Vec& p) const;

private:
    std::size_t split_, np_;
    EchelonBasis basis_;
};

}  // namespace crinv
