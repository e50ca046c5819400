#include "lsims/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "lsims/errors.hpp"

namespace lsims {

SparseSymMatrix SparseSymMatrix::identity(int n) {
  SparseSymMatrix a;
  a.n = n;
  a.row_ptr.assign(n + 1, 0);
  a.col_idx.resize(n);
  a.values.assign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    a.row_ptr[i + 1] = i + 1;
    a.col_idx[i] = i;
  }
  return a;
}

SparseSymMatrix SparseSymMatrix::diagonal(const Eigen::VectorXd& d) {
  SparseSymMatrix a = identity(static_cast<int>(d.size()));
  for (int i = 0; i < a.n; ++i) a.values[i] = d[i];
  return a;
}

SparseSymMatrix SparseSymMatrix::from_triplets(
    int n, const std::vector<Eigen::Triplet<double>>& triplets) {
  if (n < 0) throw DimensionMismatch("negative dimension");
  std::vector<std::map<int, double>> rows(n);
  for (const auto& t : triplets) {
    if (t.row() < 0 || t.row() >= n || t.col() < 0 || t.col() >= n)
      throw DimensionMismatch("triplet index out of range");
    rows[t.row()][t.col()] += t.value();
  }
  SparseSymMatrix a;
  a.n = n;
  a.row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i)
    a.row_ptr[i + 1] = a.row_ptr[i] + static_cast<int>(rows[i].size());
  a.col_idx.reserve(a.row_ptr[n]);
  a.values.reserve(a.row_ptr[n]);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : rows[i]) {
      a.col_idx.push_back(j);
      a.values.push_back(v);
    }
  const double defect = a.symmetry_defect();
  if (defect > 1e-12 * std::max(1e-300, a.max_abs()))
    throw Error("from_triplets: matrix not symmetric, defect " +
                std::to_string(defect));
  return a;
}

double SparseSymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double SparseSymMatrix::coeff(int i, int j) const {
  const int* b = col_idx.data() + row_ptr[i];
  const int* e = col_idx.data() + row_ptr[i + 1];
  const int* it = std::lower_bound(b, e, j);
  if (it == e || *it != j) return 0.0;
  return values[it - col_idx.data()];
}

Eigen::VectorXd SparseSymMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      s += values[p] * x[col_idx[p]];
    y[i] = s;
  }
  return y;
}

Eigen::MatrixXd SparseSymMatrix::multiply(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, x.cols());
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      y.row(i) += values[p] * x.row(col_idx[p]);
  return y;
}

SparseSymMatrix SparseSymMatrix::plus(const SparseSymMatrix& other,
                                      double alpha) const {
  if (n != other.n) throw DimensionMismatch("plus: size mismatch");
  SparseSymMatrix r;
  r.n = n;
  r.row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    int pa = row_ptr[i], pb = other.row_ptr[i];
    const int ea = row_ptr[i + 1], eb = other.row_ptr[i + 1];
    while (pa < ea || pb < eb) {
      int ja = pa < ea ? col_idx[pa] : n;
      int jb = pb < eb ? other.col_idx[pb] : n;
      if (ja == jb) {
        r.col_idx.push_back(ja);
        r.values.push_back(values[pa] + alpha * other.values[pb]);
        ++pa, ++pb;
      } else if (ja < jb) {
        r.col_idx.push_back(ja);
        r.values.push_back(values[pa]);
        ++pa;
      } else {
        r.col_idx.push_back(jb);
        r.values.push_back(alpha * other.values[pb]);
        ++pb;
      }
    }
    r.row_ptr[i + 1] = static_cast<int>(r.col_idx.size());
  }
  return r;
}

SparseSymMatrix SparseSymMatrix::principal_submatrix(
    std::span<const int> keep) const {
  std::vector<int> old_to_new(n, -1);
  for (size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= n)
      throw DimensionMismatch("principal_submatrix: index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw DimensionMismatch("principal_submatrix: indices not increasing");
    old_to_new[keep[k]] = static_cast<int>(k);
  }
  SparseSymMatrix r;
  r.n = static_cast<int>(keep.size());
  r.row_ptr.assign(r.n + 1, 0);
  for (int k = 0; k < r.n; ++k) {
    const int i = keep[k];
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const int jn = old_to_new[col_idx[p]];
      if (jn >= 0) {
        r.col_idx.push_back(jn);
        r.values.push_back(values[p]);
      }
    }
    r.row_ptr[k + 1] = static_cast<int>(r.col_idx.size());
  }
  return r;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      d(i, col_idx[p]) = values[p];
  return d;
}

Eigen::SparseMatrix<double> SparseSymMatrix::to_eigen() const {
  Eigen::SparseMatrix<double> s(n, n);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(values.size());
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      t.emplace_back(i, col_idx[p], values[p]);
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

double SparseSymMatrix::symmetry_defect() const {
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      d = std::max(d, std::abs(values[p] - coeff(col_idx[p], i)));
  return d;
}

void mm_write(const SparseSymMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  int nnz_lower = 0;
  for (int i = 0; i < a.n; ++i)
    for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      if (a.col_idx[p] <= i) ++nnz_lower;
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << a.n << " " << a.n << " " << nnz_lower << "\n";
  out.precision(17);
  for (int i = 0; i < a.n; ++i)
    for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      if (a.col_idx[p] <= i)
        out << (i + 1) << " " << (a.col_idx[p] + 1) << " " << a.values[p]
            << "\n";
  if (!out) throw IoError("write failed: " + path);
}

SparseSymMatrix mm_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("%%MatrixMarket", 0) != 0 ||
      line.find("symmetric") == std::string::npos)
    throw IoError("not a symmetric MatrixMarket file: " + path);
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  int rows = 0, cols = 0, nnz = 0;
  if (std::sscanf(line.c_str(), "%d %d %d", &rows, &cols, &nnz) != 3 ||
      rows != cols)
    throw IoError("bad MatrixMarket header: " + path);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * nnz);
  for (int e = 0; e < nnz; ++e) {
    int i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw IoError("truncated MatrixMarket file");
    t.emplace_back(i - 1, j - 1, v);
    if (i != j) t.emplace_back(j - 1, i - 1, v);
  }
  return SparseSymMatrix::from_triplets(rows, t);
}

}  // namespace lsims
