#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace {

void guard(Eigen::Index n) {
  if (n > kDenseGuard) throw std::length_error("oracle input above the dense size guard");
}

}  // namespace

Mat laplacian(int n, const EdgeList& edges) {
  guard(n);
  Mat l = Mat::Zero(n, n);
  for (const auto& [i, j, w] : edges) {
    l(i, j) -= w;
    l(j, i) -= w;
    l(i, i) += w;
    l(j, j) += w;
  }
  return l;
}

Mat pinv(const Mat& m) {
  guard(std::max(m.rows(), m.cols()));
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double tol = std::max(m.rows(), m.cols()) * (s.size() ? s(0) : 0.0) * 1e-15;
  Mat sinv = Mat::Zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) sinv(i, i) = 1.0 / s(i);
  }
  return svd.matrixV() * sinv * svd.matrixU().transpose();
}

Mat coarsening_matrix(int n, const Sets& sets) {
  guard(n);
  Mat p = Mat::Zero(static_cast<Eigen::Index>(sets.size()), n);
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (const int v : sets[r]) p(static_cast<Eigen::Index>(r), v) = 1.0 / static_cast<double>(sets[r].size());
  }
  return p;
}

Mat dense_reduce(const Mat& l, const Mat& p) {
  const Mat pp = pinv(p);
  return pp.transpose() * l * pp;
}

double conductance_k2(int n, const EdgeList& edges) {
  if (n > 16) throw std::length_error("conductance oracle needs N <= 16");
  Vec deg = Vec::Zero(n);
  for (const auto& [i, j, w] : edges) {
    deg(i) += w;
    deg(j) += w;
  }
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t s = 1; s < full; ++s) {
    double cut = 0.0, vol = 0.0;
    for (int v = 0; v < n; ++v) {
      if (s >> v & 1u) vol += deg(v);
    }
    for (const auto& [i, j, w] : edges) {
      if (((s >> i) & 1u) != ((s >> j) & 1u)) cut += w;
    }
    const double denom = std::min(vol, deg.sum() - vol);
    if (denom <= 0.0) continue;
    best = std::min(best, cut / denom);
  }
  return best;
}

double cut_weight(const EdgeList& edges, const std::vector<int>& a, const std::vector<int>& b) {
  for (const int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) throw std::invalid_argument("cut sets overlap");
  }
  auto in = [](const std::vector<int>& s, int v) { return std::find(s.begin(), s.end(), v) != s.end(); };
  double total = 0.0;
  for (const auto& [i, j, w] : edges) {
    if ((in(a, i) && in(b, j)) || (in(a, j) && in(b, i))) total += w;
  }
  return total;
}

double kmeans_pairwise(const Mat& x, const Sets& sets) {
  double total = 0.0;
  for (const auto& s : sets) {
    double inner = 0.0;
    for (const int i : s) {
      for (const int j : s) inner += (x.row(i) - x.row(j)).squaredNorm();
    }
    total += inner / (2.0 * static_cast<double>(s.size()));
  }
  return total;
}

double optimal_nmeans(const Mat& x, int n) {
  const int rows = static_cast<int>(x.rows());
  if (rows > 8) throw std::length_error("n-means oracle needs N <= 8");
  if (n < 1 || n > rows) throw std::invalid_argument("cluster count out of range");
  // Restricted growth strings enumerate every set partition once.
  std::vector<int> label(static_cast<std::size_t>(rows), 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (rows - i < n - used) return;
    if (i == rows) {
      if (used != n) return;
      Sets sets(static_cast<std::size_t>(n));
      for (int v = 0; v < rows; ++v) sets[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);
      best = std::min(best, kmeans_pairwise(x, sets));
      return;
    }
    for (int c = 0; c <= used && c < n; ++c) {
      label[static_cast<std::size_t>(i)] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return best;
}

double local_cost(int n, const EdgeList& edges, const Mat& a, const std::vector<int>& c) {
  guard(n);
  auto in = [&](int v) { return std::find(c.begin(), c.end(), v) != c.end(); };
  EdgeList local;
  for (const auto& [i, j, w] : edges) {
    if (in(i) && in(j)) {
      local.emplace_back(i, j, w);
    } else if (in(i) || in(j)) {
      local.emplace_back(i, j, 2.0 * w);
    }
  }
  const Mat lc = laplacian(n, local);
  Mat pi = Mat::Zero(n, n);
  for (const int i : c) {
    pi(i, i) = 1.0;
    for (const int j : c) pi(i, j) -= 1.0 / static_cast<double>(c.size());
  }
  const Mat g = a.transpose() * pi.transpose() * lc * pi * a;
  const double top = g.rows() ? eigenvalues(g).maxCoeff() : 0.0;
  return std::max(0.0, top) / static_cast<double>(c.size() - 1);
}

Vec eigenvalues(const Mat& m) {
  guard(m.rows());
  return Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly).eigenvalues();
}

std::pair<Vec, Mat> eigensystem(const Mat& m) {
  guard(m.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
  Vec v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) < 1e-9) v(i) = 0.0;
  }
  return {v, es.eigenvectors()};
}

double variation_norm(const Mat& l, const Mat& p, const Mat& pplus, const Mat& a) {
  const Mat comp = Mat::Identity(l.rows(), l.cols()) - pplus * p;
  const Mat y = comp * a;
  const Mat g = y.transpose() * l * y;
  return std::sqrt(std::max(0.0, g.rows() ? eigenvalues(g).maxCoeff() : 0.0));
}

double restricted_eps(const Mat& l, const Mat& p, const Mat& pplus, int k) {
  const auto [vals, vecs] = eigensystem(l);
  Mat a = vecs.leftCols(k);
  for (int i = 0; i < k; ++i) a.col(i) *= vals(i) > 0.0 ? 1.0 / std::sqrt(vals(i)) : 0.0;
  return variation_norm(l, p, pplus, a);
}

Mat schur(const Mat& l, const std::vector<int>& keep) {
  guard(l.rows());
  std::vector<int> drop;
  for (int v = 0; v < l.rows(); ++v) {
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.push_back(v);
  }
  const auto nk = static_cast<Eigen::Index>(keep.size());
  const auto nd = static_cast<Eigen::Index>(drop.size());
  Mat kk(nk, nk), kd(nk, nd), dd(nd, nd);
  for (Eigen::Index a = 0; a < nk; ++a) {
    for (Eigen::Index b = 0; b < nk; ++b) kk(a, b) = l(keep[a], keep[b]);
    for (Eigen::Index b = 0; b < nd; ++b) kd(a, b) = l(keep[a], drop[b]);
  }
  for (Eigen::Index a = 0; a < nd; ++a) {
    for (Eigen::Index b = 0; b < nd; ++b) dd(a, b) = l(drop[a], drop[b]);
  }
  if (nd == 0) return kk;
  return kk - kd * dd.inverse() * kd.transpose();
}

}  // namespace oracle
