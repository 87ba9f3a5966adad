#include "matchfield/fp_matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace matchfield::fpm {

uint32_t add_mod(uint32_t a, uint32_t b, uint64_t p) {
  uint64_t s = uint64_t(a) + b;
  if (s >= p) s -= p;
  return static_cast<uint32_t>(s);
}

uint32_t sub_mod(uint32_t a, uint32_t b, uint64_t p) {
  return a >= b ? a - b : static_cast<uint32_t>(p - b + a);
}

uint32_t mul_mod(uint32_t a, uint32_t b, uint64_t p) {
  return static_cast<uint32_t>(uint64_t(a) * b % p);
}

uint32_t neg_mod(uint32_t a, uint64_t p) {
  return a == 0 ? 0 : static_cast<uint32_t>(p - a);
}

uint32_t inv_mod(uint32_t a, uint64_t p) {
  if (a == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
  // extended Euclid on (a, p)
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
  while (newr != 0) {
    int64_t q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  assert(r == 1);
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint32_t>(t);
}

bool is_zero(const Row& v) {
  for (uint32_t c : v)
    if (c != 0) return false;
  return true;
}

std::vector<unsigned> rref_in_place(Mat& m, uint64_t p) {
  std::vector<unsigned> pivots;
  if (m.empty()) return pivots;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < m.size(); ++col) {
    size_t sel = r;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    if (m[r][col] != 1) {
      uint32_t inv = inv_mod(m[r][col], p);
      for (size_t j = col; j < cols; ++j) m[r][j] = mul_mod(m[r][j], inv, p);
    }
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      uint32_t c = m[i][col];
      for (size_t j = col; j < cols; ++j)
        m[i][j] = sub_mod(m[i][j], mul_mod(c, m[r][j], p), p);
    }
    pivots.push_back(static_cast<unsigned>(col));
    ++r;
  }
  m.resize(r);
  return pivots;
}

Mat rref(Mat m, uint64_t p) {
  rref_in_place(m, p);
  return m;
}

unsigned rank(Mat m, uint64_t p) {
  return static_cast<unsigned>(rref_in_place(m, p).size());
}

Row reduce(const Mat& rr, const std::vector<unsigned>& pivots, Row v,
           uint64_t p, Row* coords) {
  assert(rr.size() == pivots.size());
  if (coords) coords->assign(rr.size(), 0);
  for (size_t i = 0; i < rr.size(); ++i) {
    uint32_t c = v[pivots[i]];
    if (c == 0) continue;
    if (coords) (*coords)[i] = c;
    for (size_t j = pivots[i]; j < v.size(); ++j)
      v[j] = sub_mod(v[j], mul_mod(c, rr[i][j], p), p);
  }
  return v;
}

Mat nullspace(Mat m, unsigned cols, uint64_t p) {
  std::vector<unsigned> piv = rref_in_place(m, p);
  std::vector<bool> is_pivot(cols, false);
  for (unsigned c : piv) is_pivot[c] = true;
  Mat basis;
  for (unsigned f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row v(cols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = neg_mod(m[i][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Mat> inverse(Mat m, uint64_t p) {
  const size_t n = m.size();
  for (auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("inverse: not square");
    row.resize(2 * n, 0);
  }
  for (size_t i = 0; i < n; ++i) m[i][n + i] = 1;
  std::vector<unsigned> piv = rref_in_place(m, p);
  if (m.size() != n) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (piv[i] != i) return std::nullopt;
  Mat out(n, Row(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

Mat transpose(const Mat& m, unsigned cols) {
  Mat out(cols, Row(m.size(), 0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < cols; ++j) out[j][i] = m[i][j];
  return out;
}

Mat mat_mul(const Mat& a, const Mat& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  const size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat out(n, Row(m, 0));
  for (size_t i = 0; i < n; ++i) {
    assert(a[i].size() == k);
    for (size_t t = 0; t < k; ++t) {
      uint32_t c = a[i][t];
      if (c == 0) continue;
      for (size_t j = 0; j < m; ++j)
        out[i][j] = add_mod(out[i][j], mul_mod(c, b[t][j], p), p);
    }
  }
  return out;
}

Row mat_vec(const Mat& a, const Row& x, uint64_t p) {
  Row out(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x, p);
  return out;
}

uint32_t dot(const Row& a, const Row& b, uint64_t p) {
  assert(a.size() == b.size());
  uint64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    acc += uint64_t(a[i]) * b[i] % p;
    if (acc >= p) acc -= p;
  }
  return static_cast<uint32_t>(acc);
}

bool CoordSubspace::contains(const Row& v) const {
  return fpm::is_zero(reduce(rows, pivots, v, p));
}

CoordSubspace coord_span(uint64_t p, unsigned ambient, Mat generators) {
  for (const auto& g : generators)
    if (g.size() != ambient)
      throw std::invalid_argument("coord_span: generator width mismatch");
  CoordSubspace s;
  s.p = p;
  s.ambient = ambient;
  s.rows = std::move(generators);
  s.pivots = rref_in_place(s.rows, p);
  return s;
}

static void check_same_ambient(const CoordSubspace& a, const CoordSubspace& b) {
  if (a.p != b.p || a.ambient != b.ambient)
    throw std::invalid_argument("coordinate subspaces live in different spaces");
}

CoordSubspace coord_sum(const CoordSubspace& a, const CoordSubspace& b) {
  check_same_ambient(a, b);
  Mat rows = a.rows;
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  return coord_span(a.p, a.ambient, std::move(rows));
}

// Zassenhaus: row reduce [A|A; B|0]; rows whose left block vanished carry a
// basis of the intersection in their right block.
CoordSubspace coord_intersect(const CoordSubspace& a, const CoordSubspace& b) {
  check_same_ambient(a, b);
  const unsigned w = a.ambient;
  Mat z;
  z.reserve(a.rows.size() + b.rows.size());
  for (const auto& r : a.rows) {
    Row d(2 * w, 0);
    for (unsigned j = 0; j < w; ++j) d[j] = d[w + j] = r[j];
    z.push_back(std::move(d));
  }
  for (const auto& r : b.rows) {
    Row d(2 * w, 0);
    for (unsigned j = 0; j < w; ++j) d[j] = r[j];
    z.push_back(std::move(d));
  }
  std::vector<unsigned> piv = rref_in_place(z, a.p);
  Mat inter;
  for (size_t i = 0; i < z.size(); ++i) {
    if (piv[i] < w) continue;
    inter.emplace_back(z[i].begin() + w, z[i].end());
  }
  return coord_span(a.p, w, std::move(inter));
}

}  // namespace matchfield::fpm
