#include "avk/linalg.hpp"

#include <algorithm>
#include <limits>

#include "avk/error.hpp"

namespace avk {

// ---------------------------------------------------------------- SparseVector

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
      if (entries_.back().second.is_zero()) entries_.pop_back();
    } else if (!e.second.is_zero()) {
      entries_.push_back(std::move(e));
    }
  }
}

Scalar SparseVector::get(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it == entries_.end() || it->first != index) return Scalar(0);
  return it->second;
}

void SparseVector::set(std::size_t index, Scalar value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  const bool present = it != entries_.end() && it->first == index;
  if (value.is_zero()) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->second = std::move(value);
  } else {
    entries_.insert(it, Entry{index, std::move(value)});
  }
}

void SparseVector::add(std::size_t index, const Scalar& value) {
  if (value.is_zero()) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  } else {
    entries_.insert(it, Entry{index, value});
  }
}

void SparseVector::axpy(const Scalar& a, const SparseVector& x) {
  if (a.is_zero() || x.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + x.entries_.size());
  auto i = entries_.begin();
  auto j = x.entries_.begin();
  while (i != entries_.end() || j != x.entries_.end()) {
    if (j == x.entries_.end() || (i != entries_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == entries_.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Scalar v = i->second + a * j->second;
      if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  entries_ = std::move(out);
}

void SparseVector::scale(const Scalar& s) {
  if (s.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= s;
}

Scalar SparseVector::dot(const SparseVector& o) const {
  Scalar acc;
  auto i = entries_.begin();
  auto j = o.entries_.begin();
  while (i != entries_.end() && j != o.entries_.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      acc += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return acc;
}

// ---------------------------------------------------------------- SparseMatrix

void SparseMatrix::set(std::size_t r, std::size_t c, Scalar v) {
  if (r >= rows_.size() || c >= cols_) throw Error(ErrorCode::kInvalidArgument, "matrix index out of range");
  rows_[r].set(c, std::move(v));
}

void SparseMatrix::set_row(std::size_t r, SparseVector v) {
  if (!v.empty() && v.entries().back().first >= cols_) {
    throw Error(ErrorCode::kInvalidArgument, "row entry out of range");
  }
  rows_.at(r) = std::move(v);
}

std::size_t SparseMatrix::append_row(SparseVector v) {
  rows_.emplace_back();
  set_row(rows_.size() - 1, std::move(v));
  return rows_.size() - 1;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  std::vector<SparseVector::Entry> out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar v = rows_[r].dot(x);
    if (!v.is_zero()) out.emplace_back(r, std::move(v));
  }
  return SparseVector(std::move(out));
}

// ---------------------------------------------------------------- rank_and_kernel

namespace {

using IntEntry = std::pair<std::size_t, mpz_class>;
using IntRow = std::vector<IntEntry>;

IntRow to_primitive_integer_row(const SparseVector& v) {
  mpz_class lcm = 1;
  for (const auto& [c, s] : v.entries()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.raw().get_den_mpz_t());
  IntRow row;
  row.reserve(v.nnz());
  mpz_class g = 0;
  for (const auto& [c, s] : v.entries()) {
    mpz_class z = s.raw().get_num() * (lcm / s.raw().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    row.emplace_back(c, std::move(z));
  }
  if (g > 1) {
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }
  return row;
}

const mpz_class* find_entry(const IntRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const IntEntry& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// target := p * target - q * pivot, then divide by content. Eliminates the pivot column.
void eliminate(IntRow& target, const IntRow& pivot, const mpz_class& p, const mpz_class& q) {
  IntRow out;
  out.reserve(target.size() + pivot.size());
  auto i = target.begin();
  auto j = pivot.begin();
  mpz_class g = 0;
  auto push = [&](std::size_t c, mpz_class v) {
    if (v == 0) return;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.emplace_back(c, std::move(v));
  };
  while (i != target.end() || j != pivot.end()) {
    if (j == pivot.end() || (i != target.end() && i->first < j->first)) {
      push(i->first, p * i->second);
      ++i;
    } else if (i == target.end() || j->first < i->first) {
      push(j->first, -q * j->second);
      ++j;
    } else {
      push(i->first, p * i->second - q * j->second);
      ++i;
      ++j;
    }
  }
  if (g > 1) {
    for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }
  target = std::move(out);
}

}  // namespace

RankKernel rank_and_kernel(const SparseMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!m.row(r).empty()) rows.push_back(to_primitive_integer_row(m.row(r)));
  }

  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::vector<std::size_t> col_count(m.cols(), 0);
  for (const auto& row : rows)
    for (const auto& e : row) ++col_count[e.first];

  while (true) {
    // Markowitz: minimize (r_i - 1) * (c_j - 1) over the candidate rows with fewest entries.
    std::size_t best_row = rows.size(), best_col = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty()) continue;
      const std::size_t len = rows[r].size();
      if (best_len != std::numeric_limits<std::size_t>::max() && len > best_len + 2) continue;
      for (const auto& e : rows[r]) {
        const std::size_t cost = (len - 1) * (col_count[e.first] - 1);
        if (cost < best_cost || (cost == best_cost && (len < best_len))) {
          best_cost = cost;
          best_len = len;
          best_row = r;
          best_col = e.first;
        }
      }
    }
    if (best_row == rows.size()) break;
    used[best_row] = true;
    pivots.emplace_back(best_row, best_col);
    const IntRow& piv = rows[best_row];
    const mpz_class p = *find_entry(piv, best_col);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best_row) continue;
      const mpz_class* q = find_entry(rows[r], best_col);
      if (q == nullptr) continue;
      for (const auto& e : rows[r]) --col_count[e.first];
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q->get_mpz_t());
      const mpz_class pp = p / g;
      const mpz_class qq = *q / g;
      eliminate(rows[r], piv, pp, qq);
      for (const auto& e : rows[r]) ++col_count[e.first];
    }
  }

  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& [r, c] : pivots) {
    is_pivot[c] = true;
    out.pivot_columns.push_back(c);
  }
  std::sort(out.pivot_columns.begin(), out.pivot_columns.end());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<SparseVector::Entry> entries;
    entries.emplace_back(f, Scalar(1));
    for (const auto& [r, c] : pivots) {
      const mpz_class* a = find_entry(rows[r], f);
      if (a == nullptr) continue;
      const mpz_class* p = find_entry(rows[r], c);
      entries.emplace_back(c, -Scalar(mpq_class(*a, *p)));
    }
    out.kernel.emplace_back(std::move(entries));
  }
  return out;
}

// ---------------------------------------------------------------- Subspace

SparseVector Subspace::reduce(SparseVector v) const {
  std::size_t pos = 0;
  while (!v.empty()) {
    bool reduced = false;
    for (const auto& [idx, val] : v.entries()) {
      if (idx < pos) continue;
      auto it = rows_.find(idx);
      if (it == rows_.end()) continue;
      const Scalar factor = -val;
      pos = idx + 1;
      v.axpy(factor, it->second);
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  return v;
}

bool Subspace::add(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  r.scale(Scalar(1) / r.leading_value());
  rows_.emplace(r.leading_index(), std::move(r));
  return true;
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& kv : rows_) out.push_back(kv.first);
  return out;
}

std::vector<SparseVector> Subspace::reduced_basis() const {
  // Back-substitute from the last pivot upwards.
  std::map<std::size_t, SparseVector> full = rows_;
  for (auto it = full.rbegin(); it != full.rend(); ++it) {
    for (auto jt = std::next(it); jt != full.rend(); ++jt) {
      const Scalar c = jt->second.get(it->first);
      if (!c.is_zero()) jt->second.axpy(-c, it->second);
    }
  }
  std::vector<SparseVector> out;
  out.reserve(full.size());
  for (auto& kv : full) out.push_back(std::move(kv.second));
  return out;
}

std::vector<SparseVector> rref(const std::vector<SparseVector>& rows) {
  Subspace s;
  for (const auto& r : rows) s.add(r);
  return s.reduced_basis();
}

// ---------------------------------------------------------------- function field

SparseMatrix PolyMatrix::substitute(const Scalar& value) const {
  SparseMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::vector<SparseVector::Entry> entries;
    for (std::size_t c = 0; c < cols_; ++c) {
      const NuPoly& p = at(r, c);
      if (p.is_zero()) continue;
      Scalar v = p.eval(value);
      if (!v.is_zero()) entries.emplace_back(c, std::move(v));
    }
    out.set_row(r, SparseVector(std::move(entries)));
  }
  return out;
}

FunctionFieldRank rank_over_function_field(const PolyMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorCode::kEmptyMatrix, "rank_over_function_field on empty matrix");
  // Bareiss fraction-free elimination over Q[nu] with full pivoting by least degree.
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<NuPoly>> a(R, std::vector<NuPoly>(C));
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) a[r][c] = m.at(r, c);

  NuPoly prev(Scalar(1));
  std::size_t k = 0;
  for (; k < std::min(R, C); ++k) {
    std::size_t pr = R, pc = C;
    int best_deg = std::numeric_limits<int>::max();
    for (std::size_t r = k; r < R; ++r) {
      for (std::size_t c = k; c < C; ++c) {
        if (!a[r][c].is_zero() && a[r][c].degree() < best_deg) {
          best_deg = a[r][c].degree();
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == R) break;
    std::swap(a[k], a[pr]);
    if (pc != k)
      for (std::size_t r = 0; r < R; ++r) std::swap(a[r][k], a[r][pc]);
    for (std::size_t r = k + 1; r < R; ++r) {
      for (std::size_t c = k + 1; c < C; ++c) {
        NuPoly num = a[k][k] * a[r][c] - a[r][k] * a[k][c];
        a[r][c] = num.divexact(prev);
      }
      a[r][k] = NuPoly();
    }
    prev = a[k][k];
  }

  FunctionFieldRank out;
  out.generic_rank = k;
  if (k == 0) {
    out.witness_minor = NuPoly(Scalar(1));
    return out;
  }
  out.witness_minor = prev;
  RationalRoots rr = rational_roots(prev);
  out.irrational_candidate_factor = rr.irrational_part.degree() > 0;
  for (const auto& x : rr.roots) {
    if (rank_and_kernel(m.substitute(x)).rank < k) out.exceptional.push_back(x);
  }
  return out;
}

}  // namespace avk
