#include "matchfield/groups.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace matchfield::groups {

GroupDescriptor GroupDescriptor::cyclic(unsigned n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  return GroupDescriptor{Kind::cyclic, n};
}

GroupDescriptor GroupDescriptor::free_abelian(unsigned d) {
  if (d < 1) throw std::invalid_argument("free abelian rank must be >= 1");
  return GroupDescriptor{Kind::free_abelian, d};
}

std::string GroupDescriptor::name() const {
  if (kind == Kind::cyclic) return "Z" + std::to_string(param);
  return "Z^" + std::to_string(param);
}

static size_t arity(const GroupDescriptor& g) {
  return g.kind == GroupDescriptor::Kind::cyclic ? 1 : g.param;
}

static void check_element(const GroupDescriptor& g, const GroupElement& e) {
  if (e.size() != arity(g))
    throw std::invalid_argument("element arity does not match the group");
  if (g.kind == GroupDescriptor::Kind::cyclic &&
      (e[0] < 0 || e[0] >= int64_t(g.param)))
    throw std::invalid_argument("cyclic element out of range");
}

GroupElement identity(const GroupDescriptor& g) {
  return GroupElement(arity(g), 0);
}

GroupElement add(const GroupDescriptor& g, const GroupElement& a,
                 const GroupElement& b) {
  check_element(g, a);
  check_element(g, b);
  GroupElement out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  if (g.kind == GroupDescriptor::Kind::cyclic) out[0] %= g.param;
  return out;
}

GroupSubset GroupSubset::of(const GroupDescriptor& g,
                            std::vector<GroupElement> elements) {
  for (const auto& e : elements) check_element(g, e);
  std::sort(elements.begin(), elements.end());
  auto last = std::unique(elements.begin(), elements.end());
  if (last != elements.end())
    throw std::invalid_argument("subset has duplicate elements");
  return GroupSubset{std::move(elements)};
}

bool GroupSubset::contains(const GroupElement& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

namespace {

// Kuhn's augmenting paths over the sorted subsets. adj[i] lists the eligible
// partners of A[i] in ascending order, so results are deterministic.
struct Matcher {
  const std::vector<std::vector<size_t>>& adj;
  std::vector<size_t> match_of_b;       // b index -> a index or SIZE_MAX
  std::vector<char> visited_b;

  explicit Matcher(const std::vector<std::vector<size_t>>& a, size_t m)
      : adj(a), match_of_b(m, SIZE_MAX), visited_b(m, 0) {}

  bool augment(size_t a) {
    for (size_t b : adj[a]) {
      if (visited_b[b]) continue;
      visited_b[b] = 1;
      if (match_of_b[b] == SIZE_MAX || augment(match_of_b[b])) {
        match_of_b[b] = a;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

GroupMatchingResult find_matching(const GroupSubset& A, const GroupSubset& B,
                                  const GroupDescriptor& g) {
  if (A.size() != B.size())
    throw std::invalid_argument("subsets must have equal size");
  const size_t m = A.size();
  std::vector<std::vector<size_t>> adj(m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (!A.contains(add(g, A.elements[i], B.elements[j])))
        adj[i].push_back(j);

  Matcher matcher(adj, m);
  for (size_t i = 0; i < m; ++i) {
    std::fill(matcher.visited_b.begin(), matcher.visited_b.end(), 0);
    if (!matcher.augment(i)) {
      // A[i] plus the A-side of the alternating tree reached from it form a
      // deficient set: each eligible partner is already pinned inside it.
      GroupMatchingResult out;
      out.deficient.push_back(i);
      for (size_t b = 0; b < m; ++b)
        if (matcher.visited_b[b]) {
          assert(matcher.match_of_b[b] != SIZE_MAX);
          out.deficient.push_back(matcher.match_of_b[b]);
        }
      std::sort(out.deficient.begin(), out.deficient.end());
      return out;
    }
  }
  std::vector<size_t> bijection(m, SIZE_MAX);
  for (size_t b = 0; b < m; ++b)
    if (matcher.match_of_b[b] != SIZE_MAX) bijection[matcher.match_of_b[b]] = b;
  GroupMatchingResult out;
  out.bijection = std::move(bijection);
  return out;
}

namespace {

// All size-s subsets of pool, lexicographic, fed to fn until it says stop.
template <typename Fn>
bool for_each_subset(const std::vector<GroupElement>& pool, size_t s, Fn&& fn) {
  std::vector<size_t> idx(s);
  for (size_t i = 0; i < s; ++i) idx[i] = i;
  if (s > pool.size()) return true;
  while (true) {
    std::vector<GroupElement> subset;
    subset.reserve(s);
    for (size_t i : idx) subset.push_back(pool[i]);
    if (!fn(std::move(subset))) return false;
    size_t i = s;
    bool advanced = false;
    while (i-- > 0) {
      if (idx[i] < pool.size() - s + i) {
        ++idx[i];
        for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return true;
  }
}

uint64_t choose(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

ScanReport matching_property_scan(const GroupDescriptor& g, unsigned max_size,
                                  uint64_t cap) {
  if (g.kind != GroupDescriptor::Kind::cyclic)
    throw GuardExceeded("matching_property_scan: free abelian groups are not "
                        "enumerable");
  const unsigned n = g.param;
  std::vector<GroupElement> all, nonid;
  for (unsigned v = 0; v < n; ++v) {
    all.push_back(GroupElement{int64_t(v)});
    if (v != 0) nonid.push_back(GroupElement{int64_t(v)});
  }

  uint64_t predicted = 0;
  for (unsigned s = 1; s <= max_size && s <= n; ++s)
    predicted += choose(n, s) * choose(n - 1, s);
  check_guard(predicted, cap, "group pair scan");

  ScanReport report;
  for (unsigned s = 1; s <= max_size && s <= n; ++s) {
    if (s > nonid.size()) break;
    for_each_subset(all, s, [&](std::vector<GroupElement> a_elems) {
      GroupSubset A = GroupSubset::of(g, std::move(a_elems));
      return for_each_subset(nonid, s, [&](std::vector<GroupElement> b_elems) {
        GroupSubset B = GroupSubset::of(g, std::move(b_elems));
        ++report.pairs_scanned;
        auto res = find_matching(A, B, g);
        if (res.bijection) {
          ++report.matched;
        } else if (!report.counterexample) {
          report.counterexample = ScanCounterexample{A, B};
        }
        return true;
      });
    });
  }

  // Every B without the identity must match to itself.
  for (unsigned s = 1; s <= max_size && s <= nonid.size(); ++s) {
    for_each_subset(nonid, s, [&](std::vector<GroupElement> b_elems) {
      GroupSubset B = GroupSubset::of(g, std::move(b_elems));
      ++report.b2b_checked;
      if (!find_matching(B, B, g).bijection) ++report.b2b_failures;
      return true;
    });
  }
  return report;
}

}  // namespace matchfield::groups
