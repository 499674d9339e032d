#pragma once

// Brute-force reference implementations. Deliberately naive; nothing here
// calls into the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline bool has_power(const std::string& w, unsigned l) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p * l <= n; ++p) {
    for (std::size_t s = 0; s + p * l <= n; ++s) {
      bool ok = true;
      for (std::size_t t = 0; t < p * l && ok; ++t) ok = w[s + t] == w[s + (t % p)];
      if (ok) return true;
    }
  }
  return false;
}

inline std::vector<std::string> all_positive_words(std::size_t k) {
  std::vector<std::string> out;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << k); ++m) {
    std::string w(k, 'a');
    for (std::size_t i = 0; i < k; ++i) {
      if ((m >> (k - 1 - i)) & 1) w[i] = 'b';
    }
    out.push_back(w);
  }
  return out;
}

inline std::uint64_t count_aperiodic(std::size_t k, unsigned l) {
  std::uint64_t c = 0;
  for (const auto& w : all_positive_words(k)) c += has_power(w, l) ? 0 : 1;
  return c;
}

inline char inv(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    default: return 'b';
  }
}

inline std::string inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = inv(c);
  return out;
}

inline std::string free_reduce(std::string w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i + 1] == inv(w[i])) {
        w.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline bool cyclically_reduced(const std::string& w) {
  if (free_reduce(w) != w) return false;
  return w.size() < 2 || w.back() != inv(w.front());
}

inline std::string rotation(const std::string& w, std::size_t s) { return w.substr(s) + w.substr(0, s); }

inline std::string least_rotation(const std::string& w) {
  std::string best = w;
  for (std::size_t s = 1; s < w.size(); ++s) best = std::min(best, rotation(w, s));
  return best;
}

// Factors of length <= |w| read cyclically.
inline std::set<std::string> cyclic_factors(const std::string& w) {
  std::set<std::string> out;
  const std::string ww = w + w;
  for (std::size_t s = 0; s < w.size(); ++s) {
    for (std::size_t len = 1; len <= w.size(); ++len) out.insert(ww.substr(s, len));
  }
  return out;
}

inline std::size_t lcf_cyclic(const std::string& u, const std::string& v) {
  const auto fu = cyclic_factors(u);
  const auto fv = cyclic_factors(v);
  std::size_t best = 0;
  for (const auto& f : fu) {
    if (f.size() > best && fv.count(f)) best = f.size();
  }
  return std::min({best, u.size(), v.size()});
}

inline std::size_t repeated_factor(const std::string& u) {
  const std::size_t n = u.size();
  const std::string uu = u + u;
  for (std::size_t len = n; len >= 1; --len) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (uu.compare(i, len, uu, j, len) == 0) return len;
      }
    }
  }
  return 0;
}

// Condition check on the inversion closure, cyclic words deduplicated;
// lambda = num/den.
inline bool cstar(const std::vector<std::string>& family, long num, long den) {
  std::set<std::string> closure;
  for (const auto& w : family) {
    closure.insert(least_rotation(w));
    closure.insert(least_rotation(inverse(w)));
  }
  std::vector<std::string> m(closure.begin(), closure.end());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (static_cast<long>(repeated_factor(m[i])) * den >= num * static_cast<long>(m[i].size())) return false;
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const long shortest = static_cast<long>(std::min(m[i].size(), m[j].size()));
      if (static_cast<long>(lcf_cyclic(m[i], m[j])) * den >= num * shortest) return false;
    }
  }
  return true;
}

inline std::string random_group_word(std::mt19937_64& rng, std::size_t len) {
  static const char letters[] = {'a', 'b', 'A', 'B'};
  std::string w;
  for (std::size_t i = 0; i < len; ++i) w += letters[rng() % 4];
  return w;
}

inline std::string random_cyclically_reduced(std::mt19937_64& rng, std::size_t len) {
  for (;;) {
    std::string w = free_reduce(random_group_word(rng, len * 2));
    if (w.size() < len) continue;
    w.resize(len);
    if (cyclically_reduced(w)) return w;
  }
}

// Reduced words of length exactly r, counted by enumeration.
inline std::uint64_t free_sphere(unsigned r) {
  std::vector<std::string> layer = {""};
  for (unsigned i = 0; i < r; ++i) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : std::string("abAB")) {
        if (!w.empty() && w.back() == inv(c)) continue;
        next.push_back(w + c);
      }
    }
    layer = std::move(next);
  }
  return layer.size();
}

// Word metric of a permutation group generated by two permutations (a, b and
// their inverses), by BFS over the group elements.
struct PermGroup {
  using Perm = std::vector<int>;
  std::map<Perm, unsigned> dist;
  Perm a, b;

  static Perm compose(const Perm& p, const Perm& q) {  // apply p then q
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  }
  static Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
  }

  PermGroup(Perm pa, Perm pb) : a(std::move(pa)), b(std::move(pb)) {
    Perm id(a.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    const std::array<Perm, 4> gens = {a, b, inverse(a), inverse(b)};
    std::queue<Perm> q;
    dist[id] = 0;
    q.push(id);
    while (!q.empty()) {
      Perm p = q.front();
      q.pop();
      for (const auto& g : gens) {
        Perm n = compose(p, g);
        if (dist.emplace(n, dist[p] + 1).second) q.push(n);
      }
    }
  }

  Perm eval(const std::string& w) const {
    Perm p(a.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
    for (char c : w) {
      switch (c) {
        case 'a': p = compose(p, a); break;
        case 'b': p = compose(p, b); break;
        case 'A': p = compose(p, inverse(a)); break;
        default: p = compose(p, inverse(b)); break;
      }
    }
    return p;
  }
  unsigned word_length(const std::string& w) const { return dist.at(eval(w)); }
};

// All-pairs shortest paths on a dense weight matrix.
inline std::vector<std::vector<std::uint64_t>> floyd(std::vector<std::vector<std::uint64_t>> d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline double lambda_raw(double n) {
  const double k = std::floor(std::sqrt(n));
  return 9.0 / k + 2.0 * k / (n - 2.0 * std::sqrt(n));
}

}  // namespace oracle
