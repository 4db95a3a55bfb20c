#include "tightcert/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace tightcert {

namespace {

// ---- shared validation and exact linear algebra ----

void require_size(const IntersectionLattice& lattice, const CharVector& k) {
  require(k.values.size() == lattice.q.size(),
          "vector length does not match the lattice rank");
}

void require_search_preconditions(const IntersectionLattice& lattice) {
  require(is_negative_definite(lattice), "lattice is not negative definite");
  require(bad_row_count(lattice) <= 1, "lattice has more than one bad vertex");
  const int n = static_cast<int>(lattice.q.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ensure(lattice.q[i][j] == lattice.q[j][i], "intersection matrix not symmetric");
      if (i != j)
        require(lattice.q[i][j] >= 0,
                "negative off-diagonal pairing; push monotonicity requires >= 0");
    }
}

// ---- rank-space search engine ----
//
// For a coordinate with weight w (cap = -w), values in the box [w, -w] are
// encoded as ranks (value - w)/2 in [0, cap].  A push at v is legal iff
// rank_v = cap; it sets rank_v = 0 and adds Q[v][u] to each neighbor u
// (dead if that exceeds cap_u).  Terminal states have no coordinate at cap;
// initial states have none at 0.  Inverse pushes are the same moves on
// cap - rank, so one forward search routine serves both directions.

struct Engine {
  int n = 0;
  std::vector<long long> caps;
  std::vector<std::vector<std::pair<int, long long>>> nbr;  // (row, Q[v][row])

  explicit Engine(const IntersectionLattice& lattice) {
    require_search_preconditions(lattice);
    n = static_cast<int>(lattice.q.size());
    caps.resize(n);
    nbr.resize(n);
    for (int i = 0; i < n; ++i) {
      ensure(lattice.q[i][i] <= -1, "negative definite lattice with diagonal >= 0");
      require(lattice.q[i][i] >= -(Int(1) << 20), "vertex weight too large for the search engine");
      caps[i] = static_cast<long long>(-lattice.q[i][i]);
      for (int j = 0; j < n; ++j)
        if (j != i && lattice.q[i][j] != 0)
          nbr[i].emplace_back(j, static_cast<long long>(lattice.q[i][j]));
    }
  }

  bool is_terminal(const std::vector<long long>& ranks) const {
    for (int i = 0; i < n; ++i)
      if (ranks[i] == caps[i]) return false;
    return true;
  }

  // True iff pushing v keeps every neighbor within its cap.
  bool push_stays_in_box(const std::vector<long long>& ranks, int v) const {
    for (const auto& [u, d] : nbr[v])
      if (ranks[u] + d > caps[u]) return false;
    return true;
  }

  void apply_push(std::vector<long long>& ranks, int v) const {
    ranks[v] = 0;
    for (const auto& [u, d] : nbr[v]) ranks[u] += d;
  }

  void undo_push(std::vector<long long>& ranks, int v) const {
    ranks[v] = caps[v];
    for (const auto& [u, d] : nbr[v]) ranks[u] -= d;
  }
};

struct RankHash {
  std::size_t operator()(const std::vector<long long>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Depth-first search for a push sequence to a terminal state, vertices in
// ascending order, with a dead-state cache.  Mutates `ranks` back to its
// original content before returning.
std::optional<std::vector<int>> forward_to_terminal(const Engine& e,
                                                    std::vector<long long>& ranks) {
  std::unordered_set<std::vector<long long>, RankHash> dead;
  struct Frame {
    int next_v;
    int pushed;  // vertex pushed to enter this frame, -1 at the root
  };
  std::vector<Frame> frames{{0, -1}};
  std::vector<int> seq;
  while (!frames.empty()) {
    Frame& f = frames.back();
    if (f.next_v == 0 && e.is_terminal(ranks)) {
      for (const Frame& fr : frames)
        if (fr.pushed >= 0) seq.push_back(fr.pushed);
      for (auto it = frames.rbegin(); it != frames.rend(); ++it)
        if (it->pushed >= 0) e.undo_push(ranks, it->pushed);
      return seq;
    }
    bool descended = false;
    for (int v = f.next_v; v < e.n; ++v) {
      if (ranks[v] != e.caps[v] || !e.push_stays_in_box(ranks, v)) continue;
      e.apply_push(ranks, v);
      if (dead.contains(ranks)) {
        e.undo_push(ranks, v);
        continue;
      }
      f.next_v = v + 1;
      frames.push_back({0, v});
      descended = true;
      break;
    }
    if (descended) continue;
    dead.insert(ranks);
    if (f.pushed >= 0) e.undo_push(ranks, f.pushed);
    frames.pop_back();
  }
  return std::nullopt;
}

std::vector<long long> to_ranks(const Engine& e, const CharVector& k) {
  std::vector<long long> ranks(e.n);
  for (int i = 0; i < e.n; ++i) {
    Int r = (k.values[i] + e.caps[i]) / 2;
    ranks[i] = static_cast<long long>(r);
  }
  return ranks;
}

CharVector to_char_vector(const Engine& e, const std::vector<long long>& ranks) {
  CharVector k;
  k.values.reserve(e.n);
  for (int i = 0; i < e.n; ++i) k.values.push_back(Int(2 * ranks[i] - e.caps[i]));
  return k;
}

// ---- dense box enumeration ----

constexpr long long kMaxBoxStates = 1LL << 25;

struct DenseBox {
  Engine e;
  std::vector<long long> stride;
  long long total = 1;
  // index_of(push_v(x)) - index_of(x); constant because a push moves v from
  // cap to 0 and shifts each neighbor by a fixed amount
  std::vector<long long> push_delta;
  // 0 unknown, 1 live, 2 dead
  std::vector<std::uint8_t> live_memo;
  // -2 unexplored; -1 explored, no good initial downstream; otherwise the
  // state index of a downstream good initial
  std::vector<std::int32_t> dsinit;

  explicit DenseBox(const IntersectionLattice& lattice) : e(lattice) {
    for (int i = 0; i < e.n; ++i) {
      total *= e.caps[i] + 1;
      require(total <= kMaxBoxStates,
              "characteristic box too large for generator enumeration");
    }
    // safe now: every stride divides total
    stride.assign(e.n, 1);
    for (int i = e.n - 2; i >= 0; --i) stride[i] = stride[i + 1] * (e.caps[i + 1] + 1);
    push_delta.assign(e.n, 0);
    for (int v = 0; v < e.n; ++v) {
      push_delta[v] = -e.caps[v] * stride[v];
      for (const auto& [u, d] : e.nbr[v]) push_delta[v] += d * stride[u];
    }
    live_memo.assign(static_cast<std::size_t>(total), 0);
    dsinit.assign(static_cast<std::size_t>(total), -2);
  }

  long long index_of(const std::vector<long long>& ranks) const {
    long long idx = 0;
    for (int i = 0; i < e.n; ++i) idx += ranks[i] * stride[i];
    return idx;
  }

  bool is_good_initial(std::vector<long long>& ranks, long long idx) {
    for (int i = 0; i < e.n; ++i)
      if (ranks[i] == 0) return false;
    return live(ranks, idx);
  }

  // Liveness: a state admits a push sequence to a terminal state.  Early
  // exit on the first live child.
  bool live(std::vector<long long>& ranks, long long idx) {
    if (live_memo[idx] != 0) return live_memo[idx] == 1;
    struct Frame {
      long long idx;
      int next_v;
      int pushed;
      bool found_live;
    };
    std::vector<Frame> frames{{idx, 0, -1, false}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (!f.found_live && f.next_v == 0 && e.is_terminal(ranks)) f.found_live = true;
      if (f.found_live) {
        live_memo[f.idx] = 1;
        if (f.pushed >= 0) e.undo_push(ranks, f.pushed);
        frames.pop_back();
        if (!frames.empty()) frames.back().found_live = true;
        continue;
      }
      bool descended = false;
      for (int v = f.next_v; v < e.n; ++v) {
        if (ranks[v] != e.caps[v] || !e.push_stays_in_box(ranks, v)) continue;
        e.apply_push(ranks, v);
        long long child = f.idx + push_delta[v];
        if (live_memo[child] == 1) {
          e.undo_push(ranks, v);
          f.found_live = true;
          descended = true;  // handled on the next pass over this frame
          break;
        }
        if (live_memo[child] == 2) {
          e.undo_push(ranks, v);
          continue;
        }
        f.next_v = v + 1;
        frames.push_back({child, 0, v, false});
        descended = true;
        break;
      }
      if (descended) continue;
      live_memo[f.idx] = 2;
      if (f.pushed >= 0) e.undo_push(ranks, f.pushed);
      frames.pop_back();
    }
    return live_memo[idx] == 1;
  }
};

// Deterministic diagonalization U * (2Q) * V = D by alternating row and
// column reductions on the least-magnitude pivot.  Returns U and |diag(D)|.
struct SpinCReduction {
  std::vector<std::vector<Int>> u;
  std::vector<Int> moduli;
};

SpinCReduction spinc_reduction(const IntersectionLattice& lattice) {
  const int n = static_cast<int>(lattice.q.size());
  std::vector<std::vector<Int>> d(n, std::vector<Int>(n));
  std::vector<std::vector<Int>> u(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) {
    u[i][i] = 1;
    for (int j = 0; j < n; ++j) d[i][j] = 2 * lattice.q[i][j];
  }
  for (int t = 0; t < n; ++t) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          if (d[i][j] == 0) continue;
          if (pi < 0 || boost::multiprecision::abs(d[i][j]) <
                            boost::multiprecision::abs(d[pi][pj])) {
            pi = i;
            pj = j;
          }
        }
      ensure(pi >= 0, "singular matrix during spin^c reduction");
      if (pi != t) {
        std::swap(d[pi], d[t]);
        std::swap(u[pi], u[t]);
      }
      if (pj != t)
        for (int i = 0; i < n; ++i) std::swap(d[i][pj], d[i][t]);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (d[i][t] == 0) continue;
        Int q = d[i][t] / d[t][t];
        for (int j = 0; j < n; ++j) {
          d[i][j] -= q * d[t][j];
          u[i][j] -= q * u[t][j];
        }
        if (d[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        Int q = d[t][j] / d[t][t];
        for (int i = 0; i < n; ++i) d[i][j] -= q * d[i][t];
        if (d[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  SpinCReduction out;
  out.u = std::move(u);
  out.moduli.reserve(n);
  for (int i = 0; i < n; ++i) out.moduli.push_back(boost::multiprecision::abs(d[i][i]));
  return out;
}

SpinCClass reduce_residues(const SpinCReduction& red, const CharVector& k) {
  const int n = static_cast<int>(red.moduli.size());
  SpinCClass cls;
  cls.residues.reserve(n);
  for (int i = 0; i < n; ++i) {
    Int acc = 0;
    for (int j = 0; j < n; ++j) acc += red.u[i][j] * k.values[j];
    Int r = acc % red.moduli[i];
    if (r < 0) r += red.moduli[i];
    cls.residues.push_back(r);
  }
  return cls;
}

// Union-find over the good initial vectors, roots kept at the least position
// so each component's representative is its least initial state.
struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

}  // namespace

bool is_characteristic(const IntersectionLattice& lattice, const CharVector& k) {
  if (k.values.size() != lattice.q.size()) return false;
  for (std::size_t i = 0; i < k.values.size(); ++i)
    if ((k.values[i] - lattice.q[i][i]) % 2 != 0) return false;
  return true;
}

int bad_row_count(const IntersectionLattice& lattice) {
  const int n = static_cast<int>(lattice.q.size());
  int bad = 0;
  for (int i = 0; i < n; ++i) {
    Int valency = 0;
    for (int j = 0; j < n; ++j)
      if (j != i && lattice.q[i][j] != 0) ++valency;
    if (valency > boost::multiprecision::abs(lattice.q[i][i])) ++bad;
  }
  return bad;
}

CharVector push(const IntersectionLattice& lattice, const CharVector& k, int vertex_id) {
  require_size(lattice, k);
  int v = -1;
  for (std::size_t i = 0; i < lattice.ids.size(); ++i)
    if (lattice.ids[i] == vertex_id) v = static_cast<int>(i);
  require(v >= 0, "unknown vertex id " + std::to_string(vertex_id));
  require(k.values[v] == -lattice.q[v][v],
          "push requires <K, v> = -v.v at vertex " + std::to_string(vertex_id));
  CharVector out = k;
  for (std::size_t u = 0; u < lattice.q.size(); ++u)
    out.values[u] += 2 * lattice.q[v][u];
  return out;
}

Rational square(const IntersectionLattice& lattice, const CharVector& k) {
  require_size(lattice, k);
  require(lattice.det != 0, "square requires a nonsingular lattice");
  auto x = solve_linear_system(lattice.q, k.values);
  Rational acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += Rational(k.values[i]) * x[i];
  return acc;
}

Rational degree(const IntersectionLattice& lattice, const CharVector& k) {
  return (square(lattice, k) + Rational(Int(lattice.q.size()))) / Rational(4);
}

std::optional<FullPath> find_full_path_through(const IntersectionLattice& lattice,
                                               const CharVector& k) {
  require_size(lattice, k);
  require(is_characteristic(lattice, k), "vector is not characteristic");
  Engine e(lattice);
  // Every step of a full path lies in the box [v.v, -v.v]: the first push at
  // v lands on v.v and later pushes only raise other coordinates, while any
  // value above -v.v can never be pushed back down.
  for (int i = 0; i < e.n; ++i)
    if (boost::multiprecision::abs(k.values[i]) > e.caps[i]) return std::nullopt;

  auto ranks = to_ranks(e, k);
  auto fwd = forward_to_terminal(e, ranks);
  if (!fwd) return std::nullopt;
  auto flipped = ranks;
  for (int i = 0; i < e.n; ++i) flipped[i] = e.caps[i] - flipped[i];
  auto bwd = forward_to_terminal(e, flipped);
  if (!bwd) return std::nullopt;

  // Inverse pushes from K, in search order, end at the initial vector; the
  // forward reading of the path applies them in reverse.
  std::vector<std::vector<long long>> before;
  {
    auto cur = ranks;
    for (int v : *bwd) {
      for (const auto& [u, d] : e.nbr[v]) cur[u] -= d;
      cur[v] = e.caps[v];
      before.push_back(cur);
    }
  }

  FullPath path;
  for (auto it = before.rbegin(); it != before.rend(); ++it)
    path.steps.push_back(to_char_vector(e, *it));
  for (auto it = bwd->rbegin(); it != bwd->rend(); ++it)
    path.pushed.push_back(lattice.ids[*it]);
  path.steps.push_back(k);
  {
    auto cur = ranks;
    for (int v : *fwd) {
      path.pushed.push_back(lattice.ids[v]);
      e.apply_push(cur, v);
      path.steps.push_back(to_char_vector(e, cur));
    }
  }
  path.degree = degree(lattice, path.steps.front());
  for (const CharVector& step : path.steps)
    ensure(degree(lattice, step) == path.degree, "full path with non-constant degree");
  return path;
}

SpinCClass spinc_class(const IntersectionLattice& lattice, const CharVector& k) {
  require_size(lattice, k);
  require(lattice.det != 0, "spin^c reduction requires a nonsingular lattice");
  return reduce_residues(spinc_reduction(lattice), k);
}

GeneratorTable enumerate_generators(const IntersectionLattice& lattice) {
  DenseBox box(lattice);
  const Engine& e = box.e;
  const int n = e.n;

  // Pass 1: enumerate the initial box (every rank >= 1) in ascending index
  // order and record the good initial vectors.
  std::vector<long long> good;  // state indices, ascending
  {
    std::vector<long long> ranks(n, 1);
    long long idx = 0;
    for (int i = 0; i < n; ++i) idx += box.stride[i];
    while (true) {
      if (box.is_good_initial(ranks, idx)) good.push_back(idx);
      int pos = n - 1;
      while (pos >= 0 && ranks[pos] == e.caps[pos]) {
        idx -= (e.caps[pos] - 1) * box.stride[pos];
        ranks[pos] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++ranks[pos];
      idx += box.stride[pos];
    }
  }

  // Pass 2: equivalence closure of "co-membership in a common full path".
  // A depth-first walk from each good initial I unions I with every good
  // initial it can reach through live states.  Finalized states carry a
  // downstream-initial representative whose union-find class already holds
  // every good initial below them, so the walk stops at finalized states.
  UnionFind uf(static_cast<int>(good.size()));
  auto pos_of = [&](long long idx) {
    auto it = std::lower_bound(good.begin(), good.end(), idx);
    ensure(it != good.end() && *it == idx, "good initial missing from index");
    return static_cast<int>(it - good.begin());
  };

  for (int gi = 0; gi < static_cast<int>(good.size()); ++gi) {
    if (box.dsinit[good[gi]] != -2) continue;  // already swept by an earlier cone
    std::vector<long long> ranks(n);
    {
      long long rem = good[gi];
      for (int i = 0; i < n; ++i) {
        ranks[i] = rem / box.stride[i];
        rem %= box.stride[i];
      }
    }
    struct Frame {
      long long idx;
      int next_v;
      int pushed;
      long long ds;  // downstream good initial found so far, -1 if none
    };
    std::vector<Frame> frames{{good[gi], 0, -1, -1}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_v == 0) {
        bool initial = true;
        for (int i = 0; i < n && initial; ++i)
          if (ranks[i] == 0) initial = false;
        if (initial) {  // live by construction of the walk
          uf.unite(gi, pos_of(f.idx));
          f.ds = f.idx;
        }
      }
      bool descended = false;
      for (int v = f.next_v; v < n; ++v) {
        if (ranks[v] != e.caps[v] || !e.push_stays_in_box(ranks, v)) continue;
        e.apply_push(ranks, v);
        long long child = f.idx + box.push_delta[v];
        if (!box.live(ranks, child)) {
          e.undo_push(ranks, v);
          continue;
        }
        if (box.dsinit[child] != -2) {
          if (box.dsinit[child] >= 0) {
            uf.unite(gi, pos_of(box.dsinit[child]));
            if (f.ds < 0) f.ds = box.dsinit[child];
          }
          e.undo_push(ranks, v);
          continue;
        }
        f.next_v = v + 1;
        frames.push_back({child, 0, v, -1});
        descended = true;
        break;
      }
      if (descended) continue;
      box.dsinit[f.idx] = static_cast<std::int32_t>(f.ds);
      long long ds = f.ds;
      if (f.pushed >= 0) e.undo_push(ranks, f.pushed);
      frames.pop_back();
      if (!frames.empty() && frames.back().ds < 0) frames.back().ds = ds;
    }
  }

  // Collect components: representative = least good initial, witness = the
  // greedy live descent to a terminal state.
  std::map<int, std::vector<int>> components;
  for (int gi = 0; gi < static_cast<int>(good.size()); ++gi)
    components[uf.find(gi)].push_back(gi);

  SpinCReduction red = spinc_reduction(lattice);
  GeneratorTable table;
  table.det = lattice.det;
  table.moduli = red.moduli;

  // One exact inverse per lattice: Q^{-1} = A / det with A integral by
  // Cramer, so each degree below is a quadratic form over Int.
  std::vector<std::vector<Int>> adj(static_cast<std::size_t>(n),
                                    std::vector<Int>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    std::vector<Int> col(static_cast<std::size_t>(n), 0);
    col[static_cast<std::size_t>(j)] = 1;
    auto x = solve_linear_system(lattice.q, col);
    for (int i = 0; i < n; ++i) {
      Rational scaled = x[static_cast<std::size_t>(i)] * Rational(lattice.det);
      ensure(scaled.den() == 1, "scaled inverse column not integral");
      adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = scaled.num();
    }
  }
  auto fast_degree = [&](const CharVector& k) {
    Int acc = 0;
    for (int i = 0; i < n; ++i) {
      Int row = 0;
      for (int j = 0; j < n; ++j)
        row += adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
               k.values[static_cast<std::size_t>(j)];
      acc += k.values[static_cast<std::size_t>(i)] * row;
    }
    return (Rational(acc) / Rational(lattice.det) + Rational(Int(n))) / Rational(4);
  };

  for (const auto& [root, members] : components) {
    std::vector<long long> ranks(n);
    long long rem = good[members.front()];
    for (int i = 0; i < n; ++i) {
      ranks[i] = rem / box.stride[i];
      rem %= box.stride[i];
    }
    Generator gen;
    gen.representative = to_char_vector(e, ranks);
    gen.initial_count = static_cast<long long>(members.size());

    FullPath path;
    path.steps.push_back(gen.representative);
    auto cur = ranks;
    long long cur_idx = good[members.front()];
    while (!e.is_terminal(cur)) {
      int chosen = -1;
      for (int v = 0; v < n && chosen < 0; ++v) {
        if (cur[v] != e.caps[v] || !e.push_stays_in_box(cur, v)) continue;
        e.apply_push(cur, v);
        if (box.live(cur, cur_idx + box.push_delta[v]))
          chosen = v;
        else
          e.undo_push(cur, v);
      }
      ensure(chosen >= 0, "live non-terminal state with no live child");
      cur_idx += box.push_delta[chosen];
      path.pushed.push_back(lattice.ids[chosen]);
      path.steps.push_back(to_char_vector(e, cur));
    }
    // Every push preserves the square exactly (the pushed value is -v.v, so
    // the square changes by 4<K,v> + 4 v.v = 0); checking the two endpoints
    // therefore pins the degree of every intermediate step.
    path.degree = fast_degree(path.steps.front());
    ensure(fast_degree(path.steps.back()) == path.degree,
           "full path with non-constant degree");
    gen.degree = path.degree;
    gen.witness = std::move(path);
    table.by_class[reduce_residues(red, gen.representative)].push_back(std::move(gen));
  }
  return table;
}

bool is_L_space(const IntersectionLattice& lattice) {
  GeneratorTable table = enumerate_generators(lattice);
  return Int(table.total_generators()) == boost::multiprecision::abs(lattice.det);
}

std::map<SpinCClass, Rational> correction_terms(const IntersectionLattice& lattice) {
  GeneratorTable table = enumerate_generators(lattice);
  require(Int(table.total_generators()) == Int(boost::multiprecision::abs(lattice.det)),
          "correction terms require an L-space (generator count " +
              std::to_string(table.total_generators()) + ", |det| " +
              Int(boost::multiprecision::abs(lattice.det)).str() + ")");
  std::map<SpinCClass, Rational> d;
  for (const auto& [cls, gens] : table.by_class) {
    require(gens.size() == 1,
            "spin^c class with " + std::to_string(gens.size()) +
                " generators; correction term undefined");
    d.emplace(cls, gens.front().degree);
  }
  require(d.size() == table.by_class.size(), "class count mismatch");
  return d;
}

}  // namespace tightcert
