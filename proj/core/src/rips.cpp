#include "pdsim/rips.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "pdsim/error.hpp"

namespace pdsim {
namespace {

constexpr int kDimShift = 58;
constexpr std::uint64_t kLexMask = (std::uint64_t{1} << kDimShift) - 1;
constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kDenseEdgeLimit = std::size_t{1} << 24;

void check_encodable(std::size_t n, std::size_t max_dim) {
  // n^(max_dim + 1) must fit below 2^58.
  long double capacity = 1.0L;
  for (std::size_t k = 0; k <= max_dim; ++k) capacity *= static_cast<long double>(n);
  if (capacity >= static_cast<long double>(std::uint64_t{1} << kDimShift) || max_dim > 31) {
    throw std::invalid_argument("complex too large to encode: " + std::to_string(n) +
                                " vertices with max_dim " + std::to_string(max_dim));
  }
}

std::string describe(const std::vector<Vertex>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

FilteredComplex::FilteredComplex(std::size_t n_vertices, std::size_t max_dim, double max_value,
                                 std::vector<Entry> entries)
    : n_vertices_(n_vertices),
      max_dim_(max_dim),
      max_value_(max_value),
      entries_(std::move(entries)) {
  if (entries_.size() >= kAbsent) throw std::invalid_argument("complex has too many simplices");
  build_index();
}

FilteredComplex FilteredComplex::from_simplices(std::size_t n_vertices,
                                                std::span<const FilteredSimplex> simplices) {
  std::size_t max_dim = 0;
  double max_value = 0.0;
  for (const auto& s : simplices) {
    if (s.vertices.empty()) throw std::invalid_argument("simplex with no vertices");
    for (Vertex v : s.vertices) {
      if (v >= n_vertices) throw std::invalid_argument("vertex index out of range");
    }
    max_dim = std::max(max_dim, s.dim());
    max_value = std::max(max_value, s.value);
  }
  check_encodable(n_vertices, max_dim);
  FilteredComplex shell;
  shell.n_vertices_ = n_vertices;
  shell.max_dim_ = max_dim;
  std::vector<Entry> entries;
  entries.reserve(simplices.size());
  for (const auto& s : simplices) entries.push_back({s.value, shell.encode(s.vertices)});
  return FilteredComplex(n_vertices, max_dim, max_value, std::move(entries));
}

std::uint64_t FilteredComplex::encode(std::span<const Vertex> vertices) const {
  std::uint64_t lex = 0;
  for (Vertex v : vertices) lex = lex * n_vertices_ + v;
  return (static_cast<std::uint64_t>(vertices.size() - 1) << kDimShift) | lex;
}

std::size_t FilteredComplex::dim(std::size_t position) const {
  return static_cast<std::size_t>(entries_[position].code >> kDimShift);
}

std::vector<Vertex> FilteredComplex::vertices(std::size_t position) const {
  const std::uint64_t code = entries_[position].code;
  const std::size_t k = static_cast<std::size_t>(code >> kDimShift);
  std::uint64_t lex = code & kLexMask;
  std::vector<Vertex> out(k + 1);
  for (std::size_t i = k + 1; i-- > 0;) {
    out[i] = static_cast<Vertex>(lex % n_vertices_);
    lex /= n_vertices_;
  }
  return out;
}

FilteredSimplex FilteredComplex::simplex(std::size_t position) const {
  return {vertices(position), value(position)};
}

std::size_t FilteredComplex::count_of_dim(std::size_t k) const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [k](const Entry& e) {
    return static_cast<std::size_t>(e.code >> kDimShift) == k;
  }));
}

void FilteredComplex::build_index() {
  vertex_position_.assign(n_vertices_, kAbsent);
  edge_position_.clear();
  higher_position_.clear();
  const bool dense_edges = max_dim_ >= 2 && n_vertices_ * n_vertices_ <= kDenseEdgeLimit;
  if (dense_edges) edge_position_.assign(n_vertices_ * n_vertices_, kAbsent);
  for (std::size_t pos = 0; pos < entries_.size(); ++pos) {
    const std::uint64_t code = entries_[pos].code;
    const std::size_t k = static_cast<std::size_t>(code >> kDimShift);
    if (k >= max_dim_ && max_dim_ > 0) continue;  // never a facet
    const auto p32 = static_cast<std::uint32_t>(pos);
    const std::uint64_t lex = code & kLexMask;
    if (k == 0) {
      if (vertex_position_[lex] == kAbsent) vertex_position_[lex] = p32;
    } else if (k == 1 && dense_edges) {
      if (edge_position_[lex] == kAbsent) edge_position_[lex] = p32;
    } else {
      higher_position_.emplace(code, p32);
    }
  }
}

std::optional<std::size_t> FilteredComplex::find(std::span<const Vertex> vs) const {
  if (vs.empty()) return std::nullopt;
  for (Vertex v : vs) {
    if (v >= n_vertices_) return std::nullopt;
  }
  const std::uint64_t code = encode(vs);
  const std::size_t k = vs.size() - 1;
  std::uint32_t pos = kAbsent;
  if (k == 0) {
    pos = vertex_position_[vs[0]];
  } else if (k == 1 && !edge_position_.empty()) {
    pos = edge_position_[code & kLexMask];
  } else if (k < max_dim_) {
    if (auto it = higher_position_.find(code); it != higher_position_.end()) pos = it->second;
  } else {
    // Top-dimensional simplices are not indexed; scan.
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].code == code) return i;
    }
  }
  if (pos == kAbsent) return std::nullopt;
  return pos;
}

std::vector<std::size_t> FilteredComplex::facet_positions(std::size_t position) const {
  const std::vector<Vertex> vs = vertices(position);
  std::vector<std::size_t> out;
  if (vs.size() < 2) return out;
  out.reserve(vs.size());
  std::vector<Vertex> face(vs.size() - 1);
  for (std::size_t skip = 0; skip < vs.size(); ++skip) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i != skip) face[w++] = vs[i];
    }
    const auto pos = find(face);
    if (!pos) {
      throw InvariantViolation("face " + describe(face) + " of simplex " + describe(vs) +
                               " is missing from the complex");
    }
    out.push_back(*pos);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t FilteredComplex::facet_positions(std::size_t position, std::uint32_t* out) const {
  const std::uint64_t code = entries_[position].code;
  const std::size_t k = static_cast<std::size_t>(code >> kDimShift);
  if (k == 0) return 0;
  const std::uint64_t n = n_vertices_;
  std::uint64_t lex = code & kLexMask;
  // Peel digits from the least significant end: dropping digit i leaves
  // high * n^i + low, where high holds the digits before it.
  std::uint64_t low = 0;
  std::uint64_t place = 1;
  const std::uint64_t facet_dim = static_cast<std::uint64_t>(k - 1) << kDimShift;
  for (std::size_t i = 0; i <= k; ++i) {
    const std::uint64_t digit = lex % n;
    const std::uint64_t high = lex / n;
    const std::uint64_t facet_lex = high * place + low;
    std::uint32_t pos = kAbsent;
    if (k == 1) {
      pos = vertex_position_[facet_lex];
    } else if (k == 2 && !edge_position_.empty()) {
      pos = edge_position_[facet_lex];
    } else if (auto it = higher_position_.find(facet_dim | facet_lex); it != higher_position_.end()) {
      pos = it->second;
    }
    if (pos == kAbsent) {
      (void)facet_positions(position);  // throws with a readable message
      throw InvariantViolation("simplex at position " + std::to_string(position) +
                               " has a missing face");
    }
    out[i] = pos;
    low += digit * place;
    place *= n;
    lex = high;
  }
  return k + 1;
}

void FilteredComplex::validate() const {
  for (std::size_t pos = 0; pos < entries_.size(); ++pos) {
    const std::vector<Vertex> vs = vertices(pos);
    if (!std::is_sorted(vs.begin(), vs.end()) ||
        std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
      throw InvariantViolation("simplex " + describe(vs) + " has unsorted vertices");
    }
    if (pos > 0) {
      const Entry& prev = entries_[pos - 1];
      const Entry& cur = entries_[pos];
      if (prev.value > cur.value || (prev.value == cur.value && prev.code >= cur.code)) {
        throw InvariantViolation("simplex " + describe(vs) + " breaks the filtration order");
      }
    }
    for (std::size_t f : facet_positions(pos)) {
      if (f >= pos) {
        throw InvariantViolation("simplex " + describe(vs) + " precedes one of its faces");
      }
      if (entries_[f].value > entries_[pos].value) {
        throw InvariantViolation("simplex " + describe(vs) + " has a face with larger value");
      }
    }
  }
}

FilteredComplex build_rips(const DistanceMatrix& d, std::size_t max_dim,
                           std::optional<double> max_value) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("cannot build a Rips complex of an empty cloud");
  if (max_value && !(*max_value > 0.0)) {
    throw std::invalid_argument("Rips cap must be positive");
  }
  max_dim = std::min(max_dim, n - 1);
  const double cap = max_value.value_or(d.max_entry());
  check_encodable(n, max_dim);

  // Forward neighbourhoods: u > v with d(v, u) <= cap, ascending.
  std::vector<std::vector<Vertex>> up(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = v + 1; u < n; ++u) {
      if (d(v, u) <= cap) up[v].push_back(static_cast<Vertex>(u));
    }
  }

  std::vector<FilteredComplex::Entry> entries;
  FilteredComplex shell;
  shell.n_vertices_ = n;

  std::vector<Vertex> clique;
  clique.reserve(max_dim + 1);
  // Extends `clique` by every candidate, recursing while the dimension allows.
  auto extend = [&](auto&& self, const std::vector<Vertex>& candidates, double value) -> void {
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const Vertex w = candidates[ci];
      double v_new = value;
      for (Vertex c : clique) v_new = std::max(v_new, d(c, w));
      clique.push_back(w);
      entries.push_back({v_new, shell.encode(clique)});
      if (clique.size() <= max_dim) {
        std::vector<Vertex> next;
        const auto& nb = up[w];
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(ci) + 1,
                              candidates.end(), nb.begin(), nb.end(), std::back_inserter(next));
        if (!next.empty()) self(self, next, v_new);
      }
      clique.pop_back();
    }
  };

  std::vector<Vertex> all(n);
  for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<Vertex>(v);
  // Vertices first, then cliques rooted at each vertex.
  for (Vertex v : all) entries.push_back({0.0, shell.encode(std::span<const Vertex>(&v, 1))});
  if (max_dim >= 1) {
    for (Vertex v : all) {
      clique.assign(1, v);
      extend(extend, up[v], 0.0);
    }
  }

  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.value < b.value || (a.value == b.value && a.code < b.code);
  });
  return FilteredComplex(n, max_dim, cap, std::move(entries));
}

}  // namespace pdsim
