#include "loopflow/pixel_set.hpp"

#include <algorithm>
#include <array>

namespace loopflow {

PixelSet::PixelSet(GridSpec grid, const std::vector<Cell>& cells) : PixelSet(grid) {
  for (const Cell& c : cells) {
    if (!grid_.contains_cell(c.i, c.j)) throw OutOfGrid("cell outside the grid");
    insert(c);
  }
}

PixelSet PixelSet::full(GridSpec grid) {
  PixelSet s(grid);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  return s;
}

PixelSet PixelSet::from_mask(GridSpec grid, std::uint64_t mask) {
  PixelSet s(grid);
  for (std::size_t k = 0; k < s.bits_.size() && k < 64; ++k) s.bits_[k] = (mask >> k) & 1u;
  return s;
}

std::size_t PixelSet::size() const { return std::size_t(std::count(bits_.begin(), bits_.end(), 1)); }

std::vector<Cell> PixelSet::cells() const {
  std::vector<Cell> out;
  for (int i = 0; i < grid_.width; ++i)
    for (int j = 0; j < grid_.height; ++j)
      if (contains(i, j)) out.push_back({i, j});
  return out;
}

PixelSet PixelSet::complement() const {
  PixelSet s(grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k) s.bits_[k] = bits_[k] ? 0 : 1;
  return s;
}

PixelSet& PixelSet::operator|=(const PixelSet& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] = bits_[k] | o.bits_[k];
  return *this;
}

PixelSet& PixelSet::operator&=(const PixelSet& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] = bits_[k] & o.bits_[k];
  return *this;
}

PixelSet& PixelSet::operator-=(const PixelSet& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] = bits_[k] & (o.bits_[k] ^ 1u);
  return *this;
}

bool PixelSet::is_subset_of(const PixelSet& o) const {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] && !o.bits_[k]) return false;
  return true;
}

bool PixelSet::touches_border() const {
  for (int i = 0; i < grid_.width; ++i)
    if (contains(i, 0) || contains(i, grid_.height - 1)) return true;
  for (int j = 0; j < grid_.height; ++j)
    if (contains(0, j) || contains(grid_.width - 1, j)) return true;
  return false;
}

namespace {

constexpr std::array<std::array<int, 2>, 4> kFour{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
constexpr std::array<std::array<int, 2>, 8> kEight{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

// Labels the cells whose bit equals `value`; -1 elsewhere. Returns the label count.
int label_cells(const GridSpec& g, const std::vector<std::uint8_t>& bits, std::uint8_t value, Connectivity conn,
                std::vector<int>& label) {
  label.assign(g.cell_count(), -1);
  const int n_dirs = conn == Connectivity::Four ? 4 : 8;
  int count = 0;
  std::vector<Cell> stack;
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const auto k = g.cell_index(i, j);
      if (bits[k] != value || label[k] >= 0) continue;
      label[k] = count;
      stack.push_back({i, j});
      while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        for (int d = 0; d < n_dirs; ++d) {
          const int ni = c.i + (conn == Connectivity::Four ? kFour[d][0] : kEight[d][0]);
          const int nj = c.j + (conn == Connectivity::Four ? kFour[d][1] : kEight[d][1]);
          if (!g.contains_cell(ni, nj)) continue;
          const auto nk = g.cell_index(ni, nj);
          if (bits[nk] != value || label[nk] >= 0) continue;
          label[nk] = count;
          stack.push_back({ni, nj});
        }
      }
      ++count;
    }
  return count;
}

std::vector<PixelSet> split_by_label(const GridSpec& g, const std::vector<int>& label, int count) {
  std::vector<PixelSet> out(std::size_t(count), PixelSet{g});
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const int l = label[g.cell_index(i, j)];
      if (l >= 0) out[std::size_t(l)].insert({i, j});
    }
  return out;
}

}  // namespace

std::int64_t perimeter(const PixelSet& e) {
  const GridSpec& g = e.grid();
  std::int64_t p = 0;
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      if (!e.contains(i, j)) continue;
      for (const auto& d : kFour)
        if (!e.contains(i + d[0], j + d[1])) ++p;
    }
  return p;
}

ComponentDecomposition components(const PixelSet& e, Connectivity conn) {
  std::vector<int> label;
  const int n = label_cells(e.grid(), e.bits(), 1, conn, label);
  return {split_by_label(e.grid(), label, n)};
}

PixelSet largest_component(const PixelSet& e, Connectivity conn) {
  const GridSpec& g = e.grid();
  std::vector<int> label;
  const int n = label_cells(g, e.bits(), 1, conn, label);
  PixelSet out{g};
  if (n == 0) return out;
  std::vector<std::size_t> size(std::size_t(n), 0);
  std::vector<Cell> first(std::size_t(n), Cell{g.width, g.height});
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const int l = label[g.cell_index(i, j)];
      if (l < 0) continue;
      ++size[std::size_t(l)];
      first[std::size_t(l)] = std::min(first[std::size_t(l)], Cell{i, j});
    }
  std::size_t best = 0;
  for (std::size_t l = 1; l < size.size(); ++l)
    if (size[l] > size[best] || (size[l] == size[best] && first[l] < first[best])) best = l;
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      if (label[g.cell_index(i, j)] == int(best)) out.insert({i, j});
  return out;
}

std::vector<PixelSet> bounded_complement_components(const PixelSet& e, Connectivity conn) {
  const GridSpec& g = e.grid();
  std::vector<int> label;
  const int n = label_cells(g, e.bits(), 0, conn, label);
  auto parts = split_by_label(g, label, n);
  std::vector<PixelSet> bounded;
  for (auto& p : parts)
    if (!p.touches_border()) bounded.push_back(std::move(p));
  return bounded;
}

bool is_indecomposable(const PixelSet& e) {
  std::vector<int> label;
  return label_cells(e.grid(), e.bits(), 1, Connectivity::Four, label) <= 1;
}

std::vector<PixelSet> holes(const PixelSet& e) {
  if (!is_indecomposable(e)) throw NotIndecomposable();
  return bounded_complement_components(e, Connectivity::Eight);
}

PixelSet saturate(const PixelSet& e) {
  PixelSet s = e;
  for (const auto& h : holes(e)) s |= h;
  return s;
}

bool is_simple(const PixelSet& e) {
  if (e.empty() || !is_indecomposable(e)) return false;
  return bounded_complement_components(e, Connectivity::Eight).empty();
}

std::vector<Node> pinch_nodes(const PixelSet& e) {
  const GridSpec& g = e.grid();
  std::vector<Node> out;
  for (int x = 0; x <= g.width; ++x)
    for (int y = 0; y <= g.height; ++y) {
      const bool sw = e.contains(x - 1, y - 1), se = e.contains(x, y - 1);
      const bool nw = e.contains(x - 1, y), ne = e.contains(x, y);
      if ((sw && ne && !se && !nw) || (se && nw && !sw && !ne)) out.push_back({x, y});
    }
  return out;
}

namespace {

// Directions in counter-clockwise order: +x, +y, -x, -y.
constexpr std::array<std::array<int, 2>, 4> kDir{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

}  // namespace

LatticeCurve trace_boundary(const PixelSet& e) {
  if (!is_simple(e)) throw NotSimple();
  const GridSpec& g = e.grid();

  // Outgoing boundary directions per node, as bit masks.
  std::vector<std::uint8_t> out(g.node_count(), 0), used(g.node_count(), 0);
  std::int64_t edge_count = 0;
  auto add = [&](int x, int y, int dir) {
    out[g.node_index(x, y)] |= std::uint8_t(1u << dir);
    ++edge_count;
  };
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      if (!e.contains(i, j)) continue;
      if (!e.contains(i - 1, j)) add(i, j, 1);          // left side, upward
      if (!e.contains(i, j + 1)) add(i, j + 1, 0);      // top side, rightward
      if (!e.contains(i + 1, j)) add(i + 1, j + 1, 3);  // right side, downward
      if (!e.contains(i, j - 1)) add(i + 1, j, 2);      // bottom side, leftward
    }

  const Cell first = e.cells().front();
  const Node start{first.i, first.j};
  std::vector<Node> nodes{start};
  Node cur = start;
  int dir = 1;
  used[g.node_index(cur.x, cur.y)] |= 1u << dir;
  cur = {cur.x + kDir[dir][0], cur.y + kDir[dir][1]};
  nodes.push_back(cur);
  while (cur != start) {
    const auto k = g.node_index(cur.x, cur.y);
    const std::uint8_t avail = out[k] & std::uint8_t(~used[k]);
    int next = -1;
    for (int turn : {3, 0, 1}) {
      const int cand = (dir + turn) % 4;
      if (avail & (1u << cand)) {
        next = cand;
        break;
      }
    }
    if (next < 0) throw Error("boundary tracing got stuck");
    used[k] |= std::uint8_t(1u << next);
    dir = next;
    cur = {cur.x + kDir[dir][0], cur.y + kDir[dir][1]};
    nodes.push_back(cur);
  }
  if (std::int64_t(nodes.size()) - 1 != edge_count) throw Error("boundary of a simple set is not a single loop");
  return LatticeCurve(std::move(nodes), true);
}

PixelSet loop_interior(const GridSpec& grid, const LatticeCurve& loop) {
  if (!loop.closed()) throw InvalidCurve("interior is defined for closed loops only");
  // crossings[j][x]: number of traversals of the vertical edge V(x, j).
  std::vector<int> crossings(grid.v_edge_count(), 0);
  const auto& nodes = loop.nodes();
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const DirectedEdge de = edge_between(nodes[k - 1], nodes[k]);
    if (de.edge.kind != EdgeKind::V) continue;
    if (!grid.contains_node(de.edge.i, de.edge.j) || de.edge.j >= grid.height)
      throw OutOfGrid("loop leaves the grid");
    ++crossings[std::size_t(de.edge.j) * (grid.width + 1) + de.edge.i];
  }
  PixelSet inside(grid);
  for (int j = 0; j < grid.height; ++j) {
    int parity = 0;
    for (int i = 0; i < grid.width; ++i) {
      parity ^= crossings[std::size_t(j) * (grid.width + 1) + i] & 1;
      if (parity) inside.insert({i, j});
    }
  }
  return inside;
}

template <class S>
CellField<S> indicator(const PixelSet& e, S value) {
  CellField<S> f(e.grid());
  for (std::size_t k = 0; k < e.bits().size(); ++k)
    if (e.bits()[k]) f.values()[k] = value;
  return f;
}

template <class S>
PixelSet superlevel_set(const CellField<S>& f, const S& t) {
  PixelSet s(f.grid());
  const GridSpec& g = f.grid();
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      if (f.at(i, j) > t) s.insert({i, j});
  return s;
}

template <class S>
PixelSet positive_support(const CellField<S>& f) {
  return superlevel_set(f, S(0));
}

template <class S>
S variation(const CellField<S>& f) {
  const GridSpec& g = f.grid();
  S sum(0);
  for (int j = 0; j <= g.height; ++j)
    for (int i = 0; i < g.width; ++i) sum += abs_value(f.value(i, j - 1) - f.value(i, j));
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i <= g.width; ++i) sum += abs_value(f.value(i, j) - f.value(i - 1, j));
  return sum;
}

template <class S>
std::vector<S> level_values(const CellField<S>& f) {
  std::vector<S> v = f.values();
  v.push_back(S(0));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <class S>
S coarea_sum(const CellField<S>& f) {
  const auto levels = level_values(f);
  S sum(0);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const S& t = levels[k];
    // {f > t} contains the exterior when t < 0; measure its bounded complement instead.
    const PixelSet upper = superlevel_set(f, t);
    const std::int64_t p = t >= S(0) ? perimeter(upper) : perimeter(upper.complement());
    sum += (levels[k + 1] - t) * S(p);
  }
  return sum;
}

#define LOOPFLOW_INSTANTIATE(S)                                        \
  template CellField<S> indicator(const PixelSet&, S);                 \
  template PixelSet superlevel_set(const CellField<S>&, const S&);     \
  template PixelSet positive_support(const CellField<S>&);             \
  template S variation(const CellField<S>&);                           \
  template std::vector<S> level_values(const CellField<S>&);           \
  template S coarea_sum(const CellField<S>&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
