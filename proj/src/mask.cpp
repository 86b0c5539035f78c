#include "cineloop/mask.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "cineloop/error.hpp"

namespace cineloop {

BinaryGrid::BinaryGrid(int width, int height, bool fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw Error("binary grid dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

BinaryGrid::BinaryGrid(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) throw Error("binary grid dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(width) * height) {
    throw Error("binary grid data length does not match its shape");
  }
  if (std::any_of(cells_.begin(), cells_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error("binary grid values must be 0 or 1");
  }
}

std::size_t BinaryGrid::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

struct Components {
  std::vector<int> id;             // per cell
  std::vector<std::size_t> area;   // per component
  std::vector<std::uint8_t> label; // per component
  std::vector<std::set<int>> adjacent;
};

Components label_components(const Mask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const auto cells = mask.cells();
  Components comps;
  comps.id.assign(cells.size(), -1);

  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < cells.size(); ++seed) {
    if (comps.id[seed] != -1) continue;
    const int cid = static_cast<int>(comps.area.size());
    const std::uint8_t value = cells[seed];
    std::size_t area = 0;
    comps.id[seed] = cid;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++area;
      const int x = static_cast<int>(i % w);
      const int y = static_cast<int>(i / w);
      const std::pair<int, int> nbrs[4] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
      for (auto [nx, ny] : nbrs) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        if (comps.id[j] == -1 && cells[j] == value) {
          comps.id[j] = cid;
          stack.push_back(j);
        }
      }
    }
    comps.area.push_back(area);
    comps.label.push_back(value);
  }

  comps.adjacent.resize(comps.area.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int a = comps.id[static_cast<std::size_t>(y) * w + x];
      if (x + 1 < w) {
        const int b = comps.id[static_cast<std::size_t>(y) * w + x + 1];
        if (a != b) comps.adjacent[a].insert(b), comps.adjacent[b].insert(a);
      }
      if (y + 1 < h) {
        const int b = comps.id[static_cast<std::size_t>(y + 1) * w + x];
        if (a != b) comps.adjacent[a].insert(b), comps.adjacent[b].insert(a);
      }
    }
  }
  return comps;
}

}  // namespace

Mask refine_mask(const Mask& mask, double area_ratio_threshold) {
  if (!(area_ratio_threshold > 0.0 && area_ratio_threshold < 1.0)) {
    throw Error("area ratio threshold must lie in (0, 1)");
  }
  Components comps = label_components(mask);
  const double total = static_cast<double>(mask.cell_count());
  const int n = static_cast<int>(comps.area.size());

  // Region-merging over the component adjacency graph (union-find).
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int c) {
    while (parent[c] != c) c = parent[c] = parent[parent[c]];
    return c;
  };

  using Entry = std::pair<std::size_t, int>;  // (area, component)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (int c = 0; c < n; ++c) queue.emplace(comps.area[c], c);

  while (!queue.empty()) {
    const auto [area, c] = queue.top();
    queue.pop();
    if (find(c) != c || comps.area[c] != area) continue;  // stale entry
    if (static_cast<double>(area) / total >= area_ratio_threshold) break;

    std::set<int> neighbours;
    for (int a : comps.adjacent[c]) neighbours.insert(find(a));
    neighbours.erase(c);
    if (neighbours.empty()) break;

    // Merge c and all its neighbours into the largest neighbour.
    const int root = *std::max_element(neighbours.begin(), neighbours.end(), [&](int a, int b) {
      return std::pair(comps.area[a], -a) < std::pair(comps.area[b], -b);
    });
    std::set<int> merged_adjacent;
    std::size_t merged_area = comps.area[c];
    for (int nb : neighbours) {
      merged_area += comps.area[nb];
      for (int a : comps.adjacent[nb]) merged_adjacent.insert(a);
    }
    parent[c] = root;
    for (int nb : neighbours) parent[nb] = root;

    std::set<int> resolved;
    for (int a : merged_adjacent) {
      const int r = find(a);
      if (r != root) resolved.insert(r);
    }
    comps.adjacent[root] = std::move(resolved);
    comps.adjacent[c].clear();
    comps.area[root] = merged_area;
    queue.emplace(merged_area, root);
  }

  std::vector<std::uint8_t> out(mask.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = comps.label[find(comps.id[i])];
  return Mask(mask.width(), mask.height(), std::move(out));
}

Mask threshold_mask(const ImageRGB& image, int channel, double cutoff) {
  if (channel < 0 || channel >= image.channels()) {
    throw Error("channel index " + std::to_string(channel) + " out of range");
  }
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) throw Error("cutoff must lie in [0, 1]");
  Mask mask(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) mask.set(x, y, image.at(x, y, channel) > cutoff);
  }
  return mask;
}

Mask resample_nearest(const Mask& mask, Size target) {
  if (target == mask.size()) return mask;
  Mask out(target.width, target.height);
  for (int y = 0; y < target.height; ++y) {
    const int sy = std::min(mask.height() - 1, static_cast<int>((y + 0.5) * mask.height() / target.height));
    for (int x = 0; x < target.width; ++x) {
      const int sx = std::min(mask.width() - 1, static_cast<int>((x + 0.5) * mask.width() / target.width));
      out.set(x, y, mask.at(sx, sy));
    }
  }
  return out;
}

}  // namespace cineloop
