#include "tumorseg/watershed.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

namespace tumorseg {

namespace {

enum class State : std::uint8_t { kFree, kQueued, kLabelled, kRidge };

template <typename Fn>
void for_each_neighbour(int w, int h, std::size_t p, Fn&& fn) {
  const int x = static_cast<int>(p % static_cast<std::size_t>(w));
  const int y = static_cast<int>(p / static_cast<std::size_t>(w));
  if (y > 0) fn(p - static_cast<std::size_t>(w));
  if (x > 0) fn(p - 1);
  if (x + 1 < w) fn(p + 1);
  if (y + 1 < h) fn(p + static_cast<std::size_t>(w));
}

}  // namespace

WatershedResult watershed_flood(const GrayImage& relief, const LabelMap& markers) {
  if (!relief.same_shape(markers))
    throw Error(ErrorCode::kDimensionMismatch, "watershed: marker map and relief differ in size");
  const auto mv = markers.values();
  if (std::none_of(mv.begin(), mv.end(), [](auto l) { return l > 0; }))
    throw Error(ErrorCode::kNoMarkers, "watershed: no markers");

  const int w = relief.width();
  const int h = relief.height();
  std::vector<std::int32_t> labels(mv.begin(), mv.end());
  std::vector<State> state(labels.size(), State::kFree);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] > 0) state[i] = State::kLabelled;

  // (relief, insertion sequence, pixel); the sequence gives FIFO order on ties.
  using Entry = std::tuple<int, std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::uint64_t seq = 0;
  auto enqueue = [&](std::size_t q) {
    if (state[q] != State::kFree) return;
    state[q] = State::kQueued;
    queue.emplace(relief[q], seq++, q);
  };

  for (std::size_t p = 0; p < labels.size(); ++p)
    if (state[p] == State::kLabelled) for_each_neighbour(w, h, p, enqueue);

  while (!queue.empty()) {
    const std::size_t p = std::get<2>(queue.top());
    queue.pop();
    std::int32_t seen = 0;
    bool conflict = false;
    for_each_neighbour(w, h, p, [&](std::size_t q) {
      if (state[q] != State::kLabelled) return;
      if (seen == 0) {
        seen = labels[q];
      } else if (labels[q] != seen) {
        conflict = true;
      }
    });
    if (conflict || seen == 0) {
      state[p] = State::kRidge;
      continue;
    }
    labels[p] = seen;
    state[p] = State::kLabelled;
    for_each_neighbour(w, h, p, enqueue);
  }

  std::vector<std::uint8_t> ridge(labels.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (state[i] != State::kLabelled) {
      ridge[i] = 1;
      labels[i] = 0;
    }
  }
  return {LabelMap(w, h, std::move(labels)), BinaryMask(w, h, std::move(ridge))};
}

LabelMap regional_minima(const GrayImage& relief) {
  const int w = relief.width();
  const int h = relief.height();
  std::vector<std::int32_t> plateau(relief.size(), 0);
  std::vector<std::int32_t> out(relief.size(), 0);
  std::int32_t next_plateau = 0;
  std::int32_t next_label = 0;
  std::vector<std::size_t> members;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < relief.size(); ++start) {
    if (plateau[start] != 0) continue;
    const auto level = relief[start];
    ++next_plateau;
    members.clear();
    bool is_minimum = true;
    plateau[start] = next_plateau;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      members.push_back(p);
      for_each_neighbour(w, h, p, [&](std::size_t q) {
        if (relief[q] < level) is_minimum = false;
        if (relief[q] == level && plateau[q] == 0) {
          plateau[q] = next_plateau;
          queue.push_back(q);
        }
      });
    }
    if (is_minimum) {
      ++next_label;
      for (auto p : members) out[p] = next_label;
    }
  }
  return LabelMap(w, h, std::move(out));
}

WatershedResult watershed_flood_minima(const GrayImage& relief) {
  return watershed_flood(relief, regional_minima(relief));
}

}  // namespace tumorseg
