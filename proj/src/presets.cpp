#include "altweib/scheme.hpp"

namespace altweib {
namespace {

constexpr double kDefaultCutoff = 2.73;

std::vector<int> rep(int value, int count) { return std::vector<int>(count, value); }

std::vector<ProgressiveScheme> build_catalog() {
  std::vector<ProgressiveScheme> cat;
  cat.reserve(15);

  // 1: n=58, m=25 — one removal per failure, nine at the last.
  {
    auto r = rep(1, 25);
    r[24] = 9;
    cat.emplace_back(58, 25, std::move(r), kDefaultCutoff);
  }
  // 2: n=75, m=25 — two removals per failure.
  cat.emplace_back(75, 25, rep(2, 25), kDefaultCutoff);
  // 3: n=58, m=25 — front-loaded 16, then one per failure over the tail.
  {
    std::vector<int> r(25, 0);
    r[0] = 16;
    for (int i = 8; i < 25; ++i) r[i] = 1;
    cat.emplace_back(58, 25, std::move(r), kDefaultCutoff);
  }
  // 4: n=80, m=40 — one removal per failure.
  cat.emplace_back(80, 40, rep(1, 40), kDefaultCutoff);
  // 5: n=120, m=40 — two removals per failure.
  cat.emplace_back(120, 40, rep(2, 40), kDefaultCutoff);
  // 6: n=80, m=40 — front-loaded 5 and 6, then one per failure over the tail.
  {
    std::vector<int> r(40, 0);
    r[0] = 5;
    r[1] = 6;
    for (int i = 11; i < 40; ++i) r[i] = 1;
    cat.emplace_back(80, 40, std::move(r), kDefaultCutoff);
  }
  // 7: n=100, m=50 — one removal per failure.
  cat.emplace_back(100, 50, rep(1, 50), kDefaultCutoff);
  // 8: n=150, m=50 — two removals per failure.
  cat.emplace_back(150, 50, rep(2, 50), kDefaultCutoff);
  // 9: n=100, m=50 — alternating 0, 2.
  {
    std::vector<int> r(50, 0);
    for (int i = 1; i < 50; i += 2) r[i] = 2;
    cat.emplace_back(100, 50, std::move(r), kDefaultCutoff);
  }
  // 10: n=150, m=75 — one removal per failure.
  cat.emplace_back(150, 75, rep(1, 75), kDefaultCutoff);
  // 11: n=225, m=75 — two removals per failure.
  cat.emplace_back(225, 75, rep(2, 75), kDefaultCutoff);
  // 12: n=150, m=75 — three per failure over the last third.
  {
    std::vector<int> r(75, 0);
    for (int i = 50; i < 75; ++i) r[i] = 3;
    cat.emplace_back(150, 75, std::move(r), kDefaultCutoff);
  }
  // 13: n=200, m=100 — one removal per failure.
  cat.emplace_back(200, 100, rep(1, 100), kDefaultCutoff);
  // 14: n=300, m=100 — two removals per failure.
  cat.emplace_back(300, 100, rep(2, 100), kDefaultCutoff);
  // 15: n=200, m=100 — fifty at each of the last two failures.
  {
    std::vector<int> r(100, 0);
    r[98] = 50;
    r[99] = 50;
    cat.emplace_back(200, 100, std::move(r), kDefaultCutoff);
  }

  return cat;
}

}  // namespace

const std::vector<ProgressiveScheme>& preset_catalog() {
  static const std::vector<ProgressiveScheme> catalog = build_catalog();
  return catalog;
}

const ProgressiveScheme& preset(int index) {
  const auto& cat = preset_catalog();
  if (index < 1 || index > static_cast<int>(cat.size()))
    throw std::out_of_range("preset: index must lie in 1..15");
  return cat[index - 1];
}

}  // namespace altweib
