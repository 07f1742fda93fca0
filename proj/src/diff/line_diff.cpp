#include "refann/diff/line_diff.hpp"

#include <algorithm>

#include "refann/core/error.hpp"

namespace refann {
namespace {

enum class Op { Equal, Delete, Insert };

struct Step {
  Op op;
  int a;  // 0-based index into before lines at this step
  int b;
};

// A line is its text plus whether it lacks a terminating '\n'; the flag
// only ever differs on the last line of a side.
struct Side {
  std::vector<std::string> lines;
  bool trailing_newline = true;
  bool equal(int i, const Side& other, int j) const {
    return lines[i] == other.lines[j] && unterminated(i) == other.unterminated(j);
  }
  bool unterminated(int i) const {
    return !trailing_newline && i + 1 == static_cast<int>(lines.size());
  }
};

Side make_side(const std::optional<std::string>& content) {
  Side s;
  if (!content) return s;
  s.lines = split_lines(*content);
  s.trailing_newline = content->empty() || content->back() == '\n';
  return s;
}

std::vector<Step> myers(const Side& a, const Side& b) {
  const int n = static_cast<int>(a.lines.size());
  const int m = static_cast<int>(b.lines.size());
  const int max = n + m;
  std::vector<int> v(2 * max + 2, 0);
  std::vector<std::vector<int>> trace;
  auto at = [&](std::vector<int>& vec, int k) -> int& { return vec[k + max + 1]; };

  int found = -1;
  for (int d = 0; d <= max && found < 0; ++d) {
    trace.push_back(v);
    for (int k = -d; k <= d; k += 2) {
      int x = (k == -d || (k != d && at(v, k - 1) < at(v, k + 1))) ? at(v, k + 1) : at(v, k - 1) + 1;
      int y = x - k;
      while (x < n && y < m && a.equal(x, b, y)) ++x, ++y;
      at(v, k) = x;
      if (x >= n && y >= m) {
        found = d;
        break;
      }
    }
  }

  std::vector<Step> steps;
  int x = n, y = m;
  for (int d = found; d >= 0; --d) {
    auto& vd = trace[d];
    const int k = x - y;
    const int prev_k = (k == -d || (k != d && at(vd, k - 1) < at(vd, k + 1))) ? k + 1 : k - 1;
    const int prev_x = at(vd, prev_k);
    const int prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      --x, --y;
      steps.push_back({Op::Equal, x, y});
    }
    if (d == 0) break;
    if (x == prev_x) {
      steps.push_back({Op::Insert, x, prev_y});
    } else {
      steps.push_back({Op::Delete, prev_x, y});
    }
    x = prev_x;
    y = prev_y;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace

std::string_view to_string(LineTag tag) {
  switch (tag) {
    case LineTag::Context: return "Context";
    case LineTag::Delete: return "Delete";
    case LineTag::Insert: return "Insert";
  }
  return "Context";
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      out.emplace_back(text.substr(pos));
      break;
    }
    out.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

FileDiff compute_diff(const FileChange& change, int context_lines) {
  if (change.binary)
    throw Error(ErrorCode::BinaryFile,
                "cannot diff binary file " + change.path_after.value_or(change.path_before.value_or("")));
  const Side a = make_side(change.content_before);
  const Side b = make_side(change.content_after);

  FileDiff diff;
  diff.path_before = change.path_before;
  diff.path_after = change.path_after;
  diff.before_trailing_newline = a.trailing_newline;
  diff.after_trailing_newline = b.trailing_newline;

  const auto steps = myers(a, b);
  const int count = static_cast<int>(steps.size());
  const int ctx = std::max(0, context_lines);
  std::vector<bool> keep(steps.size(), false);
  for (int i = 0; i < count; ++i) {
    if (steps[i].op == Op::Equal) continue;
    for (int j = std::max(0, i - ctx); j <= std::min(count - 1, i + ctx); ++j) keep[j] = true;
  }

  for (int i = 0; i < count;) {
    if (!keep[i]) {
      ++i;
      continue;
    }
    Hunk h;
    const int a0 = steps[i].a;
    const int b0 = steps[i].b;
    for (; i < count && keep[i]; ++i) {
      const Step& s = steps[i];
      switch (s.op) {
        case Op::Equal:
          h.lines.push_back({LineTag::Context, a.lines[s.a]});
          ++h.before_len;
          ++h.after_len;
          break;
        case Op::Delete:
          h.lines.push_back({LineTag::Delete, a.lines[s.a]});
          ++h.before_len;
          break;
        case Op::Insert:
          h.lines.push_back({LineTag::Insert, b.lines[s.b]});
          ++h.after_len;
          break;
      }
    }
    h.before_start = h.before_len > 0 ? a0 + 1 : a0;
    h.after_start = h.after_len > 0 ? b0 + 1 : b0;
    diff.hunks.push_back(std::move(h));
  }
  return diff;
}

std::set<int> changed_line_set(const FileDiff& diff, RevisionSide side) {
  std::set<int> out;
  for (const auto& h : diff.hunks) {
    int before = h.before_start;
    int after = h.after_start;
    for (const auto& l : h.lines) {
      switch (l.tag) {
        case LineTag::Context:
          ++before;
          ++after;
          break;
        case LineTag::Delete:
          if (side == RevisionSide::Before) out.insert(before);
          ++before;
          break;
        case LineTag::Insert:
          if (side == RevisionSide::After) out.insert(after);
          ++after;
          break;
      }
    }
  }
  return out;
}

nlohmann::json diff_to_json(const FileDiff& diff) {
  nlohmann::json j;
  j["pathBefore"] = diff.path_before ? nlohmann::json(*diff.path_before) : nlohmann::json();
  j["pathAfter"] = diff.path_after ? nlohmann::json(*diff.path_after) : nlohmann::json();
  j["beforeTrailingNewline"] = diff.before_trailing_newline;
  j["afterTrailingNewline"] = diff.after_trailing_newline;
  j["hunks"] = nlohmann::json::array();
  for (const auto& h : diff.hunks) {
    nlohmann::json hj;
    hj["beforeStart"] = h.before_start;
    hj["beforeLen"] = h.before_len;
    hj["afterStart"] = h.after_start;
    hj["afterLen"] = h.after_len;
    hj["lines"] = nlohmann::json::array();
    for (const auto& l : h.lines) hj["lines"].push_back({{"tag", to_string(l.tag)}, {"text", l.text}});
    j["hunks"].push_back(std::move(hj));
  }
  return j;
}

}  // namespace refann
