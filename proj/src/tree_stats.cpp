#include "stylometer/tree_stats.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace stylometer {

std::size_t tree_depth(const ParseTree& tree) {
  std::size_t deepest = 0;
  for (const auto& child : tree.children) deepest = std::max(deepest, tree_depth(child));
  return deepest + 1;
}

namespace {

bool is_atom_char(char c) { return c != '(' && c != ')' && !detail::is_ascii_space(c); }

void serialize_into(const ParseTree& tree, std::string& out) {
  if (tree.label.empty() || !std::all_of(tree.label.begin(), tree.label.end(), is_atom_char)) {
    throw Error(ErrorKind::InvalidArgument, "label '" + tree.label + "' cannot be serialized");
  }
  if (tree.is_leaf()) {
    out += tree.label;
    return;
  }
  out += '(';
  out += tree.label;
  for (const auto& child : tree.children) {
    out += ' ';
    serialize_into(child, out);
  }
  out += ')';
}

void mark_skips(ParseTree& tree, std::string_view marker) {
  tree.is_skip = tree.is_leaf() && tree.label == marker;
  for (auto& child : tree.children) mark_skips(child, marker);
}

std::size_t count_skips(const ParseTree& tree, std::string_view marker) {
  if (tree.is_leaf()) return tree.label == marker ? 1 : 0;
  std::size_t n = 0;
  for (const auto& child : tree.children) n += count_skips(child, marker);
  return n;
}

// Parses one line holding exactly one tree. `base` is the line's file offset.
ParseTree parse_tree_line(std::string_view line, std::size_t base) {
  struct Open {
    ParseTree node;
    std::size_t offset;
  };
  std::vector<Open> stack;
  std::optional<ParseTree> root;
  std::size_t i = 0;
  const std::size_t n = line.size();
  auto read_atom = [&](std::size_t from) {
    std::size_t j = from;
    while (j < n && is_atom_char(line[j])) ++j;
    return j;
  };
  while (i < n) {
    char c = line[i];
    if (detail::is_ascii_space(c)) {
      ++i;
      continue;
    }
    if (root) {
      throw Error(ErrorKind::MalformedLine, "content after a complete tree",
                  SourceLocation::at_byte(base + i));
    }
    if (c == '(') {
      std::size_t open_at = i++;
      while (i < n && detail::is_ascii_space(line[i])) ++i;
      std::size_t end = read_atom(i);
      if (end == i) {
        throw Error(ErrorKind::EmptyNode, "node without a label",
                    SourceLocation::at_byte(base + open_at));
      }
      stack.push_back({ParseTree{std::string(line.substr(i, end - i)), {}, false}, open_at});
      i = end;
    } else if (c == ')') {
      if (stack.empty()) {
        throw Error(ErrorKind::UnbalancedParens, "unmatched ')'", SourceLocation::at_byte(base + i));
      }
      ParseTree done = std::move(stack.back().node);
      stack.pop_back();
      if (stack.empty()) {
        root = std::move(done);
      } else {
        stack.back().node.children.push_back(std::move(done));
      }
      ++i;
    } else {
      std::size_t end = read_atom(i);
      ParseTree leaf{std::string(line.substr(i, end - i)), {}, false};
      if (stack.empty()) {
        root = std::move(leaf);
      } else {
        stack.back().node.children.push_back(std::move(leaf));
      }
      i = end;
    }
  }
  if (!stack.empty()) {
    throw Error(ErrorKind::UnbalancedParens, "unclosed '('",
                SourceLocation::at_byte(base + stack.back().offset));
  }
  return std::move(*root);
}

}  // namespace

std::string serialize(const ParseTree& tree) {
  std::string out;
  serialize_into(tree, out);
  return out;
}

Parsed<DocumentTrees> parse_bracketed(std::string_view input, std::string_view skip_marker,
                                      ParseMode mode) {
  Parsed<DocumentTrees> result;
  std::size_t pos = 0;
  while (pos < input.size()) {
    std::size_t nl = input.find('\n', pos);
    if (nl == std::string_view::npos) nl = input.size();
    const std::size_t line_start = pos;
    std::string_view line = input.substr(pos, nl - pos);
    pos = nl + 1;

    std::size_t lead = 0;
    while (lead < line.size() && detail::is_ascii_space(line[lead])) ++lead;
    if (lead == line.size()) continue;
    std::string_view body = line.substr(lead);
    const std::size_t body_start = line_start + lead;

    try {
      if (body.starts_with("#DOC") && (body.size() == 4 || detail::is_ascii_space(body[4]))) {
        std::string id = detail::trim(body.substr(4));
        if (id.empty()) {
          throw Error(ErrorKind::MalformedLine, "#DOC header without a document id",
                      SourceLocation::at_byte(body_start));
        }
        result.items.push_back(DocumentTrees{DocumentId(id), {}});
        continue;
      }
      if (result.items.empty()) {
        throw Error(ErrorKind::TreeBeforeDocHeader, "tree before the first #DOC header",
                    SourceLocation::at_byte(body_start));
      }
      ParseTree tree = parse_tree_line(body, body_start);
      mark_skips(tree, skip_marker);
      result.items.back().trees.push_back(std::move(tree));
    } catch (const Error& e) {
      if (mode == ParseMode::Strict) throw;
      result.skipped.push_back(Diagnostic{e.kind(), e.detail(), e.where()});
    }
  }
  return result;
}

TreeStats compute_tree_stats(const std::vector<ParseTree>& trees, std::string_view skip_marker) {
  TreeStats stats;
  stats.tree_count = trees.size();
  if (trees.empty()) return stats;
  double depth_sum = 0.0;
  for (const auto& tree : trees) {
    depth_sum += static_cast<double>(tree_depth(tree));
    stats.skip_count += count_skips(tree, skip_marker);
  }
  const auto n = static_cast<double>(trees.size());
  stats.avg_depth = depth_sum / n;
  stats.skip_rate = static_cast<double>(stats.skip_count) / n;
  return stats;
}

std::vector<TreeRow> tree_stats_table(const std::map<DocumentId, TreeStats>& stats,
                                      const std::map<DocumentId, CategoryLabel>& labels) {
  struct Acc {
    std::size_t count = 0;
    double depth = 0.0;
    double skips = 0.0;
  };
  Acc acc[3];
  for (const auto& [id, s] : stats) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      throw Error(ErrorKind::MissingLabel, "document '" + id.str() + "' has no category label");
    }
    if (!s.avg_depth) continue;
    Acc& a = acc[static_cast<std::size_t>(it->second)];
    a.count += 1;
    a.depth += *s.avg_depth;
    a.skips += *s.skip_rate;
  }
  std::vector<TreeRow> rows;
  for (CategoryLabel label : kAllCategories) {
    const Acc& a = acc[static_cast<std::size_t>(label)];
    TreeRow row{label, a.count, std::nullopt, std::nullopt};
    if (a.count > 0) {
      row.mean_depth = a.depth / static_cast<double>(a.count);
      row.mean_skip_rate = a.skips / static_cast<double>(a.count);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stylometer
