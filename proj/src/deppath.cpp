#include "compsent/features.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace compsent {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

DependencyGraph parse_conll(const std::string& block) {
  DependencyGraph g;
  std::istringstream in(block);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 6)
      throw GraphError("line " + std::to_string(lineno) + ": expected 6 fields, got " +
                       std::to_string(fields.size()));
    DepToken tok;
    try {
      int index = std::stoi(fields[0]);
      if (index != static_cast<int>(g.tokens.size()) + 1)
        throw GraphError("line " + std::to_string(lineno) + ": token index " +
                         fields[0] + " out of sequence");
      tok.form = fields[1];
      tok.lemma = fields[2];
      tok.pos = fields[3];
      tok.head = std::stoi(fields[4]);
      tok.rel = fields[5];
    } catch (const std::invalid_argument&) {
      throw GraphError("line " + std::to_string(lineno) + ": non-numeric index or head");
    }
    g.tokens.push_back(std::move(tok));
  }
  validate_graph(g);
  return g;
}

void validate_graph(const DependencyGraph& g) {
  int n = static_cast<int>(g.tokens.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    int h = g.tokens[i].head;
    if (h < 0 || h > n)
      throw GraphError("token " + std::to_string(i + 1) + ": head " +
                       std::to_string(h) + " out of range");
    if (h == 0) ++roots;
    if (h == i + 1)
      throw GraphError("token " + std::to_string(i + 1) + " is its own head");
  }
  if (n > 0 && roots != 1)
    throw GraphError("expected exactly one root, found " + std::to_string(roots));
  for (int i = 0; i < n; ++i) {
    int cur = i + 1, steps = 0;
    while (cur != 0) {
      cur = g.tokens[cur - 1].head;
      if (++steps > n)
        throw GraphError("cycle through token " + std::to_string(i + 1));
    }
  }
}

namespace {

// 0-based token index of the span member whose head escapes the span.
int span_head(const DependencyGraph& g, int begin, int end) {
  int n = static_cast<int>(g.tokens.size());
  if (begin < 0 || end >= n || begin > end)
    throw GraphError("target span [" + std::to_string(begin) + ", " +
                     std::to_string(end) + "] outside graph of " +
                     std::to_string(n) + " tokens");
  for (int i = begin; i <= end; ++i) {
    int h = g.tokens[i].head;  // 1-based
    if (h == 0 || h - 1 < begin || h - 1 > end) return i;
  }
  return begin;  // unreachable for a valid tree; keeps the function total
}

// [node, parent, ..., root token], all 0-based.
std::vector<int> chain_to_root(const DependencyGraph& g, int node) {
  std::vector<int> chain;
  int cur = node;
  while (true) {
    chain.push_back(cur);
    int h = g.tokens[cur].head;
    if (h == 0) break;
    cur = h - 1;
  }
  return chain;
}

PathNode make_node(const DependencyGraph& g, int index, EdgeDir dir) {
  const DepToken& t = g.tokens[index];
  return PathNode{t.lemma, t.pos, t.rel, dir};
}

}  // namespace

DependencyPath extract_dependency_path(const DependencyGraph& graph,
                                       const PathSpans& spans,
                                       DepPathMode mode) {
  validate_graph(graph);
  int first = span_head(graph, spans.first_begin, spans.first_end);
  int second = span_head(graph, spans.second_begin, spans.second_end);

  auto up_first = chain_to_root(graph, first);
  auto up_second = chain_to_root(graph, second);
  std::unordered_map<int, int> depth_of;  // node -> steps above `first`
  for (std::size_t d = 0; d < up_first.size(); ++d) depth_of[up_first[d]] = static_cast<int>(d);

  int lca = -1, lca_depth_second = 0;
  for (std::size_t d = 0; d < up_second.size(); ++d) {
    auto it = depth_of.find(up_second[d]);
    if (it != depth_of.end()) {
      lca = up_second[d];
      lca_depth_second = static_cast<int>(d);
      break;
    }
  }
  if (lca < 0) throw GraphError("target heads are not connected");

  int edges = depth_of[lca] + lca_depth_second;
  int limit = mode == DepPathMode::Original ? 4 : 16;
  DependencyPath path;
  if (edges > limit) return path;

  if (mode == DepPathMode::Original) {
    // Both branches must fan out from the common ancestor in surface order:
    // every dependent towards the first target sits before it, every
    // dependent towards the second sits after it.
    for (int d = 0; d < depth_of[lca]; ++d)
      if (up_first[d] >= lca) return path;
    for (int d = 0; d < lca_depth_second; ++d)
      if (up_second[d] <= lca) return path;
  }

  path.nopath = false;
  for (int d = 0; d < depth_of[lca]; ++d)
    path.nodes.push_back(make_node(graph, up_first[d], EdgeDir::Up));
  path.nodes.push_back(make_node(graph, lca, EdgeDir::Anchor));
  for (int d = lca_depth_second - 1; d >= 0; --d)
    path.nodes.push_back(make_node(graph, up_second[d], EdgeDir::Down));
  return path;
}

std::string render_path_node(const PathNode& node) {
  char dir = node.dir == EdgeDir::Up ? '^' : node.dir == EdgeDir::Down ? 'v' : '-';
  return node.lemma + '/' + node.pos + '/' + node.rel + '/' + dir;
}

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

SparseVector hash_path_features(const DependencyPath& path, std::size_t dimension) {
  SparseVector out;
  out.dimension = dimension;
  if (path.nopath || path.nodes.empty()) {
    out.entries.emplace_back(0, 1.0);
    return out;
  }
  std::map<std::uint32_t, double> counts;
  auto slot = [dimension](std::uint64_t h) {
    return dimension < 2 ? std::uint32_t{0}
                         : static_cast<std::uint32_t>(1 + h % (dimension - 1));
  };
  std::vector<std::string> rendered;
  rendered.reserve(path.nodes.size());
  for (const auto& n : path.nodes) rendered.push_back(render_path_node(n));
  for (const auto& r : rendered) counts[slot(fnv1a64(r))] += 1.0;
  for (std::size_t i = 0; i + 1 < rendered.size(); ++i)
    counts[slot(fnv1a64(rendered[i] + '|' + rendered[i + 1]))] += 1.0;
  for (auto& [index, value] : counts) out.entries.emplace_back(index, value);
  return out;
}

}  // namespace compsent
