#ifndef MAPFLOW_IO_HPP
#define MAPFLOW_IO_HPP

#include <sstream>

#include "mapflow/graph.hpp"

namespace mapflow::io {

struct ParseError : std::runtime_error {
  int line;  // 1-based; 0 = whole-file diagnostic
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error(line_no > 0
                               ? "line " + std::to_string(line_no) + ": " + msg
                               : msg),
        line(line_no) {}
};

/// Instance plus enough surface detail to reprint it in its original form
/// (grid maps keep their cell layout; grid plans print r,c pairs).
struct ParsedInstance {
  Instance instance;
  bool grid_form = false;
  int rows = 0, cols = 0;
  std::vector<std::string> cells;          // grid rows ('.' free, '#' blocked)
  std::vector<int> cell_to_vertex;         // row-major cell -> vertex id or -1
  std::vector<Vertex> agent_goals;         // per-agent goal as written
  std::vector<Vertex> evaders;             // only for escape inputs
  bool has_agents = false;
};

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline int parse_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace detail

inline ParsedInstance parse_instance(const std::string& text) {
  auto lines = detail::split_lines(text);
  std::size_t li = 0;
  auto next_line = [&](const char* what) -> std::pair<std::string, int> {
    while (li < lines.size() && detail::tokens(lines[li]).empty()) ++li;
    if (li >= lines.size())
      throw ParseError(static_cast<int>(lines.size()),
                       std::string("unexpected end of file, expected ") + what);
    int no = static_cast<int>(li) + 1;
    return {lines[li++], no};
  };

  ParsedInstance out;
  auto [header, header_no] = next_line("header");
  auto head = detail::tokens(header);
  if (head.size() == 3 && head[0] == "grid") {
    out.grid_form = true;
    out.rows = detail::parse_int(head[1], header_no);
    out.cols = detail::parse_int(head[2], header_no);
    if (out.rows < 1 || out.cols < 1)
      throw ParseError(header_no, "grid dimensions must be positive");
    for (int r = 0; r < out.rows; ++r) {
      auto [row, row_no] = next_line("map row");
      if (static_cast<int>(row.size()) != out.cols)
        throw ParseError(row_no, "map row has wrong length");
      for (char c : row)
        if (c != '.' && c != '#')
          throw ParseError(row_no, std::string("bad map cell '") + c + "'");
      out.cells.push_back(row);
    }
    out.cell_to_vertex.assign(out.rows * out.cols, -1);
    Graph g;
    for (int r = 0; r < out.rows; ++r)
      for (int c = 0; c < out.cols; ++c)
        if (out.cells[r][c] == '.') {
          out.cell_to_vertex[r * out.cols + c] = g.vertex_count;
          g.coords.push_back({r, c});
          ++g.vertex_count;
        }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int r = 0; r < out.rows; ++r)
      for (int c = 0; c < out.cols; ++c) {
        int u = out.cell_to_vertex[r * out.cols + c];
        if (u < 0) continue;
        if (c + 1 < out.cols) {
          int v = out.cell_to_vertex[r * out.cols + c + 1];
          if (v >= 0) edges.push_back({u, v});
        }
        if (r + 1 < out.rows) {
          int v = out.cell_to_vertex[(r + 1) * out.cols + c];
          if (v >= 0) edges.push_back({u, v});
        }
      }
    auto coords = std::move(g.coords);
    out.instance.graph = Graph::from_edges(g.vertex_count, std::move(edges));
    out.instance.graph.coords = std::move(coords);
  } else if (head.size() == 3 && head[0] == "graph") {
    int V = detail::parse_int(head[1], header_no);
    int E = detail::parse_int(head[2], header_no);
    if (V < 1 || E < 0)
      throw ParseError(header_no, "bad graph header counts");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < E; ++i) {
      auto [line, no] = next_line("edge");
      auto tk = detail::tokens(line);
      if (tk.size() != 2) throw ParseError(no, "edge line needs two ids");
      int u = detail::parse_int(tk[0], no);
      int v = detail::parse_int(tk[1], no);
      if (u < 0 || u >= V || v < 0 || v >= V)
        throw ParseError(no, "edge endpoint out of range");
      if (u == v) throw ParseError(no, "self-loop edge");
      edges.push_back({u, v});
    }
    out.instance.graph = Graph::from_edges(V, std::move(edges));
  } else {
    throw ParseError(header_no, "expected 'grid R C' or 'graph V E' header");
  }

  auto cell_vertex = [&](int r, int c, int no, const char* what) -> Vertex {
    if (r < 0 || r >= out.rows || c < 0 || c >= out.cols)
      throw ParseError(no, std::string(what) + " cell out of range");
    int v = out.cell_to_vertex[r * out.cols + c];
    if (v < 0)
      throw ParseError(no, std::string(what) + " on a blocked cell");
    return v;
  };
  auto graph_vertex = [&](int v, int no, const char* what) -> Vertex {
    if (v < 0 || v >= out.instance.graph.vertex_count)
      throw ParseError(no, std::string(what) + " vertex out of range");
    return v;
  };

  auto [agents_line, agents_no] = next_line("agents");
  auto atk = detail::tokens(agents_line);
  if (atk.size() != 2 || (atk[0] != "agents" && atk[0] != "evaders"))
    throw ParseError(agents_no, "expected 'agents n' or 'evaders m'");
  int n = detail::parse_int(atk[1], agents_no);
  if (n < 1) throw ParseError(agents_no, "agent count must be positive");
  if (atk[0] == "evaders") {
    for (int i = 0; i < n; ++i) {
      auto [line, no] = next_line("evader");
      auto tk = detail::tokens(line);
      if (out.grid_form) {
        if (tk.size() != 2) throw ParseError(no, "evader line needs 'r c'");
        out.evaders.push_back(cell_vertex(detail::parse_int(tk[0], no),
                                          detail::parse_int(tk[1], no), no,
                                          "evader"));
      } else {
        if (tk.size() != 1) throw ParseError(no, "evader line needs one id");
        out.evaders.push_back(
            graph_vertex(detail::parse_int(tk[0], no), no, "evader"));
      }
    }
    std::set<Vertex> dedupe(out.evaders.begin(), out.evaders.end());
    if (dedupe.size() != out.evaders.size())
      throw ParseError(agents_no, "duplicate evaders");
  } else {
    out.has_agents = true;
    for (int i = 0; i < n; ++i) {
      auto [line, no] = next_line("agent");
      auto tk = detail::tokens(line);
      Vertex s, g;
      if (out.grid_form) {
        if (tk.size() != 4)
          throw ParseError(no, "agent line needs 'sr sc gr gc'");
        s = cell_vertex(detail::parse_int(tk[0], no),
                        detail::parse_int(tk[1], no), no, "start");
        g = cell_vertex(detail::parse_int(tk[2], no),
                        detail::parse_int(tk[3], no), no, "goal");
      } else {
        if (tk.size() != 2) throw ParseError(no, "agent line needs 's g'");
        s = graph_vertex(detail::parse_int(tk[0], no), no, "start");
        g = graph_vertex(detail::parse_int(tk[1], no), no, "goal");
      }
      out.instance.starts.push_back(s);
      out.agent_goals.push_back(g);
    }
  }

  out.instance.mode = Mode::unlabeled;
  while (li < lines.size()) {
    auto tk = detail::tokens(lines[li]);
    if (tk.empty()) {
      ++li;
      continue;
    }
    int no = static_cast<int>(li) + 1;
    if (tk.size() == 2 && tk[0] == "mode") {
      if (tk[1] == "labeled")
        out.instance.mode = Mode::labeled;
      else if (tk[1] == "unlabeled")
        out.instance.mode = Mode::unlabeled;
      else if (tk[1] == "goal_replacement")
        out.instance.mode = Mode::goal_replacement;
      else
        throw ParseError(no, "unknown mode '" + tk[1] + "'");
      ++li;
    } else {
      throw ParseError(no, "unexpected trailing content");
    }
  }

  if (out.has_agents) {
    if (out.instance.mode == Mode::goal_replacement) {
      // goals are reusable; keep first-appearance order, drop duplicates
      std::set<Vertex> seen;
      for (Vertex g : out.agent_goals)
        if (seen.insert(g).second) out.instance.goals.push_back(g);
    } else {
      out.instance.goals = out.agent_goals;
    }
    auto report = validate_instance(out.instance);
    if (!report.empty()) throw ParseError(0, report.front());
  } else if (out.evaders.empty()) {
    throw ParseError(0, "no agents or evaders");
  }
  return out;
}

inline std::string print_instance(const ParsedInstance& p) {
  std::ostringstream out;
  if (p.grid_form) {
    out << "grid " << p.rows << " " << p.cols << "\n";
    for (const auto& row : p.cells) out << row << "\n";
  } else {
    const Graph& g = p.instance.graph;
    out << "graph " << g.vertex_count << " " << g.edges.size() << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
  }
  auto coord = [&](Vertex v) { return p.instance.graph.coords[v]; };
  if (p.has_agents) {
    out << "agents " << p.instance.starts.size() << "\n";
    for (std::size_t i = 0; i < p.instance.starts.size(); ++i) {
      if (p.grid_form) {
        auto [sr, sc] = coord(p.instance.starts[i]);
        auto [gr, gc] = coord(p.agent_goals[i]);
        out << sr << " " << sc << " " << gr << " " << gc << "\n";
      } else {
        out << p.instance.starts[i] << " " << p.agent_goals[i] << "\n";
      }
    }
    out << "mode " << to_string(p.instance.mode) << "\n";
  } else {
    out << "evaders " << p.evaders.size() << "\n";
    for (Vertex v : p.evaders) {
      if (p.grid_form) {
        auto [r, c] = coord(v);
        out << r << " " << c << "\n";
      } else {
        out << v << "\n";
      }
    }
  }
  return out.str();
}

inline std::string print_plan(const ParsedInstance& p, const Plan& plan) {
  std::ostringstream out;
  out << "plan " << plan.agent_count() << " " << plan.horizon() << "\n";
  for (const auto& path : plan.paths) {
    for (std::size_t t = 0; t < path.vertices.size(); ++t) {
      if (t) out << " ";
      if (p.grid_form) {
        auto [r, c] = p.instance.graph.coords[path.vertices[t]];
        out << r << "," << c;
      } else {
        out << path.vertices[t];
      }
    }
    out << "\n";
  }
  out << "makespan " << plan.makespan() << " total_distance "
      << plan.total_distance() << " total_arrival " << plan.total_arrival()
      << "\n";
  return out.str();
}

inline Plan parse_plan(const ParsedInstance& p, const std::string& text) {
  auto lines = detail::split_lines(text);
  std::size_t li = 0;
  auto next_line = [&](const char* what) -> std::pair<std::string, int> {
    while (li < lines.size() && detail::tokens(lines[li]).empty()) ++li;
    if (li >= lines.size())
      throw ParseError(static_cast<int>(lines.size()),
                       std::string("unexpected end of file, expected ") + what);
    int no = static_cast<int>(li) + 1;
    return {lines[li++], no};
  };
  auto [header, header_no] = next_line("plan header");
  auto head = detail::tokens(header);
  if (head.size() != 3 || head[0] != "plan")
    throw ParseError(header_no, "expected 'plan n T' header");
  int n = detail::parse_int(head[1], header_no);
  int T = detail::parse_int(head[2], header_no);
  if (n < 1 || T < 0) throw ParseError(header_no, "bad plan header counts");

  Plan plan;
  for (int i = 0; i < n; ++i) {
    auto [line, no] = next_line("path row");
    auto tk = detail::tokens(line);
    if (static_cast<int>(tk.size()) != T + 1)
      throw ParseError(no, "path row needs " + std::to_string(T + 1) +
                               " entries");
    Path path;
    for (const auto& tok : tk) {
      Vertex v;
      if (p.grid_form) {
        auto comma = tok.find(',');
        if (comma == std::string::npos)
          throw ParseError(no, "expected 'r,c' entry, got '" + tok + "'");
        int r = detail::parse_int(tok.substr(0, comma), no);
        int c = detail::parse_int(tok.substr(comma + 1), no);
        if (r < 0 || r >= p.rows || c < 0 || c >= p.cols)
          throw ParseError(no, "cell out of range");
        v = p.cell_to_vertex[r * p.cols + c];
        if (v < 0) throw ParseError(no, "path enters a blocked cell");
      } else {
        v = detail::parse_int(tok, no);
        if (v < 0 || v >= p.instance.graph.vertex_count)
          throw ParseError(no, "vertex id out of range");
      }
      path.vertices.push_back(v);
    }
    plan.paths.push_back(std::move(path));
  }
  // optional footer; recomputed statistics are authoritative
  while (li < lines.size()) {
    auto tk = detail::tokens(lines[li]);
    int no = static_cast<int>(li) + 1;
    ++li;
    if (tk.empty()) continue;
    if (tk.size() == 6 && tk[0] == "makespan") continue;
    throw ParseError(no, "unexpected trailing content");
  }
  return plan;
}

}  // namespace mapflow::io

#endif  // MAPFLOW_IO_HPP
