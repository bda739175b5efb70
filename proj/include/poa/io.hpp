#pragma once

// Line-oriented text formats. Every format ignores blank lines and anything
// after '#'; serializers emit single spaces and a trailing newline so that
// serialize(parse(d)) == d for canonical documents.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "poa/errors.hpp"
#include "poa/graph.hpp"
#include "poa/mis3.hpp"
#include "poa/orders.hpp"
#include "poa/sat32.hpp"
#include "poa/solvers.hpp"

namespace poa {

namespace io_detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::istringstream is{std::string(raw)};
    for (std::string tok; is >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

// Sequential reader over the non-empty lines of a document.
class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(split_lines(text)) {}

  bool done() const noexcept { return pos_ == lines_.size(); }
  std::size_t line_number() const noexcept {
    if (lines_.empty()) return 1;
    return done() ? lines_.back().number : lines_[pos_].number;
  }

  const Line& peek() const {
    if (done()) throw ParseError(line_number(), "unexpected end of input");
    return lines_[pos_];
  }

  // Next line, which must start with `tag`.
  const Line& expect(std::string_view tag) {
    const Line& l = peek();
    if (l.tokens[0] != tag)
      throw ParseError(l.number, "expected '" + std::string(tag) + "', found '" + l.tokens[0] + "'");
    ++pos_;
    return l;
  }

  bool next_is(std::string_view tag) const { return !done() && lines_[pos_].tokens[0] == tag; }

  void expect_end() const {
    if (!done()) throw ParseError(lines_[pos_].number, "unexpected trailing line '" + lines_[pos_].tokens[0] + "'");
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

template <typename T>
T parse_int(std::string_view s, std::size_t line, const char* what) {
  T v{};
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

inline void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    throw ParseError(l.number, "'" + l.tokens[0] + "' expects " + std::to_string(n - 1) + " fields, found " +
                                   std::to_string(l.tokens.size() - 1));
}

inline std::vector<Marker> tail(const Line& l, std::size_t from = 1) {
  return {l.tokens.begin() + static_cast<std::ptrdiff_t>(from), l.tokens.end()};
}

inline void append_ids(std::string& out, const std::vector<Marker>& ids) {
  for (const auto& m : ids) out += ' ' + m;
}

// Runs `make` and turns library validation errors into positioned ones.
template <typename F>
auto at_line(std::size_t line, F&& make) -> decltype(make()) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(line, e.what());
  }
}

inline std::string version_header(const char* tag) { return std::string(tag) + " 1\n"; }

inline void expect_version(Reader& r, const char* tag) {
  const Line& l = r.expect(tag);
  expect_arity(l, 2);
  if (l.tokens[1] != "1") throw ParseError(l.number, "unsupported version '" + l.tokens[1] + "'");
}

inline std::string bucket_text(const std::vector<std::vector<Marker>>& buckets) {
  std::string out;
  for (const auto& b : buckets) {
    out += " {";
    append_ids(out, b);
    out += " }";
  }
  return out;
}

inline std::vector<std::vector<Marker>> parse_buckets(const Line& l, std::size_t from) {
  std::vector<std::vector<Marker>> out;
  bool open = false;
  for (std::size_t k = from; k < l.tokens.size(); ++k) {
    const auto& t = l.tokens[k];
    if (t == "{") {
      if (open) throw ParseError(l.number, "nested '{'");
      open = true;
      out.emplace_back();
    } else if (t == "}") {
      if (!open) throw ParseError(l.number, "unmatched '}'");
      if (out.back().empty()) throw ParseError(l.number, "empty bucket");
      open = false;
    } else {
      if (!open) throw ParseError(l.number, "marker '" + t + "' outside a bucket");
      out.back().push_back(t);
    }
  }
  if (open) throw ParseError(l.number, "unterminated bucket");
  return out;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Alignment instances.

inline std::string serialize_order(const std::string& name, const Order& order) {
  std::string out = "order " + name + ' ';
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearOrder>) {
          out += "linear\nperm";
          io_detail::append_ids(out, o.perm());
        } else if constexpr (std::is_same_v<T, WeakOrder>) {
          out += "weak\nbuckets" + io_detail::bucket_text(o.buckets());
        } else if constexpr (std::is_same_v<T, IntervalOrder>) {
          out += "interval\niv";
          for (std::size_t i = 0; i < o.size(); ++i) {
            const auto& iv = o.interval_at(i);
            out += ' ' + o.markers()[i] + "=(" + std::to_string(iv.left) + ',' + std::to_string(iv.right) + ')';
          }
        } else {
          out += "dag\nrel";
          for (const auto& [a, b] : o.relation()) out += ' ' + a + '<' + b;
        }
      },
      order);
  return out + '\n';
}

inline std::string serialize_instance(const AlignmentInstance& inst) {
  std::string out = io_detail::version_header("poa") + "markers";
  io_detail::append_ids(out, inst.markers().ids());
  out += '\n';
  return out + serialize_order("gamma", inst.gamma()) + serialize_order("pi", inst.pi());
}

namespace io_detail {

// Every order must name exactly the declared markers.
inline Order covering(Order o, const MarkerSet& markers, std::size_t line) {
  const MarkerSet got = markers_of(o);
  for (const auto& m : got.ids())
    if (!markers.contains(m)) throw ParseError(line, "unknown marker '" + m + "'");
  if (!got.same_members(markers)) throw ParseError(line, "order does not cover every declared marker");
  return o;
}

inline Order parse_order_body(Reader& r, const MarkerSet& markers, std::size_t& body_line) {
  const Line& head = r.expect("order");
  expect_arity(head, 3);
  const std::string& family = head.tokens[2];
  if (family == "linear") {
    const Line& body = r.expect("perm");
    body_line = body.number;
    return at_line(body.number, [&] { return Order{LinearOrder(tail(body))}; });
  }
  if (family == "weak") {
    const Line& body = r.expect("buckets");
    body_line = body.number;
    auto buckets = parse_buckets(body, 1);
    return at_line(body.number, [&] { return Order{WeakOrder(std::move(buckets))}; });
  }
  if (family == "interval") {
    const Line& body = r.expect("iv");
    body_line = body.number;
    std::vector<std::pair<Marker, Interval>> ivs;
    for (std::size_t k = 1; k < body.tokens.size(); ++k) {
      const std::string& t = body.tokens[k];
      const auto eq = t.find('=');
      const auto comma = t.find(',');
      if (eq == std::string::npos || comma == std::string::npos || t.size() < eq + 4 || t[eq + 1] != '(' ||
          t.back() != ')' || comma < eq)
        throw ParseError(body.number, "malformed interval '" + t + "', expected id=(left,right)");
      std::string_view sv(t);
      const auto left = parse_int<long long>(sv.substr(eq + 2, comma - eq - 2), body.number, "endpoint");
      const auto right = parse_int<long long>(sv.substr(comma + 1, t.size() - comma - 2), body.number, "endpoint");
      ivs.emplace_back(t.substr(0, eq), Interval{left, right});
    }
    return at_line(body.number, [&] { return Order{IntervalOrder(std::move(ivs))}; });
  }
  if (family == "dag") {
    const Line& body = r.expect("rel");
    body_line = body.number;
    std::vector<std::pair<Marker, Marker>> rel;
    for (std::size_t k = 1; k < body.tokens.size(); ++k) {
      const std::string& t = body.tokens[k];
      const auto lt = t.find('<');
      if (lt == std::string::npos || lt == 0 || lt + 1 == t.size())
        throw ParseError(body.number, "malformed relation pair '" + t + "', expected a<b");
      Marker a = t.substr(0, lt), b = t.substr(lt + 1);
      for (const auto* m : {&a, &b})
        if (!markers.contains(*m)) throw ParseError(body.number, "unknown marker '" + *m + "'");
      rel.emplace_back(std::move(a), std::move(b));
    }
    return at_line(body.number, [&] { return Order{DagOrder(markers, std::move(rel))}; });
  }
  throw ParseError(head.number, "unknown order family '" + family + "'");
}

inline Order parse_order(Reader& r, const MarkerSet& markers) {
  std::size_t body_line = 0;
  Order o = parse_order_body(r, markers, body_line);
  return covering(std::move(o), markers, body_line);
}

}  // namespace io_detail

inline AlignmentInstance parse_instance(std::string_view text) {
  io_detail::Reader r(text);
  io_detail::expect_version(r, "poa");
  const auto& ml = r.expect("markers");
  MarkerSet markers = io_detail::at_line(ml.number, [&] { return MarkerSet(io_detail::tail(ml)); });
  Order gamma = io_detail::parse_order(r, markers);
  Order pi = io_detail::parse_order(r, markers);
  r.expect_end();
  return AlignmentInstance(std::move(markers), std::move(gamma), std::move(pi));
}

// ---------------------------------------------------------------------------
// Graphs and 2SAT inputs.

inline std::string serialize_graph(const Graph& g) {
  std::string out = "graph " + std::to_string(g.vertex_count()) + ' ' + std::to_string(g.edge_count()) + '\n';
  for (const auto& e : g.edges()) out += "edge " + std::to_string(e.left) + ' ' + std::to_string(e.right) + '\n';
  return out;
}

namespace io_detail {

inline Graph read_graph(Reader& r) {
  const Line& head = r.expect("graph");
  expect_arity(head, 3);
  const auto n = parse_int<std::size_t>(head.tokens[1], head.number, "vertex count");
  const auto m = parse_int<std::size_t>(head.tokens[2], head.number, "edge count");
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < m; ++j) {
    if (!r.next_is("edge"))
      throw ParseError(r.line_number(), "expected " + std::to_string(m) + " edge lines, found " + std::to_string(j));
    const Line& l = r.expect("edge");
    expect_arity(l, 3);
    edges.push_back({parse_int<std::size_t>(l.tokens[1], l.number, "vertex"),
                     parse_int<std::size_t>(l.tokens[2], l.number, "vertex")});
    if (edges.back().left < 1 || edges.back().right > n || edges.back().left >= edges.back().right)
      throw ParseError(l.number, "edge must satisfy 1 <= u < v <= " + std::to_string(n));
  }
  if (r.next_is("edge")) throw ParseError(r.line_number(), "more edge lines than the declared " + std::to_string(m));
  return at_line(head.number, [&] { return Graph(n, std::move(edges)); });
}

inline std::string literal_text(const Literal& l) { return (l.positive ? "+" : "-") + std::to_string(l.variable); }

inline Literal parse_literal(const std::string& t, std::size_t line) {
  if (t.size() < 2 || (t[0] != '+' && t[0] != '-'))
    throw ParseError(line, "literal '" + t + "' must be a signed variable index such as +1 or -2");
  return {parse_int<std::size_t>(std::string_view(t).substr(1), line, "variable"), t[0] == '+'};
}

inline Sat32Instance read_sat(Reader& r) {
  const Line& head = r.expect("sat32");
  expect_arity(head, 3);
  const auto n = parse_int<std::size_t>(head.tokens[1], head.number, "variable count");
  const auto m = parse_int<std::size_t>(head.tokens[2], head.number, "clause count");
  std::vector<Clause> clauses;
  for (std::size_t j = 0; j < m; ++j) {
    if (!r.next_is("clause"))
      throw ParseError(r.line_number(),
                       "expected " + std::to_string(m) + " clause lines, found " + std::to_string(j));
    const Line& l = r.expect("clause");
    expect_arity(l, 3);
    clauses.push_back({parse_literal(l.tokens[1], l.number), parse_literal(l.tokens[2], l.number)});
  }
  if (r.next_is("clause"))
    throw ParseError(r.line_number(), "more clause lines than the declared " + std::to_string(m));
  return at_line(head.number, [&] { return normalize_sat32(n, std::move(clauses)); });
}

}  // namespace io_detail

inline Graph parse_graph(std::string_view text) {
  io_detail::Reader r(text);
  Graph g = io_detail::read_graph(r);
  r.expect_end();
  return g;
}

inline std::string serialize_sat(const Sat32Instance& sat) {
  std::string out =
      "sat32 " + std::to_string(sat.variable_count()) + ' ' + std::to_string(sat.clause_count()) + '\n';
  for (const auto& c : sat.clauses())
    out += "clause " + io_detail::literal_text(c[0]) + ' ' + io_detail::literal_text(c[1]) + '\n';
  return out;
}

inline Sat32Instance parse_sat(std::string_view text) {
  io_detail::Reader r(text);
  Sat32Instance s = io_detail::read_sat(r);
  r.expect_end();
  return s;
}

// ---------------------------------------------------------------------------
// Solutions, independent sets, assignments.

inline std::string serialize_solution(const AlignmentSolution& s) {
  std::string out = "n_adj=" + std::to_string(s.n_adj) + "\nn_brk=" + std::to_string(s.n_brk) + "\ngamma";
  io_detail::append_ids(out, s.gamma_ext.perm());
  out += "\npi";
  io_detail::append_ids(out, s.pi_ext.perm());
  return out + '\n';
}

// The counts are optional on input; when present they must match.
inline AlignmentSolution parse_solution(std::string_view text) {
  io_detail::Reader r(text);
  std::optional<std::pair<std::size_t, std::size_t>> adj, brk;  // value, line
  auto count_line = [&](const char* key, auto& slot) {
    if (r.done()) return;
    const auto& l = r.peek();
    const std::string prefix = std::string(key) + '=';
    if (l.tokens[0].rfind(prefix, 0) != 0) return;
    io_detail::expect_arity(l, 1);
    slot.emplace(io_detail::parse_int<std::size_t>(std::string_view(l.tokens[0]).substr(prefix.size()), l.number,
                                                   key),
                 l.number);
    r.expect(l.tokens[0]);
  };
  count_line("n_adj", adj);
  count_line("n_brk", brk);
  const auto& gl = r.expect("gamma");
  LinearOrder g = io_detail::at_line(gl.number, [&] { return LinearOrder(io_detail::tail(gl)); });
  const auto& pl = r.expect("pi");
  LinearOrder p = io_detail::at_line(pl.number, [&] { return LinearOrder(io_detail::tail(pl)); });
  r.expect_end();
  AlignmentSolution s =
      io_detail::at_line(pl.number, [&] { return make_solution(std::move(g), std::move(p)); });
  if (adj && adj->first != s.n_adj)
    throw ParseError(adj->second, "n_adj=" + std::to_string(adj->first) + " but the extensions have " +
                                      std::to_string(s.n_adj) + " adjacencies");
  if (brk && brk->first != s.n_brk)
    throw ParseError(brk->second, "n_brk=" + std::to_string(brk->first) + " but the extensions have " +
                                      std::to_string(s.n_brk) + " breakpoints");
  return s;
}

inline std::string serialize_independent_set(const IndependentSet& vs) {
  std::string out = "iset";
  for (auto v : vs.vertices) out += ' ' + std::to_string(v);
  return out + '\n';
}

inline IndependentSet parse_independent_set(std::string_view text) {
  io_detail::Reader r(text);
  const auto& l = r.expect("iset");
  r.expect_end();
  IndependentSet vs;
  for (std::size_t k = 1; k < l.tokens.size(); ++k) {
    vs.vertices.push_back(io_detail::parse_int<std::size_t>(l.tokens[k], l.number, "vertex"));
    if (k > 1 && vs.vertices[k - 2] >= vs.vertices[k - 1])
      throw ParseError(l.number, "vertices must be listed in strictly ascending order");
  }
  return vs;
}

inline std::string serialize_assignment(const Assignment& a) {
  std::string out = "assignment";
  for (std::size_t i = 1; i <= a.values.size(); ++i) out += ' ' + io_detail::literal_text({i, a[i]});
  return out + '\n';
}

// Literals must list variables 1..n in order.
inline Assignment parse_assignment(std::string_view text) {
  io_detail::Reader r(text);
  const auto& l = r.expect("assignment");
  r.expect_end();
  Assignment a;
  for (std::size_t k = 1; k < l.tokens.size(); ++k) {
    const Literal lit = io_detail::parse_literal(l.tokens[k], l.number);
    if (lit.variable != k)
      throw ParseError(l.number, "expected variable " + std::to_string(k) + ", found " + std::to_string(lit.variable));
    a.values.push_back(lit.positive);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Certificates.

inline std::string serialize_mis3_certificate(const Mis3Certificate& c) {
  std::string out = io_detail::version_header("mis3-certificate") + serialize_graph(c.graph);
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    out += "vertex " + std::to_string(i + 1) + ' ' + c.vertices[i].u + ' ' + c.vertices[i].v + '\n';
  for (std::size_t j = 0; j < c.edges.size(); ++j) {
    const auto& e = c.edges[j];
    out += "edge-markers " + std::to_string(j + 1) + ' ' + e.p + ' ' + e.q + ' ' + e.e;
    for (auto pos : {e.blue_q, e.red_e, e.red_q, e.blue_p, e.blue_e, e.red_p}) out += ' ' + std::to_string(pos);
    out += '\n';
  }
  out += "separators";
  io_detail::append_ids(out, c.separators);
  out += "\ngamma";
  io_detail::append_ids(out, c.gamma.perm());
  out += "\nz";
  io_detail::append_ids(out, c.z);
  out += "\nz2";
  io_detail::append_ids(out, c.z2);
  out += '\n';
  for (std::size_t i = 0; i < c.gadgets.size(); ++i) {
    out += "gadget " + std::to_string(i + 1);
    io_detail::append_ids(out, c.gadgets[i]);
    out += '\n';
  }
  out += "intervals";
  for (std::size_t i = 0; i < c.intervals.size(); ++i) {
    const auto& iv = c.intervals.interval_at(i);
    out += ' ' + c.intervals.markers()[i] + "=(" + std::to_string(iv.left) + ',' + std::to_string(iv.right) + ')';
  }
  return out + '\n';
}

inline std::string serialize_sat32_certificate(const Sat32Certificate& c) {
  std::string out = io_detail::version_header("sat32-certificate") + serialize_sat(c.sat);
  for (std::size_t j = 0; j < c.clauses.size(); ++j) {
    const auto& cm = c.clauses[j];
    out += "clause-markers " + std::to_string(j + 1) + ' ' + cm.e[0] + ' ' + cm.e[1] + ' ' + cm.f[0] + ' ' +
           cm.f[1] + ' ' + cm.z + '\n';
  }
  for (std::size_t i = 0; i < c.variables.size(); ++i) {
    const auto& v = c.variables[i];
    out += "variable-markers " + std::to_string(i + 1);
    io_detail::append_ids(out, {v.p, v.q, v.r, v.s, v.t, v.u, v.v, v.a_pos, v.b_pos, v.a_neg, v.b_neg, v.d});
    out += '\n';
  }
  for (std::size_t i = 1; i <= c.sat.variable_count(); ++i) {
    out += "literals " + std::to_string(i);
    for (const auto& r : c.sat.occurrences(i)) out += ' ' + c.e_of(r) + ' ' + c.f_of(r);
    out += '\n';
  }
  for (std::size_t j = 0; j < c.clause_gadgets.size(); ++j)
    out += "C " + std::to_string(j + 1) + io_detail::bucket_text(c.clause_gadgets[j]) + '\n';
  for (std::size_t i = 0; i < c.x_gadgets.size(); ++i)
    out += "X " + std::to_string(i + 1) + io_detail::bucket_text(c.x_gadgets[i]) + '\n';
  for (std::size_t i = 0; i < c.y_gadgets.size(); ++i)
    out += "Y " + std::to_string(i + 1) + io_detail::bucket_text(c.y_gadgets[i]) + '\n';
  out += "gamma" + io_detail::bucket_text(c.gamma_buckets()) + '\n';
  out += "pi" + io_detail::bucket_text(c.pi_buckets()) + '\n';
  return out;
}

namespace io_detail {

// The remaining records must equal those of the certificate rebuilt from the
// source; a mismatch points at the first differing line.
inline void match_records(Reader& r, const std::string& expected_records) {
  Reader want(expected_records);
  while (!want.done()) {
    const Line& w = want.peek();
    if (r.done()) throw ParseError(r.line_number(), "certificate ends before the '" + w.tokens[0] + "' record");
    const Line& got = r.peek();
    if (got.tokens != w.tokens)
      throw ParseError(got.number, "'" + got.tokens[0] + "' record does not match the construction for this input");
    r.expect(got.tokens[0]);
    want.expect(w.tokens[0]);
  }
  r.expect_end();
}

}  // namespace io_detail

inline Mis3Certificate parse_mis3_certificate(std::string_view text) {
  io_detail::Reader r(text);
  io_detail::expect_version(r, "mis3-certificate");
  const std::size_t graph_line = r.line_number();
  Graph g = io_detail::read_graph(r);
  Mis3Certificate c = io_detail::at_line(graph_line, [&] { return build_mis3_certificate(g, true); });
  const std::string full = serialize_mis3_certificate(c);
  const std::string head = io_detail::version_header("mis3-certificate") + serialize_graph(g);
  io_detail::match_records(r, full.substr(head.size()));
  return c;
}

inline Sat32Certificate parse_sat32_certificate(std::string_view text) {
  io_detail::Reader r(text);
  io_detail::expect_version(r, "sat32-certificate");
  Sat32Instance sat = io_detail::read_sat(r);
  Sat32Certificate c = build_sat32_certificate(sat);
  const std::string full = serialize_sat32_certificate(c);
  const std::string head = io_detail::version_header("sat32-certificate") + serialize_sat(sat);
  io_detail::match_records(r, full.substr(head.size()));
  return c;
}

// First tag of a document ("poa", "graph", "sat32", "iset", ...), or empty.
inline std::string document_tag(std::string_view text) {
  const auto lines = io_detail::split_lines(text);
  return lines.empty() ? std::string{} : lines.front().tokens.front();
}

}  // namespace poa
