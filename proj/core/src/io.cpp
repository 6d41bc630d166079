#include "dagcut/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "dagcut/errors.hpp"

namespace dagcut {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  raise(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool next_data_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DagInstance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_data_line(in, line, line_no)) parse_fail(line_no, "missing header line 'n m k'");

  long n = 0, m = 0, k = 0;
  {
    std::istringstream h(line);
    std::string extra;
    if (!(h >> n >> m >> k)) parse_fail(line_no, "header must be 'n m k'");
    if (h >> extra) parse_fail(line_no, "trailing tokens after header");
    if (n <= 0 || m < 0) parse_fail(line_no, "n must be positive and m nonnegative");
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, line_no)) {
      parse_fail(line_no, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    }
    std::istringstream es(line);
    long u = 0, v = 0;
    std::string cost_tok, extra;
    if (!(es >> u >> v >> cost_tok)) parse_fail(line_no, "edge line must be 'u v c'");
    if (es >> extra) parse_fail(line_no, "trailing tokens after edge");
    double c = 0.0;
    const auto* begin = cost_tok.data();
    const auto* end = begin + cost_tok.size();
    auto res = std::from_chars(begin, end, c);
    if (res.ec != std::errc() || res.ptr != end) parse_fail(line_no, "bad cost '" + cost_tok + "'");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), c});
  }
  if (next_data_line(in, line, line_no)) parse_fail(line_no, "unexpected data after last edge");

  return build_instance(static_cast<int>(n), std::move(edges), static_cast<int>(k));
}

DagInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open '" + path + "'");
  return parse_instance(in);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string emit_instance(const DagInstance& inst) {
  std::string out;
  out += std::to_string(inst.vertex_count());
  out += ' ';
  out += std::to_string(inst.edge_count());
  out += ' ';
  out += std::to_string(inst.k());
  out += '\n';
  for (const Edge& e : inst.edges()) {
    out += std::to_string(e.tail);
    out += ' ';
    out += std::to_string(e.head);
    out += ' ';
    out += format_double(e.cost);
    out += '\n';
  }
  return out;
}

DagInstance generate_layered(int layers, int width, double density, std::uint64_t seed, int k) {
  if (layers < 2 || width < 1 || !(density > 0.0) || density > 1.0) {
    raise(ErrorCode::BadParams, "layered generator needs layers>=2, width>=1, density in (0,1]");
  }
  if (k < 0) k = layers - 1;
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int l = 0; l + 1 < layers; ++l) {
    for (int a = 0; a < width; ++a) {
      for (int b = 0; b < width; ++b) {
        const double u = uniform01(rng);
        const double cost = 1.0 + 9.0 * uniform01(rng);
        if (u < density) {
          edges.push_back({l * width + a, (l + 1) * width + b, cost});
        }
      }
    }
  }
  return build_instance(layers * width, std::move(edges), k);
}

DagInstance generate_bipartite(int a, int b, double density, std::uint64_t seed, int k) {
  if (a < 1 || b < 1 || !(density > 0.0) || density > 1.0) {
    raise(ErrorCode::BadParams, "bipartite generator needs a,b>=1 and density in (0,1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double u = uniform01(rng);
      const double cost = 1.0 + 9.0 * uniform01(rng);
      if (u < density) edges.push_back({i, a + j, cost});
    }
  }
  return build_instance(a + b, std::move(edges), k);
}

DagInstance generate_path(int k) {
  if (k < 1) raise(ErrorCode::BadParams, "path generator needs k >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, i + 1, 1.0});
  return build_instance(k + 1, std::move(edges), k);
}

namespace {

struct KvList {
  std::vector<std::pair<std::string, std::string>> items;

  bool has(const std::string& key) const {
    for (const auto& [k, v] : items) {
      if (k == key) return true;
    }
    return false;
  }
  std::string get(const std::string& key, const std::string& fallback = "") const {
    for (const auto& [k, v] : items) {
      if (k == key) return v;
    }
    if (fallback.empty()) raise(ErrorCode::BadParams, "generator spec is missing '" + key + "'");
    return fallback;
  }
};

long to_long(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::BadParams, "bad integer '" + s + "' in generator spec");
  }
}

double to_dbl(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::BadParams, "bad number '" + s + "' in generator spec");
  }
}

}  // namespace

DagInstance generate_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  KvList kv;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::istringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        raise(ErrorCode::BadParams, "generator spec items must look like key=value");
      }
      kv.items.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
  }

  if (kind == "path") {
    return generate_path(static_cast<int>(to_long(kv.get("k"))));
  }
  if (kind == "layered") {
    const int layers = static_cast<int>(to_long(kv.get("L")));
    const int width = static_cast<int>(to_long(kv.get("width")));
    const double density = to_dbl(kv.get("density", "1"));
    const std::uint64_t seed = static_cast<std::uint64_t>(to_long(kv.get("seed", "0")));
    const int k = kv.has("k") ? static_cast<int>(to_long(kv.get("k"))) : -1;
    return generate_layered(layers, width, density, seed, k);
  }
  if (kind == "bipartite") {
    const int a = static_cast<int>(to_long(kv.get("a")));
    const int b = static_cast<int>(to_long(kv.get("b")));
    const double density = to_dbl(kv.get("density", "1"));
    const std::uint64_t seed = static_cast<std::uint64_t>(to_long(kv.get("seed", "0")));
    const int k = kv.has("k") ? static_cast<int>(to_long(kv.get("k"))) : 1;
    return generate_bipartite(a, b, density, seed, k);
  }
  raise(ErrorCode::BadParams, "unknown generator kind '" + kind + "'");
}

void write_cdf_csv(std::ostream& out, const PiecewisePoly& F, int points) {
  if (points < 2) raise(ErrorCode::BadParams, "need at least two CSV points");
  out << "t,F,ratio\n";
  const double lo = to_double(F.domain_lo());
  const double hi = to_double(F.domain_hi());
  const PiecewisePoly dF = F.derivative();
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    const double f = F.eval(t);
    double ratio;
    if (t + 1.0 <= 0.0) {
      ratio = dF.eval(t);  // one-sided limit at t = -1 (F(-1) = 0)
    } else {
      ratio = f / (t + 1.0);
    }
    out << format_double(t) << ',' << format_double(f) << ',' << format_double(ratio) << '\n';
  }
}

}  // namespace dagcut
