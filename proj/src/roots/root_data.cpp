#include "chtrace/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "chtrace/errors.hpp"

namespace chtrace {

namespace {

void link(IntMatrix& a, int i, int j) {
  a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
  a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
}

IntMatrix cartan_matrix(char type, int n) {
  IntMatrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) link(a, i, i + 1);
  };
  auto at = [&](int i, int j) -> int& { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  switch (type) {
    case 'A':
      chain(0, n - 1);
      break;
    case 'B':
      chain(0, n - 1);
      at(n - 1, n - 2) = -2;
      break;
    case 'C':
      chain(0, n - 1);
      at(n - 2, n - 1) = -2;
      break;
    case 'D':
      chain(0, n - 2);
      link(a, n - 3, n - 1);
      break;
    case 'E':
      // 1 - 3 - 4 - 5 - ... with 2 attached to 4
      link(a, 0, 2);
      link(a, 1, 3);
      chain(2, n - 1);
      break;
    case 'F':
      chain(0, 3);
      at(2, 1) = -2;
      break;
    case 'G':
      at(0, 1) = -3;
      at(1, 0) = -1;
      break;
    default:
      fail(ErrorKind::InvalidParameter, std::string("unknown type ") + type);
  }
  return a;
}

std::vector<int> symmetrizers(const IntMatrix& a) {
  // propagate d_j = d_i a_ij / a_ji along edges of the connected diagram
  const std::size_t n = a.size();
  std::vector<mpq_class> d(n, mpq_class(0));
  d[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && a[i][j] != 0 && d[i] != 0 && d[j] == 0) {
          d[j] = d[i] * a[i][j] / a[j][i];
          changed = true;
        }
  }
  mpz_class lcm_den = 1;
  for (auto& x : d) lcm_den = lcm(lcm_den, mpz_class(x.get_den()));
  std::vector<mpz_class> ints;
  for (auto& x : d) ints.push_back(mpz_class(x * lcm_den));
  mpz_class g = 0;
  for (auto& x : ints) g = gcd(g, x);
  std::vector<int> out;
  for (auto& x : ints) out.push_back(static_cast<int>(mpz_class(x / g).get_si()));
  return out;
}

int pairing(const IntMatrix& a, std::size_t i, const Root& v) {
  int s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[j];
  return s;
}

std::vector<Root> positive_roots(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::set<Root> known;
  std::vector<Root> layer;
  for (std::size_t i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    layer.push_back(r);
    known.insert(r);
  }
  std::vector<Root> all;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    all.insert(all.end(), layer.begin(), layer.end());
    std::set<Root> next;
    for (const auto& beta : layer)
      for (std::size_t i = 0; i < n; ++i) {
        // alpha_i-string through beta: beta - p alpha_i ... beta + q alpha_i, p - q = <alpha_i^vee, beta>
        int p = 0;
        Root down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        const int q = p - pairing(a, i, beta);
        if (q > 0) {
          Root up = beta;
          up[i] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    layer.assign(next.begin(), next.end());
    known.insert(layer.begin(), layer.end());
  }
  return all;
}

std::vector<int> minus_w0(char type, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  if (type == 'A') {
    std::reverse(p.begin(), p.end());
  } else if (type == 'D' && n % 2 == 1) {
    std::swap(p[static_cast<std::size_t>(n - 2)], p[static_cast<std::size_t>(n - 1)]);
  } else if (type == 'E' && n == 6) {
    std::swap(p[0], p[5]);
    std::swap(p[2], p[4]);
  }
  return p;
}

}  // namespace

long RootDatum::inner(const Root& a, const Root& b) const {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += static_cast<long>(a[i]) * d[i] * cartan[i][j] * b[j];
  return s;
}

bool admissible(char type, int rank) {
  switch (type) {
    case 'A': return rank >= 1;
    case 'B':
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

int classical_positive_root_count(char type, int n) {
  switch (type) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
    default: fail(ErrorKind::InvalidParameter, std::string("unknown type ") + type);
  }
}

RootDatum build_root_datum(char type, int rank) {
  type = static_cast<char>(std::toupper(static_cast<unsigned char>(type)));
  require(admissible(type, rank), ErrorKind::InvalidParameter,
          "inadmissible root system " + std::string(1, type) + std::to_string(rank));
  RootDatum rd;
  rd.type = type;
  rd.rank = rank;
  rd.cartan = cartan_matrix(type, rank);
  rd.d = symmetrizers(rd.cartan);
  rd.positive_roots = positive_roots(rd.cartan);
  rd.N = static_cast<int>(rd.positive_roots.size());
  require(rd.N == classical_positive_root_count(type, rank), ErrorKind::ConstructionFailed,
          "root closure disagrees with the classical count for " + rd.name());
  rd.w0_diagram = minus_w0(type, rank);
  int two_cycles = 0;
  for (int i = 0; i < rank; ++i)
    if (rd.w0_diagram[static_cast<std::size_t>(i)] > i) ++two_cycles;
  rd.s = rank - two_cycles;
  return rd;
}

RootDatum build_root_datum(const std::string& name) {
  require(name.size() >= 2 && std::isalpha(static_cast<unsigned char>(name[0])), ErrorKind::InvalidParameter,
          "root system names look like A2 or E6");
  const std::string digits = name.substr(1);
  require(std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
              digits.size() <= 4,
          ErrorKind::InvalidParameter, "bad rank in " + name);
  return build_root_datum(name[0], std::stoi(digits));
}

bool validate_ell(const RootDatum& rd, int ell) {
  if (ell < 3 || ell % 2 == 0) return false;
  if (rd.type == 'G' && ell % 3 == 0) return false;
  return true;
}

const Prediction& PredictionTable::at(const std::string& key) const {
  for (const auto& r : rows)
    if (r.key == key) return r;
  fail(ErrorKind::InvalidParameter, "unknown prediction " + key);
}

std::string PredictionTable::to_text() const {
  std::ostringstream os;
  os << "type=" << type_name << " rank=" << rank << " N=" << N << " s=" << s << " ell=" << ell << "\n";
  for (const auto& r : rows) os << r.key << "=" << r.value.get_str() << " (" << ell << "^" << r.exponent << ")\n";
  return os.str();
}

json PredictionTable::to_json() const {
  json rows_j = json::object();
  for (const auto& r : rows) rows_j[r.key] = {{"value", r.value.get_str()}, {"exponent", r.exponent}};
  return json{{"schema", "chtrace/1"}, {"type", type_name}, {"rank", rank}, {"N", N},
              {"s", s},                {"ell", ell},        {"predictions", rows_j}};
}

PredictionTable predict(const RootDatum& rd, int ell) {
  if (!validate_ell(rd, ell)) {
    std::string rule = "ell must be odd and at least 3";
    if (rd.type == 'G') rule += ", and coprime to 3 for G2";
    fail(ErrorKind::InvalidParameter, "ell=" + std::to_string(ell) + " is not admissible for " + rd.name() + ": " + rule);
  }
  const long N = rd.N, n = rd.rank, s = rd.s;
  require((N + s) % 2 == 0, ErrorKind::ConstructionFailed, "N + s must be even");
  const long half = (N + s) / 2;
  const long exps[] = {2 * N + n, N, n, N + n, half, n - s, N - n, half - n, n - s, half - n + s};
  PredictionTable t;
  t.type_name = rd.name();
  t.rank = rd.rank;
  t.N = rd.N;
  t.s = rd.s;
  t.ell = ell;
  std::size_t i = 0;
  for (const char* key : kPredictionKeys) {
    const long e = exps[i++];
    require(e >= 0, ErrorKind::ConstructionFailed, std::string("negative exponent for ") + key);
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(e));
    t.rows.push_back({key, e, v});
  }
  const mpz_class& rank_u = t.at("rank_U_over_Z0").value;
  const mpz_class& deg_u = t.at("degree_U").value;
  require(rank_u == deg_u * deg_u * t.at("deg_Z_over_Z0").value, ErrorKind::ConstructionFailed,
          "rank bookkeeping failed");
  return t;
}

}  // namespace chtrace
