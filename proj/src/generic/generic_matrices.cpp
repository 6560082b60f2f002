#include "chtrace/generic_matrices.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <numeric>
#include <sstream>
#include <thread>

#include "chtrace/errors.hpp"

namespace chtrace {

// ------------------------------------------------------------ tuples

MatrixTuple::MatrixTuple(std::vector<Mat> m) : mats(std::move(m)) {
  require(!mats.empty(), ErrorKind::InvalidParameter, "matrix tuple must be nonempty");
  const std::size_t n = mats.front().rows();
  require(n >= 1, ErrorKind::InvalidParameter, "matrices must be at least 1x1");
  for (const auto& x : mats) {
    require(x.rows() == n && x.cols() == n, ErrorKind::InvalidParameter, "tuple matrices must share one square shape");
    require(x.field() == mats.front().field(), ErrorKind::InvalidParameter, "tuple matrices must share one field");
  }
}

MatrixTuple MatrixTuple::conjugated(const Mat& g) const {
  const Mat gi = inverse(g);
  std::vector<Mat> out;
  for (const auto& x : mats) out.push_back(g * x * gi);
  return MatrixTuple(std::move(out));
}

Mat mat_from_json(const json& j, const Field& f) {
  require(j.is_array() && !j.empty(), ErrorKind::InvalidInput, "matrix must be a nonempty array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) {
    require(r.is_array(), ErrorKind::InvalidInput, "matrix rows must be arrays");
    Vec v;
    for (const auto& x : r) v.push_back(scalar_from_json(x, f));
    require(rows.empty() || v.size() == rows.front().size(), ErrorKind::InvalidInput, "ragged matrix");
    rows.push_back(std::move(v));
  }
  return Mat::from_rows(f, rows);
}

json mat_to_json(const Mat& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

MatrixTuple tuple_from_json(const json& j, const Field& f) {
  require(j.is_array() && !j.empty(), ErrorKind::InvalidInput, "tuple must be a nonempty array of matrices");
  std::vector<Mat> mats;
  for (const auto& m : j) mats.push_back(mat_from_json(m, f));
  return MatrixTuple(std::move(mats));
}

Mat random_rational_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  Mat m(Field::rationals(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const long a = num(rng);
      m(i, j) = Scalar(Rational(a, den(rng)));
    }
  return m;
}

// ------------------------------------------------------------ expressions

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == '(' || c == ')') {
      flush();
      tokens.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

int parse_index(const std::string& s, const std::string& what) {
  require(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }),
          ErrorKind::InvalidInput, "bad " + what + ": " + s);
  return std::stoi(s);
}

struct Parser {
  std::vector<std::string> tokens;
  std::size_t pos = 0;

  const std::string& next() {
    require(pos < tokens.size(), ErrorKind::InvalidInput, "unexpected end of expression");
    return tokens[pos++];
  }

  TraceExpr expr() {
    const std::string tok = next();
    if (tok == ")") fail(ErrorKind::InvalidInput, "unexpected ')'");
    if (tok != "(") return atom(tok);
    const std::string head = next();
    if (head == "eij") {
      const int i = parse_index(next(), "row"), j = parse_index(next(), "column");
      require(next() == ")", ErrorKind::InvalidInput, "eij takes two indices");
      return TraceExpr::unit(i, j);
    }
    std::vector<TraceExpr> args;
    while (true) {
      require(pos < tokens.size(), ErrorKind::InvalidInput, "missing ')'");
      if (tokens[pos] == ")") {
        ++pos;
        break;
      }
      args.push_back(expr());
    }
    if (head == "mul") return TraceExpr::node(TraceExpr::Kind::Mul, std::move(args));
    if (head == "add") return TraceExpr::node(TraceExpr::Kind::Add, std::move(args));
    if (head == "sub") return TraceExpr::node(TraceExpr::Kind::Sub, std::move(args));
    if (head == "tr") return TraceExpr::node(TraceExpr::Kind::Tr, std::move(args));
    fail(ErrorKind::InvalidInput, "unknown operator " + head);
  }

  static TraceExpr atom(const std::string& tok) {
    if (tok.size() > 1 && tok[0] == 'x') return TraceExpr::var(parse_index(tok.substr(1), "variable"));
    try {
      return TraceExpr::constant(Rational::parse(tok));
    } catch (const Error&) {
      fail(ErrorKind::InvalidInput, "bad atom " + tok);
    }
  }
};

}  // namespace

TraceExpr TraceExpr::parse(const std::string& text) {
  Parser p{tokenize(text)};
  TraceExpr e = p.expr();
  require(p.pos == p.tokens.size(), ErrorKind::InvalidInput, "trailing tokens in expression");
  return e;
}

TraceExpr TraceExpr::var(int index) {
  require(index >= 1, ErrorKind::InvalidParameter, "variables are numbered from 1");
  TraceExpr e;
  e.kind_ = Kind::Var;
  e.index_ = index;
  return e;
}

TraceExpr TraceExpr::constant(Rational c) {
  TraceExpr e;
  e.kind_ = Kind::Const;
  e.value_ = std::move(c);
  return e;
}

TraceExpr TraceExpr::node(Kind kind, std::vector<TraceExpr> children) {
  switch (kind) {
    case Kind::Mul:
    case Kind::Add:
      require(!children.empty(), ErrorKind::InvalidInput, "mul/add need at least one argument");
      break;
    case Kind::Sub:
      require(children.size() == 2, ErrorKind::InvalidInput, "sub takes two arguments");
      break;
    case Kind::Tr:
      require(children.size() == 1, ErrorKind::InvalidInput, "tr takes one argument");
      break;
    default:
      fail(ErrorKind::InvalidParameter, "not an interior node kind");
  }
  TraceExpr e;
  e.kind_ = kind;
  e.children_ = std::move(children);
  return e;
}

TraceExpr TraceExpr::unit(int i, int j) {
  require(i >= 1 && j >= 1, ErrorKind::InvalidParameter, "matrix unit indices are 1-based");
  TraceExpr e;
  e.kind_ = Kind::Eij;
  e.index_ = i;
  e.col_ = j;
  return e;
}

std::string TraceExpr::to_string() const {
  switch (kind_) {
    case Kind::Var: return "x" + std::to_string(index_);
    case Kind::Const: return value_.to_string();
    case Kind::Eij: return "(eij " + std::to_string(index_) + " " + std::to_string(col_) + ")";
    default: break;
  }
  std::string head = kind_ == Kind::Mul ? "mul" : kind_ == Kind::Add ? "add" : kind_ == Kind::Sub ? "sub" : "tr";
  std::string out = "(" + head;
  for (const auto& c : children_) out += " " + c.to_string();
  return out + ")";
}

int TraceExpr::max_variable() const {
  int m = kind_ == Kind::Var ? index_ : 0;
  for (const auto& c : children_) m = std::max(m, c.max_variable());
  return m;
}

Mat ExprValue::as_matrix(std::size_t n) const {
  if (!is_scalar) return matrix;
  return Mat::identity(scalar.field(), n).scaled(scalar);
}

namespace {

ExprValue scalar_value(Scalar s) { return ExprValue{true, std::move(s), {}}; }
ExprValue matrix_value(Mat m) { return ExprValue{false, Scalar(), std::move(m)}; }

ExprValue multiply(const ExprValue& a, const ExprValue& b) {
  if (a.is_scalar && b.is_scalar) return scalar_value(a.scalar * b.scalar);
  if (a.is_scalar) return matrix_value(b.matrix.scaled(a.scalar));
  if (b.is_scalar) return matrix_value(a.matrix.scaled(b.scalar));
  return matrix_value(a.matrix * b.matrix);
}

ExprValue combine(const ExprValue& a, const ExprValue& b, bool subtract, std::size_t n) {
  if (a.is_scalar && b.is_scalar) return scalar_value(subtract ? a.scalar - b.scalar : a.scalar + b.scalar);
  return matrix_value(subtract ? a.as_matrix(n) - b.as_matrix(n) : a.as_matrix(n) + b.as_matrix(n));
}

}  // namespace

ExprValue eval(const TraceExpr& e, const MatrixTuple& tuple) {
  const std::size_t n = tuple.n();
  const Field& f = tuple.field();
  using K = TraceExpr::Kind;
  switch (e.kind()) {
    case K::Var:
      require(static_cast<std::size_t>(e.index()) <= tuple.size(), ErrorKind::InvalidParameter,
              "variable x" + std::to_string(e.index()) + " out of range for a tuple of " + std::to_string(tuple.size()));
      return matrix_value(tuple[static_cast<std::size_t>(e.index() - 1)]);
    case K::Const:
      return scalar_value(Scalar::from_rational(f, e.value()));
    case K::Eij: {
      require(static_cast<std::size_t>(e.index()) <= n && static_cast<std::size_t>(e.col()) <= n,
              ErrorKind::InvalidParameter, "matrix unit out of range");
      Mat m(f, n, n);
      m(static_cast<std::size_t>(e.index() - 1), static_cast<std::size_t>(e.col() - 1)) = Scalar::one(f);
      return matrix_value(std::move(m));
    }
    case K::Tr: {
      const ExprValue v = eval(e.children().front(), tuple);
      if (v.is_scalar) return scalar_value(v.scalar * Scalar::from_rational(f, Rational(static_cast<long>(n))));
      return scalar_value(v.matrix.trace());
    }
    case K::Mul: {
      ExprValue acc = eval(e.children().front(), tuple);
      for (std::size_t i = 1; i < e.children().size(); ++i) acc = multiply(acc, eval(e.children()[i], tuple));
      return acc;
    }
    case K::Add:
    case K::Sub: {
      ExprValue acc = eval(e.children().front(), tuple);
      for (std::size_t i = 1; i < e.children().size(); ++i)
        acc = combine(acc, eval(e.children()[i], tuple), e.kind() == K::Sub, n);
      return acc;
    }
  }
  fail(ErrorKind::InvalidParameter, "unknown expression node");
}

// ------------------------------------------------------------ permutations

CyclePermutation CyclePermutation::from_images(std::vector<int> images) {
  const int N = static_cast<int>(images.size());
  require(N >= 1, ErrorKind::InvalidParameter, "empty permutation");
  std::vector<bool> seen(static_cast<std::size_t>(N) + 1, false);
  for (int v : images) {
    require(v >= 1 && v <= N && !seen[static_cast<std::size_t>(v)], ErrorKind::InvalidParameter, "not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  CyclePermutation p;
  p.images_ = std::move(images);
  std::vector<bool> done(static_cast<std::size_t>(N) + 1, false);
  for (int v = p(N); v != N; v = p(v)) {
    p.open_.push_back(v);
    done[static_cast<std::size_t>(v)] = true;
  }
  done[static_cast<std::size_t>(N)] = true;
  for (int s = 1; s < N; ++s) {
    if (done[static_cast<std::size_t>(s)]) continue;
    std::vector<int> cyc;
    for (int v = s; !done[static_cast<std::size_t>(v)]; v = p(v)) {
      cyc.push_back(v);
      done[static_cast<std::size_t>(v)] = true;
    }
    p.closed_.push_back(std::move(cyc));
  }
  return p;
}

CyclePermutation CyclePermutation::from_cycles(int N, const std::vector<std::vector<int>>& cycles) {
  require(N >= 1, ErrorKind::InvalidParameter, "permutation degree must be positive");
  std::vector<int> images(static_cast<std::size_t>(N));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(N) + 1, false);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      require(c[i] >= 1 && c[i] <= N && !used[static_cast<std::size_t>(c[i])], ErrorKind::InvalidParameter,
              "cycles must be disjoint and within 1..N");
      used[static_cast<std::size_t>(c[i])] = true;
      images[static_cast<std::size_t>(c[i] - 1)] = c[(i + 1) % c.size()];
    }
  return from_images(std::move(images));
}

int CyclePermutation::sign() const {
  std::size_t transpositions = open_.size();  // the open cycle has length |open| + 1
  for (const auto& c : closed_) transpositions += c.size() - 1;
  return transpositions % 2 == 0 ? 1 : -1;
}

std::string CyclePermutation::to_string() const {
  std::ostringstream os;
  for (const auto& c : closed_) {
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ")";
  }
  os << "(";
  for (int v : open_) os << v << " ";
  os << degree() << ")";
  return os.str();
}

Mat phi_sigma(const CyclePermutation& sigma, const MatrixTuple& xs) {
  require(static_cast<int>(xs.size()) == sigma.degree() - 1, ErrorKind::InvalidParameter,
          "phi_sigma needs a tuple of length deg(sigma) - 1");
  const std::size_t n = xs.n();
  const Field& f = xs.field();
  auto word = [&](const std::vector<int>& w) {
    Mat m = xs[static_cast<std::size_t>(w.front() - 1)];
    for (std::size_t i = 1; i < w.size(); ++i) m = m * xs[static_cast<std::size_t>(w[i] - 1)];
    return m;
  };
  Scalar coeff = Scalar::one(f);
  for (const auto& c : sigma.closed_cycles()) coeff *= word(c).trace();
  if (sigma.open_word().empty()) return Mat::identity(f, n).scaled(coeff);
  return word(sigma.open_word()).scaled(coeff);
}

Mat ch_multilinear(int n, const MatrixTuple& xs) {
  require(n >= 1 && n <= 6, ErrorKind::InvalidParameter, "ch_multilinear supports 1 <= n <= 6");
  require(static_cast<int>(xs.size()) == n, ErrorKind::InvalidParameter, "ch_multilinear needs n matrices");
  std::vector<int> images(static_cast<std::size_t>(n) + 1);
  std::iota(images.begin(), images.end(), 1);
  Mat total(xs.field(), xs.n(), xs.n());
  do {
    const auto sigma = CyclePermutation::from_images(images);
    const Mat phi = phi_sigma(sigma, xs);
    total = sigma.sign() > 0 ? total + phi : total - phi;
  } while (std::next_permutation(images.begin(), images.end()));
  return n % 2 == 0 ? total : total.scaled(Scalar::from_rational(xs.field(), Rational(-1)));
}

// ------------------------------------------------------------ semisimplicity

std::vector<Mat> generated_algebra_basis(const MatrixTuple& xs, double tol) {
  const std::size_t n = xs.n();
  const Field& f = xs.field();
  SpanBuilder span(f, n * n, tol);
  std::vector<Mat> basis;
  auto offer = [&](const Mat& m) {
    if (span.add(m.data())) basis.push_back(m);
  };
  offer(Mat::identity(f, n));
  for (std::size_t next = 0; next < basis.size() && basis.size() < n * n; ++next)
    for (const auto& g : xs.mats) {
      offer(g * basis[next]);
      if (basis.size() == n * n) break;
    }
  return basis;
}

FiniteTraceAlgebra generated_algebra(const MatrixTuple& xs, double tol) {
  return matrix_subalgebra(generated_algebra_basis(xs, tol));
}

bool artin_semisimple(const MatrixTuple& xs) { return radical(generated_algebra(xs)).empty(); }

Scalar discriminant_probe(const MatrixTuple& xs, int trials, std::uint64_t seed) {
  require(trials >= 1, ErrorKind::InvalidParameter, "trials must be >= 1");
  const Field& f = xs.field();
  const std::size_t n = xs.n(), nn = n * n;
  const auto basis = generated_algebra_basis(xs);
  Scalar best = Scalar::zero(f);
  if (basis.size() < nn) return best;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> u(-3, 3);
  for (int t = 0; t < trials; ++t) {
    std::vector<Mat> us;
    for (std::size_t i = 0; i < nn; ++i) {
      Mat m(f, n, n);
      for (const auto& b : basis) m = m + b.scaled(Scalar::from_rational(f, Rational(u(rng))));
      us.push_back(std::move(m));
    }
    Mat gram(f, nn, nn);
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = i; j < nn; ++j) gram(i, j) = gram(j, i) = (us[i] * us[j]).trace();
    Scalar det = determinant(gram);
    if (f.tag == ScalarTag::Rat) det = Scalar(det.rat().abs());
    if (f.tag == ScalarTag::C64) det = Scalar(Complex(std::abs(det.c64()), 0.0));
    if (det.magnitude() > best.magnitude()) best = det;
  }
  return best;
}

bool equivariance_check(const TraceExpr& e, const MatrixTuple& xs, const Mat& g, double tol) {
  require(g.square() && g.rows() == xs.n(), ErrorKind::InvalidParameter, "g must match the tuple size");
  const Mat gi = inverse(g);
  const ExprValue lhs = eval(e, xs.conjugated(g));
  const ExprValue rhs = eval(e, xs);
  const double t = xs.field().exact() ? 0.0 : tol;
  if (lhs.is_scalar && rhs.is_scalar) return (lhs.scalar - rhs.scalar).is_zero(t);
  const std::size_t n = xs.n();
  return (lhs.as_matrix(n) - g * rhs.as_matrix(n) * gi).is_zero(t);
}

// ------------------------------------------------------------ batch check

ChCheckReport ch_multilinear_trials(int n, std::size_t size, int trials, std::uint64_t seed, int jobs) {
  require(n >= 1 && n <= 6, ErrorKind::InvalidParameter, "n must be in 1..6");
  require(size >= 1, ErrorKind::InvalidParameter, "size must be positive");
  require(trials >= 1, ErrorKind::InvalidParameter, "trials must be >= 1");
  std::vector<char> ok(static_cast<std::size_t>(trials), 0);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
      std::vector<Mat> mats;
      for (int i = 0; i < n; ++i) mats.push_back(random_rational_matrix(size, rng));
      ok[static_cast<std::size_t>(t)] = ch_multilinear(n, MatrixTuple(std::move(mats))).is_zero() ? 1 : 0;
    }
  };
  const int workers = std::clamp(jobs, 1, trials);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ChCheckReport r;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    if (ok[static_cast<std::size_t>(t)]) {
      ++r.vanished;
    } else if (r.first_failure < 0) {
      r.first_failure = t;
    }
  }
  return r;
}

}  // namespace chtrace
