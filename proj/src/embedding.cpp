#include "dynlink/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dynlink/error.hpp"
#include "dynlink/rng.hpp"

namespace dynlink {

namespace {

constexpr const char* kModelMagic = "dynlink-model";
constexpr int kModelVersion = 1;

void check_dims(ComplexView a, ComplexView b) {
  DYNLINK_REQUIRE(a.re.size() == a.im.size() && b.re.size() == b.im.size(),
                  "complex vector with mismatched real/imaginary parts");
  DYNLINK_REQUIRE(a.dim() == b.dim(), "complex vector dimension mismatch");
}

double max_abs_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

void write_doubles(std::ostream& out, std::span<const double> xs) {
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto res = std::to_chars(buf, buf + sizeof buf, xs[i]);
    if (i) out << ' ';
    out.write(buf, res.ptr - buf);
  }
  out << '\n';
}

void read_doubles(std::istream& in, std::span<double> xs, const char* block) {
  std::string tok;
  for (double& x : xs) {
    if (!(in >> tok)) throw IoError(std::string("model file truncated in block ") + block);
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw IoError(std::string("bad number in model block ") + block + ": " + tok);
    }
  }
}

}  // namespace

double hermitian_score(ComplexView vi, const DiagonalPhase& phase, ComplexView vj) {
  check_dims(vi, vj);
  DYNLINK_REQUIRE(phase.dim() == vi.dim(), "phase dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < vi.dim(); ++k) {
    const double a = vi.re[k], b = vi.im[k], c = vj.re[k], d = vj.im[k];
    s += std::cos(phase.theta[k]) * (a * c + b * d) + std::sin(phase.theta[k]) * (b * c - a * d);
  }
  return s;
}

double context_score(ComplexView vi, ComplexView uc) {
  check_dims(vi, uc);
  double s = 0.0;
  for (std::size_t k = 0; k < vi.dim(); ++k) s += vi.re[k] * uc.re[k] + vi.im[k] * uc.im[k];
  return s;
}

bool EmbeddingState::all_finite() const noexcept {
  auto finite = [](std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
  };
  return finite(v_f.raw()) && finite(v_d.raw()) && finite(u_f.raw()) && finite(u_d.raw()) &&
         finite(theta_f.theta) && finite(theta_d.theta);
}

double EmbeddingState::max_abs() const noexcept {
  return std::max({max_abs_of(v_f.raw()), max_abs_of(v_d.raw()), max_abs_of(u_f.raw()),
                   max_abs_of(u_d.raw())});
}

EmbeddingState init_state(std::size_t num_nodes, std::size_t d, std::uint64_t seed) {
  DYNLINK_REQUIRE(num_nodes >= 1, "init_state needs at least one node");
  DYNLINK_REQUIRE(d >= 1, "init_state needs d >= 1");
  EmbeddingState s;
  s.d = d;
  s.num_nodes = num_nodes;
  s.seed = seed;
  s.v_f = ComplexMatrix(num_nodes, d);
  s.v_d = ComplexMatrix(num_nodes, d);
  s.u_f = ComplexMatrix(num_nodes, d);
  s.u_d = ComplexMatrix(num_nodes, d);

  const double half = 0.5 / static_cast<double>(d);
  std::uint64_t stream = 0;
  for (ComplexMatrix* m : {&s.v_f, &s.v_d, &s.u_f, &s.u_d}) {
    Rng rng(derive_seed(seed, 0x1417, stream++));
    for (double& x : m->raw()) x = rng.uniform(-half, half);
  }
  for (DiagonalPhase* p : {&s.theta_f, &s.theta_d}) {
    Rng rng(derive_seed(seed, 0x1417, stream++));
    p->theta.resize(d);
    for (double& x : p->theta) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return s;
}

void write_model(std::ostream& out, const EmbeddingState& state) {
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "d " << state.d << '\n';
  out << "nodes " << state.num_nodes << '\n';
  out << "seed " << state.seed << '\n';
  out << "theta_f\n";
  write_doubles(out, state.theta_f.theta);
  out << "theta_d\n";
  write_doubles(out, state.theta_d.theta);
  const std::pair<const char*, const ComplexMatrix*> blocks[] = {
      {"v_f", &state.v_f}, {"v_d", &state.v_d}, {"u_f", &state.u_f}, {"u_d", &state.u_d}};
  for (const auto& [name, m] : blocks) {
    out << name << '\n';
    for (std::size_t i = 0; i < m->rows(); ++i) write_doubles(out, m->raw().subspan(i * state.d * 2, state.d * 2));
  }
}

EmbeddingState read_model(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kModelMagic) throw IoError("not a dynlink model file");
  if (version != kModelVersion) throw IoError("unsupported model version " + std::to_string(version));

  auto expect_key = [&](const char* key) {
    std::string k;
    if (!(in >> k) || k != key) throw IoError(std::string("model file: expected '") + key + "'");
  };
  EmbeddingState s;
  expect_key("d");
  in >> s.d;
  expect_key("nodes");
  in >> s.num_nodes;
  expect_key("seed");
  in >> s.seed;
  if (!in || s.d == 0 || s.num_nodes == 0) throw IoError("model file: bad header");

  s.theta_f = DiagonalPhase(s.d);
  s.theta_d = DiagonalPhase(s.d);
  expect_key("theta_f");
  read_doubles(in, s.theta_f.theta, "theta_f");
  expect_key("theta_d");
  read_doubles(in, s.theta_d.theta, "theta_d");
  const std::pair<const char*, ComplexMatrix*> blocks[] = {
      {"v_f", &s.v_f}, {"v_d", &s.v_d}, {"u_f", &s.u_f}, {"u_d", &s.u_d}};
  for (const auto& [name, m] : blocks) {
    *m = ComplexMatrix(s.num_nodes, s.d);
    expect_key(name);
    read_doubles(in, m->raw(), name);
  }
  if (!s.all_finite()) throw IoError("model file holds non-finite parameters");
  return s;
}

void save_model(const std::string& path, const EmbeddingState& state) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_model(out, state);
  if (!out) throw IoError("write failed for " + path);
}

EmbeddingState load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_model(in);
}

}  // namespace dynlink
