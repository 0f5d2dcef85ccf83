#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "nls4/field_io.hpp"

namespace nls4 {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary field format assumes a little-endian host");

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::io, "cannot parse number '" + s + "'");
  }
}

struct Header {
  double L = 0.0;
  std::int64_t carrier = 0;
  bool has_L = false;
};

Header parse_comment(const std::string& line, Header h) {
  std::stringstream ss(line.substr(1));
  std::string kv;
  while (ss >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "L") {
      h.L = parse_double(val);
      h.has_L = true;
    } else if (key == "carrier") {
      h.carrier = std::stoll(val);
    }
  }
  return h;
}

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) fail(ErrorKind::io, "truncated binary stream");
  return v;
}

void write_binary(std::ostream& os, const char* magic, const Grid& g, const CVec& data) {
  os.write(magic, 5);
  put<double>(os, g.L);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(g.M));
  put<std::int64_t>(os, g.carrier);
  for (const auto& v : data) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
}

Grid read_binary(std::istream& is, const char* magic, CVec& data) {
  char m[5];
  is.read(m, 5);
  if (!is || std::memcmp(m, magic, 5) != 0) fail(ErrorKind::io, "bad magic in binary stream");
  double L = get<double>(is);
  auto M = get<std::uint64_t>(is);
  auto carrier = get<std::int64_t>(is);
  Grid g = make_grid(L, static_cast<int>(M), carrier);
  data.assign(M, cplx{});
  for (auto& v : data) {
    double re = get<double>(is);
    double im = get<double>(is);
    v = {re, im};
  }
  return g;
}

}  // namespace

void write_field_csv(std::ostream& os, const Field& f) {
  os << "# L=" << format_double(f.grid.L) << " M=" << f.grid.M << " carrier=" << f.grid.carrier << "\n";
  os << "x,re,im\n";
  for (int j = 0; j < f.grid.M; ++j)
    os << format_double(f.grid.x(j)) << ',' << format_double(f.u[j].real()) << ',' << format_double(f.u[j].imag())
       << '\n';
}

Field read_field_csv(std::istream& is) {
  Header h;
  std::string line;
  std::vector<double> xs;
  CVec vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      h = parse_comment(line, h);
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;
    auto cols = split_csv(line);
    if (cols.size() != 3) fail(ErrorKind::io, "field CSV rows need 3 columns");
    xs.push_back(parse_double(cols[0]));
    vals.emplace_back(parse_double(cols[1]), parse_double(cols[2]));
  }
  if (xs.size() < 2) fail(ErrorKind::io, "field CSV has fewer than two rows");
  int M = static_cast<int>(xs.size());
  double L = h.has_L ? h.L : (xs[1] - xs[0]) * M;
  return Field(make_grid(L, M, h.carrier), std::move(vals));
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "# L=" << format_double(s.grid.L) << " M=" << s.grid.M << " carrier=" << s.grid.carrier << "\n";
  os << "k,xi,re,im\n";
  for (int k = -s.grid.M / 2; k < s.grid.M / 2; ++k) {
    const cplx& c = s.at_k(k);
    os << k << ',' << format_double(s.grid.xi_of_k(k)) << ',' << format_double(c.real()) << ','
       << format_double(c.imag()) << '\n';
  }
}

Spectrum read_spectrum_csv(std::istream& is) {
  Header h;
  std::string line;
  std::vector<std::pair<int, cplx>> rows;
  std::vector<double> xis;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      h = parse_comment(line, h);
      continue;
    }
    if (line.rfind("k,", 0) == 0) continue;
    auto cols = split_csv(line);
    if (cols.size() != 4) fail(ErrorKind::io, "spectrum CSV rows need 4 columns");
    rows.emplace_back(std::stoi(cols[0]), cplx(parse_double(cols[2]), parse_double(cols[3])));
    xis.push_back(parse_double(cols[1]));
  }
  if (rows.size() < 2) fail(ErrorKind::io, "spectrum CSV has fewer than two rows");
  int M = static_cast<int>(rows.size());
  double L = h.has_L ? h.L : 2.0 * pi / (xis[1] - xis[0]);
  Spectrum s(make_grid(L, M, h.carrier));
  for (auto& [k, c] : rows) {
    if (k < -M / 2 || k >= M / 2) fail(ErrorKind::io, "spectrum CSV index out of range");
    s.at_k(k) = c;
  }
  return s;
}

void write_field_binary(std::ostream& os, const Field& f) { write_binary(os, "NLS4F", f.grid, f.u); }

Field read_field_binary(std::istream& is) {
  CVec data;
  Grid g = read_binary(is, "NLS4F", data);
  return Field(g, std::move(data));
}

void write_spectrum_binary(std::ostream& os, const Spectrum& s) { write_binary(os, "NLS4S", s.grid, s.c); }

Spectrum read_spectrum_binary(std::istream& is) {
  CVec data;
  Grid g = read_binary(is, "NLS4S", data);
  Spectrum s(g);
  s.c = std::move(data);
  return s;
}

void save_field_csv(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::io, "cannot open " + path);
  write_field_csv(os, f);
}

Field load_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::io, "cannot open " + path);
  return read_field_csv(is);
}

void save_field_binary(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::io, "cannot open " + path);
  write_field_binary(os, f);
}

Field load_field_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::io, "cannot open " + path);
  return read_field_binary(is);
}

}  // namespace nls4
