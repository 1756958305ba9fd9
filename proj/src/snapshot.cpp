#include "nsk/snapshot.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "nsk/errors.hpp"

namespace nsk {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

void write_snapshot_csv(const std::filesystem::path& path, const ScalarField& f,
                        const std::string& field_name, const std::optional<std::string>& config_hash) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open snapshot file " + path.string());
  const Grid& g = f.grid();
  os.precision(17);
  os << g.header() << '\n';
  if (config_hash) os << "# config_hash=" << *config_hash << '\n';
  os << (g.dim() == 1 ? "x," : "x,y,") << field_name << '\n';
  for (int i = 0; i < g.n(0); ++i) {
    for (int j = 0; j < g.n(1); ++j) {
      os << g.coord(0, i) << ',';
      if (g.dim() > 1) os << g.coord(1, j) << ',';
      os << f[g.index(i, j)] << '\n';
    }
  }
}

ScalarField read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open snapshot file " + path.string());
  std::string line;
  std::getline(is, line);
  if (line.rfind("# grid ", 0) != 0) throw Error("missing grid header in " + path.string());
  int dim = 0;
  std::array<int, 2> n{1, 1};
  std::array<double, 2> length{1.0, 1.0};
  Boundary boundary = Boundary::Periodic;
  for (const auto& tok : split(line.substr(7), ' ')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "dim") {
      dim = std::stoi(val);
    } else if (key == "n") {
      auto parts = split(val, ',');
      for (std::size_t a = 0; a < parts.size() && a < 2; ++a) n[a] = std::stoi(parts[a]);
    } else if (key == "length") {
      auto parts = split(val, ',');
      for (std::size_t a = 0; a < parts.size() && a < 2; ++a) length[a] = std::stod(parts[a]);
    } else if (key == "boundary") {
      boundary = boundary_from_string(val);
    }
  }
  Grid grid(dim, n, length, boundary);
  std::vector<double> values;
  values.reserve(grid.size());
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    const auto comma = line.rfind(',');
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return ScalarField(grid, std::move(values));
}

}  // namespace nsk
