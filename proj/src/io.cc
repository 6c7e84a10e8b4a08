#include "zstates/io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zstates {

Json density_to_json(const DensityMatrix& rho, bool with_raw_flag) {
  Json real = Json::array(), imag = Json::array();
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      real.push_back(rho(r, c).real());
      imag.push_back(rho(r, c).imag());
    }
  }
  Json j = {{"n_qubits", rho.n_qubits()}, {"real", std::move(real)}, {"imag", std::move(imag)}};
  if (with_raw_flag) j["raw"] = rho.raw();
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("real") || !j.contains("imag")) {
    throw std::invalid_argument("density matrix JSON needs n_qubits, real and imag");
  }
  const int n = j.at("n_qubits").get<int>();
  if (n < 1 || n > 13) throw std::invalid_argument("density matrix n_qubits out of range");
  const Eigen::Index d = Eigen::Index{1} << n;
  const auto& re = j.at("real");
  const auto& im = j.at("imag");
  if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(d * d) ||
      im.size() != static_cast<std::size_t>(d * d)) {
    throw std::invalid_argument("density matrix JSON arrays must have 4^n entries");
  }
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto idx = static_cast<std::size_t>(r * d + c);
      m(r, c) = Complex(re[idx].get<double>(), im[idx].get<double>());
    }
  }
  DensityMatrix rho(std::move(m), false);
  rho.set_raw(!rho.is_physical(1e-10));
  return rho;
}

DensityMatrix load_density_matrix(const std::filesystem::path& path) {
  return density_from_json(read_json(path));
}

Json counts_to_json(const CountsTable& counts) {
  Json table = Json::object();
  for (const auto& [bits, n] : counts.counts()) table[bits] = n;
  return {{"n_measured", counts.n_measured()},
          {"shots", counts.shots()},
          {"bit_order", CountsTable::kBitOrder},
          {"counts", std::move(table)}};
}

CountsTable counts_from_json(const Json& j) {
  std::map<std::string, std::uint64_t> table;
  for (const auto& [bits, n] : j.at("counts").items()) table[bits] = n.get<std::uint64_t>();
  if (j.contains("bit_order") && j.at("bit_order") != CountsTable::kBitOrder) {
    throw std::invalid_argument("unsupported counts bit order");
  }
  return CountsTable(j.at("n_measured").get<int>(), j.at("shots").get<std::uint64_t>(),
                     std::move(table));
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string density_csv_rows(const DensityMatrix& rho, const std::string& label) {
  std::ostringstream out;
  out.precision(17);
  const int n = rho.n_qubits();
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      out << label << ',' << r << ',' << c << ',' << outcome_to_bits(r, n) << ','
          << outcome_to_bits(c, n) << ',' << rho(r, c).real() + 0.0 << ','
          << rho(r, c).imag() + 0.0 << '\n';
    }
  }
  return out.str();
}

}  // namespace zstates
