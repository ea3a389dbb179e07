#include "firecast/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "firecast/errors.hpp"
#include "firecast/stats.hpp"

namespace firecast::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const fs::path& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ": cannot parse number '" + s + "'");
  }
}

long parse_long(const std::string& s, const fs::path& path) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ": cannot parse integer '" + s + "'");
  }
}

void expect_header(const std::vector<std::string>& lines,
                   const std::string& header, const fs::path& path) {
  if (lines.empty() || lines[0] != header) {
    throw DataError(path.string() + ": expected header '" + header + "'");
  }
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

std::uint64_t file_fnv1a64(const fs::path& path) {
  const std::string text = read_text(path);
  return fnv1a64(text.data(), text.size());
}

void write_statefield(const fs::path& path, const StateField& sf) {
  std::ostringstream out;
  out << "t,cell,state\n";
  for (int t = 0; t < sf.steps(); ++t) {
    for (int i = 0; i < sf.cells(); ++i) {
      out << (t + 1) << ',' << (i + 1) << ',' << int(sf.at(t, i)) << '\n';
    }
  }
  atomic_write_text(path, out.str());
}

StateField read_statefield(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  expect_header(lines, "t,cell,state", path);
  int max_t = 0, max_i = 0;
  std::vector<std::array<long, 3>> rows;
  rows.reserve(lines.size());
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split_fields(lines[k], ',');
    if (f.size() != 3) throw DataError(path.string() + ": bad row " + lines[k]);
    const long t = parse_long(f[0], path);
    const long i = parse_long(f[1], path);
    const long s = parse_long(f[2], path);
    if (t < 1 || i < 1) {
      throw DataError(path.string() + ": time and cell indices are 1-based");
    }
    rows.push_back({t, i, s});
    max_t = std::max<int>(max_t, static_cast<int>(t));
    max_i = std::max<int>(max_i, static_cast<int>(i));
  }
  if (rows.empty()) throw DataError(path.string() + ": no state rows");
  StateField sf(max_t, max_i, 0);
  for (const auto& rowv : rows) {
    sf.at(static_cast<int>(rowv[0]) - 1, static_cast<int>(rowv[1]) - 1) =
        static_cast<std::int8_t>(rowv[2]);
  }
  if ((sf.values.array() == 0).any()) {
    throw DataError(path.string() + ": missing (t, cell) entries");
  }
  return sf;
}

void write_winds(const fs::path& path, const std::vector<WindRecord>& winds) {
  std::ostringstream out;
  out << "t,u,v\n";
  for (std::size_t t = 0; t < winds.size(); ++t) {
    out << (t + 1) << ',' << format_double(winds[t].u) << ','
        << format_double(winds[t].v) << '\n';
  }
  atomic_write_text(path, out.str());
}

std::vector<WindRecord> read_winds(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  expect_header(lines, "t,u,v", path);
  std::vector<WindRecord> winds;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split_fields(lines[k], ',');
    if (f.size() != 3) throw DataError(path.string() + ": bad row " + lines[k]);
    const long t = parse_long(f[0], path);
    if (t != static_cast<long>(winds.size()) + 1) {
      throw DataError(path.string() + ": wind steps must be 1,2,...");
    }
    winds.push_back({parse_double(f[1], path), parse_double(f[2], path)});
  }
  return winds;
}

TemperatureRaster read_raster_long(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  expect_header(lines, "t,row,col,temp", path);
  std::map<long, std::vector<std::array<double, 3>>> by_time;
  long max_row = 0, max_col = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split_fields(lines[k], ',');
    if (f.size() != 4) throw DataError(path.string() + ": bad row " + lines[k]);
    const long t = parse_long(f[0], path);
    const long row = parse_long(f[1], path);
    const long col = parse_long(f[2], path);
    const double temp = parse_double(f[3], path);
    if (t < 1 || row < 1 || col < 1) {
      throw DataError(path.string() + ": indices are 1-based");
    }
    by_time[t].push_back(
        {static_cast<double>(row), static_cast<double>(col), temp});
    max_row = std::max(max_row, row);
    max_col = std::max(max_col, col);
  }
  if (by_time.empty()) throw DataError(path.string() + ": no raster rows");
  TemperatureRaster raster;
  raster.nx = static_cast<int>(max_col);
  raster.ny = static_cast<int>(max_row);
  for (const auto& [t, cells] : by_time) {
    raster.times.push_back(static_cast<int>(t));
    Eigen::MatrixXd frame =
        Eigen::MatrixXd::Constant(raster.ny, raster.nx, -1.0);
    for (const auto& cell : cells) {
      frame(static_cast<int>(cell[0]) - 1, static_cast<int>(cell[1]) - 1) =
          cell[2];
    }
    if ((frame.array() < 0.0).any()) {
      throw DataError(path.string() + ": missing cells at t=" +
                      std::to_string(t));
    }
    raster.frames.push_back(std::move(frame));
  }
  raster.validate();
  return raster;
}

void write_raster_long(const fs::path& path, const TemperatureRaster& raster) {
  std::ostringstream out;
  out << "t,row,col,temp\n";
  for (int k = 0; k < raster.steps(); ++k) {
    for (int r = 0; r < raster.ny; ++r) {
      for (int c = 0; c < raster.nx; ++c) {
        out << raster.times[static_cast<std::size_t>(k)] << ',' << (r + 1)
            << ',' << (c + 1) << ',' << format_double(raster.frames[k](r, c))
            << '\n';
      }
    }
  }
  atomic_write_text(path, out.str());
}

TemperatureRaster read_raster_manifest(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  TemperatureRaster raster;
  const fs::path base = path.parent_path();
  int t = 0;
  for (const auto& line : lines) {
    if (line.empty() || line[0] == '#') continue;
    const fs::path frame_path = base / line;
    const auto frame_lines = split_lines(read_text(frame_path));
    std::vector<std::vector<double>> values;
    for (const auto& fl : frame_lines) {
      if (fl.empty()) continue;
      std::vector<double> row;
      std::string token;
      std::istringstream ss(fl);
      if (fl.find(',') != std::string::npos) {
        for (const auto& piece : split_fields(fl, ',')) {
          row.push_back(parse_double(piece, frame_path));
        }
      } else {
        while (ss >> token) row.push_back(parse_double(token, frame_path));
      }
      values.push_back(std::move(row));
    }
    if (values.empty()) {
      throw DataError(frame_path.string() + ": empty raster frame");
    }
    const int ny = static_cast<int>(values.size());
    const int nx = static_cast<int>(values[0].size());
    Eigen::MatrixXd frame(ny, nx);
    for (int r = 0; r < ny; ++r) {
      if (static_cast<int>(values[static_cast<std::size_t>(r)].size()) != nx) {
        throw DataError(frame_path.string() + ": ragged raster rows");
      }
      for (int c = 0; c < nx; ++c) {
        frame(r, c) = values[static_cast<std::size_t>(r)]
                            [static_cast<std::size_t>(c)];
      }
    }
    if (raster.frames.empty()) {
      raster.nx = nx;
      raster.ny = ny;
    } else if (nx != raster.nx || ny != raster.ny) {
      throw DataError(frame_path.string() + ": frame shape changed");
    }
    raster.frames.push_back(std::move(frame));
    raster.times.push_back(++t);
  }
  if (raster.frames.empty()) {
    throw DataError(path.string() + ": manifest lists no frames");
  }
  raster.validate();
  return raster;
}

Eigen::MatrixXd raster_to_matrix(const TemperatureRaster& raster) {
  const int n = raster.nx * raster.ny;
  Eigen::MatrixXd out(raster.steps(), n);
  for (int k = 0; k < raster.steps(); ++k) {
    for (int r = 0; r < raster.ny; ++r) {
      for (int c = 0; c < raster.nx; ++c) {
        out(k, r * raster.nx + c) = raster.frames[k](r, c);
      }
    }
  }
  return out;
}

void write_basis(const fs::path& path, const BasisMatrix& basis) {
  std::ostringstream out;
  out << "# kind="
      << (basis.kind == BasisMatrix::Kind::Eof ? "eof" : "bisquare")
      << " rank=" << basis.rank() << " seed=" << basis.seed << '\n';
  for (Eigen::Index i = 0; i < basis.H.rows(); ++i) {
    for (Eigen::Index k = 0; k < basis.H.cols(); ++k) {
      if (k > 0) out << ',';
      out << format_double(basis.H(i, k));
    }
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

BasisMatrix read_basis(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  if (lines.empty() || lines[0].rfind("# kind=", 0) != 0) {
    throw DataError(path.string() + ": missing basis header");
  }
  BasisMatrix basis;
  {
    std::istringstream ss(lines[0].substr(2));
    std::string token;
    int rank = -1;
    while (ss >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "kind") {
        if (value == "eof") {
          basis.kind = BasisMatrix::Kind::Eof;
        } else if (value == "bisquare") {
          basis.kind = BasisMatrix::Kind::Bisquare;
        } else {
          throw DataError(path.string() + ": unknown basis kind " + value);
        }
      } else if (key == "rank") {
        rank = static_cast<int>(parse_long(value, path));
      } else if (key == "seed") {
        basis.seed = static_cast<std::uint64_t>(parse_long(value, path));
      }
    }
    if (rank < 1) throw DataError(path.string() + ": basis rank missing");
    basis.H.resize(0, rank);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split_fields(lines[k], ',');
    std::vector<double> row;
    row.reserve(f.size());
    for (const auto& piece : f) row.push_back(parse_double(piece, path));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": basis has no rows");
  const auto rank = static_cast<Eigen::Index>(rows[0].size());
  if (rank != basis.H.cols()) {
    throw DataError(path.string() + ": rank header does not match columns");
  }
  basis.H.resize(static_cast<Eigen::Index>(rows.size()), rank);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != rank) {
      throw DataError(path.string() + ": ragged basis rows");
    }
    for (Eigen::Index k = 0; k < rank; ++k) {
      basis.H(static_cast<Eigen::Index>(i), k) =
          rows[i][static_cast<std::size_t>(k)];
    }
  }
  return basis;
}

namespace {

void write_draw_matrix(const fs::path& path, const std::string& prefix,
                       const Eigen::MatrixXd& draws) {
  std::ostringstream out;
  out << "draw";
  for (Eigen::Index j = 0; j < draws.cols(); ++j) {
    out << ',' << prefix << (j + 1);
  }
  out << '\n';
  for (Eigen::Index d = 0; d < draws.rows(); ++d) {
    out << (d + 1);
    for (Eigen::Index j = 0; j < draws.cols(); ++j) {
      out << ',' << format_double(draws(d, j));
    }
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

Eigen::MatrixXd read_draw_matrix(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  if (lines.empty() || lines[0].rfind("draw", 0) != 0) {
    throw DataError(path.string() + ": missing draw header");
  }
  const auto header = split_fields(lines[0], ',');
  const auto cols = static_cast<Eigen::Index>(header.size()) - 1;
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split_fields(lines[k], ',');
    if (static_cast<Eigen::Index>(f.size()) != cols + 1) {
      throw DataError(path.string() + ": ragged draw rows");
    }
    std::vector<double> row;
    for (std::size_t j = 1; j < f.size(); ++j) {
      row.push_back(parse_double(f[j], path));
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t d = 0; d < rows.size(); ++d) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(d), j) =
          rows[d][static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Eigen::MatrixXd stack_square_draws(const std::vector<Eigen::MatrixXd>& draws,
                                   int r) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(draws.size()), r * r);
  for (std::size_t d = 0; d < draws.size(); ++d) {
    out.row(static_cast<Eigen::Index>(d)) =
        Eigen::Map<const Eigen::VectorXd>(draws[d].data(), r * r).transpose();
  }
  return out;
}

}  // namespace

void write_posterior(const fs::path& dir, const PosteriorSamples& post) {
  fs::create_directories(dir);
  write_draw_matrix(dir / "beta.csv", "beta_", post.beta);
  write_draw_matrix(dir / "cutpoint.csv", "lambda_",
                    Eigen::MatrixXd(post.lambda2));
  if (post.r > 0) {
    write_draw_matrix(dir / "transition.csv", "m_",
                      stack_square_draws(post.M, post.r));
    write_draw_matrix(dir / "innovation.csv", "q_",
                      stack_square_draws(post.Q, post.r));
    write_draw_matrix(dir / "latent_last.csv", "y_", post.y_last);
  }

  // Trace summaries: posterior mean and batch-mean MC standard error.
  std::ostringstream out;
  out << "parameter,mean,mcse\n";
  auto emit = [&out](const std::string& name, const Eigen::VectorXd& series) {
    std::vector<double> v(series.data(), series.data() + series.size());
    out << name << ',' << format_double(series.mean()) << ','
        << format_double(batch_mean_se(v)) << '\n';
  };
  for (int j = 0; j < post.p; ++j) {
    emit("beta_" + std::to_string(j + 1), post.beta.col(j));
  }
  emit("lambda_2", post.lambda2);
  if (post.r > 0) {
    const Eigen::MatrixXd m = stack_square_draws(post.M, post.r);
    const Eigen::MatrixXd q = stack_square_draws(post.Q, post.r);
    for (int j = 0; j < post.r * post.r; ++j) {
      emit("m_" + std::to_string(j + 1), m.col(j));
      emit("q_" + std::to_string(j + 1), q.col(j));
    }
  }
  out << "lambda_retained," << post.lambda_retained << ",0\n";
  atomic_write_text(dir / "summary.csv", out.str());
}

PosteriorSamples read_posterior(const fs::path& dir) {
  PosteriorSamples post;
  post.beta = read_draw_matrix(dir / "beta.csv");
  post.p = static_cast<int>(post.beta.cols());
  const Eigen::MatrixXd lambda = read_draw_matrix(dir / "cutpoint.csv");
  post.lambda2 = lambda.col(0);
  if (fs::exists(dir / "transition.csv")) {
    const Eigen::MatrixXd m = read_draw_matrix(dir / "transition.csv");
    const Eigen::MatrixXd q = read_draw_matrix(dir / "innovation.csv");
    post.y_last = read_draw_matrix(dir / "latent_last.csv");
    post.r = static_cast<int>(post.y_last.cols());
    if (m.cols() != post.r * post.r) {
      throw DataError(dir.string() + ": transition draws have wrong width");
    }
    for (Eigen::Index d = 0; d < m.rows(); ++d) {
      const Eigen::VectorXd mrow = m.row(d).transpose();
      const Eigen::VectorXd qrow = q.row(d).transpose();
      post.M.push_back(
          Eigen::Map<const Eigen::MatrixXd>(mrow.data(), post.r, post.r));
      post.Q.push_back(
          Eigen::Map<const Eigen::MatrixXd>(qrow.data(), post.r, post.r));
    }
  } else {
    post.r = 0;
    post.y_last.resize(post.beta.rows(), 0);
  }
  return post;
}

void write_forecast(const fs::path& path, const ForecastDistribution& fd) {
  std::ostringstream out;
  out << "horizon,cell,state,mean,hpd_lo,hpd_hi\n";
  for (int k = 0; k < fd.horizon; ++k) {
    for (int i = 0; i < fd.cells; ++i) {
      for (int j = 0; j < 3; ++j) {
        out << (k + 1) << ',' << (i + 1) << ',' << (j + 1) << ','
            << format_double(fd.mean[static_cast<std::size_t>(k)](i, j)) << ','
            << format_double(fd.lo[static_cast<std::size_t>(k)](i, j)) << ','
            << format_double(fd.hi[static_cast<std::size_t>(k)](i, j)) << '\n';
      }
    }
  }
  atomic_write_text(path, out.str());
}

ForecastDistribution read_forecast(const fs::path& path) {
  const auto lines = split_lines(read_text(path));
  expect_header(lines, "horizon,cell,state,mean,hpd_lo,hpd_hi", path);
  int horizon = 0, cells = 0;
  struct Row {
    int k, i, j;
    double mean, lo, hi;
  };
  std::vector<Row> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split_fields(lines[k], ',');
    if (f.size() != 6) throw DataError(path.string() + ": bad row " + lines[k]);
    Row row{static_cast<int>(parse_long(f[0], path)) - 1,
            static_cast<int>(parse_long(f[1], path)) - 1,
            static_cast<int>(parse_long(f[2], path)) - 1,
            parse_double(f[3], path), parse_double(f[4], path),
            parse_double(f[5], path)};
    horizon = std::max(horizon, row.k + 1);
    cells = std::max(cells, row.i + 1);
    rows.push_back(row);
  }
  if (rows.empty()) throw DataError(path.string() + ": no forecast rows");
  ForecastDistribution fd;
  fd.horizon = horizon;
  fd.cells = cells;
  fd.mean.assign(static_cast<std::size_t>(horizon),
                 Eigen::MatrixXd::Zero(cells, 3));
  fd.lo = fd.mean;
  fd.hi = fd.mean;
  for (const auto& row : rows) {
    fd.mean[static_cast<std::size_t>(row.k)](row.i, row.j) = row.mean;
    fd.lo[static_cast<std::size_t>(row.k)](row.i, row.j) = row.lo;
    fd.hi[static_cast<std::size_t>(row.k)](row.i, row.j) = row.hi;
  }
  return fd;
}

std::vector<fs::path> write_forecast_rasters(const fs::path& dir,
                                             const ForecastDistribution& fd,
                                             const GridSpec& grid) {
  if (grid.cells() != fd.cells) {
    throw DataError("forecast rasters: grid does not match forecast");
  }
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (int k = 0; k < fd.horizon; ++k) {
    for (int j = 0; j < 3; ++j) {
      std::ostringstream out;
      for (int r = 0; r < grid.ny; ++r) {
        for (int c = 0; c < grid.nx; ++c) {
          if (c > 0) out << ',';
          out << format_double(
              fd.mean[static_cast<std::size_t>(k)](grid.cell_index(c, r), j));
        }
        out << '\n';
      }
      const fs::path path = dir / ("raster_h" + std::to_string(k + 1) +
                                   "_state" + std::to_string(j + 1) + ".csv");
      atomic_write_text(path, out.str());
      written.push_back(path);
    }
  }
  return written;
}

void write_score(const fs::path& path, const ScoreReport& report) {
  std::ostringstream out;
  out << "state,metric,value\n";
  for (int j = 0; j < 3; ++j) {
    out << (j + 1) << ",correct," << report.correct[static_cast<std::size_t>(j)]
        << '\n';
    out << (j + 1) << ",incorrect,"
        << report.incorrect[static_cast<std::size_t>(j)] << '\n';
    out << (j + 1) << ",gss,";
    if (report.gss[static_cast<std::size_t>(j)].has_value()) {
      out << format_double(*report.gss[static_cast<std::size_t>(j)]);
    } else {
      out << "undefined";
    }
    out << '\n';
  }
  out << "all,rps," << format_double(report.rps) << '\n';
  out << "all,naive_rps," << format_double(report.naive_rps) << '\n';
  atomic_write_text(path, out.str());
}

std::string format_score_table(const ScoreReport& report) {
  std::ostringstream out;
  out << "state      correct  incorrect        gss\n";
  const char* names[3] = {"unburnt", "burning", "burnt"};
  for (int j = 0; j < 3; ++j) {
    char line[128];
    std::string g = report.gss[static_cast<std::size_t>(j)].has_value()
                        ? std::to_string(*report.gss[static_cast<std::size_t>(j)])
                        : std::string("undefined");
    std::snprintf(line, sizeof(line), "%-9s %8ld  %9ld  %9s\n", names[j],
                  report.correct[static_cast<std::size_t>(j)],
                  report.incorrect[static_cast<std::size_t>(j)], g.c_str());
    out << line;
  }
  out << "rps " << report.rps << "  (naive " << report.naive_rps << ")\n";
  return out.str();
}

void write_manifest(const fs::path& path, const RunManifest& manifest) {
  json j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  j["seed"] = manifest.seed;
  j["config_hash"] = manifest.config_hash_hex;
  j["started_utc"] = manifest.started_utc;
  j["finished_utc"] = manifest.finished_utc;
  j["notes"] = manifest.notes;
  j["effective_config"] = json::parse(manifest.effective_config_json);
  json outs = json::array();
  for (const auto& o : manifest.outputs) {
    outs.push_back({{"path", o.path},
                    {"bytes", o.bytes},
                    {"fnv1a64", o.fnv1a64_hex}});
  }
  j["outputs"] = outs;
  atomic_write_text(path, j.dump(2) + "\n");
}

}  // namespace firecast::io
