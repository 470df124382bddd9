#include "mfs/model_io.hpp"

#include <fstream>
#include <sstream>

#include "mfs/csv.hpp"
#include "mfs/doe.hpp"

namespace mfs {

namespace {

constexpr const char* kCosvrTag = "mfs-model cosvr 1";
constexpr const char* kLssvrTag = "mfs-model lssvr 1";

void write_vector(std::ostream& out, const std::string& key, const Vector& v) {
  out << key;
  for (Index i = 0; i < v.size(); ++i) out << " " << format_double(v[i]);
  out << "\n";
}

void write_matrix(std::ostream& out, const std::string& key, const Matrix& m) {
  out << key << " " << m.rows() << " " << m.cols() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j)
      out << (j ? " " : "") << format_double(m(i, j));
    out << "\n";
  }
}

class Reader {
public:
  Reader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw DataError("cannot open model file '" + path + "'");
  }

  std::string line() {
    std::string l;
    if (!std::getline(in_, l))
      throw DataError(path_ + ": truncated model file");
    if (!l.empty() && l.back() == '\r') l.pop_back();
    return l;
  }

  double scalar(const std::string& key) {
    std::istringstream ss(expect(key));
    double v;
    if (!(ss >> v)) throw DataError(path_ + ": bad value for '" + key + "'");
    return v;
  }

  Vector vector(const std::string& key) {
    std::istringstream ss(expect(key));
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    Vector out(static_cast<Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i)
      out[static_cast<Index>(i)] = vals[i];
    return out;
  }

  Matrix matrix(const std::string& key) {
    std::istringstream ss(expect(key));
    Index rows, cols;
    if (!(ss >> rows >> cols) || rows < 0 || cols < 1)
      throw DataError(path_ + ": bad shape for '" + key + "'");
    Matrix out(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      std::istringstream row(line());
      for (Index j = 0; j < cols; ++j)
        if (!(row >> out(i, j)))
          throw DataError(path_ + ": short row in '" + key + "'");
    }
    return out;
  }

private:
  std::string expect(const std::string& key) {
    std::string l = line();
    if (l.rfind(key + " ", 0) != 0 && l != key)
      throw DataError(path_ + ": expected '" + key + "', got '" + l + "'");
    return l.size() > key.size() ? l.substr(key.size() + 1) : std::string();
  }

  std::string path_;
  std::ifstream in_;
};

DomainBox read_domain(Reader& r) {
  const Vector lo = r.vector("domain_lo");
  const Vector hi = r.vector("domain_hi");
  return DomainBox(lo, hi);
}

}  // namespace

void save_model(const CoSvrModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file '" + path + "'");
  out << kCosvrTag << "\n";
  out << "dimension " << model.training.dimension() << "\n";
  write_vector(out, "domain_lo", model.training.lf.domain.lo);
  write_vector(out, "domain_hi", model.training.lf.domain.hi);
  out << "rho " << format_double(model.hp.rho) << "\n";
  out << "sigma_l " << format_double(model.hp.sigma_l) << "\n";
  out << "sigma_d " << format_double(model.hp.sigma_d) << "\n";
  write_vector(out, "theta_l", model.hp.theta_l);
  write_vector(out, "theta_d", model.hp.theta_d);
  out << "gamma " << format_double(model.hp.gamma) << "\n";
  out << "y_mean " << format_double(model.y_mean) << "\n";
  out << "y_std " << format_double(model.y_std) << "\n";
  write_matrix(out, "lf_points", model.training.lf.points);
  write_vector(out, "lf_responses", model.training.lf.responses);
  write_matrix(out, "hf_points", model.training.hf.points);
  write_vector(out, "hf_responses", model.training.hf.responses);
  write_vector(out, "alpha", model.alpha);
  out << "bias " << format_double(model.bias) << "\n";
  if (!out) throw DataError("write failed for '" + path + "'");
}

void save_model(const LssvrModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file '" + path + "'");
  out << kLssvrTag << "\n";
  out << "dimension " << model.training.dimension() << "\n";
  write_vector(out, "domain_lo", model.training.domain.lo);
  write_vector(out, "domain_hi", model.training.domain.hi);
  out << "sigma " << format_double(model.kernel.sigma) << "\n";
  write_vector(out, "theta", model.kernel.theta);
  out << "gamma " << format_double(model.gamma) << "\n";
  out << "y_mean " << format_double(model.y_mean) << "\n";
  out << "y_std " << format_double(model.y_std) << "\n";
  write_matrix(out, "points", model.training.points);
  write_vector(out, "responses", model.training.responses);
  write_vector(out, "alpha", model.alpha);
  out << "bias " << format_double(model.bias) << "\n";
  if (!out) throw DataError("write failed for '" + path + "'");
}

ModelKind peek_model_kind(const std::string& path) {
  Reader r(path);
  const std::string tag = r.line();
  if (tag == kCosvrTag) return ModelKind::CoSvr;
  if (tag == kLssvrTag) return ModelKind::Lssvr;
  throw DataError(path + ": unrecognized model tag '" + tag + "'");
}

CoSvrModel load_cosvr_model(const std::string& path) {
  Reader r(path);
  if (r.line() != kCosvrTag)
    throw DataError(path + ": not a cosvr model file");
  CoSvrModel m;
  const auto dim = static_cast<Index>(r.scalar("dimension"));
  const DomainBox box = read_domain(r);
  if (box.dimension() != dim)
    throw DataError(path + ": domain dimension mismatch");
  m.hp.rho = r.scalar("rho");
  m.hp.sigma_l = r.scalar("sigma_l");
  m.hp.sigma_d = r.scalar("sigma_d");
  m.hp.theta_l = r.vector("theta_l");
  m.hp.theta_d = r.vector("theta_d");
  m.hp.gamma = r.scalar("gamma");
  m.y_mean = r.scalar("y_mean");
  m.y_std = r.scalar("y_std");
  Matrix lf_pts = r.matrix("lf_points");
  Vector lf_resp = r.vector("lf_responses");
  Matrix hf_pts = r.matrix("hf_points");
  Vector hf_resp = r.vector("hf_responses");
  m.training = MultiFidelityData(SampleSet(lf_pts, lf_resp, box),
                                 SampleSet(hf_pts, hf_resp, box));
  m.alpha = r.vector("alpha");
  m.bias = r.scalar("bias");
  m.hp.validate(dim);
  if (m.alpha.size() != m.training.lf_count() + m.training.hf_count())
    throw DataError(path + ": alpha length mismatch");
  m.unit_lf = to_unit(m.training.lf.points, box);
  m.unit_hf = to_unit(m.training.hf.points, box);
  return m;
}

LssvrModel load_lssvr_model(const std::string& path) {
  Reader r(path);
  if (r.line() != kLssvrTag)
    throw DataError(path + ": not an lssvr model file");
  LssvrModel m;
  const auto dim = static_cast<Index>(r.scalar("dimension"));
  const DomainBox box = read_domain(r);
  if (box.dimension() != dim)
    throw DataError(path + ": domain dimension mismatch");
  m.kernel.sigma = r.scalar("sigma");
  m.kernel.theta = r.vector("theta");
  m.gamma = r.scalar("gamma");
  m.y_mean = r.scalar("y_mean");
  m.y_std = r.scalar("y_std");
  Matrix pts = r.matrix("points");
  Vector resp = r.vector("responses");
  m.training = SampleSet(pts, resp, box);
  m.alpha = r.vector("alpha");
  m.bias = r.scalar("bias");
  m.kernel.validate(dim);
  if (m.alpha.size() != m.training.size())
    throw DataError(path + ": alpha length mismatch");
  m.unit_points = to_unit(m.training.points, box);
  return m;
}

}  // namespace mfs
