#include "dirackit/fermion_model.hpp"

#include <fstream>
#include <sstream>

#include <Eigen/SVD>

#include "dirackit/rng.hpp"

namespace dirackit {

Mat FermionModel::yukawa(const Vec& w) const {
  Mat out = Mat::Zero(nf, nf);
  for (int j = 0; j < nh; ++j) {
    out += w(j).real() * yukawa_basis[std::size_t(j)];
    out += w(j).imag() * yukawa_basis[std::size_t(nh + j)];
  }
  return out;
}

RMat FermionModel::structure_constants(double* residual) const {
  const int g = dim_g();
  // Gram solve: [T_a, T_b] = f^c_{ab} T_c  (real coefficients)
  RMat gram(g, g);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b)
      gram(a, b) = (gen_f[std::size_t(a)].adjoint() * gen_f[std::size_t(b)]).trace().real();
  RMat f(g, g * g);
  double worst = 0;
  Eigen::LDLT<RMat> solver(gram);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      Mat c = commutator(gen_f[std::size_t(a)], gen_f[std::size_t(b)]);
      RVec rhs(g);
      for (int e = 0; e < g; ++e)
        rhs(e) = (gen_f[std::size_t(e)].adjoint() * c).trace().real();
      RVec coeff = solver.solve(rhs);
      Mat recon = Mat::Zero(nf, nf);
      for (int e = 0; e < g; ++e) recon += coeff(e) * gen_f[std::size_t(e)];
      worst = std::max(worst, max_abs(c - recon));
      f.block(a, b * g, 1, g) = coeff.transpose();
    }
  if (residual) *residual = worst;
  return f;
}

double FermionModel::yukawa_equivariance_residual(int probes, Rng& rng) const {
  double worst = 0;
  for (int t = 0; t < probes; ++t) {
    Vec w = rng.random_vector(nh);
    for (int a = 0; a < dim_g(); ++a) {
      Mat lhs = yukawa(gen_h[std::size_t(a)] * w);
      Mat rhs = commutator(gen_f[std::size_t(a)], yukawa(w));
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  }
  return worst;
}

void FermionModel::validate(Rng& rng) const {
  if (max_abs(chi * chi - Mat::Identity(nf, nf)) > kAlgebraTol)
    throw model_error("chi is not an involution");
  for (const Mat& t : gen_f)
    if (max_abs(t + t.adjoint().eval()) > kSolveTol)
      throw model_error("fermion generators must be anti-Hermitian");
  for (const Mat& t : gen_h)
    if (max_abs(t + t.adjoint().eval()) > kSolveTol)
      throw model_error("Higgs generators must be anti-Hermitian");
  double closure = 0;
  structure_constants(&closure);
  if (closure > kSolveTol)
    throw model_error("generators do not close under commutator, residual " +
                      std::to_string(closure));
  double equi = yukawa_equivariance_residual(4, rng);
  if (equi > kSolveTol)
    throw model_error("Yukawa map is not equivariant, residual " + std::to_string(equi));
  for (int j = 0; j < 2 * nh; ++j) {
    const Mat& y = yukawa_basis[std::size_t(j)];
    if (max_abs(y + y.adjoint().eval()) > kSolveTol)
      throw model_error("Yukawa images must be anti-Hermitian");
    if (max_abs(chi * y * chi + y) > kSolveTol)
      throw model_error("Yukawa images must be chi-odd");
  }
}

namespace {

void write_mat(std::ostream& out, const std::string& key, const Mat& m) {
  out << key << " = ";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << m(i, j).real() << " " << m(i, j).imag() << " ";
  out << "\n";
}

Mat read_mat(const std::string& values, Eigen::Index rows, Eigen::Index cols) {
  std::istringstream in(values);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      if (!(in >> re >> im)) throw model_error("truncated matrix data");
      m(i, j) = Complex(re, im);
    }
  return m;
}

}  // namespace

std::string serialize_model(const FermionModel& m) {
  std::ostringstream out;
  out.precision(17);
  out << "dirackit-model v1\n";
  out << "[model]\n";
  out << "name = " << m.name << "\n";
  out << "nf = " << m.nf << "\n";
  out << "nh = " << m.nh << "\n";
  out << "dim_g = " << m.dim_g() << "\n";
  out << "[grading]\n";
  write_mat(out, "chi", m.chi);
  out << "[generators_fermion]\n";
  for (int a = 0; a < m.dim_g(); ++a) write_mat(out, "T" + std::to_string(a), m.gen_f[std::size_t(a)]);
  out << "[generators_higgs]\n";
  for (int a = 0; a < m.dim_g(); ++a) write_mat(out, "t" + std::to_string(a), m.gen_h[std::size_t(a)]);
  out << "[yukawa]\n";
  for (int j = 0; j < 2 * m.nh; ++j) write_mat(out, "Y" + std::to_string(j), m.yukawa_basis[std::size_t(j)]);
  out << "[vacuum]\n";
  write_mat(out, "V", m.vacuum);
  return out.str();
}

FermionModel parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("dirackit-model v1", 0) != 0)
    throw model_error("unrecognized model header");
  FermionModel m;
  int dim_g = 0;
  std::map<std::string, std::string> kv;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '[' || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw model_error("expected key = value: " + line);
    std::string key = line.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    kv[key] = line.substr(eq + 1);
  }
  m.name = kv.count("name") ? kv["name"].substr(kv["name"].find_first_not_of(' ')) : "";
  m.nf = std::stoi(kv.at("nf"));
  m.nh = std::stoi(kv.at("nh"));
  dim_g = std::stoi(kv.at("dim_g"));
  m.chi = read_mat(kv.at("chi"), m.nf, m.nf);
  for (int a = 0; a < dim_g; ++a)
    m.gen_f.push_back(read_mat(kv.at("T" + std::to_string(a)), m.nf, m.nf));
  for (int a = 0; a < dim_g; ++a)
    m.gen_h.push_back(read_mat(kv.at("t" + std::to_string(a)), m.nh, m.nh));
  for (int j = 0; j < 2 * m.nh; ++j)
    m.yukawa_basis.push_back(read_mat(kv.at("Y" + std::to_string(j)), m.nf, m.nf));
  Mat v = read_mat(kv.at("V"), m.nh, 1);
  m.vacuum = v.col(0);
  return m;
}

void save_model(const FermionModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw model_error("cannot write model file: " + path);
  out << serialize_model(m);
}

FermionModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw model_error("cannot read model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

namespace {

// lepton pattern: rho_F = [rho_H + c(X) Id, 0; 0, c(X)], chi = diag(-1_H, +1),
// G_Y(w) = y [0, w; -w^dag, 0]; equivariant for any character c
FermionModel lepton_pattern(const std::string& name, const std::vector<Mat>& gen_h,
                            const RVec& character, double y, const Vec& vacuum) {
  FermionModel m;
  m.name = name;
  m.nh = int(gen_h[0].rows());
  m.nf = m.nh + 1;
  m.gen_h = gen_h;
  m.chi = Mat::Identity(m.nf, m.nf);
  m.chi.topLeftCorner(m.nh, m.nh) *= -1.0;
  for (std::size_t a = 0; a < gen_h.size(); ++a) {
    Mat t = Mat::Zero(m.nf, m.nf);
    const Complex c(0, character(Eigen::Index(a)));
    t.topLeftCorner(m.nh, m.nh) = gen_h[a] + c * Mat::Identity(m.nh, m.nh);
    t(m.nh, m.nh) = c;
    m.gen_f.push_back(t);
  }
  auto image = [&](const Vec& w) {
    Mat out = Mat::Zero(m.nf, m.nf);
    out.block(0, m.nh, m.nh, 1) = y * w;
    out.block(m.nh, 0, 1, m.nh) = -y * w.adjoint();
    return out;
  };
  for (int j = 0; j < m.nh; ++j) {
    Vec e = Vec::Zero(m.nh);
    e(j) = 1;
    m.yukawa_basis.push_back(image(e));
  }
  for (int j = 0; j < m.nh; ++j) {
    Vec e = Vec::Zero(m.nh);
    e(j) = Complex(0, 1);
    m.yukawa_basis.push_back(image(e));
  }
  m.vacuum = vacuum;
  return m;
}

}  // namespace

FermionModel electroweak_model(double y, double v) {
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  const Complex mi(0, -0.5);
  std::vector<Mat> gen_h = {mi * s1, mi * s2, mi * s3,
                            mi * 1.0 * Mat::Identity(2, 2)};  // Y_H = +1
  // character so that rho_F carries hypercharges Y_L = -1, Y_R = -2:
  // c(T_a) = 0 (su(2)), c(T_4) = -(1/2) Y_R i = +i
  RVec character(4);
  character << 0, 0, 0, 1.0;
  Vec vac(2);
  vac << 0, v;
  FermionModel m = lepton_pattern("electroweak-lepton", gen_h, character, y, vac);
  m.name = "electroweak-lepton";
  return m;
}

FermionModel abelian_higgs_model(double y, double v, double charge) {
  std::vector<Mat> gen_h = {Complex(0, -charge) * Mat::Identity(1, 1)};
  RVec character(1);
  character << 0.0;
  Vec vac(1);
  vac << v;
  return lepton_pattern("abelian-higgs", gen_h, character, y, vac);
}

FermionModel random_model(Rng& rng, int max_nf) {
  // rho_H: random block sum of su(2) spin representations and u(1) charges,
  // conjugated by a random unitary
  const int nh = 2 + int(rng.uniform_index(std::uint64_t(std::max(1, max_nf - 3)))); // 2..max_nf-2
  std::vector<Mat> gen_h(3, Mat::Zero(nh, nh));
  int pos = 0;
  std::vector<int> blocks;
  while (pos < nh) {
    int b = 1 + int(rng.uniform_index(std::uint64_t(std::min(3, nh - pos))));
    blocks.push_back(b);
    pos += b;
  }
  auto spin_ops = [&](int d) {
    // spin j = (d-1)/2 ladder construction
    const double j = (d - 1) / 2.0;
    Mat jp = Mat::Zero(d, d), jz = Mat::Zero(d, d);
    for (int r = 0; r < d; ++r) {
      const double mz = j - r;
      jz(r, r) = mz;
      if (r + 1 < d)
        jp(r, r + 1) = std::sqrt(j * (j + 1) - (mz - 1) * mz);
    }
    Mat jm = jp.adjoint();
    std::vector<Mat> t(3);
    t[0] = Complex(0, -0.5) * (jp + jm);
    t[1] = Complex(0, -0.5) * (Complex(0, -1) * (jp - jm));
    t[2] = Complex(0, -1.0) * jz;
    return t;
  };
  pos = 0;
  for (int b : blocks) {
    std::vector<Mat> t = spin_ops(b);  // b == 1 gives the trivial representation
    for (int a = 0; a < 3; ++a) gen_h[std::size_t(a)].block(pos, pos, b, b) = t[std::size_t(a)];
    pos += b;
  }
  // an extra overall u(1) with random integer charges per block
  Mat u1 = Mat::Zero(nh, nh);
  pos = 0;
  for (int b : blocks) {
    double q = std::round(rng.uniform(-2, 2));
    u1.block(pos, pos, b, b) = Complex(0, q) * Mat::Identity(b, b);
    pos += b;
  }
  gen_h.push_back(u1);

  Mat basis = rng.random_unitary(nh);
  for (Mat& t : gen_h) t = basis * t * basis.adjoint();

  RVec character(Eigen::Index(gen_h.size()));
  for (Eigen::Index a = 0; a < character.size(); ++a)
    character(a) = a + 1 < character.size() ? 0.0 : std::round(rng.uniform(-2, 2));

  Vec vac = rng.random_vector(nh);
  const double y = 0.5 + rng.uniform();
  FermionModel m = lepton_pattern("random", gen_h, character, y, vac);
  return m;
}

}  // namespace dirackit
