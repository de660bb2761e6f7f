#include "tgv/interp.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tgv {

namespace {

FieldKind field_kind(BankTarget t) { return t == BankTarget::K ? FieldKind::tensor3 : FieldKind::vector2; }

void check_field(const StaggeredField& f, const FilterBank& bank) {
  if (f.channels() != bank.channels() || f.kind != field_kind(bank.target))
    throw std::invalid_argument("filter bank / field channel mismatch");
}

void check_coeff(const CoefficientField& v, const FilterBank& bank) {
  if (v.n != bank.n || v.C != bank.channels())
    throw std::invalid_argument("filter bank / coefficient shape mismatch");
}

// Gather with the tap ranges clamped so reads stay inside the channel's
// valid rectangle; out-of-rectangle taps contribute zero by construction.
CoefficientField apply_bank(const StaggeredField& f, const FilterBank& bank) {
  check_field(f, bank);
  const int M = f.rows(), N = f.cols(), nu = bank.nu, C = bank.channels();
  CoefficientField out(bank.n, C, M, N);
  const int ks = bank.ksize();
  for (int l = 0; l < bank.n; ++l) {
    for (int c = 0; c < C; ++c) {
      const Grid& in = f.ch[static_cast<size_t>(c)];
      Grid& o = out.at(l, c);
      const double* ker = bank.kernel(l, c);
      const ValidRect r = valid_rect(f.kind, c, M, N);
      parallel_rows(M, N, [&](int i) {
        const int m_lo = std::max(-nu, i - r.r1), m_hi = std::min(nu, i - r.r0);
        for (int j = 0; j < N; ++j) {
          const int n_lo = std::max(-nu, j - r.c1), n_hi = std::min(nu, j - r.c0);
          double s = 0.0;
          for (int m = m_lo; m <= m_hi; ++m) {
            const double* krow = ker + (m + nu) * ks + nu;
            const double* irow = in.v.data() + static_cast<size_t>(i - m) * N;
            for (int n = n_lo; n <= n_hi; ++n) s += krow[n] * irow[j - n];
          }
          o.at(i, j) = s;
        }
      });
    }
  }
  return out;
}

StaggeredField apply_bank_adjoint(const CoefficientField& v, const FilterBank& bank, double h) {
  check_coeff(v, bank);
  const int M = v.rows(), N = v.cols(), nu = bank.nu, C = bank.channels();
  StaggeredField out = bank.target == BankTarget::K ? StaggeredField::tensor(M, N, h)
                                                    : StaggeredField::vector(M, N, h);
  const int ks = bank.ksize();
  for (int c = 0; c < C; ++c) {
    Grid& o = out.ch[static_cast<size_t>(c)];
    const ValidRect r = valid_rect(out.kind, c, M, N);
    parallel_rows(M, N, [&](int i) {
      const int m_lo = std::max(-nu, -i), m_hi = std::min(nu, M - 1 - i);
      for (int j = 0; j < N; ++j) {
        if (i < r.r0 || i > r.r1 || j < r.c0 || j > r.c1) {
          o.at(i, j) = 0.0;
          continue;
        }
        const int n_lo = std::max(-nu, -j), n_hi = std::min(nu, N - 1 - j);
        double s = 0.0;
        for (int l = 0; l < bank.n; ++l) {
          const Grid& in = v.at(l, c);
          const double* ker = bank.kernel(l, c);
          for (int m = m_lo; m <= m_hi; ++m) {
            const double* krow = ker + (m + nu) * ks + nu;
            const double* irow = in.v.data() + static_cast<size_t>(i + m) * N;
            for (int n = n_lo; n <= n_hi; ++n) s += krow[n] * irow[j + n];
          }
        }
        o.at(i, j) = s;
      }
    });
  }
  return out;
}

Offset native_offset(BankTarget t, int c) {
  if (t == BankTarget::L) return c == 0 ? Offset::edge_x : Offset::edge_y;
  return c == 1 ? Offset::corner : Offset::center;
}

// Bilinear stencil moving channel data from its native offset to `target`.
// Each half-pixel mismatch per axis becomes a two-tap 1/2 average.
void fill_interp_kernel(FilterBank& bank, int l, int c, Offset target) {
  const Offset nat = native_offset(bank.target, c);
  const double ddx = offset_dx(target) - offset_dx(nat);
  const double ddy = offset_dy(target) - offset_dy(nat);
  // taps along x: lag m such that in(i-m) brackets the target position
  auto taps_for = [](double d) -> std::vector<std::pair<int, double>> {
    if (d == 0.0) return {{0, 1.0}};
    if (d > 0.0) return {{0, 0.5}, {-1, 0.5}};  // +1/2: average slots i, i+1
    return {{0, 0.5}, {1, 0.5}};                // -1/2: average slots i, i-1
  };
  for (auto [m, wm] : taps_for(ddx))
    for (auto [n, wn] : taps_for(ddy)) bank.tap(l, c, m, n) = wm * wn;
}

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

void fnv_bytes(uint64_t& h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t k = 0; k < len; ++k) {
    h ^= p[k];
    h *= kFnvPrime;
  }
}

}  // namespace

FilterBank make_bank(BankTarget target, int n, int nu, BankConstraint constraint) {
  if (n < 1 || nu < 0) throw std::invalid_argument("make_bank: invalid shape");
  FilterBank b;
  b.target = target;
  b.constraint = constraint;
  b.n = n;
  b.nu = nu;
  b.gamma = 1.0;
  b.coeffs.assign(static_cast<size_t>(n) * b.channels() * b.taps(), 0.0);
  return b;
}

FilterBank identity_K() {
  FilterBank b = make_bank(BankTarget::K, 1, 0);
  for (int c = 0; c < 3; ++c) b.tap(0, c, 0, 0) = 1.0;
  return b;
}

FilterBank identity_L() {
  FilterBank b = make_bank(BankTarget::L, 1, 0);
  for (int c = 0; c < 2; ++c) b.tap(0, c, 0, 0) = 1.0;
  return b;
}

FilterBank handcrafted_bank(HandcraftedKind kind) {
  const bool is_k = (kind == HandcraftedKind::K1 || kind == HandcraftedKind::K4);
  std::vector<Offset> targets;
  switch (kind) {
    case HandcraftedKind::K1: targets = {Offset::center}; break;
    case HandcraftedKind::L3: targets = {Offset::center, Offset::edge_x, Offset::edge_y}; break;
    case HandcraftedKind::K4:
    case HandcraftedKind::L4:
      targets = {Offset::center, Offset::edge_x, Offset::edge_y, Offset::corner};
      break;
  }
  FilterBank b = make_bank(is_k ? BankTarget::K : BankTarget::L, static_cast<int>(targets.size()), 1);
  for (int l = 0; l < b.n; ++l)
    for (int c = 0; c < b.channels(); ++c) fill_interp_kernel(b, l, c, targets[static_cast<size_t>(l)]);
  return b;
}

CoefficientField apply_K(const StaggeredField& p, const FilterBank& bank) {
  if (bank.target != BankTarget::K) throw std::invalid_argument("apply_K: not a K bank");
  return apply_bank(p, bank);
}

StaggeredField apply_K_adjoint(const CoefficientField& v, const FilterBank& bank, double h) {
  if (bank.target != BankTarget::K) throw std::invalid_argument("apply_K_adjoint: not a K bank");
  return apply_bank_adjoint(v, bank, h);
}

CoefficientField apply_L(const StaggeredField& w, const FilterBank& bank) {
  if (bank.target != BankTarget::L) throw std::invalid_argument("apply_L: not an L bank");
  return apply_bank(w, bank);
}

StaggeredField apply_L_adjoint(const CoefficientField& v, const FilterBank& bank, double h) {
  if (bank.target != BankTarget::L) throw std::invalid_argument("apply_L_adjoint: not an L bank");
  return apply_bank_adjoint(v, bank, h);
}

FilterBank project_constraints(const FilterBank& bank) {
  FilterBank b = bank;
  const int T = b.taps();
  if (b.constraint == BankConstraint::none) return b;
  if (b.constraint == BankConstraint::sum_to_one) {
    for (int l = 0; l < b.n; ++l)
      for (int c = 0; c < b.channels(); ++c) {
        double shift = (b.kernel_sum(l, c) - 1.0) / T;
        double* k = b.kernel(l, c);
        for (int t = 0; t < T; ++t) k[t] -= shift;
      }
    b.gamma = 1.0;
    return b;
  }
  // equal_sums: common sum = mean of all kernel sums, then shift each kernel.
  double mean = 0.0;
  const int B = b.n * b.channels();
  for (int l = 0; l < b.n; ++l)
    for (int c = 0; c < b.channels(); ++c) mean += b.kernel_sum(l, c);
  mean /= B;
  for (int l = 0; l < b.n; ++l)
    for (int c = 0; c < b.channels(); ++c) {
      double shift = (b.kernel_sum(l, c) - mean) / T;
      double* k = b.kernel(l, c);
      for (int t = 0; t < T; ++t) k[t] -= shift;
    }
  b.gamma = mean;
  return b;
}

void rotate_filter_L(const FilterBank& src, int l_src, FilterBank& dst, int l_dst) {
  if (src.target != BankTarget::L || dst.target != BankTarget::L || src.nu != dst.nu)
    throw std::invalid_argument("rotate_filter_L: incompatible banks");
  // new ch0 = rot90(old ch1), new ch1 = rot90(old ch0), rot90(k)(m,n) = k(n,-m)
  for (int m = -src.nu; m <= src.nu; ++m)
    for (int n = -src.nu; n <= src.nu; ++n) {
      dst.tap(l_dst, 0, m, n) = src.tap(l_src, 1, n, -m);
      dst.tap(l_dst, 1, m, n) = src.tap(l_src, 0, n, -m);
    }
}

FilterBank symmetrize_bank(const FilterBank& bank) {
  if (bank.target != BankTarget::L) throw std::invalid_argument("symmetrize_bank: L banks only");
  if (bank.n % 4 != 0) throw std::invalid_argument("symmetrize_bank: n must be divisible by 4");
  FilterBank b = bank;
  for (int g = 0; g < b.n; g += 4)
    for (int k = 0; k < 3; ++k) rotate_filter_L(b, g + k, b, g + k + 1);
  return b;
}

bool bank_is_symmetric(const FilterBank& bank) {
  if (bank.target != BankTarget::L || bank.n % 4 != 0) return false;
  FilterBank r = bank;
  for (int g = 0; g < bank.n; g += 4)
    for (int k = 0; k < 3; ++k) {
      rotate_filter_L(bank, g + k, r, g + k + 1);
      if (std::memcmp(r.kernel(g + k + 1, 0), bank.kernel(g + k + 1, 0),
                      sizeof(double) * 2 * static_cast<size_t>(bank.taps())) != 0)
        return false;
    }
  return true;
}

std::string bank_to_json(const FilterBank& bank) {
  nlohmann::json j;
  j["target"] = bank.target == BankTarget::K ? "K" : "L";
  j["nu"] = bank.nu;
  j["n"] = bank.n;
  j["gamma"] = bank.gamma;
  switch (bank.constraint) {
    case BankConstraint::sum_to_one: j["constraint"] = "sum_to_one"; break;
    case BankConstraint::equal_sums: j["constraint"] = "equal_sums"; break;
    case BankConstraint::none: j["constraint"] = "none"; break;
  }
  nlohmann::json kernels = nlohmann::json::array();
  for (int l = 0; l < bank.n; ++l) {
    nlohmann::json filt = nlohmann::json::array();
    for (int c = 0; c < bank.channels(); ++c) {
      const double* k = bank.kernel(l, c);
      filt.push_back(std::vector<double>(k, k + bank.taps()));
    }
    kernels.push_back(filt);
  }
  j["kernels"] = kernels;
  return j.dump(2);
}

FilterBank bank_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const std::string target = j.at("target").get<std::string>();
  const std::string cons = j.at("constraint").get<std::string>();
  BankConstraint bc = cons == "sum_to_one"   ? BankConstraint::sum_to_one
                      : cons == "equal_sums" ? BankConstraint::equal_sums
                                             : BankConstraint::none;
  FilterBank b = make_bank(target == "K" ? BankTarget::K : BankTarget::L, j.at("n").get<int>(),
                           j.at("nu").get<int>(), bc);
  b.gamma = j.at("gamma").get<double>();
  const auto& kernels = j.at("kernels");
  if (static_cast<int>(kernels.size()) != b.n) throw std::runtime_error("bank_from_json: bad kernel count");
  for (int l = 0; l < b.n; ++l) {
    for (int c = 0; c < b.channels(); ++c) {
      const auto vals = kernels.at(l).at(c).get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != b.taps()) throw std::runtime_error("bank_from_json: bad kernel size");
      std::memcpy(b.kernel(l, c), vals.data(), sizeof(double) * vals.size());
    }
  }
  return b;
}

void save_bank(const FilterBank& bank, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << bank_to_json(bank) << "\n";
}

FilterBank load_bank(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return bank_from_json(ss.str());
}

std::string bank_hash(const FilterBank& bank) {
  uint64_t h = kFnvOffset;
  const int meta[3] = {bank.target == BankTarget::K ? 3 : 2, bank.n, bank.nu};
  fnv_bytes(h, meta, sizeof(meta));
  fnv_bytes(h, &bank.gamma, sizeof(bank.gamma));
  fnv_bytes(h, bank.coeffs.data(), bank.coeffs.size() * sizeof(double));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace tgv
