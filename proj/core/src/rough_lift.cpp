#include "bor/rough_lift.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <ostream>

#include "bor/error.hpp"
#include "bor/numeric.hpp"
#include "bor/rng.hpp"

namespace bor {

TensorLevel2::TensorLevel2(std::vector<double> b_, std::vector<double> c_) : b(std::move(b_)), c(std::move(c_)) {
  if (c.size() != b.size() * b.size()) throw DimensionError("tensor level 2 part must be n x n");
}

TensorLevel2 TensorLevel2::identity(std::size_t n) {
  return TensorLevel2(std::vector<double>(n, 0.0), std::vector<double>(n * n, 0.0));
}

TensorLevel2 tensor_mul(const TensorLevel2& a, const TensorLevel2& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw DimensionError("tensor_mul: dimension mismatch");
  TensorLevel2 out = a;
  for (std::size_t i = 0; i < n; ++i) {
    out.b[i] += b.b[i];
    for (std::size_t j = 0; j < n; ++j) out.c[i * n + j] += b.c[i * n + j] + a.b[i] * b.b[j];
  }
  return out;
}

TensorLevel2 tensor_inv(const TensorLevel2& a) {
  const std::size_t n = a.dim();
  TensorLevel2 out = a;
  for (std::size_t i = 0; i < n; ++i) {
    out.b[i] = -a.b[i];
    for (std::size_t j = 0; j < n; ++j) out.c[i * n + j] = -a.c[i * n + j] + a.b[i] * a.b[j];
  }
  return out;
}

TensorLevel2 dilate(const TensorLevel2& a, double lambda) {
  TensorLevel2 out = a;
  for (double& x : out.b) x *= lambda;
  for (double& x : out.c) x *= lambda * lambda;
  return out;
}

double homogeneous_norm(const TensorLevel2& a) {
  return std::max(euclidean_norm(a.b), std::sqrt(2.0 * euclidean_norm(a.c)));
}

double symmetric_norm(const TensorLevel2& a) { return 0.5 * (homogeneous_norm(a) + homogeneous_norm(tensor_inv(a))); }

double rp_distance(const TensorLevel2& a, const TensorLevel2& b) { return symmetric_norm(tensor_mul(tensor_inv(a), b)); }

std::string to_string(LiftKind kind) {
  switch (kind) {
    case LiftKind::stratonovich_scalar:
      return "stratonovich_scalar";
    case LiftKind::ito_scalar:
      return "ito_scalar";
    case LiftKind::leftpoint_md:
      return "leftpoint_md";
    case LiftKind::custom:
      return "custom";
  }
  return "unknown";
}

std::uint64_t fingerprint(const SampledPath& x) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto feed = [&h](const void* p, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t k = 0; k < len; ++k) {
      h ^= bytes[k];
      h *= 0x100000001b3ULL;
    }
  };
  const double hz = x.horizon();
  const std::size_t d = x.dim();
  feed(&hz, sizeof hz);
  feed(&d, sizeof d);
  feed(x.data().data(), x.data().size() * sizeof(double));
  return h;
}

namespace {

double triple_defect(const SampledPath& x, const Level2Field& xx, std::size_t i, std::size_t k, std::size_t j,
                     std::span<const double> xij, std::span<double> a, std::span<double> b) {
  const std::size_t n = x.dim();
  xx.eval(i, k, a);
  xx.eval(k, j, b);
  double worst = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double dsu = x.at(k, p) - x.at(i, p);
    for (std::size_t q = 0; q < n; ++q) {
      const double dut = x.at(j, q) - x.at(k, q);
      const std::size_t e = p * n + q;
      worst = std::max(worst, std::abs(xij[e] - a[e] - b[e] - dsu * dut));
    }
  }
  return worst;
}

}  // namespace

ChenReport chen_defect(const SampledPath& x, const Level2Field& xx, const ChenCheckPolicy& policy) {
  const std::size_t n = x.dim();
  if (xx.dim() != n * n || xx.steps() != x.steps()) {
    throw DimensionError("second level must be an n x n field on the path grid");
  }
  const double sup = x.sup_norm();
  ChenReport rep;
  rep.tolerance = 1e-12 * (1.0 + sup * sup);
  std::vector<double> xij(n * n), a(n * n), b(n * n);
  const std::size_t steps = x.steps();
  if (steps <= policy.exhaustive_up_to) {
    for (std::size_t i = 0; i <= steps; ++i) {
      for (std::size_t j = i; j <= steps; ++j) {
        xx.eval(i, j, xij);
        for (std::size_t k = i; k <= j; ++k) {
          rep.max_defect = std::max(rep.max_defect, triple_defect(x, xx, i, k, j, xij, a, b));
          ++rep.triples_checked;
        }
      }
    }
  } else {
    const CounterRng rng(policy.seed);
    for (std::size_t t = 0; t < policy.random_triples; ++t) {
      std::array<std::size_t, 3> idx{};
      for (std::size_t r = 0; r < 3; ++r) idx[r] = rng.bits(r, t) % (steps + 1);
      std::sort(idx.begin(), idx.end());
      xx.eval(idx[0], idx[2], xij);
      rep.max_defect = std::max(rep.max_defect, triple_defect(x, xx, idx[0], idx[1], idx[2], xij, a, b));
      ++rep.triples_checked;
    }
  }
  return rep;
}

RoughPath::RoughPath(SampledPath x, Level2Field xx, LiftKind kind, const ChenCheckPolicy& policy)
    : x_(std::move(x)), xx_(std::move(xx)), kind_(kind), fingerprint_(bor::fingerprint(x_)) {
  chen_ = chen_defect(x_, xx_, policy);
  if (!chen_.ok()) {
    throw NumericError("second level violates Chen's relation: defect " + std::to_string(chen_.max_defect) +
                       " > tolerance " + std::to_string(chen_.tolerance));
  }
  std::vector<double> diag(xx_.dim());
  for (std::size_t i = 0; i <= x_.steps(); i += std::max<std::size_t>(1, x_.steps() / 64)) {
    xx_.eval(i, i, diag);
    if (sup_abs(diag) > chen_.tolerance) throw NumericError("second level must vanish on the diagonal");
  }
}

TensorLevel2 RoughPath::increment(std::size_t i, std::size_t j) const {
  const std::size_t n = dim();
  std::vector<double> b(n);
  for (std::size_t p = 0; p < n; ++p) b[p] = x_.at(j, p) - x_.at(i, p);
  return TensorLevel2(std::move(b), xx_(i, j));
}

RoughPath lift_scalar(const SampledPath& x, ScalarLift mode, const ChenCheckPolicy& policy) {
  if (x.dim() != 1) throw DimensionError("lift_scalar needs a scalar path; use lift_md_leftpoint for n > 1");
  auto values = std::make_shared<const std::vector<double>>(x.data());
  auto qv = std::make_shared<std::vector<double>>(x.points(), 0.0);
  if (mode == ScalarLift::ito) {
    CompensatedSum s;
    for (std::size_t k = 0; k < x.steps(); ++k) {
      const double d = (*values)[k + 1] - (*values)[k];
      s.add(d * d);
      (*qv)[k + 1] = s.value();
    }
  }
  std::shared_ptr<const std::vector<double>> qv_c = qv;
  const bool ito = mode == ScalarLift::ito;
  Level2Field xx(x.horizon(), x.steps(), 1, [values, qv_c, ito](std::size_t i, std::size_t j, std::span<double> out) {
    const double d = (*values)[j] - (*values)[i];
    out[0] = 0.5 * d * d;
    if (ito) out[0] -= 0.5 * ((*qv_c)[j] - (*qv_c)[i]);
  });
  return RoughPath(x, std::move(xx), ito ? LiftKind::ito_scalar : LiftKind::stratonovich_scalar, policy);
}

RoughPath lift_md_leftpoint(const SampledPath& x, StoragePolicy storage, const ChenCheckPolicy& policy) {
  const std::size_t n = x.dim(), steps = x.steps(), nn = n * n;
  bool dense = storage == StoragePolicy::dense || (storage == StoragePolicy::automatic && steps <= kAutoDenseSteps);
  if (dense && steps > Level2Field::kMaxDenseSteps) {
    if (storage == StoragePolicy::dense) {
      throw DimensionError("dense left-point lift limited to N <= " + std::to_string(Level2Field::kMaxDenseSteps));
    }
    dense = false;
  }
  if (dense) {
    std::vector<double> store(Level2Field::dense_size(steps, nn));
    std::size_t pos = 0;
    std::vector<double> acc(nn);
    for (std::size_t i = 0; i <= steps; ++i) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t j = i; j <= steps; ++j) {
        std::copy(acc.begin(), acc.end(), store.begin() + static_cast<std::ptrdiff_t>(pos));
        pos += nn;
        if (j == steps) break;
        for (std::size_t p = 0; p < n; ++p) {
          const double dsk = x.at(j, p) - x.at(i, p);
          if (dsk == 0.0) continue;
          for (std::size_t q = 0; q < n; ++q) acc[p * n + q] += dsk * (x.at(j + 1, q) - x.at(j, q));
        }
      }
    }
    return RoughPath(x, Level2Field::from_dense(x.horizon(), steps, nn, std::move(store)), LiftKind::leftpoint_md,
                     policy);
  }
  // P_j = sum_{k<j} X_k dX_k^T, XX_{ij} = P_j - P_i - X_i (X_j - X_i)^T
  auto prefix = std::make_shared<std::vector<double>>((steps + 1) * nn, 0.0);
  std::vector<CompensatedSum> sums(nn);
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        sums[p * n + q].add(x.at(k, p) * (x.at(k + 1, q) - x.at(k, q)));
        (*prefix)[(k + 1) * nn + p * n + q] = sums[p * n + q].value();
      }
    }
  }
  auto path = std::make_shared<const SampledPath>(x);
  std::shared_ptr<const std::vector<double>> pre = prefix;
  Level2Field xx(x.horizon(), steps, nn, [path, pre, n, nn](std::size_t i, std::size_t j, std::span<double> out) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t e = p * n + q;
        out[e] = (*pre)[j * nn + e] - (*pre)[i * nn + e] - path->at(i, p) * (path->at(j, q) - path->at(i, q));
      }
    }
  });
  return RoughPath(x, std::move(xx), LiftKind::leftpoint_md, policy);
}

RoughPath dilate(const RoughPath& x, double lambda) {
  return RoughPath(affine(x.path(), lambda), x.second_level().scaled(lambda * lambda), x.kind());
}

double rough_path_norm(const RoughPath& x, const RegularityParams& params) {
  const double first = seminorm_dyadic(x.path(), params).seminorm_dyadic;
  const double second = seminorm_dyadic(x.second_level(), params.second_level()).seminorm_dyadic;
  return first + std::sqrt(second);
}

void export_second_level_csv(std::ostream& out, const RoughPath& x) {
  if (x.steps() > 256) throw DimensionError("second-level CSV export is limited to N <= 256");
  const std::size_t n = x.dim();
  out << "i,j";
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) out << ",x" << (p + 1) << (q + 1);
  }
  out << '\n';
  std::vector<double> v(n * n);
  char buf[32];
  for (std::size_t i = 0; i <= x.steps(); ++i) {
    for (std::size_t j = i; j <= x.steps(); ++j) {
      x.second_level().eval(i, j, v);
      out << i << ',' << j;
      for (double e : v) {
        std::snprintf(buf, sizeof buf, "%.16e", e);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
}

}  // namespace bor
