#include <cmath>

#include "Highs.h"
#include "dadnet/solver.hpp"

namespace dadnet::lp {
namespace {

HighsLp to_highs(const Model& model) {
  HighsLp lp;
  const auto n = static_cast<HighsInt>(model.num_vars());
  const auto m = static_cast<HighsInt>(model.num_rows());
  lp.num_col_ = n;
  lp.num_row_ = m;
  lp.sense_ = model.sense() == ObjSense::Minimize ? ::ObjSense::kMinimize : ::ObjSense::kMaximize;
  lp.col_cost_.resize(n);
  lp.col_lower_.resize(n);
  lp.col_upper_.resize(n);
  bool any_integer = false;
  std::vector<HighsVarType> integrality(n, HighsVarType::kContinuous);
  for (HighsInt j = 0; j < n; ++j) {
    const auto& v = model.var(j);
    lp.col_cost_[j] = v.cost;
    lp.col_lower_[j] = v.lower == -kInf ? -kHighsInf : v.lower;
    lp.col_upper_[j] = v.upper == kInf ? kHighsInf : v.upper;
    if (v.type == VarType::Binary) {
      integrality[j] = HighsVarType::kInteger;
      any_integer = true;
    }
  }
  if (any_integer) lp.integrality_ = std::move(integrality);
  lp.row_lower_.resize(m);
  lp.row_upper_.resize(m);

  // Column-wise matrix.
  std::vector<HighsInt> count(n + 1, 0);
  for (const auto& row : model.rows())
    for (const auto& t : row.terms) ++count[t.var + 1];
  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kColwise;
  a.num_col_ = n;
  a.num_row_ = m;
  a.start_.assign(n + 1, 0);
  for (HighsInt j = 0; j < n; ++j) a.start_[j + 1] = a.start_[j] + count[j + 1];
  a.index_.resize(a.start_[n]);
  a.value_.resize(a.start_[n]);
  std::vector<HighsInt> fill(a.start_.begin(), a.start_.end() - 1);
  for (HighsInt i = 0; i < m; ++i) {
    const auto& row = model.row(i);
    switch (row.sense) {
      case RowSense::LessEqual:
        lp.row_lower_[i] = -kHighsInf;
        lp.row_upper_[i] = row.rhs;
        break;
      case RowSense::GreaterEqual:
        lp.row_lower_[i] = row.rhs;
        lp.row_upper_[i] = kHighsInf;
        break;
      case RowSense::Equal:
        lp.row_lower_[i] = row.rhs;
        lp.row_upper_[i] = row.rhs;
        break;
    }
    for (const auto& t : row.terms) {
      const HighsInt k = fill[t.var]++;
      a.index_[k] = i;
      a.value_[k] = t.coef;
    }
  }
  return lp;
}

Status map_status(HighsModelStatus s) {
  switch (s) {
    case HighsModelStatus::kOptimal: return Status::Optimal;
    case HighsModelStatus::kInfeasible: return Status::Infeasible;
    case HighsModelStatus::kUnbounded: return Status::Unbounded;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt: return Status::Limit;
    default: return Status::Error;
  }
}

class HighsBackend final : public Backend {
 public:
  std::string name() const override { return "highs"; }
  std::string version() const override {
    return std::to_string(highsVersionMajor()) + "." + std::to_string(highsVersionMinor()) + "." +
           std::to_string(highsVersionPatch());
  }

  SolveOutcome solve(const Model& model, const SolveLimits& limits) const override {
    SolveOutcome out;
    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("random_seed", 0);
    const auto& tol = limits.tolerances;
    highs.setOptionValue("primal_feasibility_tolerance", tol.primal_feasibility);
    highs.setOptionValue("dual_feasibility_tolerance", tol.dual_feasibility);
    highs.setOptionValue("mip_feasibility_tolerance", tol.mip_feasibility);
    highs.setOptionValue("mip_rel_gap", tol.mip_rel_gap);
    highs.setOptionValue("mip_abs_gap", tol.mip_abs_gap);
    if (std::isfinite(limits.time_limit)) highs.setOptionValue("time_limit", std::max(limits.time_limit, 1e-3));

    if (highs.passModel(to_highs(model)) == HighsStatus::kError) {
      out.message = "HiGHS rejected the model";
      return out;
    }
    highs.run();
    HighsModelStatus hs = highs.getModelStatus();
    if (hs == HighsModelStatus::kUnboundedOrInfeasible) {
      // Presolve could not tell; the simplex without presolve can.
      highs.setOptionValue("presolve", "off");
      highs.clearSolver();
      highs.run();
      hs = highs.getModelStatus();
      if (hs == HighsModelStatus::kUnboundedOrInfeasible) hs = HighsModelStatus::kInfeasible;
    }
    out.status = map_status(hs);
    out.message = highs.modelStatusToString(hs);
    const auto& info = highs.getInfo();
    const auto& sol = highs.getSolution();
    const bool mip = model.is_mip();
    out.has_primal = sol.value_valid && (out.status == Status::Optimal ||
                                         (out.status == Status::Limit &&
                                          info.primal_solution_status == kSolutionStatusFeasible));
    if (out.has_primal) {
      out.primal = sol.col_value;
      out.objective = info.objective_function_value;
    }
    if (mip) out.mip_gap = info.mip_gap;
    if (!mip && sol.dual_valid && out.status == Status::Optimal) {
      out.row_duals = sol.row_dual;
      out.has_duals = true;
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<Backend> make_highs_backend() { return std::make_shared<HighsBackend>(); }

}  // namespace dadnet::lp
