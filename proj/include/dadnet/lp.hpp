#pragma once

// Backend-neutral (mixed-integer) linear model. Variables and rows keep
// insertion order, so a model built from fixed inputs serializes identically
// on every run.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dadnet::lp {

using VarId = std::size_t;
using RowId = std::size_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary };
enum class ObjSense { Minimize, Maximize };
enum class RowSense { LessEqual, GreaterEqual, Equal };

struct Term {
  VarId var;
  double coef;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
  VarType type = VarType::Continuous;
};

struct Row {
  std::string name;
  std::vector<Term> terms;  // sorted by var, no duplicates
  RowSense sense = RowSense::Equal;
  double rhs = 0.0;
};

class ModelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Model {
 public:
  explicit Model(ObjSense sense = ObjSense::Minimize) : sense_(sense) {}

  VarId add_var(std::string name, double lower, double upper, double cost = 0.0,
                VarType type = VarType::Continuous);
  VarId add_nonneg(std::string name, double cost = 0.0) { return add_var(std::move(name), 0.0, kInf, cost); }
  VarId add_free(std::string name, double cost = 0.0) { return add_var(std::move(name), -kInf, kInf, cost); }
  VarId add_binary(std::string name, double cost = 0.0) {
    return add_var(std::move(name), 0.0, 1.0, cost, VarType::Binary);
  }

  // Duplicate variables in terms are merged; zero coefficients are kept out.
  RowId add_row(std::string name, std::vector<Term> terms, RowSense sense, double rhs);

  void set_cost(VarId v, double cost) { vars_.at(v).cost = cost; }
  void add_cost(VarId v, double cost) { vars_.at(v).cost += cost; }
  void set_bounds(VarId v, double lower, double upper);
  void set_sense(ObjSense sense) { sense_ = sense; }
  void set_rhs(RowId r, double rhs) { rows_.at(r).rhs = rhs; }

  ObjSense sense() const { return sense_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Variable& var(VarId v) const { return vars_.at(v); }
  const Row& row(RowId r) const { return rows_.at(r); }
  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_nonzeros() const;
  bool is_mip() const;

  // Throws ModelError on non-finite coefficients, inverted bounds or
  // binaries with bounds outside [0, 1].
  void check() const;

  // Objective of a primal point; rows are not checked.
  double objective_value(const std::vector<double>& x) const;
  // Largest row or bound violation of a primal point.
  double max_violation(const std::vector<double>& x) const;

 private:
  ObjSense sense_;
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

// CPLEX LP text. Names are sanitized and made unique; numbers use 17
// significant digits so values round-trip.
void write_lp(const Model& model, std::ostream& out);
std::string to_lp_string(const Model& model);
void write_lp_file(const Model& model, const std::string& path);

}  // namespace dadnet::lp
