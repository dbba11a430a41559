#include "dadnet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace dadnet::lp {

VarId Model::add_var(std::string name, double lower, double upper, double cost, VarType type) {
  vars_.push_back(Variable{std::move(name), lower, upper, cost, type});
  return vars_.size() - 1;
}

RowId Model::add_row(std::string name, std::vector<Term> terms, RowSense sense, double rhs) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.var >= vars_.size()) throw ModelError("row '" + name + "' references unknown variable");
    if (!merged.empty() && merged.back().var == t.var)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  rows_.push_back(Row{std::move(name), std::move(merged), sense, rhs});
  return rows_.size() - 1;
}

void Model::set_bounds(VarId v, double lower, double upper) {
  auto& var = vars_.at(v);
  var.lower = lower;
  var.upper = upper;
}

std::size_t Model::num_nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.terms.size();
  return n;
}

bool Model::is_mip() const {
  return std::any_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.type == VarType::Binary; });
}

void Model::check() const {
  for (const auto& v : vars_) {
    if (!std::isfinite(v.cost)) throw ModelError("variable '" + v.name + "' has non-finite cost");
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
      throw ModelError("variable '" + v.name + "' has invalid bounds");
    if (v.type == VarType::Binary && (v.lower < 0.0 || v.upper > 1.0))
      throw ModelError("binary '" + v.name + "' has bounds outside [0, 1]");
  }
  for (const auto& r : rows_) {
    if (!std::isfinite(r.rhs)) throw ModelError("row '" + r.name + "' has non-finite rhs");
    for (const auto& t : r.terms)
      if (!std::isfinite(t.coef)) throw ModelError("row '" + r.name + "' has non-finite coefficient");
  }
}

double Model::objective_value(const std::vector<double>& x) const {
  double total = 0.0;
  for (std::size_t j = 0; j < vars_.size() && j < x.size(); ++j) total += vars_[j].cost * x[j];
  return total;
}

double Model::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size() && j < x.size(); ++j) {
    worst = std::max(worst, vars_[j].lower - x[j]);
    worst = std::max(worst, x[j] - vars_[j].upper);
  }
  for (const auto& r : rows_) {
    double lhs = 0.0;
    for (const auto& t : r.terms) lhs += t.coef * x.at(t.var);
    switch (r.sense) {
      case RowSense::LessEqual: worst = std::max(worst, lhs - r.rhs); break;
      case RowSense::GreaterEqual: worst = std::max(worst, r.rhs - lhs); break;
      case RowSense::Equal: worst = std::max(worst, std::abs(lhs - r.rhs)); break;
    }
  }
  return worst;
}

namespace {

bool legal_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  static constexpr std::string_view extra = "!\"#$%&()/,.;?@_`'{}|~";
  return extra.find(c) != std::string_view::npos;
}

std::vector<std::string> unique_names(const auto& items, char fallback) {
  std::vector<std::string> names;
  names.reserve(items.size());
  std::unordered_set<std::string> used;
  for (std::size_t k = 0; k < items.size(); ++k) {
    std::string name = items[k].name;
    for (auto& c : name)
      if (!legal_char(c)) c = '_';
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])) || name[0] == '.' ||
        name[0] == 'e' || name[0] == 'E')
      name.insert(name.begin(), fallback);
    if (!used.insert(name).second) {
      name += "#" + std::to_string(k);
      used.insert(name);
    }
    names.push_back(std::move(name));
  }
  return names;
}

void put_number(std::ostream& out, double v) { out << std::setprecision(17) << v; }

void put_terms(std::ostream& out, const std::vector<std::string>& names, const std::vector<Term>& terms) {
  std::size_t width = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double c = terms[k].coef;
    out << (c < 0.0 ? " - " : (k == 0 ? " " : " + "));
    put_number(out, std::abs(c));
    out << ' ' << names[terms[k].var];
    if (++width == 8 && k + 1 < terms.size()) {
      out << "\n   ";
      width = 0;
    }
  }
}

}  // namespace

void write_lp(const Model& model, std::ostream& out) {
  const auto var_names = unique_names(model.variables(), 'x');
  const auto row_names = unique_names(model.rows(), 'r');
  out << "\\ dadnet model: " << model.num_vars() << " variables, " << model.num_rows() << " rows\n";
  out << (model.sense() == ObjSense::Minimize ? "Minimize\n" : "Maximize\n");
  std::vector<Term> obj;
  for (VarId j = 0; j < model.num_vars(); ++j)
    if (model.var(j).cost != 0.0) obj.push_back({j, model.var(j).cost});
  if (obj.empty() && model.num_vars() > 0) obj.push_back({0, 0.0});
  out << " obj:";
  if (obj.size() == 1 && obj[0].coef == 0.0)
    out << " 0 " << var_names[obj[0].var];
  else
    put_terms(out, var_names, obj);
  out << "\nSubject To\n";
  for (RowId r = 0; r < model.num_rows(); ++r) {
    const auto& row = model.row(r);
    out << ' ' << row_names[r] << ':';
    if (row.terms.empty())
      out << " 0 " << (model.num_vars() ? var_names[0] : std::string("x"));
    else
      put_terms(out, var_names, row.terms);
    out << (row.sense == RowSense::LessEqual ? " <= " : row.sense == RowSense::GreaterEqual ? " >= " : " = ");
    put_number(out, row.rhs);
    out << '\n';
  }
  out << "Bounds\n";
  std::vector<VarId> binaries, generals;
  for (VarId j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.var(j);
    const bool binary = v.type == VarType::Binary;
    if (binary && v.lower == 0.0 && v.upper == 1.0) {
      binaries.push_back(j);
      continue;
    }
    if (binary) generals.push_back(j);
    const auto& name = var_names[j];
    if (v.lower == 0.0 && v.upper == kInf) continue;
    if (v.lower == -kInf && v.upper == kInf) {
      out << ' ' << name << " free\n";
      continue;
    }
    out << ' ';
    if (v.lower == -kInf)
      out << "-inf";
    else
      put_number(out, v.lower);
    out << " <= " << name << " <= ";
    if (v.upper == kInf)
      out << "+inf";
    else
      put_number(out, v.upper);
    out << '\n';
  }
  if (!binaries.empty()) {
    out << "Binaries\n";
    for (VarId j : binaries) out << ' ' << var_names[j] << '\n';
  }
  if (!generals.empty()) {
    out << "Generals\n";
    for (VarId j : generals) out << ' ' << var_names[j] << '\n';
  }
  out << "End\n";
}

std::string to_lp_string(const Model& model) {
  std::ostringstream os;
  write_lp(model, os);
  return os.str();
}

void write_lp_file(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_lp(model, out);
}

}  // namespace dadnet::lp
