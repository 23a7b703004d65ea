#include "opwire/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace opwire {

namespace {

long long product_of(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) p *= d;
  return p;
}

std::vector<int> dims_of(const std::vector<TypeLabel>& types) {
  std::vector<int> d;
  d.reserve(types.size());
  for (const auto& t : types) d.push_back(t.dimension);
  return d;
}

void require_data_size(const std::vector<double>& data, long long n, const char* what) {
  if (static_cast<long long>(data.size()) != n)
    throw Error(Errc::ShapeMismatch, std::string(what) + ": expected " + std::to_string(n) +
                                         " entries, got " + std::to_string(data.size()));
}

// ---------------------------------------------------------------------------
// Generic contraction over the connectivity graph. Each wire and each ground
// becomes a "net" (an index variable); slot elements become factors over the
// nets of their ports, grounds become all-ones factors. Nets touching the
// outer boundary survive to the result, all others are summed out as soon as
// every factor referencing them has been absorbed.
// ---------------------------------------------------------------------------

struct NetFactor {
  std::vector<int> nets;  // may repeat when one wire joins two ports of a slot
  std::vector<int> dims;
  std::vector<double> data;
};

struct ActiveTensor {
  std::vector<int> nets;  // unique
  std::vector<int> dims;
  std::vector<double> data{1.0};
};

ActiveTensor multiply(const ActiveTensor& act, const NetFactor& f) {
  ActiveTensor out;
  out.nets = act.nets;
  out.dims = act.dims;
  for (std::size_t k = 0; k < f.nets.size(); ++k) {
    if (std::find(out.nets.begin(), out.nets.end(), f.nets[k]) == out.nets.end()) {
      out.nets.push_back(f.nets[k]);
      out.dims.push_back(f.dims[k]);
    }
  }
  const long long total = product_of(out.dims);
  const long long act_total = product_of(act.dims);
  const long long fresh_total = act_total == 0 ? 1 : total / act_total;
  out.data.assign(total, 0.0);
  std::vector<int> pos(f.nets.size());
  for (std::size_t k = 0; k < f.nets.size(); ++k)
    pos[k] = static_cast<int>(std::find(out.nets.begin(), out.nets.end(), f.nets[k]) -
                              out.nets.begin());
  std::vector<int> value(out.nets.size(), 0);
  for (long long r = 0; r < total; ++r) {
    long long rest = r;
    for (int p = static_cast<int>(out.dims.size()) - 1; p >= 0; --p) {
      value[p] = static_cast<int>(rest % out.dims[p]);
      rest /= out.dims[p];
    }
    long long f_lin = 0;
    for (std::size_t k = 0; k < f.nets.size(); ++k) f_lin = f_lin * f.dims[k] + value[pos[k]];
    out.data[r] = act.data[r / fresh_total] * f.data[f_lin];
  }
  return out;
}

ActiveTensor sum_out(const ActiveTensor& act, int net) {
  auto it = std::find(act.nets.begin(), act.nets.end(), net);
  if (it == act.nets.end()) return act;
  const int p = static_cast<int>(it - act.nets.begin());
  long long outer = 1, inner = 1;
  for (int i = 0; i < p; ++i) outer *= act.dims[i];
  for (std::size_t i = p + 1; i < act.dims.size(); ++i) inner *= act.dims[i];
  const int d = act.dims[p];
  ActiveTensor out;
  out.nets = act.nets;
  out.dims = act.dims;
  out.nets.erase(out.nets.begin() + p);
  out.dims.erase(out.dims.begin() + p);
  out.data.assign(outer * inner, 0.0);
  for (long long o = 0; o < outer; ++o)
    for (int v = 0; v < d; ++v)
      for (long long i = 0; i < inner; ++i)
        out.data[o * inner + i] += act.data[(o * d + v) * inner + i];
  return out;
}

// Factor data for one slot, laid out to match `ports` order.
NetFactor slot_factor(const WiringDiagram& w, int slot,
                      const std::vector<std::pair<Face, int>>& ports,
                      const std::map<PortRef, int>& net_of, const std::vector<double>& data) {
  NetFactor f;
  for (auto [face, idx] : ports) {
    PortRef p{slot, face, idx};
    auto it = net_of.find(p);
    if (it == net_of.end())
      throw Error(Errc::Internal, "uncovered port " + to_string(p));
    f.nets.push_back(it->second);
    f.dims.push_back(type_at(w, p).dimension);
  }
  f.data = data;
  return f;
}

// Contracts the network and lays the surviving nets out along `result_ports`
// (outer boundary ports in the caller's order). `factor_data` supplies the
// tensor entries for each non-discarded slot keyed by slot index, with axis
// order given by `factor_ports`.
std::vector<double> contract(
    const WiringDiagram& w, const std::vector<PortRef>& result_ports,
    const std::function<std::pair<std::vector<std::pair<Face, int>>, const std::vector<double>*>(
        int)>& factor_of) {
  std::map<PortRef, int> net_of;
  std::vector<int> net_dim;
  auto fresh_net = [&](const PortRef& p) {
    net_dim.push_back(type_at(w, p).dimension);
    return static_cast<int>(net_dim.size()) - 1;
  };
  for (const auto& wire : w.wires) {
    int n = fresh_net(wire.a);
    net_of[wire.a] = n;
    net_of[wire.b] = n;
  }
  std::vector<int> ground_nets;
  for (const auto& g : w.grounds) {
    int n = fresh_net(g.source);
    net_of[g.source] = n;
    ground_nets.push_back(n);
  }

  std::vector<NetFactor> factors;
  for (int s = 0; s < static_cast<int>(w.slots.size()); ++s) {
    if (w.discarded.count(s)) continue;
    auto [ports, data] = factor_of(s);
    factors.push_back(slot_factor(w, s, ports, net_of, *data));
  }
  for (int n : ground_nets) {
    NetFactor ones;
    ones.nets = {n};
    ones.dims = {net_dim[n]};
    ones.data.assign(net_dim[n], 1.0);
    factors.push_back(ones);
  }

  std::vector<int> occ(net_dim.size(), 0);
  std::vector<char> keep(net_dim.size(), 0);
  for (const auto& f : factors)
    for (int n : f.nets) ++occ[n];
  for (const auto& p : result_ports) keep[net_of.at(p)] = 1;

  ActiveTensor act;
  for (const auto& f : factors) {
    act = multiply(act, f);
    for (int n : f.nets)
      if (--occ[n] < 0) throw Error(Errc::Internal, "net over-consumed");
    std::vector<int> done;
    for (int n : act.nets)
      if (occ[n] <= 0 && !keep[n]) done.push_back(n);
    for (int n : done) act = sum_out(act, n);
  }

  double loop_factor = 1.0;
  for (const auto& [label, count] : w.loops)
    for (int i = 0; i < count; ++i) loop_factor *= label.dimension;

  // Lay out the result over the outer ports.
  std::vector<int> out_dims;
  out_dims.reserve(result_ports.size());
  for (const auto& p : result_ports) out_dims.push_back(type_at(w, p).dimension);
  const long long total = product_of(out_dims);
  std::vector<double> result(total, 0.0);
  std::vector<int> value(result_ports.size(), 0);
  for (long long r = 0; r < total; ++r) {
    long long rest = r;
    for (int p = static_cast<int>(out_dims.size()) - 1; p >= 0; --p) {
      value[p] = static_cast<int>(rest % out_dims[p]);
      rest /= out_dims[p];
    }
    std::map<int, int> net_value;
    bool consistent = true;
    for (std::size_t p = 0; p < result_ports.size(); ++p) {
      int n = net_of.at(result_ports[p]);
      auto it = net_value.find(n);
      if (it == net_value.end())
        net_value[n] = value[p];
      else if (it->second != value[p])
        consistent = false;  // one wire joining two outer ports: diagonal only
    }
    if (!consistent) continue;
    long long act_lin = 0;
    for (std::size_t k = 0; k < act.nets.size(); ++k) {
      auto it = net_value.find(act.nets[k]);
      if (it == net_value.end()) throw Error(Errc::Internal, "unresolved surviving net");
      act_lin = act_lin * act.dims[k] + it->second;
    }
    result[r] = act.data[act_lin] * loop_factor;
  }
  return result;
}

void require_variant(OperadVariant v, const WiringDiagram& w) {
  auto report = validate(v, w);
  if (!report.ok)
    throw Error(Errc::VariantMismatch,
                std::string(variant_name(v)) + " wiring required: " + report.summary());
}

void require_arity(const WiringDiagram& w, std::size_t n) {
  if (n != w.slots.size())
    throw Error(Errc::ArityMismatch, std::to_string(n) + " elements for " +
                                         std::to_string(w.slots.size()) + " slots");
}

// Axis order for a box element laid out as a matrix: outputs (rows) first.
std::vector<std::pair<Face, int>> box_matrix_ports(const Signature& sig) {
  std::vector<std::pair<Face, int>> ports;
  for (int j = 0; j < static_cast<int>(sig.outputs.size()); ++j) ports.emplace_back(Face::Out, j);
  for (int i = 0; i < static_cast<int>(sig.inputs.size()); ++i) ports.emplace_back(Face::In, i);
  return ports;
}

void require_matrix_shape(const Element& e, const Signature& sig, int slot) {
  const long long rows = product_of(dims_of(sig.outputs));
  const long long cols = product_of(dims_of(sig.inputs));
  if (e.rows != rows || e.cols != cols)
    throw Error(Errc::CarrierMismatch,
                "slot " + std::to_string(slot) + ": " + std::to_string(e.rows) + "x" +
                    std::to_string(e.cols) + " element for a " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " carrier");
}

// ---- generator-fold evaluation (the second, independent matrix route) ----

struct Mat {
  long long r = 1, c = 1;
  std::vector<double> d{1.0};
};

Mat mat_identity(long long n) {
  Mat m;
  m.r = m.c = n;
  m.d.assign(n * n, 0.0);
  for (long long i = 0; i < n; ++i) m.d[i * n + i] = 1.0;
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  if (x.c != y.r) throw Error(Errc::ShapeMismatch, "matrix product dimension clash");
  Mat m;
  m.r = x.r;
  m.c = y.c;
  m.d.assign(m.r * m.c, 0.0);
  for (long long i = 0; i < x.r; ++i)
    for (long long k = 0; k < x.c; ++k) {
      const double v = x.d[i * x.c + k];
      if (v == 0.0) continue;
      for (long long j = 0; j < y.c; ++j) m.d[i * m.c + j] += v * y.d[k * y.c + j];
    }
  return m;
}

Mat mat_kron(const Mat& x, const Mat& y) {
  Mat m;
  m.r = x.r * y.r;
  m.c = x.c * y.c;
  m.d.assign(m.r * m.c, 0.0);
  for (long long i1 = 0; i1 < x.r; ++i1)
    for (long long j1 = 0; j1 < x.c; ++j1) {
      const double v = x.d[i1 * x.c + j1];
      if (v == 0.0) continue;
      for (long long i2 = 0; i2 < y.r; ++i2)
        for (long long j2 = 0; j2 < y.c; ++j2)
          m.d[(i1 * y.r + i2) * m.c + (j1 * y.c + j2)] = v * y.d[i2 * y.c + j2];
    }
  return m;
}

// Permutation matrix exchanging the two tensor factors: basis (x, y) with x
// slowest maps to (y, x) with y slowest.
Mat mat_swap(int da, int db) {
  Mat m;
  m.r = m.c = static_cast<long long>(da) * db;
  m.d.assign(m.r * m.c, 0.0);
  for (int x = 0; x < da; ++x)
    for (int y = 0; y < db; ++y) m.d[(static_cast<long long>(y) * da + x) * m.c + x * db + y] = 1.0;
  return m;
}

Mat fold_expression(const Expression& e, const std::vector<Element>& mats) {
  switch (e.kind) {
    case Expression::Kind::Slot: {
      const Element& el = mats.at(e.slot);
      Mat m;
      m.r = el.rows;
      m.c = el.cols;
      m.d = el.data;
      return m;
    }
    case Expression::Kind::Id:
      return mat_identity(e.t1.dimension);
    case Expression::Kind::Swap:
      return mat_swap(e.t1.dimension, e.t2.dimension);
    case Expression::Kind::Seq:
      return mat_mul(fold_expression(*e.rhs, mats), fold_expression(*e.lhs, mats));
    case Expression::Kind::Par:
      return mat_kron(fold_expression(*e.lhs, mats), fold_expression(*e.rhs, mats));
  }
  throw Error(Errc::Internal, "unhandled expression node");
}

}  // namespace

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element Element::free_atom(const Signature& sig, std::string label) {
  Element e;
  e.kind = Kind::Free;
  e.diagram = identity_wiring(sig);
  e.labels = {std::move(label)};
  return e;
}

Element Element::tensor(std::vector<int> shape, std::vector<double> data) {
  require_data_size(data, product_of(shape), "tensor");
  Element e;
  e.kind = Kind::Tensor;
  e.shape = std::move(shape);
  e.data = std::move(data);
  return e;
}

Element Element::matrix(int rows, int cols, std::vector<double> data) {
  require_data_size(data, static_cast<long long>(rows) * cols, "matrix");
  Element e;
  e.kind = Kind::Matrix;
  e.rows = rows;
  e.cols = cols;
  e.data = std::move(data);
  return e;
}

Element Element::kernel(int rows, int cols, std::vector<double> data) {
  require_data_size(data, static_cast<long long>(rows) * cols, "kernel");
  for (int j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double v = data[static_cast<long long>(i) * cols + j];
      if (v < -1e-15)
        throw Error(Errc::NotCausal, "negative entry " + std::to_string(v) + " in column " +
                                         std::to_string(j));
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw Error(Errc::NotCausal,
                  "column " + std::to_string(j) + " sums to " + std::to_string(sum));
  }
  Element e;
  e.kind = Kind::Kernel;
  e.rows = rows;
  e.cols = cols;
  e.data = std::move(data);
  return e;
}

Element Element::scalar(double v) {
  Element e;
  e.kind = Kind::Scalar;
  e.data = {v};
  return e;
}

double Element::scalar_value() const {
  if (data.size() != 1) throw Error(Errc::ShapeMismatch, "not a scalar element");
  return data[0];
}

double element_distance(const Element& a, const Element& b) {
  const bool a_num = a.kind != Element::Kind::Free;
  const bool b_num = b.kind != Element::Kind::Free;
  if (a_num != b_num) throw Error(Errc::CarrierMismatch, "free vs numeric comparison");
  if (!a_num) {
    return (a.labels == b.labels && diagrams_equal(a.diagram, b.diagram)) ? 0.0 : 1.0;
  }
  if (a.data.size() != b.data.size())
    throw Error(Errc::CarrierMismatch, "comparing elements of different extent");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

Element element_mix(double p, const Element& a, const Element& b) {
  if (a.kind == Element::Kind::Free || b.kind == Element::Kind::Free)
    throw Error(Errc::CarrierMismatch, "free elements have no convex structure");
  if (a.data.size() != b.data.size() || a.kind != b.kind || a.shape != b.shape ||
      a.rows != b.rows || a.cols != b.cols)
    throw Error(Errc::CarrierMismatch, "mixing elements of different carriers");
  Element e = a;
  for (std::size_t i = 0; i < e.data.size(); ++i) e.data[i] = p * a.data[i] + (1 - p) * b.data[i];
  return e;
}

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

Element free_eval(const WiringDiagram& w, const std::vector<std::string>& labels) {
  require_arity(w, labels.size());
  Element e;
  e.kind = Element::Kind::Free;
  e.diagram = w;
  e.labels = labels;
  return e;
}

Element tensor_eval(const WiringDiagram& w, const std::vector<Element>& tensors) {
  require_variant(OperadVariant::WD, w);
  require_arity(w, tensors.size());
  for (int s = 0; s < static_cast<int>(w.slots.size()); ++s) {
    const Element& e = tensors[s];
    if (e.kind != Element::Kind::Tensor)
      throw Error(Errc::CarrierMismatch, "slot " + std::to_string(s) + ": tensor expected");
    if (e.shape != dims_of(w.slots[s].ports))
      throw Error(Errc::CarrierMismatch, "slot " + std::to_string(s) + ": shape mismatch");
  }
  std::vector<PortRef> result_ports;
  for (int i = 0; i < static_cast<int>(w.outer.ports.size()); ++i)
    result_ports.push_back(PortRef::outer_port(i));
  auto data = contract(w, result_ports, [&](int s) {
    return std::make_pair(signature_ports(w.slots[s]), &tensors[s].data);
  });
  if (w.outer.is_dot()) return Element::tensor(dims_of(w.outer.ports), std::move(data));
  return Element::scalar(data.at(0));
}

Element matrix_eval(const WiringDiagram& w, const std::vector<Element>& mats,
                    FoliationStyle style) {
  require_variant(OperadVariant::WA, w);
  require_arity(w, mats.size());
  for (int s = 0; s < static_cast<int>(w.slots.size()); ++s) {
    if (mats[s].kind != Element::Kind::Matrix && mats[s].kind != Element::Kind::Kernel)
      throw Error(Errc::CarrierMismatch, "slot " + std::to_string(s) + ": matrix expected");
    require_matrix_shape(mats[s], w.slots[s], s);
  }
  const long long rows = product_of(dims_of(w.outer.outputs));
  const long long cols = product_of(dims_of(w.outer.inputs));

  // Route one: direct contraction of the connectivity graph.
  std::vector<PortRef> result_ports;
  for (int j = 0; j < static_cast<int>(w.outer.outputs.size()); ++j)
    result_ports.push_back(PortRef::outer_out(j));
  for (int i = 0; i < static_cast<int>(w.outer.inputs.size()); ++i)
    result_ports.push_back(PortRef::outer_in(i));
  auto direct = contract(w, result_ports, [&](int s) {
    return std::make_pair(box_matrix_ports(w.slots[s]), &mats[s].data);
  });

  // Route two: fold a generator decomposition. The port-free empty wiring has
  // no decomposition; its value is the empty tensor product, i.e. 1.
  Mat folded;
  if (w.slots.empty() && w.outer.inputs.empty() && w.outer.outputs.empty()) {
    folded = Mat{};
  } else {
    folded = fold_expression(decompose_acyclic(w, style), mats);
  }
  if (folded.r != rows || folded.c != cols)
    throw Error(Errc::Internal, "generator fold produced a wrongly shaped matrix");
  double residual = 0.0;
  for (std::size_t i = 0; i < direct.size(); ++i)
    residual = std::max(residual, std::abs(direct[i] - folded.d[i]));
  if (residual > 1e-9)
    throw Error(Errc::Internal,
                "evaluation routes disagree, residual " + std::to_string(residual));
  return Element::matrix(static_cast<int>(rows), static_cast<int>(cols), std::move(folded.d));
}

Element stochastic_eval(const WiringDiagram& w, const std::vector<Element>& kernels) {
  require_variant(OperadVariant::WGround, w);
  require_arity(w, kernels.size());
  for (int s = 0; s < static_cast<int>(w.slots.size()); ++s) {
    if (kernels[s].kind != Element::Kind::Kernel)
      throw Error(Errc::CarrierMismatch, "slot " + std::to_string(s) + ": kernel expected");
    require_matrix_shape(kernels[s], w.slots[s], s);
  }
  std::vector<PortRef> result_ports;
  for (int j = 0; j < static_cast<int>(w.outer.outputs.size()); ++j)
    result_ports.push_back(PortRef::outer_out(j));
  for (int i = 0; i < static_cast<int>(w.outer.inputs.size()); ++i)
    result_ports.push_back(PortRef::outer_in(i));
  auto data = contract(w, result_ports, [&](int s) {
    return std::make_pair(box_matrix_ports(w.slots[s]), &kernels[s].data);
  });
  if (w.outer.is_empty()) return Element::scalar(data.at(0));
  // Composites of column-stochastic kernels under causal wiring are again
  // column-stochastic up to rounding; bypass the constructor's exact check.
  Element e;
  e.kind = Element::Kind::Kernel;
  e.rows = static_cast<int>(product_of(dims_of(w.outer.outputs)));
  e.cols = static_cast<int>(product_of(dims_of(w.outer.inputs)));
  e.data = std::move(data);
  return e;
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

Algebra Algebra::free_algebra(OperadVariant variant) { return Algebra(AlgebraKind::Free, variant); }
Algebra Algebra::tensor_algebra() { return Algebra(AlgebraKind::Tensor, OperadVariant::WD); }
Algebra Algebra::matrix_algebra() { return Algebra(AlgebraKind::Matrix, OperadVariant::WA); }
Algebra Algebra::stochastic_algebra() {
  return Algebra(AlgebraKind::Stochastic, OperadVariant::WGround);
}

Algebra Algebra::transported(OperadVariant variant, Algebra base,
                             std::function<Signature(const Signature&)> obj_map,
                             std::function<WiringDiagram(const WiringDiagram&)> wiring_map) {
  Algebra a(base.kind(), variant);
  a.base_ = std::make_shared<const Algebra>(std::move(base));
  a.obj_map_ = std::move(obj_map);
  a.wiring_map_ = std::move(wiring_map);
  return a;
}

CarrierSpec Algebra::carrier(const Signature& sig) const {
  if (base_) {
    CarrierSpec c = base_->carrier(obj_map_(sig));
    c.signature = sig;
    return c;
  }
  CarrierSpec c;
  c.signature = sig;
  switch (kind_) {
    case AlgebraKind::Free:
      c.kind = Element::Kind::Free;
      break;
    case AlgebraKind::Tensor:
      if (!sig.is_dot()) throw Error(Errc::NotADot, "tensor carriers live over dot signatures");
      c.kind = Element::Kind::Tensor;
      c.shape = dims_of(sig.ports);
      break;
    case AlgebraKind::Matrix:
    case AlgebraKind::Stochastic:
      if (!sig.is_box()) throw Error(Errc::NotABox, "matrix carriers live over box signatures");
      c.kind = kind_ == AlgebraKind::Matrix ? Element::Kind::Matrix : Element::Kind::Kernel;
      c.rows = static_cast<int>(product_of(dims_of(sig.outputs)));
      c.cols = static_cast<int>(product_of(dims_of(sig.inputs)));
      break;
  }
  return c;
}

Element Algebra::apply(const WiringDiagram& w, const std::vector<Element>& elements) const {
  if (base_) {
    require_variant(variant_, w);
    return base_->apply(wiring_map_(w), elements);
  }
  switch (kind_) {
    case AlgebraKind::Free: {
      require_variant(variant_, w);
      require_arity(w, elements.size());
      WiringDiagram acc = w;
      std::vector<std::string> labels;
      for (int s = 0; s < static_cast<int>(w.slots.size()); ++s) {
        const Element& e = elements[s];
        if (e.kind != Element::Kind::Free || !(e.diagram.outer == w.slots[s]))
          throw Error(Errc::CarrierMismatch,
                      "slot " + std::to_string(s) + ": free element of wrong boundary");
        for (const auto& l : e.labels) labels.push_back(l);
      }
      for (int s = static_cast<int>(w.slots.size()) - 1; s >= 0; --s)
        acc = substitute(acc, s, elements[s].diagram);
      Element out;
      out.kind = Element::Kind::Free;
      out.diagram = std::move(acc);
      out.labels = std::move(labels);
      return out;
    }
    case AlgebraKind::Tensor:
      return tensor_eval(w, elements);
    case AlgebraKind::Matrix:
      return matrix_eval(w, elements);
    case AlgebraKind::Stochastic:
      return stochastic_eval(w, elements);
  }
  throw Error(Errc::Internal, "unhandled algebra kind");
}

// ---------------------------------------------------------------------------
// Law residuals
// ---------------------------------------------------------------------------

double check_functoriality(const Algebra& alg, const WiringDiagram& host, int slot,
                           const WiringDiagram& guest, const std::vector<Element>& elements) {
  const auto composite = substitute(host, slot, guest);
  require_arity(composite, elements.size());
  const auto one_shot = alg.apply(composite, elements);

  const std::size_t m = guest.slots.size();
  std::vector<Element> inner(elements.begin() + slot, elements.begin() + slot + m);
  const auto nested = alg.apply(guest, inner);
  std::vector<Element> outer(elements.begin(), elements.begin() + slot);
  outer.push_back(nested);
  outer.insert(outer.end(), elements.begin() + slot + m, elements.end());
  const auto two_shot = alg.apply(host, outer);
  return element_distance(one_shot, two_shot);
}

double check_convex_enrichment(const Algebra& alg, const WiringDiagram& w,
                               const std::vector<Element>& elements, int slot, const Element& alt,
                               double p) {
  std::vector<Element> mixed = elements;
  mixed[slot] = element_mix(p, elements[slot], alt);
  const auto lhs = alg.apply(w, mixed);

  std::vector<Element> swapped = elements;
  swapped[slot] = alt;
  const auto rhs =
      element_mix(p, alg.apply(w, elements), alg.apply(w, swapped));
  return element_distance(lhs, rhs);
}

}  // namespace opwire
