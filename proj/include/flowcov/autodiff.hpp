#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowcov {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a forward value stops being finite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix; vectors are columns (n x 1).
template <typename T>
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Tensor() = default;
  Tensor(int r, int c, T fill = T(0)) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  static Tensor column(const std::vector<T>& values) {
    Tensor t(static_cast<int>(values.size()), 1);
    t.data = values;
    return t;
  }

  std::size_t size() const { return data.size(); }
  T& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  T at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }
  std::string shape() const { return std::to_string(rows) + "x" + std::to_string(cols); }

  bool operator==(const Tensor&) const = default;
};

template <typename T>
class Tape;

/// Handle to a value recorded on a tape.
template <typename T>
struct Var {
  Tape<T>* tape = nullptr;
  int id = -1;

  const Tensor<T>& value() const { return tape->value(*this); }
};

/// Reverse-mode tape. Operations append nodes; backward() walks them in
/// reverse. Parameter leaves read the caller's tensor in place and add their
/// gradient into a caller-owned sink.
template <typename T>
class Tape {
 public:
  Var<T> constant(Tensor<T> v) { return push(Op::Leaf, {}, std::move(v), false); }

  Var<T> param(const Tensor<T>& value, Tensor<T>* grad_sink) {
    Node n;
    n.op = Op::Leaf;
    n.ref = &value;
    n.sink = grad_sink;
    n.needs_grad = grad_sink != nullptr;
    nodes_.push_back(std::move(n));
    return {this, static_cast<int>(nodes_.size()) - 1};
  }

  const Tensor<T>& value(Var<T> v) const {
    const Node& n = nodes_[static_cast<std::size_t>(v.id)];
    return n.ref ? *n.ref : n.value;
  }
  /// Gradient after backward(); all zeros for nodes the loss does not reach.
  const Tensor<T>& grad(Var<T> v) const { return nodes_[static_cast<std::size_t>(v.id)].grad; }
  std::size_t size() const { return nodes_.size(); }

  Var<T> matmul(Var<T> a, Var<T> b) {
    const auto& A = value(a);
    const auto& B = value(b);
    if (A.cols != B.rows) shape_error("matmul", A, B);
    Tensor<T> out(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i) {
      for (int k = 0; k < A.cols; ++k) {
        const T aik = A.at(i, k);
        const T* brow = &B.data[static_cast<std::size_t>(k) * B.cols];
        T* orow = &out.data[static_cast<std::size_t>(i) * out.cols];
        for (int j = 0; j < B.cols; ++j) orow[j] += aik * brow[j];
      }
    }
    return push(Op::MatMul, {a.id, b.id}, std::move(out));
  }

  /// W x + b for a column x.
  Var<T> affine(Var<T> w, Var<T> x, Var<T> b) {
    const auto& W = value(w);
    const auto& X = value(x);
    const auto& B = value(b);
    if (X.cols != 1 || W.cols != X.rows) shape_error("affine", W, X);
    if (!(B.rows == W.rows && B.cols == 1)) shape_error("affine bias", W, B);
    Tensor<T> out = B;
    matvec_add(W, X, out);
    return push(Op::Affine, {w.id, x.id, b.id}, std::move(out));
  }

  /// W x + U h + b for columns x and h.
  Var<T> affine2(Var<T> w, Var<T> x, Var<T> u, Var<T> h, Var<T> b) {
    const auto& W = value(w);
    const auto& X = value(x);
    const auto& U = value(u);
    const auto& H = value(h);
    const auto& B = value(b);
    if (X.cols != 1 || W.cols != X.rows) shape_error("affine2", W, X);
    if (H.cols != 1 || U.cols != H.rows || U.rows != W.rows) shape_error("affine2", U, H);
    if (!(B.rows == W.rows && B.cols == 1)) shape_error("affine2 bias", W, B);
    Tensor<T> out = B;
    matvec_add(W, X, out);
    matvec_add(U, H, out);
    return push(Op::Affine2, {w.id, x.id, u.id, h.id, b.id}, std::move(out));
  }

  Var<T> add(Var<T> a, Var<T> b) { return elementwise(Op::Add, a, b, [](T x, T y) { return x + y; }); }
  Var<T> sub(Var<T> a, Var<T> b) { return elementwise(Op::Sub, a, b, [](T x, T y) { return x - y; }); }
  Var<T> mul(Var<T> a, Var<T> b) { return elementwise(Op::Mul, a, b, [](T x, T y) { return x * y; }); }

  Var<T> scale(Var<T> a, T s) {
    Tensor<T> out = value(a);
    for (T& v : out.data) v *= s;
    return push(Op::Scale, {a.id}, std::move(out), true, static_cast<double>(s));
  }

  Var<T> sigmoid(Var<T> a) {
    Tensor<T> out = value(a);
    for (T& v : out.data) v = sigmoid_value(v);
    return push(Op::Sigmoid, {a.id}, std::move(out));
  }

  Var<T> tanh(Var<T> a) {
    Tensor<T> out = value(a);
    for (T& v : out.data) v = std::tanh(v);
    return push(Op::Tanh, {a.id}, std::move(out));
  }

  /// Mean of all entries, as a 1x1 tensor.
  Var<T> mean(Var<T> a) {
    const auto& A = value(a);
    if (A.size() == 0) throw ShapeError("mean of an empty tensor");
    T sum = 0;
    for (T v : A.data) sum += v;
    return push(Op::Mean, {a.id}, Tensor<T>(1, 1, sum / static_cast<T>(A.size())));
  }

  /// Mean of each row, as a column.
  Var<T> row_mean(Var<T> a) {
    const auto& A = value(a);
    if (A.cols == 0) throw ShapeError("row_mean of a tensor with no columns");
    Tensor<T> out(A.rows, 1);
    for (int i = 0; i < A.rows; ++i) {
      T sum = 0;
      for (int j = 0; j < A.cols; ++j) sum += A.at(i, j);
      out.data[static_cast<std::size_t>(i)] = sum / static_cast<T>(A.cols);
    }
    return push(Op::RowMean, {a.id}, std::move(out));
  }

  /// Stacks tensors with equal column counts vertically.
  Var<T> concat_rows(const std::vector<Var<T>>& parts) {
    if (parts.empty()) throw ShapeError("concat of nothing");
    const int cols = value(parts[0]).cols;
    int rows = 0;
    for (auto p : parts) {
      if (value(p).cols != cols) shape_error("concat", value(parts[0]), value(p));
      rows += value(p).rows;
    }
    Tensor<T> out(rows, cols);
    std::size_t offset = 0;
    std::vector<int> ids;
    for (auto p : parts) {
      const auto& P = value(p);
      std::copy(P.data.begin(), P.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(offset));
      offset += P.size();
      ids.push_back(p.id);
    }
    return push(Op::Concat, std::move(ids), std::move(out));
  }

  /// Row `index` of a matrix, returned as a column.
  Var<T> row(Var<T> a, int index) {
    const auto& A = value(a);
    if (index < 0 || index >= A.rows) {
      throw ShapeError("row " + std::to_string(index) + " of " + A.shape() + " tensor");
    }
    Tensor<T> out(A.cols, 1);
    std::copy_n(A.data.begin() + static_cast<std::ptrdiff_t>(index) * A.cols, A.cols, out.data.begin());
    return push(Op::Row, {a.id}, std::move(out), true, 0.0, index);
  }

  /// Element-wise average of equally shaped tensors.
  Var<T> mean_of(const std::vector<Var<T>>& parts) {
    if (parts.empty()) throw ShapeError("mean of no tensors");
    Tensor<T> out(value(parts[0]).rows, value(parts[0]).cols);
    std::vector<int> ids;
    for (auto p : parts) {
      const auto& P = value(p);
      if (!P.same_shape(out)) shape_error("mean_of", out, P);
      for (std::size_t k = 0; k < P.size(); ++k) out.data[k] += P.data[k];
      ids.push_back(p.id);
    }
    const T inv = T(1) / static_cast<T>(parts.size());
    for (T& v : out.data) v *= inv;
    return push(Op::MeanOf, std::move(ids), std::move(out));
  }

  /// Passes `a` through when (scalar >= threshold) equals keep_if_ge, else
  /// yields zeros. The comparison itself carries no gradient.
  Var<T> compare_gate(Var<T> a, Var<T> scalar, T threshold, bool keep_if_ge) {
    const auto& S = value(scalar);
    if (S.size() != 1) throw ShapeError("compare_gate needs a 1x1 scalar, got " + S.shape());
    const bool keep = (S.data[0] >= threshold) == keep_if_ge;
    Tensor<T> out = value(a);
    if (!keep) std::fill(out.data.begin(), out.data.end(), T(0));
    return push(Op::Gate, {a.id}, std::move(out), true, keep ? 1.0 : 0.0);
  }

  /// Mean binary cross-entropy of a score column against 0/1 targets, with
  /// scores clamped into [eps, 1 - eps].
  Var<T> bce(Var<T> scores, const std::vector<T>& targets, T eps) {
    const auto& S = value(scores);
    if (S.cols != 1 || static_cast<std::size_t>(S.rows) != targets.size()) {
      throw ShapeError("bce: scores " + S.shape() + " vs " + std::to_string(targets.size()) + " targets");
    }
    if (targets.empty()) throw ShapeError("bce of no scores");
    T sum = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const T s = std::clamp(S.data[i], eps, T(1) - eps);
      sum += targets[i] * std::log(s) + (T(1) - targets[i]) * std::log(T(1) - s);
    }
    const Var<T> out = push(Op::Bce, {scores.id}, Tensor<T>(1, 1, -sum / static_cast<T>(targets.size())), true,
                            static_cast<double>(eps));
    nodes_.back().targets = targets;
    return out;
  }

  /// Accumulates d(loss)/d(node) for every node and adds parameter
  /// gradients into their sinks.
  void backward(Var<T> loss) {
    const auto& L = value(loss);
    if (L.size() != 1) throw ShapeError("backward needs a scalar loss, got " + L.shape());
    for (Node& n : nodes_) {
      const Tensor<T>& v = n.ref ? *n.ref : n.value;
      n.grad = Tensor<T>(v.rows, v.cols);
    }
    nodes_[static_cast<std::size_t>(loss.id)].grad.data[0] = T(1);
    for (int id = loss.id; id >= 0; --id) {
      Node& n = nodes_[static_cast<std::size_t>(id)];
      if (!n.needs_grad) continue;
      propagate(n);
    }
    for (Node& n : nodes_) {
      if (n.op != Op::Leaf || !n.sink) continue;
      if (!n.sink->same_shape(n.grad)) *n.sink = Tensor<T>(n.grad.rows, n.grad.cols);
      for (std::size_t k = 0; k < n.grad.size(); ++k) n.sink->data[k] += n.grad.data[k];
    }
  }

 private:
  enum class Op { Leaf, MatMul, Affine, Affine2, Add, Sub, Mul, Scale, Sigmoid, Tanh, Mean, RowMean, Concat, Row,
                  MeanOf, Gate, Bce };

  struct Node {
    Op op = Op::Leaf;
    std::vector<int> parents;
    Tensor<T> value;
    const Tensor<T>* ref = nullptr;
    Tensor<T>* sink = nullptr;
    Tensor<T> grad;
    bool needs_grad = false;
    double aux = 0.0;
    int index = 0;
    std::vector<T> targets;
  };

  static T sigmoid_value(T v) {
    if (v >= 0) return T(1) / (T(1) + std::exp(-v));
    const T e = std::exp(v);
    return e / (T(1) + e);
  }

  [[noreturn]] static void shape_error(const char* op, const Tensor<T>& a, const Tensor<T>& b) {
    throw ShapeError(std::string(op) + ": incompatible shapes " + a.shape() + " and " + b.shape());
  }

  static void matvec_add(const Tensor<T>& W, const Tensor<T>& x, Tensor<T>& out) {
    const T* xp = x.data.data();
    for (int i = 0; i < W.rows; ++i) {
      const T* wrow = &W.data[static_cast<std::size_t>(i) * W.cols];
      T sum = 0;
      for (int k = 0; k < W.cols; ++k) sum += wrow[k] * xp[k];
      out.data[static_cast<std::size_t>(i)] += sum;
    }
  }

  // dW += g x^T and dx += W^T g.
  void matvec_back(int w_id, int x_id, const Tensor<T>& g) {
    Node& wn = nodes_[static_cast<std::size_t>(w_id)];
    Node& xn = nodes_[static_cast<std::size_t>(x_id)];
    const Tensor<T>& W = wn.ref ? *wn.ref : wn.value;
    const Tensor<T>& X = xn.ref ? *xn.ref : xn.value;
    if (wn.needs_grad) {
      for (int i = 0; i < W.rows; ++i) {
        const T gi = g.data[static_cast<std::size_t>(i)];
        T* grow = &wn.grad.data[static_cast<std::size_t>(i) * W.cols];
        for (int k = 0; k < W.cols; ++k) grow[k] += gi * X.data[static_cast<std::size_t>(k)];
      }
    }
    if (xn.needs_grad) {
      for (int i = 0; i < W.rows; ++i) {
        const T gi = g.data[static_cast<std::size_t>(i)];
        const T* wrow = &W.data[static_cast<std::size_t>(i) * W.cols];
        for (int k = 0; k < W.cols; ++k) xn.grad.data[static_cast<std::size_t>(k)] += wrow[k] * gi;
      }
    }
  }

  void accumulate(int id, const Tensor<T>& g) {
    Node& p = nodes_[static_cast<std::size_t>(id)];
    if (!p.needs_grad) return;
    for (std::size_t k = 0; k < g.size(); ++k) p.grad.data[k] += g.data[k];
  }

  Node& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }
  const Tensor<T>& val(int id) { return node(id).ref ? *node(id).ref : node(id).value; }

  void propagate(Node& n) {
    const Tensor<T>& g = n.grad;
    switch (n.op) {
      case Op::Leaf:
        break;
      case Op::MatMul: {
        const int a = n.parents[0], b = n.parents[1];
        const Tensor<T>& A = val(a);
        const Tensor<T>& B = val(b);
        if (node(a).needs_grad) {
          Tensor<T>& ga = node(a).grad;
          for (int i = 0; i < A.rows; ++i)
            for (int k = 0; k < A.cols; ++k) {
              T sum = 0;
              for (int j = 0; j < B.cols; ++j) sum += g.at(i, j) * B.at(k, j);
              ga.at(i, k) += sum;
            }
        }
        if (node(b).needs_grad) {
          Tensor<T>& gb = node(b).grad;
          for (int k = 0; k < B.rows; ++k)
            for (int j = 0; j < B.cols; ++j) {
              T sum = 0;
              for (int i = 0; i < A.rows; ++i) sum += A.at(i, k) * g.at(i, j);
              gb.at(k, j) += sum;
            }
        }
        break;
      }
      case Op::Affine:
        matvec_back(n.parents[0], n.parents[1], g);
        accumulate(n.parents[2], g);
        break;
      case Op::Affine2:
        matvec_back(n.parents[0], n.parents[1], g);
        matvec_back(n.parents[2], n.parents[3], g);
        accumulate(n.parents[4], g);
        break;
      case Op::Add:
        accumulate(n.parents[0], g);
        accumulate(n.parents[1], g);
        break;
      case Op::Sub: {
        accumulate(n.parents[0], g);
        Node& b = node(n.parents[1]);
        if (b.needs_grad) {
          for (std::size_t k = 0; k < g.size(); ++k) b.grad.data[k] -= g.data[k];
        }
        break;
      }
      case Op::Mul: {
        const int a = n.parents[0], b = n.parents[1];
        const Tensor<T>& A = val(a);
        const Tensor<T>& B = val(b);
        if (node(a).needs_grad) {
          for (std::size_t k = 0; k < g.size(); ++k) node(a).grad.data[k] += g.data[k] * B.data[k];
        }
        if (node(b).needs_grad) {
          for (std::size_t k = 0; k < g.size(); ++k) node(b).grad.data[k] += g.data[k] * A.data[k];
        }
        break;
      }
      case Op::Scale: {
        Node& a = node(n.parents[0]);
        if (a.needs_grad) {
          const T s = static_cast<T>(n.aux);
          for (std::size_t k = 0; k < g.size(); ++k) a.grad.data[k] += g.data[k] * s;
        }
        break;
      }
      case Op::Sigmoid: {
        Node& a = node(n.parents[0]);
        if (a.needs_grad) {
          for (std::size_t k = 0; k < g.size(); ++k) {
            const T y = n.value.data[k];
            a.grad.data[k] += g.data[k] * y * (T(1) - y);
          }
        }
        break;
      }
      case Op::Tanh: {
        Node& a = node(n.parents[0]);
        if (a.needs_grad) {
          for (std::size_t k = 0; k < g.size(); ++k) {
            const T y = n.value.data[k];
            a.grad.data[k] += g.data[k] * (T(1) - y * y);
          }
        }
        break;
      }
      case Op::Mean: {
        Node& a = node(n.parents[0]);
        if (a.needs_grad) {
          const T share = g.data[0] / static_cast<T>(a.grad.size());
          for (T& v : a.grad.data) v += share;
        }
        break;
      }
      case Op::RowMean: {
        Node& a = node(n.parents[0]);
        if (a.needs_grad) {
          const int cols = a.grad.cols;
          for (int i = 0; i < a.grad.rows; ++i)
            for (int j = 0; j < cols; ++j) a.grad.at(i, j) += g.data[static_cast<std::size_t>(i)] / static_cast<T>(cols);
        }
        break;
      }
      case Op::Concat: {
        std::size_t offset = 0;
        for (int id : n.parents) {
          Node& p = node(id);
          const std::size_t len = p.grad.size();
          if (p.needs_grad) {
            for (std::size_t k = 0; k < len; ++k) p.grad.data[k] += g.data[offset + k];
          }
          offset += len;
        }
        break;
      }
      case Op::Row: {
        Node& a = node(n.parents[0]);
        if (a.needs_grad) {
          T* dst = &a.grad.data[static_cast<std::size_t>(n.index) * a.grad.cols];
          for (int k = 0; k < a.grad.cols; ++k) dst[k] += g.data[static_cast<std::size_t>(k)];
        }
        break;
      }
      case Op::MeanOf: {
        const T inv = T(1) / static_cast<T>(n.parents.size());
        for (int id : n.parents) {
          Node& p = node(id);
          if (!p.needs_grad) continue;
          for (std::size_t k = 0; k < g.size(); ++k) p.grad.data[k] += g.data[k] * inv;
        }
        break;
      }
      case Op::Gate:
        if (n.aux != 0.0) accumulate(n.parents[0], g);
        break;
      case Op::Bce: {
        Node& a = node(n.parents[0]);
        if (!a.needs_grad) break;
        const Tensor<T>& S = a.ref ? *a.ref : a.value;
        const T eps = static_cast<T>(n.aux);
        const T scale = g.data[0] / static_cast<T>(n.targets.size());
        for (std::size_t i = 0; i < n.targets.size(); ++i) {
          const T s = S.data[i];
          if (s < eps || s > T(1) - eps) continue;  // clamped: flat
          const T t = n.targets[i];
          a.grad.data[i] += scale * (-(t / s) + (T(1) - t) / (T(1) - s));
        }
        break;
      }
    }
  }

  template <typename F>
  Var<T> elementwise(Op op, Var<T> a, Var<T> b, F f) {
    const auto& A = value(a);
    const auto& B = value(b);
    if (!A.same_shape(B)) shape_error("elementwise", A, B);
    Tensor<T> out(A.rows, A.cols);
    for (std::size_t k = 0; k < A.size(); ++k) out.data[k] = f(A.data[k], B.data[k]);
    return push(op, {a.id, b.id}, std::move(out));
  }

  Var<T> push(Op op, std::vector<int> parents, Tensor<T> value, bool differentiable = true, double aux = 0.0,
              int index = 0) {
    Node n;
    n.op = op;
    n.aux = aux;
    n.index = index;
    n.value = std::move(value);
    if (differentiable) {
      for (int p : parents) n.needs_grad |= nodes_[static_cast<std::size_t>(p)].needs_grad;
    }
    n.parents = std::move(parents);
    nodes_.push_back(std::move(n));
    return {this, static_cast<int>(nodes_.size()) - 1};
  }

  std::vector<Node> nodes_;
};

/// Named parameters plus Adam state.
template <typename T>
class ParamStore {
 public:
  struct Entry {
    Tensor<T> value;
    Tensor<T> m;
    Tensor<T> v;
  };

  Tensor<T>& add(const std::string& name, int rows, int cols) {
    Entry e{Tensor<T>(rows, cols), Tensor<T>(rows, cols), Tensor<T>(rows, cols)};
    return entries_.insert_or_assign(name, std::move(e)).first->second.value;
  }

  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  Tensor<T>& value(const std::string& name) { return entry(name).value; }
  const Tensor<T>& value(const std::string& name) const { return entry(name).value; }
  Entry& entry(const std::string& name) {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw std::out_of_range("no parameter '" + name + "'");
    return it->second;
  }
  const Entry& entry(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw std::out_of_range("no parameter '" + name + "'");
    return it->second;
  }
  const std::map<std::string, Entry>& entries() const { return entries_; }
  std::map<std::string, Entry>& entries() { return entries_; }
  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& [name, e] : entries_) n += e.value.size();
    return n;
  }

  long step = 0;

 private:
  std::map<std::string, Entry> entries_;
};

/// Gradients keyed like the store.
template <typename T>
using Grads = std::map<std::string, Tensor<T>>;

template <typename T>
Grads<T> zero_grads(const ParamStore<T>& store) {
  Grads<T> g;
  for (const auto& [name, e] : store.entries()) g[name] = Tensor<T>(e.value.rows, e.value.cols);
  return g;
}

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One bias-corrected Adam update of every parameter.
template <typename T>
void adam_step(ParamStore<T>& store, const Grads<T>& grads, const AdamConfig& cfg) {
  store.step += 1;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(store.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(store.step));
  const T b1 = static_cast<T>(cfg.beta1), b2 = static_cast<T>(cfg.beta2);
  const T lr = static_cast<T>(cfg.lr), eps = static_cast<T>(cfg.eps);
  const T inv_c1 = static_cast<T>(1.0 / c1), inv_c2 = static_cast<T>(1.0 / c2);
  for (auto& [name, e] : store.entries()) {
    auto it = grads.find(name);
    if (it == grads.end()) throw ShapeError("no gradient for parameter '" + name + "'");
    const Tensor<T>& g = it->second;
    if (!g.same_shape(e.value)) {
      throw ShapeError("gradient for '" + name + "' is " + g.shape() + ", parameter is " + e.value.shape());
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      const T gk = g.data[k];
      e.m.data[k] = b1 * e.m.data[k] + (T(1) - b1) * gk;
      e.v.data[k] = b2 * e.v.data[k] + (T(1) - b2) * gk * gk;
      const T mhat = e.m.data[k] * inv_c1;
      const T vhat = e.v.data[k] * inv_c2;
      e.value.data[k] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

/// Xavier-uniform fill in name order; tensors whose name marks them as a
/// bias (last path component starting with "b") are zeroed.
template <typename T>
void xavier_init(ParamStore<T>& store, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  for (auto& [name, e] : store.entries()) {
    const auto dot = name.rfind('.');
    const char first = name[dot == std::string::npos ? 0 : dot + 1];
    if (first == 'b') {
      std::fill(e.value.data.begin(), e.value.data.end(), T(0));
      continue;
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(e.value.rows + e.value.cols));
    for (T& v : e.value.data) {
      const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
      v = static_cast<T>((2.0 * u - 1.0) * limit);
    }
  }
}

}  // namespace flowcov
