//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_DEPICT_HPP
#define ONCOGAT_EXPLAIN_DEPICT_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/explain/occlusion.hpp"

namespace onco::explain {

namespace detail {

// Target separation for atoms k bonds apart: exact for neighbours and
// 120-degree angles, zig-zag chain spacing beyond.
inline double layout_target(int k) {
  if (k <= 1)
    return 1.0;
  if (k == 2)
    return std::sqrt(3.0);
  return 0.87 * k;
}

inline std::vector<chem::Point2> layout_component(const chem::Molecule &mol, const std::vector<int> &atoms) {
  const int n = static_cast<int>(atoms.size());
  std::vector<chem::Point2> p(static_cast<std::size_t>(n));
  if (n == 1)
    return p;
  std::vector<int> local(mol.size(), -1);
  for (int i = 0; i < n; ++i)
    local[static_cast<std::size_t>(atoms[static_cast<std::size_t>(i)])] = i;
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(i)] = 0;
    q.push(i);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v: mol.neighbors(atoms[static_cast<std::size_t>(u)])) {
        const int lv = local[static_cast<std::size_t>(v)];
        if (dist[static_cast<std::size_t>(lv)] < 0) {
          dist[static_cast<std::size_t>(lv)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(lv);
        }
      }
    }
    for (int j = 0; j < n; ++j)
      d(i, j) = i == j ? 0.0 : layout_target(dist[static_cast<std::size_t>(j)]);
  }

  // Classical scaling start.
  const Matrix d2 = d.cwiseProduct(d);
  const Matrix centre = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
  const Matrix b = -0.5 * centre * d2 * centre;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(b);
  Matrix x(n, 2);
  for (int c = 0; c < 2; ++c) {
    const double lam = std::max(eig.eigenvalues()(n - 1 - c), 1e-6);
    x.col(c) = eig.eigenvectors().col(n - 1 - c) * std::sqrt(lam);
  }
  // Break collinear or coincident starts deterministically.
  for (int i = 0; i < n; ++i)
    x(i, 1) += 1e-3 * ((i % 3) - 1);

  // Weighted stress majorisation, one atom at a time.
  for (int it = 0; it < 300; ++it) {
    for (int i = 0; i < n; ++i) {
      double wx = 0.0, wy = 0.0, ws = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i)
          continue;
        const double w = 1.0 / (d(i, j) * d(i, j));
        const double dx = x(i, 0) - x(j, 0), dy = x(i, 1) - x(j, 1);
        const double len = std::max(std::hypot(dx, dy), 1e-9);
        wx += w * (x(j, 0) + d(i, j) * dx / len);
        wy += w * (x(j, 1) + d(i, j) * dy / len);
        ws += w;
      }
      x(i, 0) = wx / ws;
      x(i, 1) = wy / ws;
    }
  }
  for (int i = 0; i < n; ++i)
    p[static_cast<std::size_t>(i)] = {x(i, 0), x(i, 1)};
  return p;
}

inline std::string fmt(double v) {
  if (std::abs(v) < 0.005)
    v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string atom_label(const chem::Atom &a) {
  std::string s(chem::element_symbol(a.element));
  const int h = a.total_h();
  if (h > 0)
    s += h == 1 ? "H" : "H" + std::to_string(h);
  if (a.formal_charge != 0) {
    const int q = std::abs(a.formal_charge);
    s += (q > 1 ? std::to_string(q) : std::string()) + (a.formal_charge > 0 ? "+" : "-");
  }
  return s;
}

} // namespace detail

// 2D coordinates in bond-length units: the molecule's own coordinates when
// it carries them, otherwise a distance-geometry layout per connected
// component, components placed left to right.
inline std::vector<chem::Point2> layout_2d(const chem::Molecule &mol) {
  if (mol.coords && mol.coords->size() == mol.size())
    return *mol.coords;
  std::vector<chem::Point2> out(mol.size());
  std::vector<int> comp(mol.size(), -1);
  double x_end = 0.0;
  bool first = true;
  for (std::size_t s = 0; s < mol.size(); ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> atoms{static_cast<int>(s)};
    comp[s] = static_cast<int>(s);
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (int v: mol.neighbors(atoms[i]))
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = static_cast<int>(s);
          atoms.push_back(v);
        }
    std::sort(atoms.begin(), atoms.end());
    const auto p = detail::layout_component(mol, atoms);
    double lo = p[0].x, cy = 0.0;
    for (const auto &q: p) {
      lo = std::min(lo, q.x);
      cy += q.y / static_cast<double>(p.size());
    }
    const double shift = (first ? 0.0 : x_end + 1.5) - lo;
    first = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      out[static_cast<std::size_t>(atoms[i])] = {p[i].x + shift, p[i].y - cy};
      x_end = std::max(x_end, p[i].x + shift);
    }
  }
  return out;
}

struct DepictOptions {
  double scale = 32.0;  // pixels per bond length
  double margin = 24.0; // pixels
  std::string caption;
};

// Monochrome skeletal drawing; highlighted atoms get red circles whose
// radius is proportional to their score.
inline std::string render_svg(const chem::Molecule &mol, const std::vector<double> &scores,
                              const std::vector<int> &highlight, const DepictOptions &opt = {}) {
  require(scores.size() == mol.size(), "ShapeMismatch", "one score per atom is required");
  const auto pos = layout_2d(mol);
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    x0 = i == 0 ? pos[i].x : std::min(x0, pos[i].x);
    x1 = i == 0 ? pos[i].x : std::max(x1, pos[i].x);
    y0 = i == 0 ? pos[i].y : std::min(y0, pos[i].y);
    y1 = i == 0 ? pos[i].y : std::max(y1, pos[i].y);
  }
  const double caption_h = opt.caption.empty() ? 0.0 : 20.0;
  const double w = (x1 - x0) * opt.scale + 2 * opt.margin;
  const double h = (y1 - y0) * opt.scale + 2 * opt.margin + caption_h;
  // Input y axis points up; SVG's points down.
  auto px = [&](std::size_t i) { return (pos[i].x - x0) * opt.scale + opt.margin; };
  auto py = [&](std::size_t i) { return (y1 - pos[i].y) * opt.scale + opt.margin; };
  using detail::fmt;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
       "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  s += "<g class=\"highlights\" fill=\"#ff0000\" fill-opacity=\"0.4\" stroke=\"none\">\n";
  for (int a: highlight) {
    const auto i = static_cast<std::size_t>(a);
    require(i < mol.size(), "InvalidArgument", "highlighted atom out of range");
    if (scores[i] <= 0.0)
      continue;
    s += "<circle cx=\"" + fmt(px(i)) + "\" cy=\"" + fmt(py(i)) + "\" r=\"" + fmt(0.6 * opt.scale * scores[i]) +
         "\"/>\n";
  }
  s += "</g>\n";

  s += "<g class=\"bonds\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n";
  auto line = [&](double ax, double ay, double bx, double by, bool dashed) {
    s += "<line x1=\"" + fmt(ax) + "\" y1=\"" + fmt(ay) + "\" x2=\"" + fmt(bx) + "\" y2=\"" + fmt(by) + "\"" +
         (dashed ? " stroke-dasharray=\"3,3\"" : "") + "/>\n";
  };
  for (const auto &b: mol.bonds) {
    const auto ia = static_cast<std::size_t>(b.a), ib = static_cast<std::size_t>(b.b);
    const double ax = px(ia), ay = py(ia), bx = px(ib), by = py(ib);
    const double len = std::max(std::hypot(bx - ax, by - ay), 1e-9);
    const double nx = -(by - ay) / len, ny = (bx - ax) / len;
    auto offset = [&](double o, bool dashed) { line(ax + nx * o, ay + ny * o, bx + nx * o, by + ny * o, dashed); };
    switch (b.order) {
    case chem::BondOrder::double_:
      offset(-2.5, false);
      offset(2.5, false);
      break;
    case chem::BondOrder::triple:
      offset(-4.0, false);
      offset(0.0, false);
      offset(4.0, false);
      break;
    case chem::BondOrder::aromatic:
      offset(-2.5, false);
      offset(2.5, true);
      break;
    default:
      offset(0.0, false);
    }
  }
  s += "</g>\n";

  s += "<g class=\"atoms\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
       "dominant-baseline=\"central\">\n";
  for (std::size_t i = 0; i < mol.size(); ++i) {
    const auto &a = mol.atoms[i];
    if (a.element == 6 && a.formal_charge == 0 && !mol.adjacency[i].empty())
      continue;
    s += "<circle cx=\"" + fmt(px(i)) + "\" cy=\"" + fmt(py(i)) + "\" r=\"8.00\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + fmt(px(i)) + "\" y=\"" + fmt(py(i)) + "\" fill=\"#000000\">" + detail::atom_label(a) +
         "</text>\n";
  }
  s += "</g>\n";
  if (!opt.caption.empty())
    s += "<text class=\"caption\" x=\"" + fmt(w / 2) + "\" y=\"" + fmt(h - 10.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\"#000000\">" + opt.caption +
         "</text>\n";
  s += "</svg>\n";
  return s;
}

inline constexpr const char *kAllZeroCaption = "no atom group lowers the score when masked";

// Highlights the top ceil(fraction * n_heavy) atoms by score, ties to the
// lower index.
inline std::string depict_svg(const chem::Molecule &mol, const std::vector<double> &scores,
                              double fraction = kDisplayFraction) {
  check_fraction(fraction);
  require(scores.size() == mol.size(), "ShapeMismatch", "one score per atom is required");
  std::vector<int> order(mol.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(fraction_count(fraction, mol.heavy_atom_count())));
  DepictOptions opt;
  if (std::none_of(scores.begin(), scores.end(), [](double v) { return v > 0.0; }))
    opt.caption = kAllZeroCaption;
  return render_svg(mol, scores, order, opt);
}

inline std::string depict_svg(const chem::Molecule &mol, const AttributionReport &r) {
  DepictOptions opt;
  if (r.all_zero)
    opt.caption = kAllZeroCaption;
  return render_svg(mol, r.normalised_scores(), r.top_set, opt);
}

} // namespace onco::explain

#endif // ONCOGAT_EXPLAIN_DEPICT_HPP
