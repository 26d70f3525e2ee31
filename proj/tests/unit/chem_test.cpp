//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "oncogat/chem.hpp"
#include "oncogat/core/random.hpp"
#include "support/corpus.hpp"

namespace {

using namespace onco::chem;
using onco::ParseError;

std::string parse_error_code(const std::string &s, std::size_t *offset = nullptr) {
  try {
    parse_smiles(s);
  } catch (const ParseError &e) {
    if (offset)
      *offset = e.offset();
    return e.code();
  }
  return "";
}

std::string methane_block(const std::string &name = "methane") {
  return name +
         "\n  test\n\n"
         "  1  0  0  0  0  0  0  0  0  0999 V2000\n"
         "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
         "M  END\n";
}

std::string sdf_with(int blocks) {
  std::string out;
  for (int i = 0; i < blocks; ++i)
    out += methane_block("m" + std::to_string(i)) + "$$$$\n";
  return out;
}

std::vector<int> random_permutation(onco::Rng &rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

// Independent oracle: an atom is in a ring iff it has an incident bond that
// lies on a cycle, i.e. whose endpoints stay connected without it.
std::vector<bool> brute_force_ring_atoms(const Molecule &m) {
  const int n = static_cast<int>(m.size());
  std::vector<bool> flags(n, false);
  for (std::size_t skip = 0; skip < m.bonds.size(); ++skip) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {m.bonds[skip].a};
    seen[m.bonds[skip].a] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (std::size_t k = 0; k < m.bonds.size(); ++k) {
        if (k == skip)
          continue;
        const auto &b = m.bonds[k];
        int v = -1;
        if (b.a == u)
          v = b.b;
        else if (b.b == u)
          v = b.a;
        if (v >= 0 && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    if (seen[m.bonds[skip].b])
      flags[m.bonds[skip].a] = flags[m.bonds[skip].b] = true;
  }
  return flags;
}

// Independent oracle: enumerate every simple cycle through DFS and keep the
// cycle-space minimum count (m - n + components) of the shortest ones that
// are linearly independent. Only used for counting and size multisets.
std::vector<std::vector<int>> all_simple_cycles(const Molecule &m) {
  const int n = static_cast<int>(m.size());
  std::set<std::vector<int>> found;
  std::vector<int> path;
  std::vector<bool> on(n, false);
  std::function<void(int, int)> dfs = [&](int start, int u) {
    for (int v: m.neighbors(u)) {
      if (v == start && path.size() >= 3) {
        std::vector<int> c = path;
        std::sort(c.begin(), c.end());
        found.insert(c);
      } else if (!on[v] && v > start) {
        on[v] = true;
        path.push_back(v);
        dfs(start, v);
        path.pop_back();
        on[v] = false;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on[s] = true;
    dfs(s, s);
    on[s] = false;
  }
  return {found.begin(), found.end()};
}

int valence_used(const Molecule &m, int u) {
  int s = m.atoms[u].total_h();
  for (int bi: m.adjacency[u])
    s += m.bonds[bi].order == BondOrder::aromatic ? 0 : bond_valence(m.bonds[bi].order);
  return s;
}

TEST(ParseSmiles, Methane) {
  const auto m = parse_smiles("C");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.atoms[0].element, 6);
  EXPECT_EQ(m.atoms[0].implicit_h, 4);
  EXPECT_TRUE(m.bonds.empty());
  EXPECT_EQ(m.atoms[0].hybridization, Hybridization::sp3);
}

TEST(ParseSmiles, Benzene) {
  const auto m = parse_smiles("c1ccccc1");
  ASSERT_EQ(m.size(), 6u);
  ASSERT_EQ(m.bonds.size(), 6u);
  for (const auto &a: m.atoms) {
    EXPECT_TRUE(a.is_aromatic);
    EXPECT_TRUE(a.in_ring);
    EXPECT_EQ(a.implicit_h, 1);
    EXPECT_EQ(a.hybridization, Hybridization::sp2);
  }
  for (const auto &b: m.bonds) {
    EXPECT_EQ(b.order, BondOrder::aromatic);
    EXPECT_TRUE(b.is_conjugated);
    EXPECT_TRUE(b.same_ring);
  }
  ASSERT_EQ(m.rings.size(), 1u);
  EXPECT_EQ(m.rings[0].size(), 6u);
}

TEST(ParseSmiles, CyclopropaneCarboxylate) {
  const auto m = parse_smiles("C1CC1C(=O)[O-]");
  ASSERT_EQ(m.heavy_atom_count(), 6);
  EXPECT_EQ(m.atoms[5].element, 8);
  EXPECT_EQ(m.atoms[5].formal_charge, -1);
  EXPECT_EQ(m.atoms[5].implicit_h, 0);
  for (int i = 0; i < 3; ++i)
    EXPECT_TRUE(m.atoms[i].in_ring) << i;
  for (int i = 3; i < 6; ++i)
    EXPECT_FALSE(m.atoms[i].in_ring) << i;
  ASSERT_EQ(m.rings.size(), 1u);
  EXPECT_EQ(m.rings[0].size(), 3u);
  EXPECT_EQ(m.atoms[4].hybridization, Hybridization::sp2);
}

TEST(ParseSmiles, KekuleBenzeneIsAromatised) {
  const auto m = parse_smiles("C1=CC=CC=C1");
  for (const auto &a: m.atoms)
    EXPECT_TRUE(a.is_aromatic);
  EXPECT_EQ(canonical_smiles(m), canonical_smiles(parse_smiles("c1ccccc1")));
  const auto pyrrole = parse_smiles("C1=CNC=C1");
  EXPECT_EQ(canonical_smiles(pyrrole), canonical_smiles(parse_smiles("c1cc[nH]c1")));
  const auto caffeine_k = parse_smiles("CN1C=NC2=C1C(=O)N(C(=O)N2C)C");
  const auto caffeine_a = parse_smiles("Cn1cnc2c1c(=O)n(C)c(=O)n2C");
  EXPECT_EQ(canonical_smiles(caffeine_k), canonical_smiles(caffeine_a));
}

TEST(ParseSmiles, NonAromaticKekuleRingStaysAliphatic) {
  const auto m = parse_smiles("C1=CCC=C1"); // cyclopentadiene, 4 pi electrons
  for (const auto &a: m.atoms)
    EXPECT_FALSE(a.is_aromatic);
  const auto q = parse_smiles("CC1=CC(=O)C=CC1=O"); // quinone
  for (const auto &a: q.atoms)
    EXPECT_FALSE(a.is_aromatic);
}

TEST(ParseSmiles, BracketAtoms) {
  const auto m = parse_smiles("[13CH3][NH3+]");
  EXPECT_EQ(m.atoms[0].isotope, 13);
  EXPECT_EQ(m.atoms[0].explicit_h, 3);
  EXPECT_EQ(m.atoms[0].implicit_h, 0);
  EXPECT_EQ(m.atoms[1].formal_charge, 1);
  EXPECT_TRUE(m.atoms[1].hbd);
  EXPECT_FALSE(m.atoms[1].hba);
  const auto d = parse_smiles("[2H]C([2H])([2H])Cl");
  EXPECT_EQ(d.size(), 2u); // deuteria fold into the carbon
  EXPECT_EQ(d.atoms[0].total_h(), 3);
}

TEST(ParseSmiles, HydrogenBonding) {
  const auto m = parse_smiles("CC(=O)NC");
  EXPECT_TRUE(m.atoms[2].hba);
  EXPECT_FALSE(m.atoms[2].hbd);
  EXPECT_TRUE(m.atoms[3].hbd);
  EXPECT_TRUE(m.atoms[3].hba);
  EXPECT_FALSE(m.atoms[0].hbd);
}

TEST(ParseSmiles, Hybridisation) {
  const auto m = parse_smiles("C#CC=C=CC");
  EXPECT_EQ(m.atoms[0].hybridization, Hybridization::sp);
  EXPECT_EQ(m.atoms[2].hybridization, Hybridization::sp2);
  EXPECT_EQ(m.atoms[3].hybridization, Hybridization::sp);
  EXPECT_EQ(m.atoms[5].hybridization, Hybridization::sp3);
}

TEST(ParseSmiles, RingClosureNotations) {
  const auto a = parse_smiles("C%10CCCCC%10");
  const auto b = parse_smiles("C1CCCCC1");
  EXPECT_EQ(canonical_smiles(a), canonical_smiles(b));
  const auto c = parse_smiles("C1CC2CCC1C2");
  EXPECT_EQ(c.rings.size(), 2u);
}

TEST(ParseSmiles, Errors) {
  std::size_t off = 0;
  EXPECT_EQ(parse_error_code("", &off), "EmptyInput");
  EXPECT_EQ(off, 0u);
  EXPECT_EQ(parse_error_code("CC(C", &off), "UnbalancedParenthesis");
  EXPECT_EQ(off, 2u);
  EXPECT_EQ(parse_error_code("CC)C", &off), "UnbalancedParenthesis");
  EXPECT_EQ(off, 2u);
  EXPECT_EQ(parse_error_code("C1CC", &off), "UnclosedRing");
  EXPECT_EQ(off, 1u);
  EXPECT_EQ(parse_error_code("CC[Xx]", &off), "UnknownElement");
  EXPECT_EQ(off, 3u);
  EXPECT_EQ(parse_error_code("CQ", &off), "UnknownElement");
  EXPECT_EQ(off, 1u);
  EXPECT_EQ(parse_error_code("CC(C)(C)(C)C", &off), "ValenceViolation");
  EXPECT_EQ(off, 1u);
  EXPECT_EQ(parse_error_code("C=O=C"), "ValenceViolation");
  EXPECT_EQ(parse_error_code("c1cccc1"), "ValenceViolation");
  EXPECT_EQ(parse_error_code("CC.O", &off), "DisconnectedInput");
  EXPECT_EQ(off, 2u);
  EXPECT_NE(parse_error_code("C$C"), "");
}

TEST(ParseSmiles, LargestFragmentOption) {
  ParseOptions opt;
  opt.keep_largest_fragment = true;
  const auto m = parse_smiles("[Na+].[O-]C(=O)c1ccccc1", opt);
  EXPECT_EQ(m.heavy_atom_count(), 9);
  EXPECT_EQ(canonical_smiles(m), canonical_smiles(parse_smiles("[O-]C(=O)c1ccccc1")));
}

TEST(ParseSmiles, Determinism) {
  for (const auto &s: onco::testing::smiles_corpus()) {
    const auto a = parse_smiles(s);
    const auto b = parse_smiles(s);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.atoms[i].element, b.atoms[i].element);
      EXPECT_EQ(a.atoms[i].partial_charge, b.atoms[i].partial_charge);
      EXPECT_EQ(a.canonical_ranks[i], b.canonical_ranks[i]);
    }
    EXPECT_EQ(canonical_smiles(a), canonical_smiles(b));
  }
}

TEST(ParseSmiles, InvariantsHoldOverCorpus) {
  for (const auto &s: onco::testing::smiles_corpus()) {
    SCOPED_TRACE(s);
    const auto m = parse_smiles(s);
    const auto kek = kekulize(m);
    for (int u = 0; u < static_cast<int>(m.size()); ++u) {
      const auto &a = m.atoms[u];
      EXPECT_GE(a.implicit_h, 0);
      if (a.is_aromatic)
        EXPECT_TRUE(a.in_ring);
      int heavy = 0;
      for (int v: m.neighbors(u))
        heavy += m.atoms[v].element != 1;
      EXPECT_EQ(a.degree, heavy);
      int used = a.total_h();
      for (int bi: m.adjacency[u])
        used += kek[bi];
      const auto allowed = allowed_valences(a.element, a.formal_charge);
      EXPECT_NE(std::find(allowed.begin(), allowed.end(), used), allowed.end()) << u;
    }
    std::set<std::pair<int, int>> pairs;
    for (const auto &b: m.bonds) {
      EXPECT_NE(b.a, b.b);
      EXPECT_TRUE(pairs.insert({std::min(b.a, b.b), std::max(b.a, b.b)}).second);
      if (b.order == BondOrder::aromatic) {
        EXPECT_TRUE(m.atoms[b.a].is_aromatic);
        EXPECT_TRUE(m.atoms[b.b].is_aromatic);
      }
    }
    std::vector<int> ranks = m.canonical_ranks;
    std::sort(ranks.begin(), ranks.end());
    for (int i = 0; i < static_cast<int>(ranks.size()); ++i)
      EXPECT_EQ(ranks[i], i);
    std::vector<bool> covered(m.size(), false);
    for (const auto &r: m.rings)
      for (int u: r)
        covered[u] = true;
    for (std::size_t u = 0; u < m.size(); ++u)
      EXPECT_EQ(covered[u], m.atoms[u].in_ring);
  }
}

TEST(ParseSmiles, UnusedValenceHelperAgreesWithKekule) {
  // Aliphatic molecules: the bond-order sum equals the kekule sum.
  const auto m = parse_smiles("CC(=O)OC#N");
  const auto kek = kekulize(m);
  for (int u = 0; u < static_cast<int>(m.size()); ++u) {
    int used = m.atoms[u].total_h();
    for (int bi: m.adjacency[u])
      used += kek[bi];
    EXPECT_EQ(used, valence_used(m, u));
  }
}

TEST(Rings, SpecExamples) {
  EXPECT_TRUE(parse_smiles("CCCC").rings.empty());
  const auto hex = parse_smiles("C1CCCCC1");
  ASSERT_EQ(hex.rings.size(), 1u);
  EXPECT_EQ(hex.rings[0].size(), 6u);

  const auto nap = parse_smiles("c1ccc2ccccc2c1");
  ASSERT_EQ(nap.rings.size(), 2u);
  EXPECT_EQ(nap.rings[0].size(), 6u);
  EXPECT_EQ(nap.rings[1].size(), 6u);
  std::vector<int> a = nap.rings[0], b = nap.rings[1], shared;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  ASSERT_EQ(shared.size(), 2u);
  EXPECT_GE(nap.bond_between(shared[0], shared[1]), 0);
}

TEST(Rings, RingsAreCycles) {
  for (const auto &s: onco::testing::smiles_corpus()) {
    const auto m = parse_smiles(s);
    for (const auto &r: m.rings)
      for (std::size_t i = 0; i < r.size(); ++i)
        EXPECT_GE(m.bond_between(r[i], r[(i + 1) % r.size()]), 0) << s;
  }
}

TEST(Rings, FlagsMatchBruteForceOracle) {
  int checked = 0;
  for (const auto &s: onco::testing::smiles_corpus()) {
    const auto m = parse_smiles(s);
    if (m.size() > 12)
      continue;
    ++checked;
    const auto oracle = brute_force_ring_atoms(m);
    for (std::size_t u = 0; u < m.size(); ++u)
      EXPECT_EQ(m.atoms[u].in_ring, oracle[u]) << s << " atom " << u;
    // Ring count equals the cycle rank and each ring is a simple cycle the
    // enumerator also finds.
    const auto cycles = all_simple_cycles(m);
    const int rank = static_cast<int>(m.bonds.size()) - static_cast<int>(m.size()) + 1;
    EXPECT_EQ(static_cast<int>(m.rings.size()), rank) << s;
    for (auto r: m.rings) {
      std::sort(r.begin(), r.end());
      EXPECT_NE(std::find(cycles.begin(), cycles.end(), r), cycles.end()) << s;
    }
    // The smallest ring found equals the shortest enumerated cycle.
    if (!cycles.empty()) {
      std::size_t shortest = 1000, smallest = 1000;
      for (const auto &c: cycles)
        shortest = std::min(shortest, c.size());
      for (const auto &r: m.rings)
        smallest = std::min(smallest, r.size());
      EXPECT_EQ(shortest, smallest) << s;
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(Distances, SpecExamples) {
  const auto d = topological_distances(parse_smiles("CCO"));
  EXPECT_EQ(d[0][2], 2);
  EXPECT_EQ(d[2][0], 2);
  const auto benz = topological_distances(parse_smiles("c1ccccc1"));
  int mx = 0;
  for (std::size_t i = 0; i < benz.size(); ++i) {
    EXPECT_EQ(benz[i][i], 0);
    for (std::size_t j = 0; j < benz.size(); ++j) {
      mx = std::max(mx, benz[i][j]);
      EXPECT_EQ(benz[i][j], benz[j][i]);
    }
  }
  EXPECT_EQ(mx, 3);
}

TEST(Gasteiger, Methane) {
  const auto m = parse_smiles("C");
  const auto q = gasteiger_charges(m);
  EXPECT_LT(q.atom[0], 0.0);
  EXPECT_GT(q.hydrogen[0], 0.0);
  EXPECT_NEAR(total_partial_charge(m, q), 0.0, 1e-9);
  EXPECT_TRUE(q.warnings.empty());
}

TEST(Gasteiger, SymmetryAndConservation) {
  const auto ethane = parse_smiles("CC");
  EXPECT_DOUBLE_EQ(ethane.atoms[0].partial_charge, ethane.atoms[1].partial_charge);
  const auto etoh = parse_smiles("CCO");
  EXPECT_NEAR(total_partial_charge(etoh, gasteiger_charges(etoh)), 0.0, 1e-3);
  EXPECT_LT(etoh.atoms[2].partial_charge, 0.0);
  for (const auto &s: onco::testing::smiles_corpus()) {
    const auto m = parse_smiles(s);
    const auto q = gasteiger_charges(m);
    int formal = 0;
    for (const auto &a: m.atoms)
      formal += a.formal_charge;
    if (q.warnings.empty())
      EXPECT_NEAR(total_partial_charge(m, q), formal, 1e-3) << s;
  }
}

TEST(Gasteiger, UnparameterisedAtomWarns) {
  const auto m = parse_smiles("C[Se]C");
  const auto q = gasteiger_charges(m);
  EXPECT_EQ(q.atom[1], 0.0);
  EXPECT_FALSE(q.warnings.empty());
}

TEST(Canonical, SpecExamples) {
  EXPECT_EQ(canonical_smiles(parse_smiles("OCC")), canonical_smiles(parse_smiles("CCO")));
  const auto oco = parse_smiles("OCO");
  const auto cls = symmetry_classes(oco, true);
  EXPECT_EQ(cls[0], cls[2]);
  EXPECT_NE(cls[0], cls[1]);
}

TEST(Canonical, IdempotentOverCorpus) {
  for (const auto &s: onco::testing::smiles_corpus()) {
    const std::string c1 = canonical_smiles(parse_smiles(s));
    const std::string c2 = canonical_smiles(parse_smiles(c1));
    EXPECT_EQ(c1, c2) << s;
  }
}

TEST(Canonical, DistinguishesStereo) {
  const auto e = canonical_smiles(parse_smiles("F/C=C/F"));
  const auto z = canonical_smiles(parse_smiles("F/C=C\\F"));
  EXPECT_NE(e, z);
  EXPECT_EQ(e, canonical_smiles(parse_smiles("F\\C=C\\F")));
  const auto r = canonical_smiles(parse_smiles("C[C@H](N)C(=O)O"));
  const auto s = canonical_smiles(parse_smiles("C[C@@H](N)C(=O)O"));
  EXPECT_NE(r, s);
  EXPECT_EQ(r, canonical_smiles(parse_smiles("N[C@@H](C)C(=O)O")));
  // Tied substituents cannot carry tetrahedral stereo.
  EXPECT_EQ(canonical_smiles(parse_smiles("C[C@H](C)O")), canonical_smiles(parse_smiles("CC(C)O")));
}

TEST(Canonical, InvariantUnderThousandPermutations) {
  onco::Rng rng(20261015);
  for (const std::string s: {"CN1CCN(Cc2ccc(cc2)C(=O)Nc2ccc(C)c(Nc3nccc(n3)-c3cccnc3)c2)CC1",
                             "OC[C@H]1O[C@@H](O)[C@H](O)[C@@H](O)[C@@H]1O",
                             "Cl/C=C/C=C/Br"}) {
    const auto m = parse_smiles(s);
    const std::string ref = canonical_smiles(m);
    std::set<std::string> seen;
    for (int t = 0; t < 1000; ++t) {
      const auto perm = random_permutation(rng, static_cast<int>(m.size()));
      const auto bperm = random_permutation(rng, static_cast<int>(m.bonds.size()));
      seen.insert(canonical_smiles(permute_atoms(m, perm, bperm)));
    }
    ASSERT_EQ(seen.size(), 1u) << s;
    EXPECT_EQ(*seen.begin(), ref);
  }
}

TEST(Canonical, RanksFollowPermutation) {
  onco::Rng rng(7);
  for (const auto &s: onco::testing::smiles_corpus()) {
    const auto m = parse_smiles(s);
    const auto perm = random_permutation(rng, static_cast<int>(m.size()));
    const auto p = permute_atoms(m, perm);
    const std::string cm = canonical_smiles(m), cp = canonical_smiles(p);
    EXPECT_EQ(cm, cp) << s;
    // Ranks are defined up to automorphism, so compare the rank-sorted
    // element sequence.
    std::vector<int> em(m.size()), ep(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      em[m.canonical_ranks[i]] = m.atoms[i].element;
      ep[p.canonical_ranks[i]] = p.atoms[i].element;
    }
    EXPECT_EQ(em, ep) << s;
  }
}

TEST(Sdf, SingleMethane) {
  const auto mols = parse_sdf(methane_block());
  ASSERT_EQ(mols.size(), 1u);
  EXPECT_EQ(mols[0].size(), 1u);
  EXPECT_EQ(mols[0].atoms[0].implicit_h, 4);
  ASSERT_TRUE(mols[0].coords.has_value());
}

TEST(Sdf, BatchCap) {
  EXPECT_EQ(parse_sdf(sdf_with(2000)).size(), 2000u);
  try {
    parse_sdf(sdf_with(2001));
    FAIL() << "expected BatchLimitExceeded";
  } catch (const onco::Error &e) {
    EXPECT_EQ(e.code(), "BatchLimitExceeded");
  }
}

TEST(Sdf, Errors) {
  auto code_of = [](const std::string &text) -> std::string {
    try {
      parse_sdf(text);
    } catch (const onco::Error &e) {
      return e.code();
    }
    return "";
  };
  EXPECT_EQ(code_of("x\n\n\n  a  0\nM  END\n"), "MalformedCountsLine");
  EXPECT_EQ(code_of("x\n\n\n  1  0  0  0  0  0  0  0  0  0999 V2000\n    0.0 C\nM  END\n"),
            "AtomBlockShort");
  EXPECT_EQ(code_of("x\n\n\n  2  0  0  0  0  0  0  0  0  0999 V2000\n"
                    "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"),
            "AtomBlockShort");
}

TEST(Sdf, EthanolWithChargeBlockMatchesSmiles) {
  const std::string block =
      "acetate\n  test\n\n"
      "  4  3  0  0  0  0  0  0  0  0999 V2000\n"
      "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
      "    1.5000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
      "    2.2500    1.2990    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
      "    2.2500   -1.2990    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
      "  1  2  1  0\n"
      "  2  3  2  0\n"
      "  2  4  1  0\n"
      "M  CHG  1   4  -1\n"
      "M  END\n";
  const auto m = parse_mol(block);
  EXPECT_EQ(canonical_smiles(m), canonical_smiles(parse_smiles("CC(=O)[O-]")));
  EXPECT_DOUBLE_EQ((*m.coords)[1].x, 1.5);
}

} // namespace
