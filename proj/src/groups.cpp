#include "qconv/groups.hpp"

#include <sstream>

#include "qconv/errors.hpp"

namespace qconv {

namespace {
int find_identity(const GroupTable& G) {
  int n = G.order();
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      if (G.table[e][g] != g || G.table[g][e] != g) ok = false;
    if (ok) return e;
  }
  return -1;
}
}  // namespace

int GroupTable::identity() const { return find_identity(*this); }

int GroupTable::inverse(int g) const {
  int e = identity();
  for (int h = 0; h < order(); ++h)
    if (table[g][h] == e) return h;
  return -1;
}

bool GroupTable::abelian() const {
  for (int g = 0; g < order(); ++g)
    for (int h = 0; h < order(); ++h)
      if (table[g][h] != table[h][g]) return false;
  return true;
}

void validate_group(const GroupTable& G) {
  int n = G.order();
  if (n < 1) throw InvalidInput("group: empty table");
  if (static_cast<int>(G.table.size()) != n)
    throw InvalidInput("group: table is not square");
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(G.table[g].size()) != n)
      throw InvalidInput("group: table is not square");
    for (int h = 0; h < n; ++h)
      if (G.table[g][h] < 0 || G.table[g][h] >= n) {
        std::ostringstream os;
        os << "group: entry (" << g << "," << h << ") out of range";
        throw InvalidInput(os.str());
      }
  }
  int e = find_identity(G);
  if (e < 0) throw InvalidInput("group: no identity element");
  for (int g = 0; g < n; ++g) {
    bool has_inv = false;
    for (int h = 0; h < n; ++h)
      if (G.table[g][h] == e && G.table[h][g] == e) has_inv = true;
    if (!has_inv) {
      std::ostringstream os;
      os << "group: element " << g << " has no inverse";
      throw InvalidInput(os.str());
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.table[G.table[a][b]][c] != G.table[a][G.table[b][c]]) {
          std::ostringstream os;
          os << "group: associativity fails at (" << a << "," << b << "," << c << ")";
          throw InvalidInput(os.str());
        }
}

GroupTable cyclic_group(int n) {
  if (n < 1) throw InvalidInput("cyclic_group: order must be >= 1");
  GroupTable G;
  G.table.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G.table[i][j] = (i + j) % n;
  return G;
}

GroupTable direct_product(const GroupTable& A, const GroupTable& B) {
  int na = A.order(), nb = B.order();
  GroupTable G;
  G.table.assign(na * nb, std::vector<int>(na * nb));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          G.table[a1 * nb + b1][a2 * nb + b2] =
              A.table[a1][a2] * nb + B.table[b1][b2];
  return G;
}

GroupTable dihedral_group(int n) {
  if (n < 2) throw InvalidInput("dihedral_group: need n >= 2");
  // elements r^i (index i) and s r^i (index n + i); s r^i s = r^{-i}
  int m = 2 * n;
  GroupTable G;
  G.table.assign(m, std::vector<int>(m));
  auto idx = [n](bool flip, int rot) { return (flip ? n : 0) + ((rot % n) + n) % n; };
  for (int f1 = 0; f1 < 2; ++f1)
    for (int r1 = 0; r1 < n; ++r1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int r2 = 0; r2 < n; ++r2) {
          // (s^f1 r^r1)(s^f2 r^r2) = s^{f1+f2} r^{(-1)^{f2} r1 + r2}
          int f = (f1 + f2) % 2;
          int r = (f2 ? -r1 : r1) + r2;
          G.table[idx(f1, r1)][idx(f2, r2)] = idx(f, r);
        }
  return G;
}

GroupTable quaternion_group() {
  // order: 1, -1, i, -i, j, -j, k, -k
  auto neg = [](int a) { return a ^ 1; };
  GroupTable G;
  G.table.assign(8, std::vector<int>(8));
  const int one = 0, i = 2, j = 4, k = 6;
  auto unit_mul = [&](int a, int b) -> int {
    // multiplication of the positive units
    if (a == one) return b;
    if (b == one) return a;
    if (a == b) return neg(one);
    if (a == i && b == j) return k;
    if (a == j && b == k) return i;
    if (a == k && b == i) return j;
    if (a == j && b == i) return neg(k);
    if (a == k && b == j) return neg(i);
    return neg(j);  // a == i && b == k
  };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int base = unit_mul(a & ~1, b & ~1);
      int sign = (a & 1) ^ (b & 1);
      G.table[a][b] = sign ? neg(base) : base;
    }
  return G;
}

GroupTable symmetric_group_3() { return dihedral_group(3); }

std::vector<std::pair<std::string, GroupTable>> group_catalog(int max_order) {
  std::vector<std::pair<std::string, GroupTable>> out;
  auto add = [&](const std::string& name, GroupTable g) {
    if (g.order() <= max_order) out.emplace_back(name, std::move(g));
  };
  add("Z1", cyclic_group(1));
  add("Z2", cyclic_group(2));
  add("Z3", cyclic_group(3));
  add("Z4", cyclic_group(4));
  add("Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2)));
  add("Z5", cyclic_group(5));
  add("Z6", cyclic_group(6));
  add("S3", symmetric_group_3());
  add("Z7", cyclic_group(7));
  add("Z8", cyclic_group(8));
  add("Z4xZ2", direct_product(cyclic_group(4), cyclic_group(2)));
  add("Z2xZ2xZ2", direct_product(cyclic_group(2),
                                 direct_product(cyclic_group(2), cyclic_group(2))));
  add("D4", dihedral_group(4));
  add("Q8", quaternion_group());
  return out;
}

}  // namespace qconv
