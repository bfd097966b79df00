#ifndef QCONV_GROUPS_HPP
#define QCONV_GROUPS_HPP

#include <string>
#include <vector>

namespace qconv {

// Multiplication table of a finite group, 0-indexed; table[g][h] = g*h.
struct GroupTable {
  std::vector<std::vector<int>> table;

  int order() const { return static_cast<int>(table.size()); }
  int mul(int g, int h) const { return table[g][h]; }
  int identity() const;       // validated tables only
  int inverse(int g) const;   // validated tables only
  bool abelian() const;
};

// Exact integer checks: closure, identity, inverses, associativity.
// Throws InvalidInput naming the first failed axiom.
void validate_group(const GroupTable& G);

GroupTable cyclic_group(int n);
GroupTable direct_product(const GroupTable& A, const GroupTable& B);
GroupTable dihedral_group(int n);   // order 2n, n >= 2
GroupTable quaternion_group();      // order 8
GroupTable symmetric_group_3();

// All groups of order <= max_order up to isomorphism, with short names.
std::vector<std::pair<std::string, GroupTable>> group_catalog(int max_order);

}  // namespace qconv

#endif
