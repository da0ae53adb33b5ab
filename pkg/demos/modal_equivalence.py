"""Modal equivalence modulo {0}: a congruence in D4, not in the 7-element AOL."""

import numpy as np

from pbzlat import build, is_congruence, rho, structural_predicates

D4 = build("D4")
r = rho(D4, (0,))
print("rho({0}) on D4:", [(D4.label(a), D4.label(b)) for a, b in r.sorted_pairs() if a != b])

sp = structural_predicates(D4)
eps = sp.zero_epsilon
print("largest congruence with 0-class {0}:", [[D4.label(x) for x in b] for b in eps.blocks])
print("equal to rho({0}):", np.array_equal(r.matrix, eps.matrix), " reduced:", sp.reduced)

C = build("COGOTTI7")
a, b, c = (C.element(s) for s in "abc")
rc = rho(C, (0,))
print("\n(a,c) modally equivalent in COGOTTI7:", (a, c) in rc)
print("but a^b =", C.label(C.meet[a, b]), "and c^b =", C.label(C.meet[c, b]),
      "are not:", (int(C.meet[a, b]), int(C.meet[c, b])) in rc)
ok, witness = is_congruence(C, rc)
print("congruence:", ok, "first witness:", witness)
